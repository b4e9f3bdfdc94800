"""Exact Fourier-Motzkin elimination over mixed strict/weak inequalities.

A constraint is ``coeffs . x + const >= 0`` (weak) or ``> 0`` (strict).
Systems live in the intrinsic coordinates of some carrier, so the ambient
dimension here is the carrier dimension (desk scale: <= 3 variables).
Everything is exact; feasibility answers are definitive, and sample points
are exact rational/tower witnesses.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .linalg import AffineFunctional, Vec, rank, solve_square
from .scalars import Scalar, adjoin_sqrt, sign, structural_key, to_scalar

__all__ = [
    "LinIneq",
    "affine_dim",
    "feasible",
    "implicit_equalities",
    "is_bounded",
    "sample_point",
    "vertices",
]

_ZERO = Fraction(0)


class LinIneq:
    """coeffs . x + const >= 0, strict for > 0."""

    __slots__ = ("coeffs", "const", "strict", "source")

    def __init__(self, coeffs: Sequence, const, strict: bool):
        self.coeffs = tuple(to_scalar(c) for c in coeffs)
        self.const = to_scalar(const)
        self.strict = bool(strict)
        self.source: Optional[AffineFunctional] = None

    @classmethod
    def from_functional(cls, xi: AffineFunctional, strict: bool) -> "LinIneq":
        out = cls(xi.linear.coords, xi.constant, strict)
        out.source = xi
        return out

    def to_functional(self) -> AffineFunctional:
        return AffineFunctional(Vec(*self.coeffs), self.const)

    def value(self, point: Sequence[Scalar]) -> Scalar:
        total = self.const
        for c, x in zip(self.coeffs, point):
            total = total + c * x
        return total

    def satisfied(self, point: Sequence[Scalar]) -> bool:
        s = sign(self.value(point))
        return s > 0 if self.strict else s >= 0

    def __repr__(self) -> str:
        op = ">" if self.strict else ">="
        return f"LinIneq({list(self.coeffs)!r} . x + {self.const!r} {op} 0)"


def _content_factor(values) -> Fraction:
    """Positive rational making every Fraction leaf an integer with overall
    gcd 1.  Tower scalars contribute their rational parts; radicands are
    untouched (scaling a row never rescales what sits under a root)."""
    num_g = 0
    den_l = 1
    stack = list(values)
    while stack:
        x = stack.pop()
        if isinstance(x, Fraction):
            if x:
                n = x.numerator
                num_g = gcd(num_g, n if n >= 0 else -n)
                den_l = den_l // gcd(den_l, x.denominator) * x.denominator
        else:
            stack.append(x.a)
            stack.append(x.b)
    return Fraction(den_l, num_g) if num_g else Fraction(1)


def _simplify(cons: list[LinIneq]) -> Optional[list[LinIneq]]:
    """Drop tautologies and dominated duplicates; None when a constant row
    is already violated."""
    kept: list[LinIneq] = []
    seen: dict = {}  # structural coefficient key -> index into kept
    for c in cons:
        nz = None
        for i, a in enumerate(c.coeffs):
            if sign(a) != 0:
                nz = i
                break
        if nz is None:
            s = sign(c.const)
            if s < 0 or (s == 0 and c.strict):
                return None
            continue
        # Scale by the content: entries become small integers (canonical up
        # to positive rational factor) without any tower division, and the
        # structural key then catches duplicates without scalar arithmetic.
        factor = _content_factor(list(c.coeffs) + [c.const])
        if factor == 1:
            scaled = c
        else:
            scaled = LinIneq(
                [a * factor for a in c.coeffs], c.const * factor, c.strict
            )
        key = tuple(structural_key(a) for a in scaled.coeffs)
        j = seen.get(key)
        if j is None:
            seen[key] = len(kept)
            kept.append(scaled)
            continue
        k = kept[j]
        d = sign(scaled.const - k.const)
        if d < 0 or (d == 0 and scaled.strict and not k.strict):
            kept[j] = scaled  # new row is tighter
    return kept


def _eliminate(cons: list[LinIneq], var: int) -> Optional[list[LinIneq]]:
    pos: list[LinIneq] = []
    neg: list[LinIneq] = []
    out: list[LinIneq] = []
    for c in cons:
        s = sign(c.coeffs[var])
        if s > 0:
            pos.append(c)
        elif s < 0:
            neg.append(c)
        else:
            out.append(c)
    for p in pos:
        for n in neg:
            pc = p.coeffs[var]
            nc = n.coeffs[var]
            # (-nc) * p + pc * n cancels the variable; -nc and pc positive.
            coeffs = [(-nc) * a + pc * b for a, b in zip(p.coeffs, n.coeffs)]
            const = (-nc) * p.const + pc * n.const
            out.append(LinIneq(coeffs, const, p.strict or n.strict))
    return _simplify(out)


def _pick_var(cons: list[LinIneq], remaining: list[int]) -> int:
    best = remaining[0]
    best_cost = None
    for var in remaining:
        npos = sum(1 for c in cons if sign(c.coeffs[var]) > 0)
        nneg = sum(1 for c in cons if sign(c.coeffs[var]) < 0)
        cost = npos * nneg - (npos + nneg)
        if best_cost is None or cost < best_cost:
            best, best_cost = var, cost
    return best


# -- integer fast path -------------------------------------------------------
#
# Feasibility is by far the hottest question, so systems whose scalars are
# rationals or tower values with rational radicands get re-encoded as sparse
# integer vectors over the monomial basis of the occurring square roots:
# value = sum over bitmasks m of coeff[m] * prod(sqrt(R_i) for i in m).
# Rows are cleared to integers, elimination is integer arithmetic, and signs
# come from the same recursive norm rule the tower scalars use.  The generic
# path below remains the reference implementation and the fallback.


# The square roots seen so far, in a process-wide registry so that cached
# row encodings on functionals stay valid: the list only ever appends.
_FP_RADICANDS: list = []
_FP_INDEX: dict = {}


def _fp_value(x):
    """Sparse mask -> Fraction encoding of a scalar; None if out of scope."""
    if isinstance(x, Fraction):
        return {0: x} if x else {}
    if not isinstance(x.radicand, Fraction) or x.radicand <= 0:
        return None
    ra = _fp_value(x.a)
    if ra is None:
        return None
    rb = _fp_value(x.b)
    if rb is None:
        return None
    key = (x.radicand.numerator, x.radicand.denominator)
    bit = _FP_INDEX.get(key)
    if bit is None:
        bit = len(_FP_RADICANDS)
        _FP_INDEX[key] = bit
        _FP_RADICANDS.append(key[0] * key[1])  # sqrt(n/d) = sqrt(n*d)/d
    out = dict(ra)
    scale = Fraction(1, key[1])
    flag = 1 << bit
    for mask, v in rb.items():
        v = v * scale
        if mask & flag:
            m, v = mask & ~flag, v * _FP_RADICANDS[bit]
        else:
            m = mask | flag
        out[m] = out.get(m, _ZERO) + v
    return {m: v for m, v in out.items() if v}


def _fp_sign(val: dict) -> int:
    if not val:
        return 0
    top = max(val).bit_length() - 1
    if top < 0:
        n = val[0].numerator if isinstance(val[0], Fraction) else val[0]
        return (n > 0) - (n < 0)
    flag = 1 << top
    p = {m: v for m, v in val.items() if not m & flag}
    q = {m & ~flag: v for m, v in val.items() if m & flag}
    sp = _fp_sign(p)
    sq = _fp_sign(q)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq if sp == 0 else sp
    norm = _fp_sub(_fp_mul(p, p), _fp_scale(_fp_mul(q, q), _FP_RADICANDS[top]))
    return sp * _fp_sign(norm)


def _fp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, va in a.items():
        for mb, vb in b.items():
            v = va * vb
            common = ma & mb
            while common:
                low = common & -common
                v *= _FP_RADICANDS[low.bit_length() - 1]
                common &= common - 1
            m = ma ^ mb
            cur = out.get(m)
            out[m] = v if cur is None else cur + v
    return {m: v for m, v in out.items() if v}


def _fp_scale(a: dict, factor) -> dict:
    return {m: v * factor for m, v in a.items()} if factor else {}


def _fp_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, v in b.items():
        cur = out.get(m, 0)
        cur -= v
        if cur:
            out[m] = cur
        else:
            out.pop(m, None)
    return out


def _fp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, v in b.items():
        cur = out.get(m, 0)
        cur += v
        if cur:
            out[m] = cur
        else:
            out.pop(m, None)
    return out


def _fp_encode_row(c: LinIneq):
    """Integer sparse encoding of one row, or None when out of scope."""
    encoded = []
    for s in list(c.coeffs) + [c.const]:
        e = _fp_value(s)
        if e is None:
            return None
        encoded.append(e)
    lcm = 1
    for e in encoded:
        for v in e.values():
            d = v.denominator
            lcm = lcm // gcd(lcm, d) * d
    return [
        {m: (v.numerator * lcm) // v.denominator for m, v in e.items()}
        for e in encoded
    ]


def _fp_rows(cons: Sequence[LinIneq]):
    """Rows in integer form, or None when any scalar is out of scope.

    Rows built from functionals keep their encoding on the functional, so
    repeated feasibility questions over the same geometry encode once."""
    rows = []
    for c in cons:
        src = c.source
        ints = None if src is None else src._fenc
        if ints is False:
            return None
        if ints is None:
            ints = _fp_encode_row(c)
            if src is not None:
                src._fenc = ints if ints is not None else False
            if ints is None:
                return None
        rows.append((c.strict, ints))
    return rows


def _fp_simplify(rows) -> Optional[list]:
    kept: list = []
    seen: dict = {}
    for strict, ints in rows:
        if all(not e for e in ints[:-1]):
            s = _fp_sign(ints[-1])
            if s < 0 or (s == 0 and strict):
                return None
            continue
        g = 0
        for e in ints:
            for v in e.values():
                g = gcd(g, v)
        if g > 1:
            ints = [{m: v // g for m, v in e.items()} for e in ints]
        key = tuple(tuple(sorted(e.items())) for e in ints[:-1])
        j = seen.get(key)
        if j is None:
            seen[key] = len(kept)
            kept.append((strict, ints))
            continue
        kstrict, kints = kept[j]
        d = _fp_sign(_fp_sub(ints[-1], kints[-1]))
        if d < 0 or (d == 0 and strict and not kstrict):
            kept[j] = (strict, ints)
    return kept


def _fp_eliminate(rows, var: int) -> Optional[list]:
    pos, neg, out = [], [], []
    for strict, ints in rows:
        s = _fp_sign(ints[var])
        if s > 0:
            pos.append((strict, ints))
        elif s < 0:
            neg.append((strict, ints))
        else:
            if ints[var]:
                ints = list(ints)
                ints[var] = {}  # exact zero despite a nonzero encoding
            out.append((strict, ints))
    for ps, pi in pos:
        pc = pi[var]
        for ns, ni in neg:
            mnc = _fp_scale(ni[var], -1)
            # (-nc) * p + pc * n cancels the variable; both factors positive.
            row = [
                _fp_add(_fp_mul(mnc, a), _fp_mul(pc, b)) for a, b in zip(pi, ni)
            ]
            row[var] = {}
            out.append((ps or ns, row))
    return _fp_simplify(out)


def _fp_last_var(rows, var: int) -> bool:
    """Feasibility of a univariate system by a linear interval scan; avoids
    the quadratic combination step on the largest derived rows."""
    lo = hi = None  # (numerator, positive denominator, strict)
    for strict, ints in rows:
        a = ints[var]
        s = _fp_sign(a)
        if s == 0:
            c = _fp_sign(ints[-1])
            if c < 0 or (c == 0 and strict):
                return False
            continue
        if s > 0:  # x >= -const/a
            num, den = _fp_scale(ints[-1], -1), a
            if lo is None:
                lo = (num, den, strict)
            else:
                d = _fp_sign(_fp_sub(_fp_mul(num, lo[1]), _fp_mul(lo[0], den)))
                if d > 0 or (d == 0 and strict and not lo[2]):
                    lo = (num, den, strict or (d == 0 and lo[2]))
        else:  # x <= const/(-a)
            num, den = ints[-1], _fp_scale(a, -1)
            if hi is None:
                hi = (num, den, strict)
            else:
                d = _fp_sign(_fp_sub(_fp_mul(num, hi[1]), _fp_mul(hi[0], den)))
                if d < 0 or (d == 0 and strict and not hi[2]):
                    hi = (num, den, strict or (d == 0 and hi[2]))
    if lo is None or hi is None:
        return True
    d = _fp_sign(_fp_sub(_fp_mul(hi[0], lo[1]), _fp_mul(lo[0], hi[1])))
    if d != 0:
        return d > 0
    return not (lo[2] or hi[2])


def _fp_feasible(cons: Sequence[LinIneq], nvars: int) -> Optional[bool]:
    rows = _fp_rows(cons)
    if rows is None:
        return None
    system = _fp_simplify(rows)
    if system is None:
        return False
    remaining = list(range(nvars))
    while remaining:
        if len(remaining) == 1:
            return _fp_last_var(system, remaining[0])
        best, best_cost = remaining[0], None
        for var in remaining:
            npos = sum(1 for _, ints in system if _fp_sign(ints[var]) > 0)
            nneg = sum(1 for _, ints in system if _fp_sign(ints[var]) < 0)
            cost = npos * nneg - (npos + nneg)
            if best_cost is None or cost < best_cost:
                best, best_cost = var, cost
        remaining.remove(best)
        system = _fp_eliminate(system, best)
        if system is None:
            return False
    return True


def feasible(cons: Sequence[LinIneq], nvars: int) -> bool:
    """Exact feasibility of the mixed strict/weak system."""
    fast = _fp_feasible(cons, nvars)
    if fast is not None:
        return fast
    system = _simplify(list(cons))
    if system is None:
        return False
    remaining = list(range(nvars))
    while remaining:
        var = _pick_var(system, remaining)
        remaining.remove(var)
        system = _eliminate(system, var)
        if system is None:
            return False
    return True


def _subst(cons: list[LinIneq], var: int, value: Scalar) -> list[LinIneq]:
    out = []
    for c in cons:
        coeffs = list(c.coeffs)
        const = c.const + coeffs[var] * value
        coeffs[var] = _ZERO
        out.append(LinIneq(coeffs, const, c.strict))
    return out


def _solve_univariate(cons: list[LinIneq], var: int) -> Optional[Scalar]:
    """Pick a value for ``var`` from a system where only it has nonzero
    coefficients.  None when the interval is empty."""
    lower: Optional[tuple[Scalar, bool]] = None
    upper: Optional[tuple[Scalar, bool]] = None
    for c in cons:
        a = c.coeffs[var]
        s = sign(a)
        if s == 0:
            cs = sign(c.const)
            if cs < 0 or (cs == 0 and c.strict):
                return None
            continue
        bound = -c.const / a
        if s > 0:
            if lower is None or sign(bound - lower[0]) > 0:
                lower = (bound, c.strict)
            elif sign(bound - lower[0]) == 0 and c.strict:
                lower = (bound, True)
        else:
            if upper is None or sign(bound - upper[0]) < 0:
                upper = (bound, c.strict)
            elif sign(bound - upper[0]) == 0 and c.strict:
                upper = (bound, True)
    if lower is None and upper is None:
        return _ZERO
    if lower is None:
        return upper[0] - 1 if upper[1] else upper[0]
    if upper is None:
        return lower[0] + 1 if lower[1] else lower[0]
    d = sign(upper[0] - lower[0])
    if d < 0:
        return None
    if d == 0:
        if lower[1] or upper[1]:
            return None
        return lower[0]
    return (lower[0] + upper[0]) / 2


def sample_point(cons: Sequence[LinIneq], nvars: int) -> Optional[list[Scalar]]:
    """An exact feasible point, or None when the system is infeasible."""
    system = _simplify(list(cons))
    if system is None:
        return None
    stages: list[tuple[int, list[LinIneq]]] = []
    remaining = list(range(nvars))
    current = system
    while remaining:
        var = _pick_var(current, remaining)
        remaining.remove(var)
        stages.append((var, current))
        current = _eliminate(current, var)
        if current is None:
            return None
    values: list[Scalar] = [_ZERO] * nvars
    assigned: list[int] = []
    for var, stage in reversed(stages):
        reduced = stage
        for done in assigned:
            reduced = _subst(reduced, done, values[done])
        v = _solve_univariate(reduced, var)
        if v is None:
            return None
        values[var] = v
        assigned.append(var)
    for c in cons:
        if not c.satisfied(values):  # exact self-check, never expected to fire
            return None
    return values


def implicit_equalities(cons: Sequence[LinIneq], nvars: int) -> list[int]:
    """Indices of weak constraints tight on every feasible point.

    Meaningful for feasible systems; strict constraints are never implicit
    equalities (they cannot be tight at a feasible point).
    """
    out = []
    base = list(cons)
    for i, c in enumerate(base):
        if c.strict:
            continue
        probe = list(base)
        probe[i] = LinIneq(c.coeffs, c.const, True)
        if not feasible(probe, nvars):
            out.append(i)
    return out


def affine_dim(cons: Sequence[LinIneq], nvars: int) -> int:
    """Dimension of the affine hull of the solution set; -1 when empty.

    Intended for weak systems (closures): the hull is cut out by the
    implicit equalities, so its dimension is nvars minus their rank.
    """
    if not feasible(cons, nvars):
        return -1
    eq = implicit_equalities(cons, nvars)
    normals = [Vec(*cons[i].coeffs) for i in eq]
    return nvars - rank(normals)


def is_bounded(cons: Sequence[LinIneq], nvars: int) -> bool:
    """True iff the solution set has empty recession cone (no feasible ray).

    Intended for nonempty systems; vacuously true for empty ones.
    """
    if nvars == 0:
        return True
    recession = [LinIneq(c.coeffs, _ZERO, False) for c in cons]
    for var in range(nvars):
        for direction in (1, -1):
            probe = list(recession)
            unit = [_ZERO] * nvars
            unit[var] = Fraction(direction)
            # Ray with var-component +-1: scaling normalizes any nonzero ray.
            probe.append(LinIneq(unit, Fraction(-1), False))
            if feasible(probe, nvars):
                return False
    return True


def _fp_decode(val: dict) -> Scalar:
    total: Scalar = Fraction(0)
    for mask, n in sorted(val.items()):
        term: Scalar = Fraction(n)
        m = mask
        while m:
            low = m & -m
            term = term * adjoin_sqrt(Fraction(_FP_RADICANDS[low.bit_length() - 1]))
            m &= m - 1
        total = total + term
    return total


def _fp_det(mat: list) -> dict:
    if len(mat) == 1:
        return mat[0][0]
    if len(mat) == 2:
        return _fp_sub(
            _fp_mul(mat[0][0], mat[1][1]), _fp_mul(mat[0][1], mat[1][0])
        )
    out: dict = {}
    for j in range(3):
        minor = [[row[k] for k in range(3) if k != j] for row in mat[1:]]
        term = _fp_mul(mat[0][j], _fp_det(minor))
        out = _fp_add(out, term) if j != 1 else _fp_sub(out, term)
    return out


def _fp_vertices(cons: Sequence[LinIneq], nvars: int) -> Optional[list[list[Scalar]]]:
    if nvars > 3:
        return None
    rows = _fp_rows(cons)
    if rows is None:
        return None
    systems = [ints for _, ints in rows]
    found: list[tuple[list[dict], dict]] = []
    out: list[list[Scalar]] = []
    for combo in combinations(range(len(systems)), nvars):
        mat = [systems[i][:nvars] for i in combo]
        det = _fp_det(mat)
        sd = _fp_sign(det)
        if sd == 0:
            continue
        rhs = [_fp_scale(systems[i][-1], -1) for i in combo]
        nums = []
        for j in range(nvars):
            replaced = [row[:j] + [rhs[k]] + row[j + 1 :] for k, row in enumerate(mat)]
            nums.append(_fp_det(replaced))
        ok = True
        for ints in systems:
            acc = _fp_mul(ints[-1], det)
            for j in range(nvars):
                acc = _fp_add(acc, _fp_mul(ints[j], nums[j]))
            if _fp_sign(acc) * sd < 0:
                ok = False
                break
        if not ok:
            continue
        duplicate = False
        for snums, sden in found:
            if all(
                _fp_sign(_fp_sub(_fp_mul(nums[j], sden), _fp_mul(snums[j], det))) == 0
                for j in range(nvars)
            ):
                duplicate = True
                break
        if duplicate:
            continue
        found.append((nums, det))
        dec = _fp_decode(det)
        out.append([_fp_decode(n) / dec for n in nums])
    return out


def vertices(cons: Sequence[LinIneq], nvars: int) -> list[list[Scalar]]:
    """Vertices of the closure (all constraints read weakly).

    Square subsystems of tight constraints are solved exactly; solutions
    satisfying the whole weak system are collected (deduplicated).
    """
    if nvars == 0:
        sat = all(sign(c.const) >= 0 for c in cons)
        return [[]] if sat else []
    fast = _fp_vertices(cons, nvars)
    if fast is not None:
        return fast
    found: list[list[Scalar]] = []
    for combo in combinations(range(len(cons)), nvars):
        rows = [list(cons[i].coeffs) for i in combo]
        rhs = [-cons[i].const for i in combo]
        point = solve_square(rows, rhs)
        if point is None:
            continue
        if not all(sign(c.value(point)) >= 0 for c in cons):
            continue
        if any(
            all(sign(a - b) == 0 for a, b in zip(point, seen)) for seen in found
        ):
            continue
        found.append(point)
    return found
