"""Replay the bundled construction scenarios, then render one of them.

Each .scn file declares points and polygons, then asserts exact facts about
them: equal areas, seamless partitions, angle identities.  This script runs
every bundled scenario and prints the per-assertion report.  It then
rebuilds the parallelogram construction from the I.35 scenario and writes a
layered SVG of its pieces into ./out (override with --outdir or
REFINEDGEO_OUTDIR).
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction as F

from refinedgeo import Vec, bundled_scenarios, parse_scenario, polygon_lift, render_svg, run_scenario


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default=None, help="directory for the rendered SVG")
    args = ap.parse_args()

    outdir = args.outdir or os.environ.get("REFINEDGEO_OUTDIR") or "out"
    failures = 0
    for name, path in sorted(bundled_scenarios().items()):
        with open(path, "r", encoding="utf-8") as handle:
            scenario = parse_scenario(handle.read())
        report = run_scenario(scenario)
        print(f"== {name} ==")
        print(report)
        if not report.all_passed:
            failures += 1

    # The I.35 configuration: parallelograms ABCD and EBCF on base BC, with
    # G where BE crosses DC.  The three pieces below tile ABCD; the last two
    # plus the shared middle tile EBCF once the first is slid along the top.
    a, b, c, d = Vec(-1, 2), Vec(0, 0), Vec(F(3, 2), 0), Vec(F(1, 2), 2)
    e, f, g = Vec(F(9, 5), 2), Vec(F(33, 10), 2), Vec(F(27, 28), F(15, 14))
    pieces = [
        polygon_lift([a, b, g, d]),
        polygon_lift([d, g, e]),
        polygon_lift([g, b, c]),
        polygon_lift([g, c, f, e]),
    ]
    os.makedirs(outdir, exist_ok=True)
    target = os.path.join(outdir, "i35_pieces.svg")
    render_svg(pieces, target)
    print(f"wrote {target}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
