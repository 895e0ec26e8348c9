"""Quantitative pass/fail audit of the dispersive envelopes.

Three envelope regimes are checked against direct series evaluation:

  * interior  -- (1 + 1/x)^(d - nu0), the bound away from the cone tip;
  * general   -- (1 + x)^d times the interior envelope, valid uniformly;
  * smallx    -- two-sided control of the leading power near the tip.

A bound "verifies" when sup |I| / envelope stays below a threshold (10 by
default) over a scan grid.  The point of this script is the failures: at a
conjugate-point angle on a thin cone the interior envelope is *provably*
violated, and the audit reproduces exactly that.
"""

import math

from conekernel import ConeParams, make_grid, scan, verify_bound

CASES = (
    ("flat space, any angle", ConeParams(rho=1.0, n=3, c=0.0),
     (1.0, 2000.0, 60), (0.0, math.pi / 2.0, math.pi), "interior"),
    ("wide cone rho = 1.5", ConeParams(rho=1.5, n=3, c=0.0),
     (1.0, 2000.0, 60), (0.0, math.pi / 4.0, math.pi), "interior"),
    ("thin cone, interior angles", ConeParams(rho=1.0 / 3.0, n=3, c=0.0),
     (1.0, 2000.0, 60), (0.4, math.pi / 2.0, math.pi - 0.4), "interior"),
    ("thin cone, diagonal angle", ConeParams(rho=1.0 / 3.0, n=3, c=0.0),
     (1.0, 5000.0, 64), (0.0,), "interior"),
    ("antipodal angle, rho = 2/3", ConeParams(rho=2.0 / 3.0, n=3, c=0.0),
     (1.0, 2000.0, 60), (math.pi,), "interior"),
    ("attractive coupling near tip", ConeParams(rho=1.0, n=3, c=-3.0 / 16.0),
     (1e-4, 0.5, 25), (0.0, 1.0, math.pi), "smallx"),
)


def main() -> None:
    print("envelope audit (threshold 10)\n")
    print(f"{'case':<32} {'regime':<9} {'sup ratio':>10} {'at x':>8} {'verdict':>8}")

    for name, params, (lo, hi, count), phis, which in CASES:
        table = scan(params, make_grid(lo, hi, count, "log"), list(phis), tol=1e-10)
        report = verify_bound(table, which=which, threshold=10.0)
        verdict = "PASS" if report.passed else "FAIL"
        print(
            f"{name:<32} {which:<9} {report.sup_ratio:>10.3f} "
            f"{report.sup_x:>8.1f} {verdict:>8}"
        )

    print("\nthe two FAIL rows are the expected ones: conjugate-point angles on")
    print("thin cones genuinely break the interior bound (the violation grows")
    print("like sqrt(x), so the ratio keeps climbing with the grid).")


if __name__ == "__main__":
    main()
