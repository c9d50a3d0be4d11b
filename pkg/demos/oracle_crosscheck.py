"""Grid curvature formulas against the embedding oracle.

The geometry module computes principal curvatures from closed-form
expressions in u, u', u''.  The hyperboloid module recomputes them by
finite differences of the raw embedding in Minkowski space, sharing no
formulas.  This script compares the two on each named test profile and
on the closed-form case of an off-center geodesic sphere, whose
curvatures must equal coth(R) exactly.
"""

import math

import numpy as np

from hcflow import ORACLE_PROFILES, fd_fundamental_forms
from hcflow.acceptance import oracle_discrepancy


def off_center_sphere_u(center, radius):
    def u_func(theta):
        u = radius
        for _ in range(60):
            f = (math.cosh(center) * math.cosh(u)
                 - math.sinh(center) * math.sinh(u) * math.cos(theta)
                 - math.cosh(radius))
            df = (math.cosh(center) * math.sinh(u)
                  - math.sinh(center) * math.cosh(u) * math.cos(theta))
            u = u - f / df
        return u
    return u_func


def main():
    print("analytic curvatures vs finite-difference embedding oracle")
    print(f"{'profile':>14s} {'max rel discrepancy':>22s}")
    for name in sorted(ORACLE_PROFILES):
        disc = oracle_discrepancy(name, intervals=512)
        print(f"{name:>14s} {float(disc):22.3e}")

    print("\nembedding oracle vs closed form: off-center sphere, "
          "center 0.3, radius 1")
    u_func = off_center_sphere_u(0.3, 1.0)
    ct = math.cosh(1.0) / math.sinh(1.0)
    print(f"{'theta':>8s} {'kappa_mer':>12s} {'kappa_rot':>12s} "
          f"{'vs coth(1)':>12s}")
    for theta in np.linspace(0.4, math.pi - 0.4, 7):
        forms = fd_fundamental_forms(u_func, float(theta))
        worst = max(abs(forms.kappa_mer - ct), abs(forms.kappa_rot - ct))
        print(f"{theta:8.3f} {forms.kappa_mer:12.8f} {forms.kappa_rot:12.8f} "
              f"{worst:12.3e}")


if __name__ == "__main__":
    main()
