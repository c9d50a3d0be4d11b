"""Tour of the builtin curvature speeds.

Prints each speed's value on a few curvature vectors, its gradient at a
reference point, and the sampled admissibility report: monotonicity,
homogeneity, normalisation, the concavity quadratic form, and
log-convexity along log-curvature lines.
"""

import numpy as np

from hcflow import builtin_speeds, check_assumption

SAMPLES = {
    "round       (1, 1, 1)": np.array([1.0, 1.0, 1.0]),
    "stretched   (1, 2, 3)": np.array([1.0, 2.0, 3.0]),
    "pinched  (0.2, 3, 3) ": np.array([0.2, 3.0, 3.0]),
}


def main():
    speeds = builtin_speeds(3)

    print("speed values")
    header = f"{'speed':40s}" + "".join(f"{k:>24s}" for k in SAMPLES)
    print(header)
    for key, speed in speeds.items():
        row = f"{key:40s}"
        for kap in SAMPLES.values():
            row += f"{float(speed.value(kap)):24.6f}"
        print(row)

    print("\ngradients at (1, 2, 3)   [monotone: all entries positive]")
    kap = np.array([1.0, 2.0, 3.0])
    for key, speed in speeds.items():
        grad = speed.gradient(kap)
        print(f"{key:40s} " + " ".join(f"{g:10.6f}" for g in grad))

    print("\nsampled admissibility checks (10000 cone points each)")
    for key, speed in speeds.items():
        rep = check_assumption(speed, 3, sample_count=10_000, seed=0)
        flags = " ".join(
            name for name, ok in [
                ("monotone", rep.monotone_ok), ("homogeneous", rep.homogeneous_ok),
                ("normalised", rep.normalized_ok), ("concave-form", rep.quadform_ok),
                ("log-convex", rep.logconvex_ok)] if ok)
        print(f"{key:40s} {'ok' if rep.all_ok else 'FAIL':4s} "
              f"worst quadratic-form margin {rep.worst_margin:.3e}  [{flags}]")


if __name__ == "__main__":
    main()
