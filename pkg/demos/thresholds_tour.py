"""Tour of the closed-form theory: phases, sampling thresholds, bounds.

Everything here is a pure formula; no graphs are sampled. Useful as a
reference for picking (alpha, beta, gamma, n) before running anything
expensive.
"""

from sketchbisect import (
    phase_boundary_curve,
    sdp_success_bound,
    threshold_report,
)


def main():
    print("threshold report at selected rate pairs")
    print(f"{'alpha':>6} {'beta':>5} {'phase':>12} {'vote':>8} "
          f"{'sketch':>8} {'conjectured':>12}")
    for alpha, beta in ((50, 1), (30, 2), (10, 2), (8, 2), (3, 1), (2, 1.9)):
        r = threshold_report(alpha, beta)
        print(f"{alpha:>6g} {beta:>5g} {r.phase:>12} {r.vote_gamma:>8.4f} "
              f"{r.sketch_gamma:>8.4f} {r.conjectured_gamma:>12.4f}")
    print("thresholds above 1 mean no sampling rate is guaranteed to work")

    print("\nexact-recovery boundary alpha = (sqrt(beta) + sqrt(2))^2:")
    for beta in (1.0, 2.0, 5.0, 10.0):
        print(f"  beta={beta:>4g}  alpha={float(phase_boundary_curve(beta)):.4f}")

    print("\nSDP success probability bound, p=0.1 q=0.02 mu=0.06, balanced:")
    for half in (100, 200, 500, 1000, 5000):
        bound = sdp_success_bound(half, half, 0.1, 0.02, 0.06)
        note = "(vacuous)" if bound < 0 else ""
        print(f"  n={2 * half:>6}: {bound: .6f} {note}")
    print("the bound is one-sided: negative values promise nothing, and it")
    print("climbs toward 1 as n grows at fixed rates")

    print("\nimbalance tolerance at (50, 1): the recovery condition holds for")
    r0 = threshold_report(50, 1, delta=0.0)
    r5 = threshold_report(50, 1, delta=5.0)
    print(f"  delta=0.0: {r0.unbalanced_condition_holds}   "
          f"delta=5.0: {r5.unbalanced_condition_holds}")


if __name__ == "__main__":
    main()
