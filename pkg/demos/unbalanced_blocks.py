"""Recovery with unequal block sizes and two penalty policies.

The penalty mu is what discourages the relaxation from dumping every
vertex on one side, so with unbalanced blocks its choice matters more
than in the balanced case. Compares the observed-density policy (no
knowledge of the rates) against the midpoint (p+q)/2 (rates known), at
a mild and a heavy imbalance. The sufficient condition for the heavy
case fails, yet recovery still succeeds there; the guarantee is
conservative.
"""

import math

from sketchbisect import (
    LogScaleParams,
    full_solve,
    recovered_planted,
    sample_sbm,
    unbalanced_recovery_condition,
)

ALPHA, BETA, N = 50.0, 1.0, 400
SEEDS = range(5)


def recovery_count(params, mu):
    wins = 0
    for s in SEEDS:
        graph, planted = sample_sbm(params, seed=400 + s)
        result = full_solve(graph, mu=mu, seed=s)
        wins += bool(recovered_planted(planted, result))
    return wins


def main():
    log_params = LogScaleParams(ALPHA, BETA, N)
    for m in (20, 60):
        n1 = (N + m) // 2
        params = log_params.to_sbm_params(n1=n1, n2=N - n1)
        delta = m / math.log(N)
        holds = unbalanced_recovery_condition(ALPHA, BETA, delta)
        print(f"blocks {params.n1}/{params.n2} (imbalance {m}, "
              f"delta={delta:.2f}): sufficient condition holds: {holds}")
        midpoint = (params.p + params.q) / 2.0
        for label, mu in (("density estimate", "auto"),
                          (f"midpoint {midpoint:.4f}", midpoint)):
            wins = recovery_count(params, mu)
            print(f"  mu = {label:18s} recovered {wins}/{len(SEEDS)}")
        print()


if __name__ == "__main__":
    main()
