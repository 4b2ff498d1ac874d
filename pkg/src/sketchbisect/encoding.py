"""Implicit objective operator A - mu*J and edge-density estimates of mu.

The bisection SDP maximizes <A - mu*J, X>. The matrix is never formed:
J = ones(n, n) is rank one, so applying A - mu*J to a vector costs one
sparse matvec plus a scaled sum.

The classical +/-1 edge-sign encoding B = 2A - J + I is the affine image
2*(A - J/2) + I, so mu = 1/2 reproduces its maximizers; the max-cut
complement encoding corresponds to mu = 1. Both are special cases of the
family handled here.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MuEstimate:
    """Edge density |E| / C(n, 2) with the ingredients kept for reporting."""

    mu: float
    edge_count: int
    n: int


def estimate_mu(graph):
    """Estimate mu as the global edge density of the graph."""
    n = graph.num_vertices
    if n < 2:
        raise ValueError("density needs at least two vertices")
    pairs = n * (n - 1) // 2
    return MuEstimate(mu=graph.edge_count / pairs, edge_count=graph.edge_count, n=n)


def expected_mu(params):
    """Exact expectation of the density estimate under a balanced block model.

    With n1 == n2 the pair mix gives (p + q)/2 - (p - q)/(2*(n - 1)).
    """
    if params.n1 != params.n2:
        raise ValueError("expected density formula requires equal blocks")
    n = params.n
    p, q = params.p, params.q
    return (p + q) / 2.0 - (p - q) / (2.0 * (n - 1))


def mu_concentration_bound(params, c):
    """Deviation scale c * ln(n) / n**1.5 for the density estimate.

    ``params`` is either log-scale parameters (their n is used) or a bare
    real n >= 2, so the bound can be evaluated along a continuous curve;
    ``c`` is a non-negative constant.
    """
    n = getattr(params, "n", params)
    if n < 2:
        raise ValueError("n must be at least 2")
    if c < 0:
        raise ValueError("c must be non-negative")
    return c * math.log(n) / n**1.5


class ObjectiveOperator:
    """Matrix-free A - mu*J acting on vectors of length n."""

    def __init__(self, graph, mu):
        if mu < 0:
            raise ValueError("mu must be non-negative")
        self._adj = graph.adjacency
        self.mu = float(mu)
        self.n = graph.num_vertices

    def apply(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"expected vector of length {self.n}")
        return self._adj @ x - self.mu * x.sum()

    def quadratic_form(self, g):
        """g^T (A - mu*J) g for any real vector g."""
        g = np.asarray(g, dtype=np.float64)
        return float(g @ (self._adj @ g) - self.mu * g.sum() ** 2)


def apply_objective(operator, x):
    """Apply the implicit objective matrix to a vector."""
    return operator.apply(x)
