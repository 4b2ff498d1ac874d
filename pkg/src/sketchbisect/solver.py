"""Low-rank coordinate ascent for the unit-diagonal SDP family.

The program  max <A - mu*J, X>  s.t. diag(X) = 1, X PSD  is solved through
the factorization X = V V^T with unit-norm rows. A sweep visits vertices in
index order and replaces each row by the normalized sum of its neighbors'
rows minus mu times the sum of all other rows, which is the exact
coordinate maximizer, so the objective never decreases. At rank
ceil(sqrt(2n)) + 1 and above, second-order critical points of the factored
problem are global optima of the SDP.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Partition

_STALL_NORM = 1e-13


@dataclass(frozen=True)
class SolverConfig:
    rank: object = "auto"
    max_sweeps: int = 500
    objective_tolerance: float = 1e-9
    rounding: str = "top-eigenvector"
    seed: int = 0

    def __post_init__(self):
        if self.rank != "auto":
            if not isinstance(self.rank, int) or self.rank < 1:
                raise ValueError("rank must be 'auto' or a positive integer")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be positive")
        if self.objective_tolerance <= 0:
            raise ValueError("objective_tolerance must be positive")
        if self.rounding != "top-eigenvector":
            raise ValueError("only top-eigenvector rounding is implemented")

    def resolve_rank(self, n):
        """Factor rank: min(n, ceil(sqrt(2n)) + 1) when 'auto'."""
        if self.rank == "auto":
            return min(n, math.isqrt(2 * n - 1) + 2)
        return min(self.rank, n)


@dataclass
class SdpSolution:
    factors: np.ndarray
    objective: float
    rounded_cut: Partition
    rank_one_gap: float
    sweeps_used: int
    converged: bool
    sweep_objectives: list


def solve_sdp(graph, mu, config=None):
    """Solve the factored SDP on ``graph`` with density offset ``mu``.

    Returns the factor matrix, the objective <A - mu*J, VV^T>, a cut read
    off the top singular vector of V, and rank_one_gap = 1 - s1(V)^2 / n
    measuring how far X is from a rank-one (exactly two-sided) solution.
    """
    if config is None:
        config = SolverConfig()
    n = graph.num_vertices
    if n < 2:
        raise ValueError("need at least two vertices")
    if mu < 0:
        raise ValueError("mu must be non-negative")
    mu = float(mu)
    r = config.resolve_rank(n)

    rng = np.random.default_rng(config.seed)
    V = rng.standard_normal((n, r))
    norms = np.linalg.norm(V, axis=1)
    while np.any(norms < _STALL_NORM):
        V[norms < _STALL_NORM] = rng.standard_normal((int((norms < _STALL_NORM).sum()), r))
        norms = np.linalg.norm(V, axis=1)
    V /= norms[:, None]

    adj = graph.adjacency
    indptr, indices = adj.indptr, adj.indices

    def objective(W):
        s = W.sum(axis=0)
        return float((W * (adj @ W)).sum() - mu * (s @ s))

    obj = objective(V)
    history = [obj]
    running = V.sum(axis=0)
    converged = False
    sweeps_used = 0
    for sweep in range(1, config.max_sweeps + 1):
        sweeps_used = sweep
        for i in range(n):
            row = V[i]
            c = V[indices[indptr[i]:indptr[i + 1]]].sum(axis=0)
            c -= mu * (running - row)
            nc = np.linalg.norm(c)
            if nc < _STALL_NORM:
                continue
            c /= nc
            running += c - row
            V[i] = c
        running = V.sum(axis=0)
        new_obj = objective(V)
        if new_obj < obj - 1e-8 * (1.0 + abs(new_obj)):
            raise RuntimeError("coordinate ascent lost monotonicity")
        gain = new_obj - obj
        obj = new_obj
        history.append(obj)
        if gain < config.objective_tolerance * (1.0 + abs(obj)):
            converged = True
            break

    top_sv, top_vec = _top_singular(V)
    signs = np.where(top_vec >= 0.0, 1, -1).astype(np.int8)
    if signs[0] < 0:
        signs = -signs
    gap = 1.0 - (top_sv * top_sv) / n
    return SdpSolution(
        factors=V,
        objective=obj,
        rounded_cut=Partition(graph.vertex_ids, signs),
        rank_one_gap=float(min(max(gap, 0.0), 1.0)),
        sweeps_used=sweeps_used,
        converged=converged,
        sweep_objectives=history,
    )


def _top_singular(V):
    u, s, _ = np.linalg.svd(V, full_matrices=False)
    return float(s[0]), u[:, 0]


def objective_value(graph, mu, partition):
    """Objective of the rank-one point g g^T: g^T A g - mu (sum g)^2."""
    g = partition.sign_vector(graph)
    return float(g @ (graph.adjacency @ g) - mu * g.sum() ** 2)


def brute_force_max(graph, mu, balanced_only=False):
    """Exact maximizer over sign vectors by enumeration (n <= 24).

    Fixes the smallest vertex to +1 (the objective is flip-invariant) and
    scans the remaining assignments in lexicographic order with -1 before
    +1, returning the first maximizer. With ``balanced_only`` the scan is
    restricted to even splits and n must be even.
    """
    n = graph.num_vertices
    if n < 1:
        raise ValueError("graph has no vertices")
    if n > 24:
        raise ValueError("enumeration limited to n <= 24")
    if balanced_only and n % 2:
        raise ValueError("balanced enumeration needs even n")
    mu = float(mu)

    e = graph.edges
    if e.size:
        uc = graph.indices_of(e[:, 0])
        vc = graph.indices_of(e[:, 1])

    total = 1 << (n - 1)
    chunk = 1 << 16
    shifts = np.arange(n - 2, -1, -1, dtype=np.uint64)
    best_val = -math.inf
    best_signs = None
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        signs = np.empty((ks.size, n), dtype=np.int8)
        signs[:, 0] = 1
        if n > 1:
            bits = (ks[:, None] >> shifts) & np.uint64(1)
            signs[:, 1:] = 2 * bits.astype(np.int8) - 1
        if balanced_only:
            signs = signs[signs.sum(axis=1) == 0]
            if signs.size == 0:
                continue
        sf = signs.astype(np.float64)
        quad = 2.0 * (sf[:, uc] * sf[:, vc]).sum(axis=1) if e.size else np.zeros(sf.shape[0])
        vals = quad - mu * sf.sum(axis=1) ** 2
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_signs = signs[j].copy()
    return Partition(graph.vertex_ids, best_signs), best_val
