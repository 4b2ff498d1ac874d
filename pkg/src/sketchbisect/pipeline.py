"""Sketch-and-solve driver: estimate density, subsample, solve, certify, vote.

The full graph is only touched twice: once to estimate the density offset
mu, and once to extend the sketch solution by majority vote. The SDP and
its certificate run on the induced subgraph of a Bernoulli vertex sample,
so the expensive steps cost a gamma-fraction of the full problem.
"""

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .certificate import CERTIFIED, CertificateTolerances, check_certificate
from .encoding import estimate_mu
from .graphs import Partition, bernoulli_vertex_sample, induced_subgraph
from .seeding import spawn_seed
from .solver import SolverConfig, solve_sdp

TIE_FAIL = "FAIL"
TIE_TO_FIRST = "TO_FIRST"
TIE_RANDOM = "RANDOM"

_RANK_ONE_GAP_MAX = 1e-6


@dataclass(frozen=True)
class SketchConfig:
    """Configuration for one sketch-and-solve run.

    ``gamma`` and ``mu`` accept either a number or "auto". Automatic gamma
    needs the log-scale rates ``alpha`` and ``beta``; automatic mu is the
    observed edge density of the full graph. ``seed`` drives the vertex
    sample, the solver initialization, the fallback cut, and random tie
    breaking, through independent derived streams.
    """

    gamma: object = "auto"
    seed: int = 0
    solver: SolverConfig = field(default_factory=SolverConfig)
    certify: bool = True
    tie_rule: str = TIE_FAIL
    mu: object = "auto"
    alpha: object = None
    beta: object = None
    certificate_tolerances: CertificateTolerances = field(
        default_factory=CertificateTolerances
    )

    def __post_init__(self):
        if self.gamma != "auto":
            g = float(self.gamma)
            if not 0.0 < g <= 1.0:
                raise ValueError("gamma must lie in (0, 1]")
        if self.mu != "auto" and float(self.mu) < 0:
            raise ValueError("mu must be non-negative")
        if self.tie_rule not in (TIE_FAIL, TIE_TO_FIRST, TIE_RANDOM):
            raise ValueError(f"unknown tie rule {self.tie_rule!r}")


@dataclass
class PipelineResult:
    full_partition: Partition
    sketch_vertices: np.ndarray
    sketch_partition: Partition
    mu_used: float
    sdp: object
    certificate: object
    fell_back_random: bool
    unassigned: np.ndarray
    timings: dict


def auto_gamma(alpha, beta):
    """Default sampling rate min(1, 4 / (sqrt(alpha) - sqrt(beta))^2)."""
    if not alpha > beta > 0:
        raise ValueError("need alpha > beta > 0")
    return min(1.0, 4.0 / (math.sqrt(alpha) - math.sqrt(beta)) ** 2)


def vote_extend(graph, side_plus, side_minus, tie_rule=TIE_FAIL, seed=0):
    """Assign every vertex outside the two seed sets by majority vote.

    A vertex joins the side it has strictly more edges to. Ties follow
    ``tie_rule``: FAIL leaves the vertex unassigned, TO_FIRST sends it to
    the +1 side, RANDOM flips a fair coin per tied vertex (in ascending
    vertex order, driven by ``seed``). Returns the partition over all
    assigned vertices plus the array of unassigned labels.
    """
    plus = np.unique(np.asarray(list(side_plus), dtype=np.int64))
    minus = np.unique(np.asarray(list(side_minus), dtype=np.int64))
    if plus.size == 0 or minus.size == 0:
        raise ValueError("both seed sides must be non-empty")
    if np.intersect1d(plus, minus).size:
        raise ValueError("seed sides must be disjoint")
    rows_plus = graph.indices_of(plus)
    rows_minus = graph.indices_of(minus)

    n = graph.num_vertices
    in_seed = np.zeros(n, dtype=bool)
    in_seed[rows_plus] = True
    in_seed[rows_minus] = True
    outside = np.flatnonzero(~in_seed)

    ind_plus = np.zeros(n)
    ind_plus[rows_plus] = 1.0
    ind_minus = np.zeros(n)
    ind_minus[rows_minus] = 1.0
    votes_plus = (graph.adjacency @ ind_plus)[outside]
    votes_minus = (graph.adjacency @ ind_minus)[outside]

    signs = np.zeros(outside.size, dtype=np.int8)
    signs[votes_plus > votes_minus] = 1
    signs[votes_minus > votes_plus] = -1
    tied = signs == 0
    if np.any(tied):
        if tie_rule == TIE_TO_FIRST:
            signs[tied] = 1
        elif tie_rule == TIE_RANDOM:
            rng = np.random.default_rng(seed)
            signs[tied] = np.where(rng.random(int(tied.sum())) < 0.5, 1, -1)
        # TIE_FAIL leaves them at 0: unassigned

    assigned = signs != 0
    ids = np.concatenate([plus, minus, graph.vertex_ids[outside[assigned]]])
    sgn = np.concatenate(
        [
            np.ones(plus.size, dtype=np.int8),
            -np.ones(minus.size, dtype=np.int8),
            signs[assigned],
        ]
    )
    unassigned = graph.vertex_ids[outside[~assigned]]
    return Partition(ids, sgn), unassigned


def sketch_and_solve(graph, config=None):
    """Run the full pipeline on ``graph`` and report every intermediate.

    The rounded sketch cut is accepted only when the solver output is
    numerically rank one (rank_one_gap <= 1e-6) and, unless certification
    is disabled, the dual certificate confirms unique optimality. On
    rejection the sketch is assigned by fair coin flips instead, and the
    result is flagged with ``fell_back_random``.
    """
    config = config or SketchConfig()
    timings = {}

    t0 = time.perf_counter()
    if config.mu == "auto":
        mu_used = estimate_mu(graph).mu
    else:
        mu_used = float(config.mu)
    timings["estimate"] = time.perf_counter() - t0

    if config.gamma == "auto":
        if config.alpha is None or config.beta is None:
            raise ValueError("automatic gamma needs alpha and beta")
        gamma = auto_gamma(config.alpha, config.beta)
    else:
        gamma = float(config.gamma)

    t0 = time.perf_counter()
    sketch_vertices = bernoulli_vertex_sample(graph, gamma, spawn_seed(config.seed, 1))
    sub = induced_subgraph(graph, sketch_vertices)
    timings["sample"] = time.perf_counter() - t0
    if sub.num_vertices < 2:
        raise ValueError(
            f"vertex sample too small to solve ({sub.num_vertices} kept); "
            "raise gamma or retry with another seed"
        )

    t0 = time.perf_counter()
    solver_cfg = replace(config.solver, seed=spawn_seed(config.seed, 2))
    sdp = solve_sdp(sub, mu_used, solver_cfg)
    timings["solve"] = time.perf_counter() - t0

    accept = sdp.rank_one_gap <= _RANK_ONE_GAP_MAX
    cert = None
    t0 = time.perf_counter()
    if accept and config.certify:
        cert = check_certificate(
            sub, sdp.rounded_cut, mu_used, config.certificate_tolerances
        )
        accept = cert.verdict == CERTIFIED
    timings["certify"] = time.perf_counter() - t0

    if accept:
        sketch_partition = sdp.rounded_cut
        fell_back = False
    else:
        rng = np.random.default_rng(spawn_seed(config.seed, 3))
        coin = np.where(rng.random(sub.num_vertices) < 0.5, 1, -1).astype(np.int8)
        sketch_partition = Partition(sub.vertex_ids, coin)
        fell_back = True

    t0 = time.perf_counter()
    if sketch_vertices.size == graph.num_vertices:
        full_partition = sketch_partition
        unassigned = np.empty(0, dtype=np.int64)
    else:
        full_partition, unassigned = vote_extend(
            graph,
            sketch_partition.side_vertices(1),
            sketch_partition.side_vertices(-1),
            tie_rule=config.tie_rule,
            seed=spawn_seed(config.seed, 4),
        )
    timings["extend"] = time.perf_counter() - t0

    return PipelineResult(
        full_partition=full_partition,
        sketch_vertices=sketch_vertices,
        sketch_partition=sketch_partition,
        mu_used=mu_used,
        sdp=sdp,
        certificate=cert,
        fell_back_random=fell_back,
        unassigned=unassigned,
        timings=timings,
    )


def full_solve(graph, mu="auto", solver=None, certify=True, tie_rule=TIE_FAIL, seed=0):
    """Solve on the whole vertex set (gamma = 1); same result shape as the sketch."""
    config = SketchConfig(
        gamma=1.0,
        seed=seed,
        solver=solver or SolverConfig(),
        certify=certify,
        tie_rule=tie_rule,
        mu=mu,
    )
    return sketch_and_solve(graph, config)


def recovered_planted(planted, result):
    """True when the pipeline assigned every vertex and matched the planted cut."""
    if result.unassigned.size:
        return False
    return result.full_partition.equals_up_to_flip(planted)
