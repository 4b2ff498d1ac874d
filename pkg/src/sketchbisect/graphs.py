"""Stochastic block model graphs, vertex sketches, and edge-list I/O.

Graphs are simple and undirected. Every vertex carries a stable integer
label: induced subgraphs keep the labels of the parent graph, which lets
a cut found on a sketch be compared against, or extended to, the full
vertex set without any index translation.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class SbmParams:
    """Two-block stochastic block model with intra-rate p and inter-rate q."""

    n1: int
    n2: int
    p: float
    q: float

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("block sizes must be positive")
        for name in ("p", "q"):
            r = getattr(self, name)
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {r}")

    @property
    def n(self):
        return self.n1 + self.n2

    @property
    def imbalance(self):
        """Absolute block size difference |n1 - n2|."""
        return abs(self.n1 - self.n2)


@dataclass(frozen=True)
class LogScaleParams:
    """Edge rates on the logarithmic scale: p = alpha*ln(n)/n, q = beta*ln(n)/n.

    This is the scaling regime where exact recovery of the planted cut has a
    sharp threshold, so experiment grids are expressed in (alpha, beta).
    """

    alpha: float
    beta: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")

    def to_sbm_params(self, n1=None, n2=None):
        """Convert to raw rates, clamping to [0, 1] with a warning.

        By default the two blocks split ``n`` evenly (``n`` must then be
        even); pass ``n1`` and ``n2`` for an unbalanced split with
        n1 + n2 == n.
        """
        if n1 is None and n2 is None:
            if self.n % 2:
                raise ValueError("n must be even for a balanced split")
            n1 = n2 = self.n // 2
        elif n1 is None or n2 is None or n1 + n2 != self.n:
            raise ValueError("n1 and n2 must be given together and sum to n")
        scale = math.log(self.n) / self.n
        p = self.alpha * scale
        q = self.beta * scale
        if p > 1.0 or q > 1.0:
            warnings.warn(
                f"edge rate exceeds 1 at n={self.n} "
                f"(p={p:.4f}, q={q:.4f}); clamping to 1",
                stacklevel=2,
            )
            p = min(p, 1.0)
            q = min(q, 1.0)
        return SbmParams(n1=n1, n2=n2, p=p, q=q)


class Graph:
    """Immutable simple undirected graph over labelled vertices.

    ``vertex_ids`` is kept sorted ascending; adjacency rows follow that
    order. Neighbor lists are sorted, and the edge list is stored in
    lexicographic (u < v) order, so all derived quantities are
    deterministic functions of the edge set.
    """

    def __init__(self, num_vertices, edges=(), vertex_ids=None):
        n = int(num_vertices)
        if n < 0:
            raise ValueError("num_vertices must be non-negative")
        if vertex_ids is None:
            ids = np.arange(n, dtype=np.int64)
        else:
            ids = np.asarray(vertex_ids, dtype=np.int64).copy()
            if ids.shape != (n,):
                raise ValueError("vertex_ids must have length num_vertices")
            ids.sort()
            if n and np.any(np.diff(ids) == 0):
                raise ValueError("duplicate vertex ids")
        self._ids = ids
        self._ids.flags.writeable = False

        e = np.asarray(edges, dtype=np.int64)
        if e.size == 0:
            e = np.empty((0, 2), dtype=np.int64)
        if e.ndim != 2 or e.shape[1] != 2:
            raise ValueError("edges must be pairs of vertex ids")
        rows = np.column_stack([self.indices_of(e[:, 0]), self.indices_of(e[:, 1])])
        if np.any(rows[:, 0] == rows[:, 1]):
            raise ValueError("self-loops are not allowed")
        rows = np.sort(rows, axis=1)
        rows = np.unique(rows, axis=0) if rows.size else rows
        self._edge_rows = rows
        self._edge_rows.flags.writeable = False

        m = rows.shape[0]
        data = np.ones(2 * m)
        coo_r = np.concatenate([rows[:, 0], rows[:, 1]])
        coo_c = np.concatenate([rows[:, 1], rows[:, 0]])
        adj = sp.csr_matrix((data, (coo_r, coo_c)), shape=(n, n))
        adj.sort_indices()
        self._adj = adj
        self._degrees = np.diff(adj.indptr).astype(np.int64)
        self._degrees.flags.writeable = False

    @property
    def num_vertices(self):
        return self._ids.shape[0]

    @property
    def vertex_ids(self):
        return self._ids

    @property
    def edge_count(self):
        return self._edge_rows.shape[0]

    @property
    def edges(self):
        """Edge list as label pairs, lexicographically sorted with u < v."""
        if self._edge_rows.size == 0:
            return np.empty((0, 2), dtype=np.int64)
        return self._ids[self._edge_rows]

    @property
    def adjacency(self):
        """Symmetric 0/1 CSR adjacency; treat as read-only."""
        return self._adj

    @property
    def degrees(self):
        return self._degrees

    def indices_of(self, vertices):
        """Map vertex labels to adjacency row indices (vectorized)."""
        v = np.asarray(vertices, dtype=np.int64)
        pos = np.searchsorted(self._ids, v)
        ok = (pos < self.num_vertices) & (self._ids[np.minimum(pos, max(self.num_vertices - 1, 0))] == v) if self.num_vertices else np.zeros(v.shape, bool)
        if not np.all(ok):
            bad = v[~ok]
            raise KeyError(f"unknown vertex id(s): {bad[:5].tolist()}")
        return pos

    def neighbors(self, v):
        """Sorted labels adjacent to v."""
        i = int(self.indices_of([v])[0])
        cols = self._adj.indices[self._adj.indptr[i]:self._adj.indptr[i + 1]]
        return self._ids[cols]

    def degree(self, v):
        i = int(self.indices_of([v])[0])
        return int(self._degrees[i])

    def has_edge(self, u, v):
        i, j = self.indices_of([u, v])
        if i == j:
            return False
        cols = self._adj.indices[self._adj.indptr[i]:self._adj.indptr[i + 1]]
        return bool(np.searchsorted(cols, j) < cols.size and cols[np.searchsorted(cols, j)] == j)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._ids, other._ids) and np.array_equal(
            self._edge_rows, other._edge_rows
        )

    def __repr__(self):
        return f"Graph(n={self.num_vertices}, m={self.edge_count})"


class Partition:
    """Assignment of each vertex in its domain to side +1 or -1."""

    def __init__(self, ids, signs):
        ids = np.asarray(ids, dtype=np.int64).copy()
        signs = np.asarray(signs, dtype=np.int64)
        if ids.shape != signs.shape or ids.ndim != 1:
            raise ValueError("ids and signs must be matching 1-d arrays")
        if signs.size and not np.all(np.abs(signs) == 1):
            raise ValueError("signs must be +1 or -1")
        order = np.argsort(ids)
        ids = ids[order]
        if ids.size and np.any(np.diff(ids) == 0):
            raise ValueError("duplicate vertex ids")
        self._ids = ids
        self._signs = signs[order].astype(np.int8)
        self._ids.flags.writeable = False
        self._signs.flags.writeable = False

    @classmethod
    def from_side_map(cls, side):
        items = sorted(side.items())
        return cls([v for v, _ in items], [s for _, s in items])

    @classmethod
    def from_sides(cls, plus, minus):
        plus = list(plus)
        minus = list(minus)
        return cls(plus + minus, [1] * len(plus) + [-1] * len(minus))

    @property
    def ids(self):
        return self._ids

    @property
    def signs(self):
        return self._signs

    @property
    def side(self):
        """Mapping vertex id -> sign (fresh dict)."""
        return {int(v): int(s) for v, s in zip(self._ids, self._signs)}

    @property
    def n_plus(self):
        return int(np.count_nonzero(self._signs == 1))

    @property
    def n_minus(self):
        return int(np.count_nonzero(self._signs == -1))

    def __len__(self):
        return self._ids.shape[0]

    def sign_of(self, v):
        pos = np.searchsorted(self._ids, v)
        if pos >= len(self) or self._ids[pos] != v:
            raise KeyError(f"vertex {v} not in partition")
        return int(self._signs[pos])

    def side_vertices(self, sign):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return self._ids[self._signs == sign]

    def sign_vector(self, graph):
        """Signs as a float vector aligned with graph.vertex_ids."""
        if not np.array_equal(self._ids, graph.vertex_ids):
            raise ValueError("partition domain does not match graph vertices")
        return self._signs.astype(np.float64)

    def restrict(self, vertices):
        v = np.unique(np.asarray(vertices, dtype=np.int64))
        pos = np.searchsorted(self._ids, v)
        ok = (pos < len(self)) & (self._ids[np.minimum(pos, max(len(self) - 1, 0))] == v) if len(self) else np.zeros(v.shape, bool)
        if not np.all(ok):
            raise KeyError("restriction outside partition domain")
        return Partition(v, self._signs[pos])

    def equals_up_to_flip(self, other):
        """True when both cuts agree exactly or after a global sign flip."""
        if not np.array_equal(self._ids, other._ids):
            return False
        return np.array_equal(self._signs, other._signs) or np.array_equal(
            self._signs, -other._signs
        )

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self._ids, other._ids) and np.array_equal(
            self._signs, other._signs
        )

    def __repr__(self):
        return f"Partition(n={len(self)}, +{self.n_plus}/-{self.n_minus})"


def sample_sbm(params, seed):
    """Draw a graph from the block model plus its planted partition.

    Pair indicators are drawn in one pass over the i < j pairs in
    lexicographic order, so a given seed yields the same edge set on every
    platform. The first block gets labels 0..n1-1 and side +1.
    """
    rng = np.random.default_rng(seed)
    n = params.n
    iu, ju = np.triu_indices(n, k=1)
    same = (iu < params.n1) == (ju < params.n1)
    probs = np.where(same, params.p, params.q)
    keep = rng.random(iu.size) < probs
    graph = Graph(n, np.column_stack([iu[keep], ju[keep]]))
    signs = np.ones(n, dtype=np.int8)
    signs[params.n1:] = -1
    return graph, Partition(np.arange(n), signs)


def bernoulli_vertex_sample(graph, gamma, seed):
    """Keep each vertex independently with probability gamma; return kept labels."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    keep = rng.random(graph.num_vertices) < gamma
    return graph.vertex_ids[keep]


def induced_subgraph(graph, vertices):
    """Subgraph induced on the given labels, labels preserved."""
    verts = np.unique(np.asarray(vertices, dtype=np.int64))
    rows = graph.indices_of(verts)
    inset = np.zeros(graph.num_vertices, dtype=bool)
    inset[rows] = True
    er = graph._edge_rows
    kept = er[inset[er[:, 0]] & inset[er[:, 1]]] if er.size else er
    return Graph(verts.size, graph.vertex_ids[kept], vertex_ids=verts)


def edges_to_set(graph, v, subset):
    """Number of edges from vertex v into the vertex set ``subset``."""
    sub = np.unique(np.asarray(list(subset) if isinstance(subset, set) else subset, dtype=np.int64))
    if sub.size == 0:
        graph.indices_of([v])
        return 0
    nb = graph.neighbors(v)
    return int(np.isin(nb, sub, assume_unique=False).sum())


def save_graph(graph, path):
    """Write edge-list format: header ``n <count>`` then one ``u v`` line per edge.

    Requires contiguous labels 0..n-1 (the on-disk format has no separate
    vertex table).
    """
    n = graph.num_vertices
    if not np.array_equal(graph.vertex_ids, np.arange(n)):
        raise ValueError("edge-list format requires vertex ids 0..n-1")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"n {n}\n")
        for u, v in graph.edges:
            fh.write(f"{u} {v}\n")


def load_graph(path):
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise ValueError("missing 'n <count>' header")
    n = int(lines[0].split()[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, edges)


def save_partition(partition, path):
    """Write one ``vertex sign`` line per vertex, sorted by vertex id."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for v, s in zip(partition.ids, partition.signs):
            fh.write(f"{v} {s}\n")


def load_partition(path):
    ids = []
    signs = []
    with open(path, "r", encoding="ascii") as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln:
                continue
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"malformed partition line: {ln!r}")
            ids.append(int(parts[0]))
            signs.append(int(parts[1]))
    return Partition(ids, signs)
