"""Shared test helpers.

The dense constructions here are deliberately independent of the library
internals: they rebuild matrices from the edge list with plain numpy so
that matrix-free code paths are checked against a second route.
"""

import numpy as np
import pytest


def dense_adjacency(graph):
    n = graph.num_vertices
    ids = {int(v): i for i, v in enumerate(graph.vertex_ids)}
    a = np.zeros((n, n))
    for u, v in graph.edges:
        i, j = ids[int(u)], ids[int(v)]
        a[i, j] = a[j, i] = 1.0
    return a


def dense_objective(graph, mu):
    n = graph.num_vertices
    return dense_adjacency(graph) - mu * np.ones((n, n))


def dense_certificate(graph, partition, mu):
    """Z = D_in - D_out - mu*(n1 - n2)*diag(g) - A + mu*J, built densely."""
    n = graph.num_vertices
    a = dense_adjacency(graph)
    g = np.array([partition.sign_of(int(v)) for v in graph.vertex_ids], dtype=float)
    d_in = np.zeros(n)
    d_out = np.zeros(n)
    for i in range(n):
        for j in range(n):
            if a[i, j]:
                if g[i] == g[j]:
                    d_in[i] += 1
                else:
                    d_out[i] += 1
    n1 = int((g > 0).sum())
    n2 = n - n1
    return (
        np.diag(d_in - d_out - mu * (n1 - n2) * g)
        - a
        + mu * np.ones((n, n))
    )


@pytest.fixture
def two_triangles():
    from sketchbisect import Graph, Partition

    g = Graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
    planted = Partition(range(6), [1, 1, 1, -1, -1, -1])
    return g, planted


@pytest.fixture
def k22_cross():
    """Complete bipartite K_{2,2} with the planted cut across the bipartition."""
    from sketchbisect import Graph, Partition

    g = Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    planted = Partition(range(4), [1, 1, -1, -1])
    return g, planted


def random_test_graph(rng, n, p):
    """Plain G(n, p) built directly from pair coin flips."""
    from sketchbisect import Graph

    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)
