"""Independent oracles and graph generators shared by the test modules.

The canonicalizer and census here are deliberately written from scratch
(direct permutation minimum, all-subsets connectivity scan) so they share
no code path with the package internals they check.
"""
from __future__ import annotations

import random
from collections import Counter
from itertools import combinations, permutations

from motifstab.graphio import DirectedGraph

_CANON_MEMO: dict[tuple[int, int], int] = {}


def encode_bits(matrix) -> int:
    """Row-major adjacency bit value, M[0][0] most significant."""
    k = len(matrix)
    bits = 0
    for i in range(k):
        for j in range(k):
            bits = (bits << 1) | (1 if matrix[i][j] else 0)
    return bits


def brute_canonical_bits(matrix) -> int:
    """Minimum encoding over all simultaneous row/column permutations."""
    k = len(matrix)
    key = (k, encode_bits(matrix))
    cached = _CANON_MEMO.get(key)
    if cached is not None:
        return cached
    best = None
    for p in permutations(range(k)):
        permuted = [[matrix[p.index(i)][p.index(j)] for j in range(k)] for i in range(k)]
        # p maps old->new: permuted[new_i][new_j] = matrix[old_i][old_j]
        value = encode_bits(permuted)
        if best is None or value < best:
            best = value
    _CANON_MEMO[key] = best
    return best


def subset_matrix(g: DirectedGraph, nodes) -> list[list[int]]:
    return [[1 if (u != v and g.has_edge(u, v)) else 0 for v in nodes] for u in nodes]


def weakly_connected_subset(g: DirectedGraph, nodes) -> bool:
    nodes = list(nodes)
    index = {u: i for i, u in enumerate(nodes)}
    adj = [set() for _ in nodes]
    for i, u in enumerate(nodes):
        for j, v in enumerate(nodes):
            if i != j and (g.has_edge(u, v) or g.has_edge(v, u)):
                adj[i].add(j)
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(nodes)


def brute_census(g: DirectedGraph, size: int) -> Counter:
    """All-subsets census oracle: Counter canonical-bits -> count."""
    counts: Counter = Counter()
    for nodes in combinations(range(g.node_count), size):
        if weakly_connected_subset(g, nodes):
            counts[brute_canonical_bits(subset_matrix(g, nodes))] += 1
    return counts


def random_digraph(n: int, p: float, seed: int) -> DirectedGraph:
    """Each ordered pair (u, v), u != v, is an edge independently with prob p."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return DirectedGraph.from_edges(n, edges)


def gnm_digraph(n: int, m: int, seed: int) -> DirectedGraph:
    """Uniform simple digraph with exactly m edges."""
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add((u, v))
    return DirectedGraph.from_edges(n, edges)
