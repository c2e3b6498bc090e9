"""Induced-subgraph census for directed graphs: canonical motif ids,
exhaustive class enumeration, and exact connected-subgraph counting.

A subgraph on k nodes is encoded as the integer whose binary digits are the
adjacency matrix read row-major, M[0][0] most significant.  The canonical id
of an isomorphism class is the minimum encoding over all k! simultaneous
row/column relabelings.  Counting walks every weakly connected induced
subgraph exactly once via ordered node expansion (ESU-style), classifying
each subset through a precomputed encoding -> canonical-id table.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

from .graphio import DirectedGraph

SubgraphInstance = tuple[int, ...]


@dataclass(frozen=True, order=True)
class MotifId:
    """Isomorphism class of connected directed subgraphs on `size` nodes."""

    size: int
    id: int

    @property
    def edge_count(self) -> int:
        return self.id.bit_count()


@dataclass(frozen=True)
class CensusResult:
    size: int
    counts: dict[MotifId, int]
    instances: dict[MotifId, list[SubgraphInstance]] | None = None

    def total(self) -> int:
        return sum(self.counts.values())


def _check_size(size: int) -> None:
    if size not in (3, 4):
        raise ValueError(f"size must be 3 or 4, got {size}")


def _bit(size: int, i: int, j: int) -> int:
    return size * size - 1 - (i * size + j)


@functools.lru_cache(maxsize=None)
def _perm_chunk_tables(size: int) -> tuple[tuple[list[int], list[int]], ...]:
    # For each relabeling, two 256-entry tables that relocate the low/high
    # byte of an encoding in one lookup each (encodings fit in 16 bits).
    nbits = size * size
    tables = []
    for p in itertools.permutations(range(size)):
        move = {}
        for i in range(size):
            for j in range(size):
                move[_bit(size, i, j)] = _bit(size, p[i], p[j])
        lo = [0] * 256
        hi = [0] * 256
        for byte in range(256):
            acc_lo = 0
            acc_hi = 0
            rest = byte
            while rest:
                lsb = rest & -rest
                rest ^= lsb
                b = lsb.bit_length() - 1
                acc_lo |= 1 << move[b]
                if b + 8 < nbits:
                    acc_hi |= 1 << move[b + 8]
            lo[byte] = acc_lo
            hi[byte] = acc_hi
        tables.append((lo, hi))
    return tuple(tables)


def _weakly_connected_encoding(bits: int, size: int) -> bool:
    adj = [0] * size
    for i in range(size):
        for j in range(size):
            if i != j and (bits >> _bit(size, i, j)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        rest = frontier
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            nxt |= adj[lsb.bit_length() - 1]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << size) - 1


@functools.lru_cache(maxsize=None)
def _class_tables(size: int) -> tuple[list[int], tuple[int, ...]]:
    """(encoding -> canonical encoding lookup, sorted connected class ids)."""
    _check_size(size)
    off_positions = [_bit(size, i, j) for i in range(size) for j in range(size) if i != j]
    perms = _perm_chunk_tables(size)
    canon = [0] * (1 << (size * size))
    connected: set[int] = set()
    for pattern in range(1 << len(off_positions)):
        bits = 0
        rest = pattern
        for pos in off_positions:
            if rest & 1:
                bits |= 1 << pos
            rest >>= 1
        lo_byte = bits & 255
        hi_byte = (bits >> 8) & 255
        best = min(lo[lo_byte] | hi[hi_byte] for lo, hi in perms)
        canon[bits] = best
        if _weakly_connected_encoding(bits, size):
            connected.add(best)
    return canon, tuple(sorted(connected))


def class_ids(size: int) -> tuple[int, ...]:
    """Sorted canonical ids of all weakly connected classes of this size."""
    return _class_tables(size)[1]


def enumerate_classes(size: int) -> frozenset[MotifId]:
    """All weakly connected isomorphism classes: 13 for size 3, 199 for size 4."""
    return frozenset(MotifId(size, cid) for cid in class_ids(size))


def canonical_id(adjacency: Sequence[Sequence[int]], size: int | None = None) -> MotifId:
    """Canonical id of a k x k boolean adjacency matrix with zero diagonal."""
    k = len(adjacency)
    if size is None:
        size = k
    if size != k or any(len(row) != k for row in adjacency):
        raise ValueError(f"adjacency must be {size}x{size}")
    _check_size(size)
    bits = 0
    for i in range(k):
        if adjacency[i][i]:
            raise ValueError("adjacency diagonal must be zero")
        for j in range(k):
            if i != j and adjacency[i][j]:
                bits |= 1 << _bit(size, i, j)
    canon, _ = _class_tables(size)
    return MotifId(size, canon[bits])


def representative_edges(motif: MotifId) -> tuple[tuple[int, int], ...]:
    """Edge list of the canonical representative; errors on non-canonical ids."""
    _check_size(motif.size)
    canon, _ = _class_tables(motif.size)
    if not 0 <= motif.id < len(canon) or canon[motif.id] != motif.id:
        raise ValueError(f"{motif.id} is not a canonical id for size {motif.size}")
    edges = []
    for i in range(motif.size):
        for j in range(motif.size):
            if i != j and (motif.id >> _bit(motif.size, i, j)) & 1:
                edges.append((i, j))
    return tuple(edges)


def census(g: DirectedGraph, size: int, retain_instances: bool = False) -> CensusResult:
    """Count every weakly connected induced subgraph on `size` nodes once.

    Each qualifying node subset contributes 1 to its canonical class.  The
    enumeration expands subsets only through nodes larger than the root and
    outside the subset's neighborhood, so no subset is visited twice.  With
    retain_instances, the sorted node tuples are stored per class.
    """
    _check_size(size)
    n = g.node_count
    if n < size:
        raise ValueError(f"graph has {n} nodes, need at least {size}")
    canon, _ = _class_tables(size)
    um = g.und_masks
    om = g.out_masks
    counts: dict[int, int] = {}
    inst: dict[int, list[SubgraphInstance]] | None = {} if retain_instances else None

    if size == 3:
        for a in range(n):
            high = -1 << (a + 1)
            nbh = um[a] | (1 << a)
            ext = um[a] & high
            oa = om[a]
            while ext:
                lsb = ext & -ext
                ext ^= lsb
                b = lsb.bit_length() - 1
                ob = om[b]
                cand = ext | (um[b] & ~nbh & high)
                while cand:
                    lsb_c = cand & -cand
                    cand ^= lsb_c
                    c = lsb_c.bit_length() - 1
                    oc = om[c]
                    code = (
                        ((oa >> b) & 1) << 7
                        | ((oa >> c) & 1) << 6
                        | ((ob >> a) & 1) << 5
                        | ((ob >> c) & 1) << 3
                        | ((oc >> a) & 1) << 2
                        | ((oc >> b) & 1) << 1
                    )
                    cid = canon[code]
                    counts[cid] = counts.get(cid, 0) + 1
                    if inst is not None:
                        tup = (a, b, c) if b < c else (a, c, b)
                        inst.setdefault(cid, []).append(tup)
    else:
        for a in range(n):
            high = -1 << (a + 1)
            nbh1 = um[a] | (1 << a)
            ext1 = um[a] & high
            oa = om[a]
            while ext1:
                lsb = ext1 & -ext1
                ext1 ^= lsb
                b = lsb.bit_length() - 1
                ob = om[b]
                new_b = um[b] & ~nbh1 & high
                ext2 = ext1 | new_b
                nbh2 = nbh1 | new_b
                while ext2:
                    lsb_c = ext2 & -ext2
                    ext2 ^= lsb_c
                    c = lsb_c.bit_length() - 1
                    oc = om[c]
                    cand = ext2 | (um[c] & ~nbh2 & high)
                    while cand:
                        lsb_d = cand & -cand
                        cand ^= lsb_d
                        d = lsb_d.bit_length() - 1
                        od = om[d]
                        code = (
                            ((oa >> b) & 1) << 14
                            | ((oa >> c) & 1) << 13
                            | ((oa >> d) & 1) << 12
                            | ((ob >> a) & 1) << 11
                            | ((ob >> c) & 1) << 9
                            | ((ob >> d) & 1) << 8
                            | ((oc >> a) & 1) << 7
                            | ((oc >> b) & 1) << 6
                            | ((oc >> d) & 1) << 4
                            | ((od >> a) & 1) << 3
                            | ((od >> b) & 1) << 2
                            | ((od >> c) & 1) << 1
                        )
                        cid = canon[code]
                        counts[cid] = counts.get(cid, 0) + 1
                        if inst is not None:
                            tup = tuple(sorted((a, b, c, d)))
                            inst.setdefault(cid, []).append(tup)

    result_counts = {MotifId(size, cid): cnt for cid, cnt in sorted(counts.items())}
    result_inst = None
    if inst is not None:
        result_inst = {MotifId(size, cid): lst for cid, lst in sorted(inst.items())}
    return CensusResult(size=size, counts=result_counts, instances=result_inst)


def uniqueness(instances: Sequence[SubgraphInstance]) -> int:
    """Greedy node-disjoint packing count over instances sorted ascending."""
    selected_nodes: set[int] = set()
    picked = 0
    for tup in sorted(instances):
        if not selected_nodes.intersection(tup):
            selected_nodes.update(tup)
            picked += 1
    return picked
