"""Edge-list parsing and normalization into simple directed graphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class ParseError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyGraphError(ValueError):
    """Normalization left no edges."""


@dataclass(frozen=True)
class RawEdgeList:
    """Edges exactly as read, in file order, labels untouched."""

    edges: tuple[tuple[int, int], ...]
    line_numbers: tuple[int, ...]


@dataclass(frozen=True)
class NormalizationReport:
    self_loops_removed: int
    duplicates_removed: int
    label_map: dict[int, int]


@dataclass(frozen=True)
class DirectedGraph:
    """Simple directed graph with dense node ids 0..n-1.

    Immutable after construction and safe to share across threads.
    Adjacency is kept in several shapes because the census hot loop needs
    O(1) edge membership and fast neighborhood set algebra: sorted tuples
    for iteration, one int bitmask per node for membership tests.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]
    out_adj: tuple[tuple[int, ...], ...]
    in_adj: tuple[tuple[int, ...], ...]
    out_masks: tuple[int, ...]
    und_adj: tuple[tuple[int, ...], ...]
    und_masks: tuple[int, ...]

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "DirectedGraph":
        # insertion order is kept so that normalize round-trips exactly
        edge_list = list(edges)
        out_sets: list[set[int]] = [set() for _ in range(node_count)]
        in_sets: list[set[int]] = [set() for _ in range(node_count)]
        seen: set[tuple[int, int]] = set()
        for u, v in edge_list:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u},{v}) out of range for n={node_count}")
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) not allowed")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            out_sets[u].add(v)
            in_sets[v].add(u)
        out_masks = []
        und_masks = []
        und_adj = []
        for u in range(node_count):
            om = 0
            for v in out_sets[u]:
                om |= 1 << v
            out_masks.append(om)
            nbrs = out_sets[u] | in_sets[u]
            um = 0
            for v in nbrs:
                um |= 1 << v
            und_masks.append(um)
            und_adj.append(tuple(sorted(nbrs)))
        return cls(
            node_count=node_count,
            edges=tuple(edge_list),
            out_adj=tuple(tuple(sorted(s)) for s in out_sets),
            in_adj=tuple(tuple(sorted(s)) for s in in_sets),
            out_masks=tuple(out_masks),
            und_adj=tuple(und_adj),
            und_masks=tuple(und_masks),
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.out_masks[u] >> v) & 1 == 1


def _parse_node_label(token: str, line_number: int) -> int:
    # decimal only: no sign, no underscores, no unicode digits
    if not (token.isascii() and token.isdigit()):
        raise ParseError(line_number, f"expected non-negative integer, got {token!r}")
    return int(token)


def parse_edge_list(text: str | Iterable[str]) -> RawEdgeList:
    """Parse edge-list text: one "src dst [weight]" per line.

    Fields are separated by runs of spaces or tabs.  Lines that are blank or
    start with '#' or '%' are skipped.  The optional weight is parsed and
    discarded.  Both LF and CRLF line endings are accepted.
    """
    if isinstance(text, str):
        lines: Iterable[str] = text.splitlines()
    else:
        lines = text
    edges: list[tuple[int, int]] = []
    line_numbers: list[int] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError(lineno, "expected at least two fields")
        if len(fields) > 3:
            raise ParseError(lineno, f"expected at most three fields, got {len(fields)}")
        src = _parse_node_label(fields[0], lineno)
        dst = _parse_node_label(fields[1], lineno)
        if len(fields) == 3:
            try:
                float(fields[2])
            except ValueError:
                raise ParseError(lineno, f"weight is not a decimal token: {fields[2]!r}") from None
        edges.append((src, dst))
        line_numbers.append(lineno)
    return RawEdgeList(edges=tuple(edges), line_numbers=tuple(line_numbers))


def normalize(raw: RawEdgeList) -> tuple[DirectedGraph, NormalizationReport]:
    """Drop self-loops and duplicate edges, remap labels to dense ids.

    Dense ids are assigned by first appearance (source before target) over
    the surviving edges; labels occurring only in self-loops get no id.
    """
    kept: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0
    for s, t in raw.edges:
        if s == t:
            self_loops += 1
            continue
        if (s, t) in seen:
            duplicates += 1
            continue
        seen.add((s, t))
        kept.append((s, t))
    if not kept:
        raise EmptyGraphError("empty graph")
    label_map: dict[int, int] = {}
    for s, t in kept:
        if s not in label_map:
            label_map[s] = len(label_map)
        if t not in label_map:
            label_map[t] = len(label_map)
    dense = [(label_map[s], label_map[t]) for s, t in kept]
    graph = DirectedGraph.from_edges(len(label_map), dense)
    report = NormalizationReport(
        self_loops_removed=self_loops,
        duplicates_removed=duplicates,
        label_map=label_map,
    )
    return graph, report


def degree_sequences(g: DirectedGraph) -> tuple[list[int], list[int], int]:
    """Per-node out/in degrees plus the number of mutual (bidirected) pairs."""
    out_deg = [len(a) for a in g.out_adj]
    in_deg = [len(a) for a in g.in_adj]
    mutual = 0
    for u, v in g.edges:
        if u < v and g.has_edge(v, u):
            mutual += 1
    return out_deg, in_deg, mutual
