"""Immutable undirected simple graphs with component and degree analysis.

Nodes are dense ids 0..n-1. Adjacency lists are sorted ascending and
symmetric, so two graphs are equal iff their serializations are
byte-equal. All analysis routines treat the graph as read-only; the
class is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Canonical undirected simple graph.

    adjacency[i] is the sorted tuple of neighbors of node i; no self
    loops, no duplicates, j in adjacency[i] iff i in adjacency[j].
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edge_count: int

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edges as (lo, hi) int64 arrays with lo < hi, sorted by (lo, hi)."""
        degs = np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.n)
        src = np.repeat(np.arange(self.n, dtype=np.int64), degs)
        if src.size:
            dst = np.concatenate([np.asarray(a, dtype=np.int64) for a in self.adjacency if a])
        else:
            dst = np.empty(0, dtype=np.int64)
        keep = src < dst
        return src[keep], dst[keep]

    def edges(self) -> Iterator[tuple[int, int]]:
        lo, hi = self.edge_arrays
        return zip(lo.tolist(), hi.tolist())

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class ComponentSummary:
    component_count: int
    sizes: tuple[int, ...]          # descending
    cmax_size: int
    labels: tuple[int, ...]         # labels[v] indexes into sizes

    @property
    def connected(self) -> bool:
        return self.component_count == 1


@dataclass(frozen=True)
class DegreeStats:
    min_degree: int
    max_degree: int
    mean_degree: float


def _adjacency_from_sorted_edges(n: int, lo: np.ndarray, hi: np.ndarray) -> tuple[tuple[int, ...], ...]:
    # lo/hi must already be deduplicated with lo < hi.
    both = np.concatenate([lo, hi])
    other = np.concatenate([hi, lo])
    order = np.lexsort((other, both))
    sb = both[order]
    so = other[order].tolist()
    starts = np.searchsorted(sb, np.arange(n + 1)).tolist()
    return tuple(tuple(so[starts[i]:starts[i + 1]]) for i in range(n))


def _from_edge_arrays(n: int, lo: np.ndarray, hi: np.ndarray) -> Graph:
    """Build a Graph from validated, deduplicated, sorted edge arrays."""
    g = Graph(n=n, adjacency=_adjacency_from_sorted_edges(n, lo, hi), edge_count=int(lo.size))
    g.__dict__["edge_arrays"] = (lo, hi)
    return g


def new_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Create a canonical graph; duplicate pairs collapse to one edge.

    Raises ValueError on out-of-range endpoints or self-loops.
    """
    if n < 0:
        raise ValueError(f"node count must be nonnegative, got {n}")
    pairs = np.asarray(list(edges), dtype=np.int64)
    if pairs.size == 0:
        empty = np.empty(0, dtype=np.int64)
        return _from_edge_arrays(n, empty, empty)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValueError("edges must be (u, v) pairs")
    u, v = pairs[:, 0], pairs[:, 1]
    if (u < 0).any() or (v < 0).any() or (u >= n).any() or (v >= n).any():
        raise ValueError("edge endpoint out of range")
    if (u == v).any():
        raise ValueError("self-loops are not allowed")
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    codes = np.unique(lo * n + hi)
    return _from_edge_arrays(n, codes // n, codes % n)


def _component_roots(g: Graph) -> list[int]:
    # Union-find with path halving + union by size.
    parent = list(range(g.n))
    size = [1] * g.n
    lo, hi = g.edge_arrays
    for a, b in zip(lo.tolist(), hi.tolist()):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
    # Flatten so every node points at its root.
    for v in range(g.n):
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            parent[v], v = r, parent[v]
    return parent


def components(g: Graph) -> ComponentSummary:
    """Label connected components; components are ordered by (size desc, smallest node asc)."""
    roots = _component_roots(g)
    by_root: dict[int, list[int]] = {}
    for v, r in enumerate(roots):
        by_root.setdefault(r, []).append(v)
    groups = sorted(by_root.values(), key=lambda grp: (-len(grp), grp[0]))
    labels = [0] * g.n
    for idx, grp in enumerate(groups):
        for v in grp:
            labels[v] = idx
    sizes = tuple(len(grp) for grp in groups)
    return ComponentSummary(
        component_count=len(sizes),
        sizes=sizes,
        cmax_size=sizes[0] if sizes else 0,
        labels=tuple(labels),
    )


def is_connected(g: Graph) -> bool:
    """True iff there is a path between every node pair; a single node is connected."""
    if g.n < 1:
        raise ValueError("connectivity is undefined for an empty graph")
    if g.n == 1:
        return True
    # Count union-find merges without materializing labels.
    parent = list(range(g.n))
    merges = 0
    lo, hi = g.edge_arrays
    for a, b in zip(lo.tolist(), hi.tolist()):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
            merges += 1
            if merges == g.n - 1:
                return True
    return merges == g.n - 1


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on `keep` with dense relabeling; returns (graph, old->new map).

    The relabeling is order-preserving: old ids map to new ids in
    ascending order.
    """
    keep_arr = np.unique(np.asarray(sorted(set(keep)), dtype=np.int64).reshape(-1))
    if keep_arr.size and (keep_arr[0] < 0 or keep_arr[-1] >= g.n):
        raise ValueError("keep set contains out-of-range node id")
    m = int(keep_arr.size)
    newid = np.full(g.n, -1, dtype=np.int64)
    newid[keep_arr] = np.arange(m, dtype=np.int64)
    lo, hi = g.edge_arrays
    sel = (newid[lo] >= 0) & (newid[hi] >= 0)
    # Order-preserving relabel keeps lo < hi and the (lo, hi) sort order.
    sub = _from_edge_arrays(m, newid[lo[sel]], newid[hi[sel]])
    mapping = dict(zip(keep_arr.tolist(), range(m)))
    return sub, mapping


def degree_stats(g: Graph) -> DegreeStats:
    if g.n < 1:
        raise ValueError("degree stats need at least one node")
    degs = [len(a) for a in g.adjacency]
    return DegreeStats(min(degs), max(degs), sum(degs) / g.n)


def to_edgelist_text(g: Graph) -> str:
    """Canonical text serialization: `# n=<n>` then sorted `u v` lines."""
    lo, hi = g.edge_arrays
    lines = [f"# n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in zip(lo.tolist(), hi.tolist()))
    return "\n".join(lines) + "\n"


def from_edgelist_text(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# n="):
        raise ValueError("edge list must start with '# n=<count>'")
    n = int(lines[0][4:])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return new_graph(n, edges)
