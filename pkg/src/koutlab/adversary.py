"""Uniform random node deletion and residual-structure measurements.

Deletion is applied to an already-built graph (post-construction
attack): the residual is the induced subgraph on the survivors, which
is a different distribution from generating on n-gamma nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, components, induced_subgraph


@dataclass(frozen=True)
class DeletionSpec:
    """Number of nodes removed; selection is always uniform without replacement."""

    gamma: int

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")


def delete_random_nodes(
    g: Graph, gamma: int, rng: np.random.Generator
) -> tuple[Graph, frozenset[int], dict[int, int]]:
    """Remove a uniformly random gamma-subset of nodes.

    Returns (residual graph, removed node ids, old->new id map for the
    survivors). gamma must leave at least one node.
    """
    if not 0 <= gamma <= g.n - 1:
        raise ValueError(f"need 0 <= gamma <= n-1, got gamma={gamma} n={g.n}")
    removed = rng.choice(g.n, size=gamma, replace=False)
    mask = np.ones(g.n, dtype=bool)
    mask[removed] = False
    residual, mapping = induced_subgraph(g, np.flatnonzero(mask).tolist())
    return residual, frozenset(int(v) for v in removed), mapping


def nodes_outside_cmax(g: Graph) -> int:
    """Number of nodes outside the largest connected component."""
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    return g.n - components(g).cmax_size
