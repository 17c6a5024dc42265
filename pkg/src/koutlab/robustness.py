"""Exact r-reachability / r-robustness decisions and empirical r* extraction.

Robustness checking is co-NP-complete in general, so the exact checker
works over all 2^n node subsets and is capped (default n <= 24). Subsets
are n-bit masks. The fast path precomputes, for every mask m, the
maximum over nodes i in m of |adj(i) \\ m|; a subset is then
"not r-reachable" exactly when that maximum is < r, and a sum-over-
subsets closure finds whether some mask and a subset of its complement
are both non-reachable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError
from .graph import Graph, degree_stats

DEFAULT_CAP = 24
_HARD_CAP = 30  # uint32 mask arithmetic + 2^n working set

_NAIVE_CAP = 10


@dataclass(frozen=True)
class RobustnessResult:
    """Exact robustness profile of one graph instance.

    r_star is the largest r for which the graph is r-robust; per_r holds
    the verdicts for r = 1..r_star+1 (monotone: True up to r_star, then
    False); witness is a disjoint pair of non-reachable sets for the
    first failing r, or None when no check failed (n == 1).
    """

    r_star: int
    per_r: tuple[bool, ...]
    witness: tuple[frozenset[int], frozenset[int]] | None


def adjacency_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for i, nbrs in enumerate(g.adjacency):
        m = 0
        for j in nbrs:
            m |= 1 << j
        masks[i] = m
    return masks


def mask_from_nodes(nodes) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def nodes_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def is_r_reachable(g: Graph, s: int, r: int) -> bool:
    """True iff some node in mask s has at least r neighbors outside s."""
    if s <= 0:
        raise ValueError("subset must be nonempty")
    if s >> g.n:
        raise ValueError("mask has bits outside 0..n-1")
    if r < 1:
        raise ValueError("r must be >= 1")
    adj = adjacency_masks(g)
    rest = s
    while rest:
        i = (rest & -rest).bit_length() - 1
        if (adj[i] & ~s).bit_count() >= r:
            return True
        rest &= rest - 1
    return False


def _check_cap(n: int, cap: int) -> None:
    if n > min(cap, _HARD_CAP):
        raise InfeasibleError(
            f"instance too large for exact robustness checker (n={n}, cap={min(cap, _HARD_CAP)})"
        )


def _max_outside_counts(g: Graph) -> np.ndarray:
    """maxcnt[m] = max over nodes i in m of |adj(i) \\ m|, for all 2^n masks."""
    n = g.n
    size = 1 << n
    masks = np.arange(size, dtype=np.uint32)
    maxcnt = np.zeros(size, dtype=np.uint8)
    for i, adj in enumerate(adjacency_masks(g)):
        cnt = np.bitwise_count(np.uint32(adj) & ~masks).astype(np.uint8)
        in_s = ((masks >> np.uint32(i)) & np.uint32(1)).astype(bool)
        np.maximum(maxcnt, np.where(in_s, cnt, np.uint8(0)), out=maxcnt)
    return maxcnt


def _subset_closure(bad: np.ndarray, n: int) -> np.ndarray:
    """any_bad[m] = True iff some nonempty subset of m is bad. O(2^n * n)."""
    any_bad = bad.copy()
    for b in range(n):
        view = any_bad.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return any_bad


def _minimal_bad_subset(mask: int, bad: np.ndarray, any_bad: np.ndarray) -> int:
    # Strip bits while some proper subset still contains a bad set.
    c = mask
    shrunk = True
    while shrunk:
        shrunk = False
        rest = c
        while rest:
            bit = rest & -rest
            if any_bad[c ^ bit]:
                c ^= bit
                shrunk = True
                break
            rest ^= bit
    assert bad[c]
    return c


def _robust_check(maxcnt: np.ndarray, n: int, r: int):
    """(robust, witness_pair_masks|None) from the precomputed count table."""
    bad = maxcnt < np.uint8(r)
    bad[0] = False
    any_bad = _subset_closure(bad, n)
    violation = bad & any_bad[::-1]
    if not violation.any():
        return True, None
    full = (1 << n) - 1
    m = int(np.argmax(violation))
    s1 = _minimal_bad_subset(m, bad, any_bad)
    s2 = _minimal_bad_subset(full ^ m, bad, any_bad)
    return False, (s1, s2)


def is_r_robust(g: Graph, r: int, cap: int = DEFAULT_CAP):
    """Exact r-robustness decision.

    Returns (True, None) when every pair of disjoint nonempty subsets has
    at least one r-reachable member, else (False, (S1, S2)) with a
    witness pair of disjoint non-reachable node sets.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    _check_cap(g.n, cap)
    robust, pair = _robust_check(_max_outside_counts(g), g.n, r)
    if robust:
        return True, None
    s1, s2 = pair
    return False, (frozenset(nodes_from_mask(s1)), frozenset(nodes_from_mask(s2)))


def naive_is_r_robust(g: Graph, r: int) -> bool:
    """Reference oracle: enumerate every disjoint nonempty subset pair (3^n)."""
    if g.n > _NAIVE_CAP:
        raise ValueError(f"naive oracle limited to n <= {_NAIVE_CAP}")
    if r < 1:
        raise ValueError("r must be >= 1")
    n = g.n
    adj = adjacency_masks(g)
    size = 1 << n
    reachable = [False] * size
    for m in range(1, size):
        ok = False
        rest = m
        while rest:
            i = (rest & -rest).bit_length() - 1
            if (adj[i] & ~m).bit_count() >= r:
                ok = True
                break
            rest &= rest - 1
        reachable[m] = ok
    full = size - 1
    for s1 in range(1, size):
        if reachable[s1]:
            continue
        comp = full ^ s1
        s2 = comp
        while s2:
            if not reachable[s2]:
                return False
            s2 = (s2 - 1) & comp
    return True


def max_robustness(g: Graph, cap: int = DEFAULT_CAP) -> RobustnessResult:
    """Largest r with the graph r-robust, plus per-r verdicts and a witness.

    Searches r upward from 1; r-robustness implies min degree >= r, so
    the search is bounded by the minimum degree. For n == 1 the defining
    quantifier is vacuous and the result is reported as r_star = 0.
    """
    _check_cap(g.n, cap)
    if g.n == 1:
        return RobustnessResult(r_star=0, per_r=(), witness=None)
    maxcnt = _max_outside_counts(g)
    min_deg = degree_stats(g).min_degree
    verdicts: list[bool] = []
    witness_pair = None
    r = 1
    while True:
        robust, pair = _robust_check(maxcnt, g.n, r)
        verdicts.append(robust)
        if not robust:
            witness_pair = pair
            break
        # Not r-robust for any r > min degree, so the next check always ends the loop.
        r += 1
    r_star = len(verdicts) - 1
    assert r_star <= min_deg
    s1, s2 = witness_pair
    return RobustnessResult(
        r_star=r_star,
        per_r=tuple(verdicts),
        witness=(frozenset(nodes_from_mask(s1)), frozenset(nodes_from_mask(s2))),
    )
