"""Seeded random graph generators: K-out, Erdős–Rényi, random regular.

All generators take a numpy Generator and are pure functions of
(parameters, generator state): the same seed always reproduces the same
graph within one build. The PCG64 bit generator is used throughout via
make_rng(); cross-version bit-exactness of numpy is not a goal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, _from_edge_arrays

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class KOutParams:
    """K-out generator configuration: each of n nodes selects K others."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"need 1 <= K <= n-1, got n={self.n} K={self.k}")


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator from a 64-bit seed (larger ints are masked)."""
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


def sample_k_subset(rng: np.random.Generator, universe_size: int, exclude: int, k: int) -> set[int]:
    """Uniform k-subset of {0..universe_size-1} minus {exclude}.

    Partial Fisher-Yates over the eligible ids: every k-subset of the
    universe_size-1 eligible ids has equal probability.
    """
    eligible = [i for i in range(universe_size) if i != exclude]
    m1 = len(eligible)
    if k > m1:
        raise ValueError(f"cannot pick {k} distinct ids from {m1} eligible")
    for pos in range(k):
        j = int(rng.integers(pos, m1))
        eligible[pos], eligible[j] = eligible[j], eligible[pos]
    return set(eligible[:k])


def sample_selections(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """(n, k) matrix of per-node selections; row i is a uniform k-subset of {0..n-1} minus {i}.

    Dense-regime rows are drawn with replacement and rejected on
    duplicates (conditioning on distinctness preserves uniformity);
    sparse rows fall back to per-node partial Fisher-Yates.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= K <= n-1, got n={n} K={k}")
    if k > (n - 1) // 4:
        # High collision rate: per-node sampling is cheaper than rejection.
        out = np.empty((n, k), dtype=np.int64)
        for i in range(n):
            out[i] = sorted(sample_k_subset(rng, n, i, k))
        return out
    sel = rng.integers(0, n - 1, size=(n, k), dtype=np.int64)
    while True:
        srt = np.sort(sel, axis=1)
        dup_rows = np.flatnonzero((srt[:, 1:] == srt[:, :-1]).any(axis=1))
        if dup_rows.size == 0:
            break
        sel[dup_rows] = rng.integers(0, n - 1, size=(dup_rows.size, k), dtype=np.int64)
    # Values drawn from {0..n-2}; shift those >= own id to skip self.
    sel += sel >= np.arange(n, dtype=np.int64)[:, None]
    return sel


def generate_kout(params: KOutParams, rng: np.random.Generator) -> Graph:
    """Random K-out graph: the undirected union of all per-node selections.

    Mutual selections (i picks j and j picks i) collapse to one edge, so
    the number of collapsed pairs equals n*K - edge_count.
    """
    n, k = params.n, params.k
    sel = sample_selections(n, k, rng)
    u = np.repeat(np.arange(n, dtype=np.int64), k)
    v = sel.ravel()
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    codes = np.unique(lo * n + hi)
    return _from_edge_arrays(n, codes // n, codes % n)


def er_p_matching_kout(n: int, k: int) -> float:
    """ER edge probability matching the K-out mean degree, clamped to [0, 1]."""
    KOutParams(n, k)
    p = (2.0 * k - k * k / (n - 1.0)) / (n - 1.0)
    return min(1.0, max(0.0, p))


def generate_er(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdős–Rényi G(n, p): each unordered pair is an edge independently."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    if n < 0:
        raise ValueError("node count must be nonnegative")
    iu, ju = np.triu_indices(n, k=1)
    hit = rng.random(iu.size) < p
    return _from_edge_arrays(n, iu[hit].astype(np.int64), ju[hit].astype(np.int64))


def generate_rrg(n: int, d: int, rng: np.random.Generator, max_restarts: int = 1000) -> Graph:
    """Simple d-regular graph via configuration-model pairing.

    The full pairing is restarted whenever it produces a self-loop or a
    duplicate edge, which keeps the conditional law uniform over simple
    pairings. Raises RuntimeError when max_restarts is exhausted.
    """
    if n < 1 or d < 0 or d >= n:
        raise ValueError(f"need 0 <= d < n, got n={n} d={d}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even, got n={n} d={d}")
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(max_restarts):
        perm = rng.permutation(stubs)
        u, v = perm[0::2], perm[1::2]
        if (u == v).any():
            continue
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        codes = np.sort(lo * n + hi)
        if codes.size and (codes[1:] == codes[:-1]).any():
            continue
        return _from_edge_arrays(n, codes // n, codes % n)
    raise RuntimeError(f"configuration model failed to produce a simple graph in {max_restarts} restarts")
