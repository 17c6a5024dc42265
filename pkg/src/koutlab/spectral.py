"""Graph Laplacians and algebraic connectivity (second-smallest eigenvalue).

Matrices are stored packed lower-triangular and expanded to dense only
for the symmetric eigensolve. The spectral path is guarded to modest
sizes (dense solves); the comparison sweep pits the K-out model against
degree-matched Erdős–Rényi and random regular graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import mean_degree
from .errors import InfeasibleError
from .generators import generate_er, generate_kout, generate_rrg, er_p_matching_kout, make_rng, KOutParams
from .graph import Graph
from .montecarlo import SweepRow, derive_trial_seed, _aggregate

SPECTRAL_GUARD = 2000
DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class SymMatrix:
    """Real symmetric matrix, packed lower triangle (row-major)."""

    dim: int
    tri: np.ndarray  # length dim*(dim+1)//2, float64, read-only

    def __post_init__(self) -> None:
        expected = self.dim * (self.dim + 1) // 2
        if self.tri.shape != (expected,):
            raise ValueError(f"packed storage must have length {expected}")
        self.tri.setflags(write=False)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        il, jl = np.tril_indices(self.dim)
        out[il, jl] = self.tri
        out[jl, il] = self.tri
        return out

    @classmethod
    def from_dense(cls, arr: np.ndarray, sym_tol: float = 0.0) -> "SymMatrix":
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(arr, arr.T, atol=sym_tol, rtol=0.0):
            raise ValueError("matrix must be symmetric")
        il, jl = np.tril_indices(arr.shape[0])
        return cls(dim=arr.shape[0], tri=arr[il, jl].copy())


def _tri_index(i: np.ndarray, j: np.ndarray) -> np.ndarray:
    # entry (i, j) with j <= i sits at i(i+1)/2 + j
    return i * (i + 1) // 2 + j


def combinatorial_laplacian(g: Graph) -> SymMatrix:
    """L = D - A: degree on the diagonal, -1 per edge, row sums zero."""
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    tri = np.zeros(g.n * (g.n + 1) // 2)
    degs = np.fromiter((len(a) for a in g.adjacency), dtype=np.int64, count=g.n)
    idx = np.arange(g.n, dtype=np.int64)
    tri[_tri_index(idx, idx)] = degs
    lo, hi = g.edge_arrays
    tri[_tri_index(hi, lo)] = -1.0
    return SymMatrix(dim=g.n, tri=tri)


def normalized_laplacian(g: Graph) -> SymMatrix:
    """Degree-normalized Laplacian: entry (i,j) is L[i,j]/sqrt(deg_i*deg_j).

    Rows and columns of degree-zero nodes are all zero, so isolated nodes
    contribute extra zero eigenvalues and disconnection still shows up as
    a vanishing second eigenvalue.
    """
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    tri = np.zeros(g.n * (g.n + 1) // 2)
    degs = np.fromiter((len(a) for a in g.adjacency), dtype=np.int64, count=g.n)
    idx = np.arange(g.n, dtype=np.int64)
    diag = np.where(degs > 0, 1.0, 0.0)
    tri[_tri_index(idx, idx)] = diag
    lo, hi = g.edge_arrays
    tri[_tri_index(hi, lo)] = -1.0 / np.sqrt(degs[lo] * degs[hi])
    return SymMatrix(dim=g.n, tri=tri)


def eigenvalues(m: SymMatrix) -> np.ndarray:
    """All eigenvalues, ascending (LAPACK symmetric solver)."""
    return np.linalg.eigvalsh(m.to_dense())


def lambda2(m: SymMatrix, tol: float = DEFAULT_TOL) -> float:
    """Second-smallest eigenvalue; positive (above tol) iff connected for Laplacians.

    The matrix must be positive semidefinite within tol (Laplacians are);
    solver noise in [-tol, 0) is clamped to exactly 0 so the result is
    nonnegative, and tol is the accuracy floor callers may rely on when
    thresholding it.
    """
    if m.dim < 2:
        raise ValueError("need dim >= 2 for a second eigenvalue")
    if tol <= 0:
        raise ValueError("tol must be positive")
    val = float(eigenvalues(m)[1])
    if val < -tol:
        raise ValueError(f"matrix is not positive semidefinite (lambda2 = {val})")
    return max(0.0, val)


def _rrg_degree(n: int, k: int) -> int:
    d = round(mean_degree(n, k))
    if (n * d) % 2 != 0:
        d += 1  # parity fix; recorded in the row's d implicitly via model
    return d


def spectral_compare(
    n_list,
    k: int,
    trials: int,
    master_seed: int,
    tol: float = DEFAULT_TOL,
    guard: int = SPECTRAL_GUARD,
) -> list[SweepRow]:
    """Mean algebraic connectivity per model and size, for both Laplacians.

    For each n and each model (kout, er matched by mean degree, rrg with
    the rounded mean degree), emits two rows: model suffixed with
    /lambda2_comb and /lambda2_norm. The metric is the lambda2 value;
    success counts trials with lambda2(comb) above tol (connectivity).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows: list[SweepRow] = []
    row_index = 0
    for n in n_list:
        if n > guard:
            raise InfeasibleError(f"dense spectral path capped at n={guard}, got {n}")
        p = er_p_matching_kout(n, k)
        d = _rrg_degree(n, k)
        for model in ("kout", "er", "rrg"):
            row_seed = derive_trial_seed(master_seed, row_index)
            comb_vals: list[float] = []
            norm_vals: list[float] = []
            for t in range(trials):
                rng = make_rng(derive_trial_seed(row_seed, t))
                if model == "kout":
                    g = generate_kout(KOutParams(n, k), rng)
                elif model == "er":
                    g = generate_er(n, p, rng)
                else:
                    g = generate_rrg(n, d, rng)
                comb_vals.append(lambda2(combinatorial_laplacian(g), tol))
                norm_vals.append(lambda2(normalized_laplacian(g), tol))
            for suffix, vals in (("lambda2_comb", comb_vals), ("lambda2_norm", norm_vals)):
                results = [(int(c > tol), v) for c, v in zip(comb_vals, vals)]
                rows.append(
                    _aggregate(
                        results,
                        model=f"{model}/{suffix}",
                        n=n,
                        k=k,
                        master_seed=master_seed,
                    )
                )
            row_index += 1
    return rows
