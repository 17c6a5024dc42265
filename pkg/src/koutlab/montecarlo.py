"""Deterministic Monte Carlo experiment harness.

Reproducibility contract: trial i of a single-point experiment draws its
RNG from derive_trial_seed(master_seed, i); row r of a multi-row sweep
first derives a row seed derive_trial_seed(master_seed, r) and trial i
inside it uses derive_trial_seed(row_seed, i). Seeds never depend on
scheduling, so the worker-thread count has no effect on output bytes.
Aggregation is a commutative reduction (count, min, max, sum).
"""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from . import bounds
from .adversary import delete_random_nodes, nodes_outside_cmax
from .generators import KOutParams, generate_kout, make_rng
from .graph import is_connected
from .robustness import DEFAULT_CAP, max_robustness

_MASK64 = (1 << 64) - 1
# splitmix64: golden-gamma increment + finalizer constants.
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

CSV_COLUMNS = (
    "model,n,k,alpha,gamma,lambda_star,threshold,trials,success_count,"
    "p_hat,std_err,metric_min,metric_mean,metric_max,master_seed"
)


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """Stateless 64-bit mix of (master_seed, trial_index).

    splitmix64 applied to master_seed + (trial_index+1)*gamma; the odd
    multiplier and bijective finalizer make the map injective in
    trial_index for a fixed master seed.
    """
    z = (master_seed + (trial_index + 1) * _GAMMA) & _MASK64
    z ^= z >> 30
    z = (z * _MIX1) & _MASK64
    z ^= z >> 27
    z = (z * _MIX2) & _MASK64
    z ^= z >> 31
    return z


@dataclass(frozen=True)
class ExperimentSpec:
    """Fully resolved single-experiment description, echoed with all output."""

    model: str
    n: int
    trials: int
    master_seed: int
    metric: str
    k: int | None = None
    p: float | None = None
    d: int | None = None
    alpha: float | None = None
    gamma: int | None = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.model not in ("kout", "er", "rrg"):
            raise ValueError(f"unknown model {self.model!r}")

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class SweepRow:
    """One aggregated Monte Carlo data point (one CSV row)."""

    model: str
    n: int
    k: int | None
    alpha: float | None
    gamma: int | None
    lambda_star: int | None
    threshold: float | None
    trials: int
    success_count: int
    p_hat: float
    std_err: float
    metric_min: float
    metric_mean: float
    metric_max: float
    master_seed: int


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def row_to_csv(row: SweepRow) -> str:
    return ",".join(
        _fmt(v)
        for v in (
            row.model, row.n, row.k, row.alpha, row.gamma, row.lambda_star,
            row.threshold, row.trials, row.success_count, row.p_hat,
            row.std_err, row.metric_min, row.metric_mean, row.metric_max,
            row.master_seed,
        )
    )


def write_csv(rows: Iterable[SweepRow], fh, spec: dict | None = None) -> None:
    """Emit the standard CSV schema; header always, optional `# spec:` line first."""
    if spec is not None:
        fh.write("# spec: " + json.dumps(spec, sort_keys=True) + "\n")
    fh.write(CSV_COLUMNS + "\n")
    for row in rows:
        fh.write(row_to_csv(row) + "\n")


def rows_to_csv_text(rows: Iterable[SweepRow], spec: dict | None = None) -> str:
    buf = io.StringIO()
    write_csv(rows, buf, spec)
    return buf.getvalue()


def rows_to_json(rows: Iterable[SweepRow], spec: dict | None = None) -> str:
    payload: dict = {"rows": [asdict(r) for r in rows]}
    if spec is not None:
        payload["spec"] = spec
    return json.dumps(payload, sort_keys=True, indent=2)


def _map_trials(worker: Callable[[int], tuple[int, float]], trials: int, threads: int) -> list[tuple[int, float]]:
    if threads <= 1:
        return [worker(t) for t in range(trials)]
    chunk = max(1, trials // (threads * 8))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(trials), chunksize=chunk))


def _aggregate(
    results: Sequence[tuple[int, float]],
    *,
    model: str,
    n: int,
    k: int | None,
    master_seed: int,
    alpha: float | None = None,
    gamma: int | None = None,
    lambda_star: int | None = None,
    threshold: float | None = None,
) -> SweepRow:
    trials = len(results)
    success = sum(s for s, _ in results)
    metrics = [m for _, m in results]
    p_hat = success / trials
    return SweepRow(
        model=model,
        n=n,
        k=k,
        alpha=alpha,
        gamma=gamma,
        lambda_star=lambda_star,
        threshold=threshold,
        trials=trials,
        success_count=success,
        p_hat=p_hat,
        std_err=math.sqrt(p_hat * (1.0 - p_hat) / trials),
        metric_min=min(metrics),
        metric_mean=sum(metrics) / trials,
        metric_max=max(metrics),
        master_seed=master_seed,
    )


def estimate_connectivity(n: int, k: int, trials: int, master_seed: int, threads: int = 1) -> SweepRow:
    """Empirical connectivity probability of the K-out model at (n, K)."""
    params = KOutParams(n, k)
    if trials < 1:
        raise ValueError("trials must be >= 1")

    def worker(t: int) -> tuple[int, float]:
        g = generate_kout(params, make_rng(derive_trial_seed(master_seed, t)))
        c = int(is_connected(g))
        return c, float(c)

    results = _map_trials(worker, trials, threads)
    return _aggregate(results, model="kout", n=n, k=k, master_seed=master_seed)


def sweep_deletion_connectivity(
    n: int,
    alpha_list: Sequence[float],
    k_values: Sequence[int],
    trials: int,
    master_seed: int,
    threads: int = 1,
) -> list[SweepRow]:
    """Residual connectivity after deleting floor(alpha*n) random nodes.

    One row per (alpha, K); rows carry the connectivity threshold for
    that alpha so the transition location can be read off directly.
    """
    rows: list[SweepRow] = []
    row_index = 0
    for alpha in alpha_list:
        gamma = math.floor(alpha * n)
        thr = bounds.threshold_r1(alpha, n)
        for k in k_values:
            params = KOutParams(n, k)
            row_seed = derive_trial_seed(master_seed, row_index)

            def worker(t: int, _p=params, _g=gamma, _s=row_seed) -> tuple[int, float]:
                rng = make_rng(derive_trial_seed(_s, t))
                g = generate_kout(_p, rng)
                residual, _, _ = delete_random_nodes(g, _g, rng)
                c = int(is_connected(residual))
                return c, float(c)

            results = _map_trials(worker, trials, threads)
            rows.append(
                _aggregate(
                    results, model="kout", n=n, k=k, master_seed=master_seed,
                    alpha=alpha, gamma=gamma, threshold=thr,
                )
            )
            row_index += 1
    return rows


def sweep_giant(
    n: int,
    k_values: Sequence[int],
    trials: int,
    master_seed: int,
    *,
    alpha_list: Sequence[float] = (),
    gamma_list: Sequence[int] = (),
    threads: int = 1,
) -> list[SweepRow]:
    """Nodes outside the largest component after random deletions.

    Exactly one of alpha_list (gamma = floor(alpha*n)) or gamma_list must
    be given. The metric is the residual count outside C_max; success
    means the residual is connected. Rows carry the binding heuristic
    bound lambda_star (linear-regime for alpha, sublinear for gamma) and
    the threshold value at that lambda_star.
    """
    if bool(alpha_list) == bool(gamma_list):
        raise ValueError("give exactly one of alpha_list or gamma_list")
    deletions: list[tuple[float | None, int]] = (
        [(a, math.floor(a * n)) for a in alpha_list]
        if alpha_list
        else [(None, g) for g in gamma_list]
    )
    rows: list[SweepRow] = []
    row_index = 0
    for alpha, gamma in deletions:
        for k in k_values:
            params = KOutParams(n, k)
            if alpha is not None:
                lam_star = bounds.lambda_star_linear(k, alpha, n)
                thr = bounds.threshold_r4(alpha, lam_star, n) if lam_star else None
            else:
                lam_star = bounds.lambda_star_sublinear(k, gamma, n).value
                thr = bounds.threshold_r3(gamma, lam_star) if lam_star else None
            row_seed = derive_trial_seed(master_seed, row_index)

            def worker(t: int, _p=params, _g=gamma, _s=row_seed) -> tuple[int, float]:
                rng = make_rng(derive_trial_seed(_s, t))
                g = generate_kout(_p, rng)
                residual, _, _ = delete_random_nodes(g, _g, rng)
                outside = nodes_outside_cmax(residual)
                return int(outside == 0), float(outside)

            results = _map_trials(worker, trials, threads)
            rows.append(
                _aggregate(
                    results, model="kout", n=n, k=k, master_seed=master_seed,
                    alpha=alpha, gamma=gamma, lambda_star=lam_star, threshold=thr,
                )
            )
            row_index += 1
    return rows


def sweep_robustness(
    n: int,
    k_values: Sequence[int],
    trials: int,
    master_seed: int,
    threads: int = 1,
    cap: int = DEFAULT_CAP,
) -> list[SweepRow]:
    """Empirical r* per K: min/mean/max over trials.

    The metric is the exact r* of each instance; success means r* >= 1
    (equivalently, the instance is connected). The threshold column
    carries floor(K/2), the guaranteed asymptotic robustness level.
    """
    rows: list[SweepRow] = []
    for row_index, k in enumerate(k_values):
        params = KOutParams(n, k)
        row_seed = derive_trial_seed(master_seed, row_index)

        def worker(t: int, _p=params, _s=row_seed) -> tuple[int, float]:
            g = generate_kout(_p, make_rng(derive_trial_seed(_s, t)))
            r_star = max_robustness(g, cap=cap).r_star
            return int(r_star >= 1), float(r_star)

        results = _map_trials(worker, trials, threads)
        rows.append(
            _aggregate(
                results, model="kout", n=n, k=k, master_seed=master_seed,
                threshold=float(k // 2),
            )
        )
    return rows
