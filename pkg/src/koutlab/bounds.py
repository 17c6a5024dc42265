"""Closed-form connectivity bounds, deletion thresholds, and design solvers.

All probabilities are evaluated in double precision with natural logs;
factors of the form (1 - x)^large go through log1p to avoid the
precision loss of naive power loops. Mean trials-to-disconnect counts
are computed from the bound's defect term directly (not from 1 - value)
so they stay exact when the bound rounds to 1.0.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

from .errors import InfeasibleError


def _pow1m(x: float, exponent: float) -> float:
    """(1 - x) ** exponent via the log domain; requires x < 1."""
    return math.exp(exponent * math.log1p(-x))


def _check_thm2_domain(n: int, k: int) -> None:
    if k < 2:
        raise ValueError(f"bound requires K >= 2, got {k}")
    if n < 4 * (k + 2):
        raise InfeasibleError(f"bound requires n >= 4(K+2) = {4 * (k + 2)}, got n={n}")


def mean_degree(n: int, k: int) -> float:
    """Exact mean degree of the K-out model: 2K - K^2/(n-1)."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= K <= n-1, got n={n} K={k}")
    return 2.0 * k - k * k / (n - 1.0)


def _q_factor(n: int, k: int) -> float:
    # ((K+1)/n)^(K^2-1) + (n/2) ((K+2)/n)^((K+2)(K-1))
    t1 = math.exp((k * k - 1) * (math.log(k + 1) - math.log(n)))
    t2 = math.exp(math.log(n / 2.0) + (k + 2) * (k - 1) * (math.log(k + 2) - math.log(n)))
    return t1 + t2


def _c_factor(n: int, k: int) -> float:
    return (
        math.exp(-(k * k - 1) * (1.0 - (k + 1) / n))
        / math.sqrt(2.0 * math.pi * (k + 1))
        * math.sqrt(n / (n - k - 1.0))
    )


def lower_bound_thm2(n: int, k: int) -> tuple[float, float, float]:
    """Finite-n lower bound on connectivity probability; returns (value, c, q).

    Valid for K >= 2 and n >= 4(K+2); value = 1 - c*q.
    """
    _check_thm2_domain(n, k)
    c = _c_factor(n, k)
    q = _q_factor(n, k)
    return 1.0 - c * q, c, q


def ym_lower_bound(n: int, k: int) -> float:
    """Earlier comparison lower bound with prefactor exp(-(K+1)(K-2)/2)."""
    _check_thm2_domain(n, k)
    a = math.exp(-0.5 * (k + 1) * (k - 2))
    return 1.0 - a * _q_factor(n, k)


def ff_lower_bound(n: int, k: int) -> float:
    """Earlier comparison lower bound with the 12n/(12n-1) Stirling prefactor."""
    if k < 2:
        raise ValueError(f"bound requires K >= 2, got {k}")
    if k >= n:
        raise ValueError(f"bound requires K < n, got n={n} K={k}")
    b = (
        (12.0 * n / (12.0 * n - 1.0))
        * math.sqrt(1.0 / (2.0 * math.pi * (k + 1)))
        * math.sqrt(n / (n - k - 1.0))
    )
    return 1.0 - b * _q_factor(n, k)


def asymptotic_upper_bound(n: int, k: int) -> float:
    """Leading-order upper bound 1 - (K!)^K e^{-K(K+1)} / ((K+1) n^{K^2-1}).

    Asymptotic: the trailing (1+o(1)) factor is omitted, so this is an
    approximation at finite n, not a certified bound.
    """
    if k < 2:
        raise ValueError(f"bound requires K >= 2, got {k}")
    log_coef = (
        k * math.lgamma(k + 1)
        - k * (k + 1)
        - math.log(k + 1)
        - (k * k - 1) * math.log(n)
    )
    return 1.0 - math.exp(log_coef)


def _log_finite_ub_terms(n: int, k: int) -> tuple[float, float]:
    log_kfact = math.lgamma(k + 1)
    log_a = (
        k * log_kfact
        - math.log(k + 1)
        - (k * k - 1) * math.log(n)
        + k * (n - k - 1) * math.log1p(-(k + 1) / (n - k))
    )
    log_b = (
        2 * (k + 1) * log_kfact
        - 2 * math.lgamma(k + 2)
        + 2 * (k + 1) * math.log(n)
        - 2 * k * (k + 1) * math.log(n - k)
        + k * (n - 2 * (k + 1)) * math.log1p(-2.0 * (k + 1) / (n - 1))
    )
    return log_a, log_b


def finite_upper_bound(n: int, k: int) -> float | None:
    """Exact finite-n upper bound on connectivity probability, or None when vacuous.

    The bound is 1 - (A - B) where A and B are first- and second-order
    counting terms for the smallest possible isolated component; when
    A <= B the difference stops lower-bounding anything and the bound is
    reported vacuous rather than clamped.
    """
    if k < 2:
        raise ValueError(f"bound requires K >= 2, got {k}")
    if n < 2 * (k + 2):
        raise ValueError(f"bound requires n >= 2(K+2) = {2 * (k + 2)}, got n={n}")
    log_a, log_b = _log_finite_ub_terms(n, k)
    if log_a <= log_b:
        return None
    diff = math.exp(log_a + math.log1p(-math.exp(log_b - log_a)))
    return 1.0 - diff


def _triangle_bonferroni_k2(n: int) -> float:
    """K=2 specialization of the isolated-component counting bound.

    Lower bound on the probability that at least one isolated triangle
    exists; used as a cross-check of the general finite-n expression.
    """
    if n < 8:
        raise ValueError("triangle form needs n >= 8")
    first = 4.0 / (3.0 * n**3) * _pow1m(3.0 / (n - 2), 2 * n - 6)
    second = 16.0 * n**4 / (9.0 * (n - 2.0) ** 10) * _pow1m(6.0 / (n - 1), 2 * n - 12)
    return first - second


def threshold_r1(alpha: float, n: int) -> float:
    """Deletion-connectivity threshold log(n) / (1 - alpha - log(alpha))."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0,1), got {alpha}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return math.log(n) / (1.0 - alpha - math.log(alpha))


def threshold_r2(gamma: float) -> float:
    """Sublinear-deletion connectivity threshold log(gamma) / (log 2 + 1/2)."""
    if gamma < 1:
        raise ValueError(f"gamma must be >= 1, got {gamma}")
    return math.log(gamma) / (math.log(2.0) + 0.5)


def threshold_r3(gamma: float, lam: float) -> float:
    """Giant-component threshold 1 + log(1 + gamma/lambda) / (log 2 + 1/2)."""
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    if lam < 1:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    return 1.0 + math.log1p(gamma / lam) / (math.log(2.0) + 0.5)


def threshold_r4(alpha: float, lam: float, n: int) -> float:
    """Giant-component threshold under linear deletions gamma = alpha*n."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0,1), got {alpha}")
    lam_max = math.floor((1.0 - alpha) * n / 3.0)
    if not 1 <= lam <= lam_max:
        raise ValueError(f"need 1 <= lambda <= {lam_max}, got {lam}")
    num = math.log1p(n * alpha / lam) + alpha + math.log(1.0 - alpha)
    den = (1.0 - alpha) / 2.0 - math.log((1.0 + alpha) / 2.0)
    return 1.0 + num / den


def _smallest_satisfying_lambda(k: int, lam_max: int, threshold) -> int | None:
    """Smallest integer lambda in [1, lam_max] with k > threshold(lambda).

    threshold must be nonincreasing in lambda, so the satisfying set is
    an upper interval and binary search finds its minimum (the binding
    whp bound on nodes outside the largest component).
    """
    if lam_max < 1 or not k > threshold(lam_max):
        return None
    lo, hi = 1, lam_max  # invariant: k > threshold(hi)
    if k > threshold(lo):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if k > threshold(mid):
            hi = mid
        else:
            lo = mid
    return hi


def lambda_star_linear(k: int, alpha: float, n: int) -> int | None:
    """Binding bound on nodes outside the largest component, gamma = alpha*n."""
    if k < 2:
        raise ValueError(f"K must be >= 2, got {k}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0,1), got {alpha}")
    lam_max = math.floor((1.0 - alpha) * n / 3.0)
    return _smallest_satisfying_lambda(k, lam_max, lambda lam: threshold_r4(alpha, lam, n))


class LambdaStarSublinear(NamedTuple):
    value: int | None
    below_sqrt_n: bool  # the threshold's validity regime assumes lambda = Omega(sqrt(n))


def lambda_star_sublinear(k: int, gamma: int, n: int) -> LambdaStarSublinear:
    """Binding bound on nodes outside the largest component, fixed gamma."""
    if k < 2:
        raise ValueError(f"K must be >= 2, got {k}")
    if not 0 <= gamma <= n - 1:
        raise ValueError(f"need 0 <= gamma <= n-1, got {gamma}")
    lam_max = math.floor((n - gamma) / 3.0)
    value = _smallest_satisfying_lambda(k, lam_max, lambda lam: threshold_r3(gamma, lam))
    flagged = value is not None and value < math.sqrt(n)
    return LambdaStarSublinear(value, flagged)


def recommend_k(n: int, delta: float) -> int:
    """Smallest K whose finite-n lower bound certifies connectivity >= delta."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0,1), got {delta}")
    k = 2
    while n >= 4 * (k + 2):
        _, c, q = lower_bound_thm2(n, k)
        if c * q <= 1.0 - delta:
            return k
        k += 1
    raise InfeasibleError(
        f"no K certifies delta={delta} at n={n} within the bound's validity range"
    )


def _mean_trials(defect: float) -> int | None:
    """Floor of 1/defect, the mean realizations until one disconnected one."""
    if defect <= 0.0:
        return None
    return math.floor(1.0 / defect)


@dataclass(frozen=True)
class BoundsReport:
    """Every closed-form bound value for one (n, K) query point."""

    n: int
    k: int
    lb_thm2: float
    c_nk: float
    q_nk: float
    lb_ym: float
    lb_ff: float
    ub_asymptotic: float
    ub_finite: float | None
    ub_finite_vacuous: bool
    mean_trials_thm2: int | None
    mean_trials_ym: int | None
    mean_trials_ff: int | None
    mean_degree: float

    def as_dict(self) -> dict:
        return asdict(self)


def bounds_report(n: int, k: int) -> BoundsReport:
    lb, c, q = lower_bound_thm2(n, k)
    lb_ym = ym_lower_bound(n, k)
    lb_ff = ff_lower_bound(n, k)
    ub_fin = finite_upper_bound(n, k)
    a_coef = math.exp(-0.5 * (k + 1) * (k - 2))
    b_coef = (
        (12.0 * n / (12.0 * n - 1.0))
        * math.sqrt(1.0 / (2.0 * math.pi * (k + 1)))
        * math.sqrt(n / (n - k - 1.0))
    )
    return BoundsReport(
        n=n,
        k=k,
        lb_thm2=lb,
        c_nk=c,
        q_nk=q,
        lb_ym=lb_ym,
        lb_ff=lb_ff,
        ub_asymptotic=asymptotic_upper_bound(n, k),
        ub_finite=ub_fin,
        ub_finite_vacuous=ub_fin is None,
        mean_trials_thm2=_mean_trials(c * q),
        mean_trials_ym=_mean_trials(a_coef * q),
        mean_trials_ff=_mean_trials(b_coef * q),
        mean_degree=mean_degree(n, k),
    )
