"""Statistical kernels for validating indicators against peer ratings.

Rank correlation uses the product-moment correlation of midranks. Its
significance comes from the t approximation with n - 2 degrees of freedom;
confidence intervals use the Fisher z transformation. Normality is checked
with D'Agostino's skewness test, the Anscombe-Glynn kurtosis test and
their K^2 omnibus combination.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy import stats as _st

EFFECT_THRESHOLDS = ((0.5, "large"), (0.3, "medium"), (0.1, "small"))


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean: float
    sd: float | None  # None for n == 1
    min: float
    max: float


@dataclass(frozen=True)
class NormalityResult:
    skew_z: float
    kurt_z: float
    omnibus_k2: float
    p_skew: float
    p_kurt: float
    p_omnibus: float


def summary_stats(values: Sequence[float]) -> SummaryStats:
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("summary_stats needs at least one value")
    sd = float(np.std(x, ddof=1)) if x.size >= 2 else None
    return SummaryStats(int(x.size), float(np.mean(x)), sd, float(x.min()), float(x.max()))


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """Ranks 1..n, ties sharing the mean of the positions they occupy."""
    x = np.asarray(values, dtype=float)
    n = x.size
    order = np.argsort(x, kind="mergesort")
    sx = x[order]
    # boundaries of runs of equal values in sorted order
    new_run = np.empty(n, dtype=bool)
    if n:
        new_run[0] = True
        new_run[1:] = sx[1:] != sx[:-1]
    starts = np.flatnonzero(new_run)
    ends = np.append(starts[1:], n)
    run_rank = (starts + ends + 1) / 2.0  # mean of 1-based positions start+1..end
    ranks = np.empty(n, dtype=float)
    ranks[order] = np.repeat(run_rank, ends - starts)
    return ranks


def _check_pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"x and y must be 1-d and of equal length, got {x.shape} and {y.shape}")
    return x, y


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman's r_s as the Pearson correlation of midranks (no tie adjustment)."""
    x, y = _check_pair(x, y)
    if x.size < 3:
        raise ValueError(f"spearman needs n >= 3, got {x.size}")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise ValueError("spearman is undefined for constant input")
    rx = average_ranks(x)
    ry = average_ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    r = float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))
    return max(-1.0, min(1.0, r))


def pairwise_complete(x: Sequence, y: Sequence) -> tuple[list, list]:
    """Keep only the positions where neither ``x`` nor ``y`` is missing (None or NaN)."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")

    def present(v):
        return v is not None and not (isinstance(v, float) and math.isnan(v))

    keep = [i for i in range(len(x)) if present(x[i]) and present(y[i])]
    return [x[i] for i in keep], [y[i] for i in keep]


def t_cdf(t: float, df: float) -> float:
    return float(_st.t.cdf(t, df))


def p_value_spearman(r: float, n: int) -> float:
    """Two-sided p-value of r_s under H0: rho = 0, via t with n - 2 df."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not -1.0 <= r <= 1.0:
        raise ValueError(f"|r| must be <= 1, got {r}")
    if abs(r) == 1.0:
        return 0.0
    df = n - 2
    t = r * math.sqrt(df / (1.0 - r * r))
    return float(min(1.0, 2.0 * _st.t.sf(abs(t), df)))


def fisher_ci(r: float, n: int, level: float = 0.95) -> tuple[float, float]:
    """Fisher-z confidence interval for a correlation; SE = 1/sqrt(n - 3)."""
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    if n < 4:
        raise ValueError(f"fisher_ci needs n >= 4, got {n}")
    if not -1.0 < r < 1.0:
        raise ValueError(f"fisher_ci is degenerate for |r| >= 1 (r={r})")
    z = math.atanh(r)
    hw = float(_st.norm.ppf(0.5 + level / 2.0)) / math.sqrt(n - 3)
    return math.tanh(z - hw), math.tanh(z + hw)


def r_squared(r: float) -> float:
    """Share of variance in one variable accounted for by the other."""
    if abs(r) > 1.0:
        raise ValueError(f"|r| must be <= 1, got {r}")
    return r * r


def bonferroni_alpha(alpha: float, m: int) -> float:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if m < 1 or int(m) != m:
        raise ValueError(f"number of tests must be a positive integer, got {m}")
    return alpha / m


def effect_class(r: float) -> str:
    """Cohen's label for |r|: thresholds .1/.3/.5, each closed on the left."""
    a = abs(r)
    if a > 1.0:
        raise ValueError(f"|r| must be <= 1, got {r}")
    for bound, label in EFFECT_THRESHOLDS:
        if a >= bound:
            return label
    return "negligible"


def _skew_z(b1: float, n: int) -> float:
    # D'Agostino (1970) transformation of sample skewness
    y = b1 * math.sqrt((n + 1) * (n + 3) / (6.0 * (n - 2)))
    beta2 = 3.0 * (n * n + 27 * n - 70) * (n + 1) * (n + 3) / (
        (n - 2.0) * (n + 5) * (n + 7) * (n + 9)
    )
    w2 = -1.0 + math.sqrt(2.0 * (beta2 - 1.0))
    delta = 1.0 / math.sqrt(0.5 * math.log(w2))
    alpha = math.sqrt(2.0 / (w2 - 1.0))
    if y == 0:
        return 0.0
    return delta * math.asinh(y / alpha)


def _kurt_z(b2: float, n: int) -> float:
    # Anscombe & Glynn (1983)
    e = 3.0 * (n - 1) / (n + 1)
    var_b2 = 24.0 * n * (n - 2) * (n - 3) / ((n + 1.0) ** 2 * (n + 3) * (n + 5))
    x = (b2 - e) / math.sqrt(var_b2)
    sqrt_beta1 = (
        6.0 * (n * n - 5 * n + 2) / ((n + 7.0) * (n + 9))
        * math.sqrt(6.0 * (n + 3) * (n + 5) / (n * (n - 2.0) * (n - 3)))
    )
    a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + math.sqrt(1.0 + 4.0 / sqrt_beta1**2))
    term1 = 1.0 - 2.0 / (9.0 * a)
    denom = 1.0 + x * math.sqrt(2.0 / (a - 4.0))
    if denom == 0:
        return math.copysign(math.inf, x)
    term2 = math.copysign(abs((1.0 - 2.0 / a) / denom) ** (1.0 / 3.0), denom)
    return (term1 - term2) / math.sqrt(2.0 / (9.0 * a))


def normality_test(values: Sequence[float]) -> NormalityResult:
    """Skewness, kurtosis and omnibus K^2 tests of normality (n >= 8)."""
    x = np.asarray(values, dtype=float)
    n = x.size
    if n < 8:
        raise ValueError(f"normality_test needs n >= 8, got {n}")
    d = x - x.mean()
    m2 = float(np.mean(d**2))
    if m2 == 0.0:
        raise ValueError("normality_test is undefined for constant input")
    b1 = float(np.mean(d**3)) / m2**1.5
    b2 = float(np.mean(d**4)) / m2**2
    zs = _skew_z(b1, n)
    zk = _kurt_z(b2, n)
    k2 = zs * zs + zk * zk
    return NormalityResult(
        skew_z=zs,
        kurt_z=zk,
        omnibus_k2=k2,
        p_skew=float(2.0 * _st.norm.sf(abs(zs))),
        p_kurt=float(2.0 * _st.norm.sf(abs(zk))),
        p_omnibus=float(_st.chi2.sf(k2, 2)),
    )


def permutation_p_value(x: Sequence[float], y: Sequence[float]) -> float:
    """Exact two-sided permutation p-value of r_s; only for n <= 10.

    Intended as a cross-check for :func:`p_value_spearman` on tiny samples.
    """
    x, y = _check_pair(x, y)
    n = x.size
    if n > 10:
        raise ValueError("exact permutation p-value is limited to n <= 10")
    observed = abs(spearman(x, y))
    hits = total = 0
    for perm in permutations(range(n)):
        total += 1
        if abs(spearman(x, y[list(perm)])) >= observed - 1e-12:
            hits += 1
    return hits / total
