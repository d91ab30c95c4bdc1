"""End-to-end validation of the seven indicators against FFa.

:func:`run_validation` restricts a corpus to its rated papers, computes
FFa and the indicator vector for each, and correlates every indicator
with FFa (pairwise deletion of missing values, Bonferroni-adjusted
significance over the seven tests, Fisher-z confidence intervals).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

from .corpus import Corpus
from .normalization import METRICS, indicator_table
from .ratings import ffa_table
from .stats import (
    NormalityResult,
    SummaryStats,
    bonferroni_alpha,
    effect_class,
    fisher_ci,
    normality_test,
    p_value_spearman,
    spearman,
    summary_stats,
    pairwise_complete,
    r_squared,
)

SCHEMA_VERSION = "1.0"
MIN_RATED = 4
FFA_VARIABLE = ("ffa", "FFa")
PLOT_COLUMNS = ("metric", "n", "r_s", "ci_low", "ci_high", "p", "significant", "effect")


class ValidationError(ValueError):
    pass


def default_jcr_year(c: Corpus) -> int:
    """Latest year with citing data: the census year, or the newest paper if earlier."""
    latest = max((p.pub_year for p in c.paper_list), default=c.census_year)
    return min(c.census_year, latest)


@dataclass(frozen=True)
class CorrelationResult:
    metric_name: str
    label: str
    n: int
    r_s: float | None
    r_squared: float | None
    ci_low: float | None
    ci_high: float | None
    p_value: float | None
    alpha_adjusted: float
    significant: bool
    effect: str | None
    note: str | None = None


@dataclass(frozen=True)
class VariableSummary:
    name: str
    label: str
    stats: SummaryStats | None
    normality: NormalityResult | None
    normality_note: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    summary: tuple[VariableSummary, ...]  # 7 metrics then FFa
    correlations: tuple[CorrelationResult, ...]
    alpha: float
    alpha_adjusted: float
    confidence: float
    census_year: int
    jcr_year: int
    n_rated: int
    corpus_checksum: str
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "config": {
                "alpha": self.alpha,
                "alpha_adjusted": self.alpha_adjusted,
                "confidence": self.confidence,
                "census_year": self.census_year,
                "jcr_year": self.jcr_year,
                "n_rated": self.n_rated,
                "corpus_checksum": self.corpus_checksum,
            },
            "summary": [
                {"variable": v.name, "label": v.label,
                 **(asdict(v.stats) if v.stats else {"n": 0})}
                for v in self.summary
            ],
            "normality": [
                {"variable": v.name,
                 **(asdict(v.normality) if v.normality else {"note": v.normality_note})}
                for v in self.summary
            ],
            "correlations": [asdict(c) for c in self.correlations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    def plot_rows(self) -> list[dict]:
        """Figure-style rows: one per metric, at reporting precision."""
        rows = []
        for c in self.correlations:
            rows.append({
                "metric": c.label,
                "n": c.n,
                "r_s": _fmt(c.r_s, 3),
                "ci_low": _fmt(c.ci_low, 3),
                "ci_high": _fmt(c.ci_high, 3),
                "p": _fmt(c.p_value, 4),
                "significant": "yes" if c.significant else "no",
                "effect": c.effect or "",
            })
        return rows

    def plot_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=PLOT_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.plot_rows())
        return buf.getvalue()


def _fmt(v: float | None, digits: int) -> str:
    return "" if v is None else f"{v:.{digits}f}"


def correlate(
    metric_name: str,
    label: str,
    metric: list,
    ffa_values: list,
    alpha_adjusted: float,
    level: float,
) -> CorrelationResult:
    x, y = pairwise_complete(metric, ffa_values)
    n = len(x)
    base = dict(metric_name=metric_name, label=label, n=n, alpha_adjusted=alpha_adjusted)
    try:
        r = spearman(x, y)
    except ValueError as exc:
        return CorrelationResult(
            **base, r_s=None, r_squared=None, ci_low=None, ci_high=None,
            p_value=None, significant=False, effect=None, note=str(exc),
        )
    p = p_value_spearman(r, n)
    note = None
    try:
        lo, hi = fisher_ci(r, n, level)
    except ValueError as exc:
        lo = hi = None
        note = str(exc)
    return CorrelationResult(
        **base, r_s=r, r_squared=r_squared(r), ci_low=lo, ci_high=hi,
        p_value=p, significant=p < alpha_adjusted, effect=effect_class(r), note=note,
    )


def _describe(name: str, label: str, values: list) -> VariableSummary:
    present = [v for v in values if v is not None]
    st = summary_stats(present) if present else None
    try:
        norm, note = normality_test(present), None
    except ValueError as exc:
        norm, note = None, str(exc)
    return VariableSummary(name, label, st, norm, note)


def run_validation(
    c: Corpus,
    jcr_year: int | None = None,
    alpha: float = 0.05,
    level: float = 0.95,
) -> ValidationReport:
    """Correlate FFa with each of the seven indicators over the rated papers.

    ``jcr_year`` defaults to :func:`default_jcr_year`.
    """
    if jcr_year is None:
        jcr_year = default_jcr_year(c)
    scores = ffa_table(c)
    if len(scores) < MIN_RATED:
        raise ValidationError(
            f"validation needs at least {MIN_RATED} rated papers, corpus has {len(scores)}"
        )
    ids = [s.paper_id for s in scores]
    ffa_values = [s.ffa for s in scores]
    vectors = indicator_table(c, jcr_year, ids)
    columns = {name: [getattr(v, name) for v in vectors] for name, _ in METRICS}

    m = len(METRICS)
    adj = bonferroni_alpha(alpha, m)
    correlations = tuple(
        correlate(name, label, columns[name], ffa_values, adj, level) for name, label in METRICS
    )
    summary = tuple(_describe(name, label, columns[name]) for name, label in METRICS)
    summary += (_describe(*FFA_VARIABLE, ffa_values),)

    return ValidationReport(
        summary=summary,
        correlations=correlations,
        alpha=alpha,
        alpha_adjusted=adj,
        confidence=level,
        census_year=c.census_year,
        jcr_year=jcr_year,
        n_rated=len(scores),
        corpus_checksum=c.checksum(),
    )


def format_report(report: ValidationReport) -> str:
    """Plain-text rendering: variable summary table, then the correlation table."""
    lines = ["Description of the variables", ""]
    head = f"{'Variable':<46}{'N':>6}{'Mean':>10}{'SD':>10}{'Min':>10}{'Max':>10}"
    lines += [head, "-" * len(head)]
    for v in report.summary:
        s = v.stats
        if s is None:
            lines.append(f"{v.label:<46}{0:>6}")
            continue
        sd = "" if s.sd is None else f"{s.sd:.2f}"
        lines.append(
            f"{v.label:<46}{s.n:>6}{s.mean:>10.2f}{sd:>10}{s.min:>10.2f}{s.max:>10.2f}"
        )
    lines += [
        "",
        f"Spearman correlations with FFa, {report.confidence:.0%} confidence intervals",
        f"Bonferroni adjusted alpha = {report.alpha:g}/{len(report.correlations)}"
        f" = {report.alpha_adjusted:.3f}",
        "",
    ]
    head = f"{'Metric':<46}{'n':>5}{'r_s':>8}{'CI':>18}{'p':>9}{'r^2':>7}  {'sig':<4}effect"
    lines += [head, "-" * len(head)]
    for row, c in zip(report.plot_rows(), report.correlations):
        ci = f"[{row['ci_low']}, {row['ci_high']}]" if c.ci_low is not None else ""
        r2 = "" if c.r_squared is None else f"{c.r_squared:.3f}"
        lines.append(
            f"{c.label:<46}{c.n:>5}{row['r_s']:>8}{ci:>18}{row['p']:>9}{r2:>7}  "
            f"{row['significant']:<4}{row['effect']}"
        )
    return "\n".join(lines) + "\n"
