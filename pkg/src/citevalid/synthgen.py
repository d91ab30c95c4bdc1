"""Seeded synthetic corpora with a planted link between quality, citations and ratings.

Every paper gets a latent quality ``q ~ N(0, 1)``. Its expected number of
citations is the rate of its journal's category times ``2 (rank - 1/2) / n``,
where ``rank`` is the quality rank, so the rates are the category means of
times cited. In-degrees are Poisson and citers are drawn uniformly from the
other papers.

A ``rating_fraction`` of papers, picked independently of quality, receives
ratings. A rating signal ``s = rho q + sqrt(1 - rho^2) e`` is binned into
eleven equiprobable levels, each level a fixed multiset of one to three
ratings whose FFa runs from 6 to 16. ``rho`` is solved so that the
population rank correlation between quality and FFa equals
``planted_rank_corr``. Binning creates ties, which caps the attainable rank
correlation at ``sqrt(1 - 1/11^2)``, about 0.9959; targets above the cap
use ``rho = 1`` (FFa a non-decreasing step function of quality).
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy import integrate, optimize
from scipy.stats import norm

from .corpus import CitationEdge, Corpus, Paper, RatingRecord, serialize_corpus

# (category, mean times cited): a world-average rate of 10 scaled by the
# relative impact of cell biology (2.3) and immunology (1.87).
DEFAULT_CATEGORIES = (("cell biology", 23.0), ("immunology", 18.7))

# Rating multisets with strictly increasing FFa 6..16.
RATING_LADDER: tuple[tuple[int, ...], ...] = (
    (6,), (6, 6), (8,), (8, 6), (10,), (10, 6), (10, 8), (10, 10),
    (10, 10, 6), (10, 10, 8), (10, 10, 10),
)
N_RATERS = 200

DOC_TYPE_WEIGHTS = (("article", 0.85), ("review", 0.10), ("note", 0.05))

_STREAMS = ("quality", "meta", "graph", "ratings")


class GenConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n_papers: int = 1000
    n_journals: int = 20
    categories: tuple[tuple[str, float], ...] = DEFAULT_CATEGORIES
    rating_fraction: float = 0.2
    planted_rank_corr: float = 0.5
    years: tuple[int, int] = (2006, 2010)
    census_year: int = 2011

    def validate(self) -> None:
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise GenConfigError(f"seed must be an integer, got {self.seed!r}")
        if self.n_papers < 2:
            raise GenConfigError("n_papers must be at least 2")
        if self.n_journals < 1:
            raise GenConfigError("n_journals must be at least 1")
        if not self.categories:
            raise GenConfigError("at least one category is required")
        names = [c for c, _ in self.categories]
        if len(set(names)) != len(names) or not all(names):
            raise GenConfigError(f"category ids must be unique and non-empty: {names}")
        if any(not (rate >= 0 and math.isfinite(rate)) for _, rate in self.categories):
            raise GenConfigError("category citation rates must be finite and non-negative")
        if not 0.0 < self.rating_fraction <= 1.0:
            raise GenConfigError("rating_fraction must lie in (0, 1]")
        if not 0.0 <= self.planted_rank_corr <= 1.0:
            raise GenConfigError("planted_rank_corr must lie in [0, 1]")
        lo, hi = self.years
        if not lo <= hi < self.census_year:
            raise GenConfigError("need min_year <= max_year < census_year")
        if not (1000 <= lo and self.census_year <= 9999):
            raise GenConfigError("years must be 4-digit")

    @property
    def n_rated(self) -> int:
        """Number of rated papers: ``rating_fraction * n_papers`` rounded half up, at least 1."""
        return max(1, math.floor(self.rating_fraction * self.n_papers + 0.5))


# ---------------------------------------------------------------------------
# calibration of the rating signal
# ---------------------------------------------------------------------------


def _level_bounds(k: int) -> np.ndarray:
    return norm.ppf(np.arange(k + 1) / k)  # -inf ... +inf


def population_rank_corr(rho: float, n_levels: int = len(RATING_LADDER)) -> float:
    """Population Spearman correlation between q and the binned signal.

    Uses midrank scores (k + 1/2)/K for the equiprobable levels and
    E[Phi(q) | s] = Phi(rho s / sqrt(2 - rho^2)).
    """
    k = n_levels
    bounds = _level_bounds(k)
    if rho >= 1.0:
        def cond(s):
            return norm.cdf(s)
    else:
        scale = rho / math.sqrt(2.0 - rho * rho)

        def cond(s):
            return norm.cdf(scale * s)

    e = 0.0
    for i in range(k):
        part, _ = integrate.quad(lambda s: cond(s) * norm.pdf(s), bounds[i], bounds[i + 1],
                                 epsabs=1e-13, epsrel=1e-12)
        e += (i + 0.5) / k * part
    var_g = (k * k - 1) / (12.0 * k * k)
    return (e - 0.25) / math.sqrt(var_g / 12.0)


@lru_cache(maxsize=64)
def signal_loading(target: float) -> float:
    """Loading ``rho`` of the rating signal on quality that plants ``target``."""
    if target <= 0.0:
        return 0.0
    if target >= population_rank_corr(1.0):
        return 1.0
    return float(optimize.brentq(lambda r: population_rank_corr(r) - target, 0.0, 1.0,
                                 xtol=1e-12))


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def _streams(seed: int) -> dict[str, np.random.Generator]:
    children = np.random.SeedSequence(int(seed)).spawn(len(_STREAMS))
    return {name: np.random.default_rng(ss) for name, ss in zip(_STREAMS, children)}


def _paper_ids(n: int) -> list[str]:
    width = max(4, len(str(n)))
    return [f"P{i:0{width}d}" for i in range(1, n + 1)]


def planted_truth(cfg: GenConfig) -> list[tuple[str, float]]:
    """(paper_id, latent quality) pairs used by :func:`generate_corpus` for this config."""
    cfg.validate()
    q = _streams(cfg.seed)["quality"].standard_normal(cfg.n_papers)
    return list(zip(_paper_ids(cfg.n_papers), q.tolist()))


def generate_corpus(cfg: GenConfig) -> Corpus:
    cfg.validate()
    rng = _streams(cfg.seed)
    n = cfg.n_papers
    ids = _paper_ids(n)
    q = rng["quality"].standard_normal(n)

    # metadata
    meta = rng["meta"]
    jwidth = max(3, len(str(cfg.n_journals)))
    journal_ids = [f"J{j:0{jwidth}d}" for j in range(1, cfg.n_journals + 1)]
    journal_cat = [cfg.categories[j % len(cfg.categories)] for j in range(cfg.n_journals)]
    journal_of = meta.integers(0, cfg.n_journals, size=n)
    lo, hi = cfg.years
    years = meta.integers(lo, hi + 1, size=n)
    dt_names = [d for d, _ in DOC_TYPE_WEIGHTS]
    dt_p = np.array([w for _, w in DOC_TYPE_WEIGHTS])
    doc_types = meta.choice(len(dt_names), size=n, p=dt_p / dt_p.sum())
    papers = [
        Paper(ids[i], journal_ids[journal_of[i]], int(years[i]), dt_names[doc_types[i]],
              (journal_cat[journal_of[i]][0],))
        for i in range(n)
    ]

    # citation graph
    graph = rng["graph"]
    rank = np.empty(n)
    rank[np.argsort(q, kind="stable")] = np.arange(1, n + 1)
    weight = 2.0 * (rank - 0.5) / n
    rate = np.array([journal_cat[j][1] for j in journal_of])
    indeg = np.minimum(graph.poisson(rate * weight), n - 1)
    edges = []
    for i in range(n):
        k = int(indeg[i])
        if k == 0:
            continue
        picks = graph.choice(n - 1, size=k, replace=False)
        picks = np.sort(picks + (picks >= i))  # skip self
        edges.extend(CitationEdge(ids[int(c)], ids[i]) for c in picks)

    # ratings
    rr = rng["ratings"]
    rated = np.sort(rr.choice(n, size=cfg.n_rated, replace=False))
    rho = signal_loading(cfg.planted_rank_corr)
    noise = rr.standard_normal(cfg.n_rated)
    signal = rho * q[rated] + math.sqrt(max(0.0, 1.0 - rho * rho)) * noise
    k = len(RATING_LADDER)
    levels = np.minimum((norm.cdf(signal) * k).astype(int), k - 1)
    rwidth = len(str(N_RATERS))
    ratings = []
    for idx, level in zip(rated, levels):
        scores = RATING_LADDER[level]
        raters = np.sort(rr.choice(N_RATERS, size=len(scores), replace=False))
        ratings.extend(
            RatingRecord(ids[int(idx)], f"R{int(r) + 1:0{rwidth}d}", s)
            for r, s in zip(raters, scores)
        )

    return Corpus(papers, edges, ratings, cfg.census_year)


def truth_csv(cfg: GenConfig) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("paper_id", "latent_quality"))
    for pid, value in planted_truth(cfg):
        w.writerow((pid, repr(value)))
    return buf.getvalue()


def write_synthetic(cfg: GenConfig, out_dir: str | os.PathLike) -> dict[str, Path]:
    """Write papers, citations, ratings and truth CSVs for ``cfg`` into ``out_dir``."""
    out_dir = Path(out_dir)
    files = serialize_corpus(generate_corpus(cfg))
    files["truth"] = truth_csv(cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {}
    for stem, text in files.items():
        path = out_dir / f"{stem}.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        paths[stem] = path
    return paths
