"""Reference-set baselines and the normalized paper-level indicators.

Journal and category reference sets group papers by (journal or category,
publication year, document type). Expected citations are plain means of
times cited over a set, zeros included. Percentiles pool the eligible
document types (article, note, review) of a category and year.
"""

from __future__ import annotations

import csv
import io
import weakref
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, fields

from .citation_graph import raw_counts
from .corpus import Corpus

PERCENTILE_DOC_TYPES = frozenset({"article", "note", "review"})

# (attribute on IndicatorVector, display label); order is fixed and reused by reports.
METRICS: tuple[tuple[str, str], ...] = (
    ("times_cited", "Times Cited"),
    ("second_gen", "2nd Generation Citations"),
    ("second_gen_per_citing", "2nd Generation Citations per Citing Document"),
    ("journal_ae", "Journal Actual/Expected Citations"),
    ("category_ae", "Category Actual/Expected Citations"),
    ("reversed_percentile", "Percentile in Subject Area"),
    ("jif", "Journal Impact Factor"),
)


@dataclass(frozen=True)
class ReferenceSetKey:
    scope: str  # "journal" | "category"
    scope_id: str
    pub_year: int
    doc_type: str

    def __post_init__(self):
        if self.scope not in ("journal", "category"):
            raise ValueError(f"scope must be 'journal' or 'category', got {self.scope!r}")


@dataclass(frozen=True)
class NormalizedScores:
    journal_ae: float | None
    category_ae: float | None
    percentile: float | None
    reversed_percentile: float | None
    jif: float | None


@dataclass(frozen=True)
class IndicatorVector:
    """The seven paper-level metrics for one paper.

    ``percentile`` is kept on the lower-is-better scale; the validation
    metric is ``reversed_percentile``.
    """

    paper_id: str
    times_cited: int
    second_gen: int
    second_gen_per_citing: float | None
    journal_ae: float | None
    category_ae: float | None
    percentile: float | None
    reversed_percentile: float | None
    jif: float | None

    def metric_values(self) -> tuple:
        return tuple(getattr(self, name) for name, _ in METRICS)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class ReferenceTable:
    """Per-corpus baselines, computed once and then read-only."""

    def __init__(self, c: Corpus):
        self.census_year = c.census_year
        tc = {pid: len(c.incoming(pid)) for pid in c.papers}
        journal: dict[tuple, list[int]] = defaultdict(list)
        category: dict[tuple, list[int]] = defaultdict(list)
        pct: dict[tuple, list[int]] = defaultdict(list)
        by_journal_year: dict[tuple, list[str]] = defaultdict(list)
        for p in c.papers.values():
            n = tc[p.paper_id]
            journal[("journal", p.journal_id, p.pub_year, p.doc_type)].append(n)
            by_journal_year[(p.journal_id, p.pub_year)].append(p.paper_id)
            for cat in p.categories:
                category[("category", cat, p.pub_year, p.doc_type)].append(n)
                if p.doc_type in PERCENTILE_DOC_TYPES:
                    pct[(cat, p.pub_year)].append(n)

        self.times_cited = tc
        self._means = {k: sum(v) / len(v) for k, v in {**journal, **category}.items()}
        self._sizes = {k: len(v) for k, v in {**journal, **category}.items()}
        self._pct_sorted = {k: sorted(v) for k, v in pct.items()}
        self._by_journal_year = dict(by_journal_year)
        self._pub_year = {pid: p.pub_year for pid, p in c.papers.items()}
        self._incoming = c.incoming
        self._jif_cache: dict[tuple[str, int], float | None] = {}

    def expected(self, key: ReferenceSetKey) -> float | None:
        return self._means.get((key.scope, key.scope_id, key.pub_year, key.doc_type))

    def set_size(self, key: ReferenceSetKey) -> int:
        return self._sizes.get((key.scope, key.scope_id, key.pub_year, key.doc_type), 0)

    def category_percentile(self, category: str, pub_year: int, n_cites: int) -> float | None:
        """100 x share of the category/year set cited at least ``n_cites`` times."""
        counts = self._pct_sorted.get((category, pub_year))
        if not counts:
            return None
        at_least = len(counts) - bisect_left(counts, n_cites)
        return 100.0 * at_least / len(counts)

    def jif(self, journal_id: str, jcr_year: int) -> float | None:
        key = (journal_id, jcr_year)
        if key not in self._jif_cache:
            items = self._by_journal_year.get((journal_id, jcr_year - 1), []) + \
                self._by_journal_year.get((journal_id, jcr_year - 2), [])
            if not items:
                self._jif_cache[key] = None
            else:
                cites = sum(
                    1
                    for item in items
                    for q in self._incoming(item)
                    if self._pub_year.get(q) == jcr_year
                )
                self._jif_cache[key] = cites / len(items)
        return self._jif_cache[key]


_tables: "weakref.WeakKeyDictionary[Corpus, ReferenceTable]" = weakref.WeakKeyDictionary()


def reference_table(c: Corpus) -> ReferenceTable:
    table = _tables.get(c)
    if table is None:
        table = _tables[c] = ReferenceTable(c)
    return table


def _paper(c: Corpus, p: str):
    if p not in c:
        raise KeyError(f"unknown paper id {p!r}")
    return c.papers[p]


def expected_citations(c: Corpus, key: ReferenceSetKey) -> float | None:
    """Mean times cited over the reference set; None when the set is empty."""
    return reference_table(c).expected(key)


def journal_ae(c: Corpus, p: str) -> float | None:
    paper = _paper(c, p)
    t = reference_table(c)
    exp = t.expected(ReferenceSetKey("journal", paper.journal_id, paper.pub_year, paper.doc_type))
    if not exp:
        return None
    return t.times_cited[p] / exp


def category_ae(c: Corpus, p: str) -> float | None:
    """Actual over expected citations, the expectation averaged across the paper's categories."""
    paper = _paper(c, p)
    t = reference_table(c)
    exps = [
        t.expected(ReferenceSetKey("category", cat, paper.pub_year, paper.doc_type))
        for cat in paper.categories
    ]
    exps = [e for e in exps if e is not None]
    if not exps:
        return None
    exp = sum(exps) / len(exps)
    if exp == 0:
        return None
    return t.times_cited[p] / exp


def percentile_in_subject(c: Corpus, p: str) -> float | None:
    """Percentile of ``p`` in its best-performing category (lower = more cited).

    Uncited papers get 100. Papers of doc type ``other`` get None.
    """
    paper = _paper(c, p)
    if paper.doc_type not in PERCENTILE_DOC_TYPES:
        return None
    t = reference_table(c)
    n = t.times_cited[p]
    values = [t.category_percentile(cat, paper.pub_year, n) for cat in paper.categories]
    values = [v for v in values if v is not None]
    return min(values) if values else None


def reversed_percentile(pct: float) -> float:
    if not 0.0 < pct <= 100.0:
        raise ValueError(f"percentile must lie in (0, 100], got {pct!r}")
    return 100.0 - pct


def journal_impact_factor(c: Corpus, j: str, jcr_year: int) -> float | None:
    """Citations from ``jcr_year`` papers to the journal's items of the two prior years, per item.

    All document types count in numerator and denominator. None when the
    journal published nothing in those two years.
    """
    return reference_table(c).jif(j, jcr_year)


def normalized_scores(c: Corpus, p: str, jcr_year: int) -> NormalizedScores:
    paper = _paper(c, p)
    pct = percentile_in_subject(c, p)
    return NormalizedScores(
        journal_ae=journal_ae(c, p),
        category_ae=category_ae(c, p),
        percentile=pct,
        reversed_percentile=None if pct is None else reversed_percentile(pct),
        jif=journal_impact_factor(c, paper.journal_id, jcr_year),
    )


def indicator_vector(c: Corpus, p: str, jcr_year: int) -> IndicatorVector:
    raw = raw_counts(c, p)
    norm = normalized_scores(c, p, jcr_year)
    return IndicatorVector(
        paper_id=p,
        times_cited=raw.times_cited,
        second_gen=raw.second_gen,
        second_gen_per_citing=raw.second_gen_per_citing,
        journal_ae=norm.journal_ae,
        category_ae=norm.category_ae,
        percentile=norm.percentile,
        reversed_percentile=norm.reversed_percentile,
        jif=norm.jif,
    )


def indicator_table(c: Corpus, jcr_year: int, paper_ids=None) -> list[IndicatorVector]:
    """Indicator vectors for ``paper_ids`` (default: every paper, corpus order)."""
    if paper_ids is None:
        paper_ids = [p.paper_id for p in c.paper_list]
    return [indicator_vector(c, pid, jcr_year) for pid in paper_ids]


INDICATOR_COLUMNS = tuple(f.name for f in fields(IndicatorVector))
_INT_COLUMNS = {"times_cited", "second_gen"}


def indicators_csv(vectors: list[IndicatorVector]) -> str:
    """CSV text, one row per paper; missing values are empty cells, floats in repr form."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(INDICATOR_COLUMNS)
    for v in vectors:
        w.writerow(["" if x is None else (repr(x) if isinstance(x, float) else x)
                    for x in (getattr(v, col) for col in INDICATOR_COLUMNS)])
    return buf.getvalue()


def parse_indicators_csv(text: str) -> list[IndicatorVector]:
    rows = csv.DictReader(io.StringIO(text))
    out = []
    for row in rows:
        values = {}
        for col in INDICATOR_COLUMNS:
            cell = row[col]
            if col == "paper_id":
                values[col] = cell
            elif cell == "":
                values[col] = None
            else:
                values[col] = int(cell) if col in _INT_COLUMNS else float(cell)
        out.append(IndicatorVector(**values))
    return out
