"""In-memory corpus of papers, citation edges and Faculty ratings.

A :class:`Corpus` is immutable once built. :func:`load_corpus` reads the
three CSV files (papers, citations, ratings), enforces referential
integrity and the census window, and deduplicates citation edges.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import IO, Union

DOC_TYPES = ("article", "note", "review", "other")
RATING_SCORES = (6, 8, 10)

PAPERS_HEADER = ("paper_id", "journal_id", "pub_year", "doc_type", "categories")
CITATIONS_HEADER = ("citing_id", "cited_id")
RATINGS_HEADER = ("paper_id", "rater_id", "score")

CATEGORY_SEP = ";"

Source = Union[str, os.PathLike, IO[str]]


class CorpusError(ValueError):
    """Raised when corpus input is malformed or inconsistent."""

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        where = ""
        if source is not None and line is not None:
            where = f"{source}, line {line}: "
        elif source is not None:
            where = f"{source}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class Paper:
    paper_id: str
    journal_id: str
    pub_year: int
    doc_type: str
    categories: tuple[str, ...]


@dataclass(frozen=True)
class CitationEdge:
    citing_id: str
    cited_id: str


@dataclass(frozen=True)
class RatingRecord:
    paper_id: str
    rater_id: str
    score: int


@dataclass(frozen=True)
class LoadSummary:
    """Counts reported by :func:`load_corpus`."""

    n_papers: int = 0
    n_edges: int = 0
    n_ratings: int = 0
    duplicate_edges: int = 0
    edges_outside_census: int = 0


_EMPTY: frozenset[str] = frozenset()


class Corpus:
    """Immutable collection of papers, deduplicated citation edges and ratings.

    The constructor does not validate; use :func:`validate_corpus` for that
    (:func:`load_corpus` always validates). Duplicate edges are collapsed
    here so adjacency is always consistent with the stored edge set.
    """

    __slots__ = (
        "_papers", "_index", "_edges", "_incoming", "_outgoing",
        "_ratings", "_ratings_by_paper", "_census_year", "_load_summary",
        "__weakref__",
    )

    def __init__(
        self,
        papers: Iterable[Paper],
        edges: Iterable[CitationEdge],
        ratings: Iterable[RatingRecord] = (),
        census_year: int = 0,
        load_summary: LoadSummary | None = None,
    ):
        papers = tuple(papers)
        edges = tuple(dict.fromkeys(edges))
        ratings = tuple(ratings)

        incoming: dict[str, set[str]] = {}
        outgoing: dict[str, set[str]] = {}
        for e in edges:
            incoming.setdefault(e.cited_id, set()).add(e.citing_id)
            outgoing.setdefault(e.citing_id, set()).add(e.cited_id)
        by_paper: dict[str, list[RatingRecord]] = {}
        for r in ratings:
            by_paper.setdefault(r.paper_id, []).append(r)

        object.__setattr__(self, "_papers", papers)
        object.__setattr__(self, "_index", MappingProxyType({p.paper_id: p for p in papers}))
        object.__setattr__(self, "_edges", edges)
        object.__setattr__(self, "_incoming", {k: frozenset(v) for k, v in incoming.items()})
        object.__setattr__(self, "_outgoing", {k: frozenset(v) for k, v in outgoing.items()})
        object.__setattr__(self, "_ratings", ratings)
        object.__setattr__(
            self, "_ratings_by_paper", {k: tuple(v) for k, v in by_paper.items()}
        )
        object.__setattr__(self, "_census_year", int(census_year))
        object.__setattr__(
            self,
            "_load_summary",
            load_summary
            or LoadSummary(n_papers=len(papers), n_edges=len(edges), n_ratings=len(ratings)),
        )

    def __setattr__(self, name, value):
        raise AttributeError("Corpus is immutable")

    def __delattr__(self, name):
        raise AttributeError("Corpus is immutable")

    def __repr__(self) -> str:
        return (
            f"Corpus(papers={len(self._papers)}, edges={len(self._edges)}, "
            f"ratings={len(self._ratings)}, census_year={self._census_year})"
        )

    @property
    def papers(self) -> Mapping[str, Paper]:
        return self._index

    @property
    def paper_list(self) -> tuple[Paper, ...]:
        """Papers in input order (duplicates, if any, retained)."""
        return self._papers

    @property
    def edges(self) -> tuple[CitationEdge, ...]:
        return self._edges

    @property
    def ratings(self) -> tuple[RatingRecord, ...]:
        return self._ratings

    @property
    def census_year(self) -> int:
        return self._census_year

    @property
    def load_summary(self) -> LoadSummary:
        return self._load_summary

    def __contains__(self, paper_id: object) -> bool:
        return paper_id in self._index

    def __len__(self) -> int:
        return len(self._index)

    def paper(self, paper_id: str) -> Paper:
        try:
            return self._index[paper_id]
        except KeyError:
            raise KeyError(f"unknown paper id {paper_id!r}") from None

    def incoming(self, paper_id: str) -> frozenset[str]:
        """Distinct papers citing ``paper_id``."""
        return self._incoming.get(paper_id, _EMPTY)

    def outgoing(self, paper_id: str) -> frozenset[str]:
        """Distinct papers cited by ``paper_id``."""
        return self._outgoing.get(paper_id, _EMPTY)

    def ratings_for(self, paper_id: str) -> tuple[RatingRecord, ...]:
        return self._ratings_by_paper.get(paper_id, ())

    def rated_paper_ids(self) -> list[str]:
        """Ids of papers holding at least one rating, in corpus order."""
        return [p.paper_id for p in self._papers if p.paper_id in self._ratings_by_paper]

    def checksum(self) -> str:
        """SHA-256 of the canonical CSV serialization."""
        h = hashlib.sha256()
        for text in serialize_corpus(self).values():
            h.update(text.encode("utf-8"))
            h.update(b"\0")
        return h.hexdigest()


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_corpus(c: Corpus) -> list[str]:
    """Return one human-readable description per violated invariant."""
    problems: list[str] = []

    counts = Counter(p.paper_id for p in c.paper_list)
    for pid, k in counts.items():
        if k > 1:
            problems.append(f"paper {pid!r}: id appears {k} times (must be unique)")

    for p in c.paper_list:
        if p.doc_type not in DOC_TYPES:
            problems.append(f"paper {p.paper_id!r}: doc_type {p.doc_type!r} not in {DOC_TYPES}")
        if not p.categories:
            problems.append(f"paper {p.paper_id!r}: empty category list")
        elif len(set(p.categories)) != len(p.categories):
            problems.append(f"paper {p.paper_id!r}: duplicate categories {list(p.categories)}")

    for e in c.edges:
        for role, pid in (("citing", e.citing_id), ("cited", e.cited_id)):
            if pid not in c:
                problems.append(f"edge {e.citing_id!r}->{e.cited_id!r}: unknown {role} paper {pid!r}")
        citer = c.papers.get(e.citing_id)
        if citer is not None and citer.pub_year > c.census_year:
            problems.append(
                f"edge {e.citing_id!r}->{e.cited_id!r}: citing paper published "
                f"{citer.pub_year}, after census year {c.census_year}"
            )

    seen: set[tuple[str, str]] = set()
    for r in c.ratings:
        label = f"rating ({r.paper_id!r}, {r.rater_id!r})"
        if r.score not in RATING_SCORES:
            problems.append(f"{label}: score {r.score!r} not in {RATING_SCORES}")
        if r.paper_id not in c:
            problems.append(f"{label}: unknown paper {r.paper_id!r}")
        key = (r.paper_id, r.rater_id)
        if key in seen:
            problems.append(f"{label}: more than one rating by this rater")
        seen.add(key)

    return problems


# ---------------------------------------------------------------------------
# CSV ingestion
# ---------------------------------------------------------------------------


def _open_rows(src: Source, expected: Sequence[str], name: str):
    """Yield ``(line_number, row_dict)`` from a CSV source with a header."""
    if hasattr(src, "read"):
        label = getattr(src, "name", name)
        yield from _iter_rows(src, expected, str(label))
        return
    path = Path(src)
    with open(path, newline="", encoding="utf-8") as fh:
        yield from _iter_rows(fh, expected, str(path))


def _iter_rows(fh: IO[str], expected: Sequence[str], label: str):
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise CorpusError("missing header row", source=label, line=1) from None
    header = [h.strip().lstrip("﻿") for h in header]
    missing = [col for col in expected if col not in header]
    if missing:
        raise CorpusError(f"header lacks column(s) {missing}", source=label, line=1)
    pos = [header.index(col) for col in expected]
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise CorpusError(
                f"expected {len(header)} fields, got {len(row)}", source=label, line=line
            )
        yield line, label, {col: row[i].strip() for col, i in zip(expected, pos)}


def _parse_year(text: str, label: str, line: int) -> int:
    if len(text) != 4 or not text.isdigit():
        raise CorpusError(f"pub_year {text!r} is not a 4-digit year", source=label, line=line)
    return int(text)


def load_corpus(
    papers_src: Source,
    citations_src: Source,
    ratings_src: Source | None = None,
    census_year: int | None = None,
) -> Corpus:
    """Read and validate a corpus from CSV sources.

    Parameters
    ----------
    papers_src, citations_src, ratings_src
        Paths or open text streams. Schemas: ``paper_id,journal_id,pub_year,
        doc_type,categories`` (categories ``;``-separated),
        ``citing_id,cited_id`` and ``paper_id,rater_id,score``.
    census_year
        Citations from papers published after this year are dropped.
        Defaults to the latest ``pub_year`` in the papers file.

    Raises
    ------
    CorpusError
        On malformed rows, unknown ids, bad ``doc_type``, empty category
        lists, invalid scores, or duplicate (paper, rater) ratings. The
        message names the offending file and line.
    """
    papers: list[Paper] = []
    index: dict[str, Paper] = {}
    for line, label, row in _open_rows(papers_src, PAPERS_HEADER, "papers"):
        pid = row["paper_id"]
        if not pid:
            raise CorpusError("empty paper_id", source=label, line=line)
        if pid in index:
            raise CorpusError(f"duplicate paper_id {pid!r}", source=label, line=line)
        if not row["journal_id"]:
            raise CorpusError(f"paper {pid!r}: empty journal_id", source=label, line=line)
        year = _parse_year(row["pub_year"], label, line)
        doc_type = row["doc_type"].lower()
        if doc_type not in DOC_TYPES:
            raise CorpusError(
                f"paper {pid!r}: doc_type {row['doc_type']!r} not in {DOC_TYPES}",
                source=label, line=line,
            )
        cats = tuple(c.strip() for c in row["categories"].split(CATEGORY_SEP) if c.strip())
        if not cats:
            raise CorpusError(f"paper {pid!r}: empty category list", source=label, line=line)
        if len(set(cats)) != len(cats):
            raise CorpusError(f"paper {pid!r}: duplicate categories", source=label, line=line)
        p = Paper(pid, row["journal_id"], year, doc_type, cats)
        papers.append(p)
        index[pid] = p

    if census_year is None:
        census_year = max((p.pub_year for p in papers), default=0)

    edges: dict[CitationEdge, None] = {}
    duplicates = 0
    outside = 0
    for line, label, row in _open_rows(citations_src, CITATIONS_HEADER, "citations"):
        citing, cited = row["citing_id"], row["cited_id"]
        for pid in (citing, cited):
            if pid not in index:
                raise CorpusError(f"unknown paper id {pid!r}", source=label, line=line)
        if index[citing].pub_year > census_year:
            outside += 1
            continue
        e = CitationEdge(citing, cited)
        if e in edges:
            duplicates += 1
            continue
        edges[e] = None

    ratings: list[RatingRecord] = []
    if ratings_src is not None:
        seen: set[tuple[str, str]] = set()
        for line, label, row in _open_rows(ratings_src, RATINGS_HEADER, "ratings"):
            pid, rater = row["paper_id"], row["rater_id"]
            if pid not in index:
                raise CorpusError(f"unknown paper id {pid!r}", source=label, line=line)
            try:
                score = int(row["score"])
            except ValueError:
                raise CorpusError(
                    f"score {row['score']!r} is not an integer", source=label, line=line
                ) from None
            if score not in RATING_SCORES:
                raise CorpusError(
                    f"score {score} not in {RATING_SCORES}", source=label, line=line
                )
            if (pid, rater) in seen:
                raise CorpusError(
                    f"duplicate rating of {pid!r} by rater {rater!r}", source=label, line=line
                )
            seen.add((pid, rater))
            ratings.append(RatingRecord(pid, rater, score))

    summary = LoadSummary(
        n_papers=len(papers),
        n_edges=len(edges),
        n_ratings=len(ratings),
        duplicate_edges=duplicates,
        edges_outside_census=outside,
    )
    corpus = Corpus(papers, edges, ratings, census_year, load_summary=summary)
    problems = validate_corpus(corpus)
    if problems:
        raise CorpusError("; ".join(problems))
    return corpus


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def serialize_corpus(c: Corpus) -> dict[str, str]:
    """Canonical CSV text for the three corpus files, keyed by file stem."""
    out = {}

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PAPERS_HEADER)
    for p in c.paper_list:
        w.writerow([p.paper_id, p.journal_id, p.pub_year, p.doc_type, CATEGORY_SEP.join(p.categories)])
    out["papers"] = buf.getvalue()

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CITATIONS_HEADER)
    for e in c.edges:
        w.writerow([e.citing_id, e.cited_id])
    out["citations"] = buf.getvalue()

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RATINGS_HEADER)
    for r in c.ratings:
        w.writerow([r.paper_id, r.rater_id, r.score])
    out["ratings"] = buf.getvalue()
    return out


def write_corpus(c: Corpus, out_dir: str | os.PathLike) -> dict[str, Path]:
    """Write ``papers.csv``, ``citations.csv`` and ``ratings.csv`` into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {}
    for stem, text in serialize_corpus(c).items():
        path = out_dir / f"{stem}.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        paths[stem] = path
    return paths
