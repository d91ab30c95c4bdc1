"""Raw citation counts obtained by walking the corpus graph.

All counts respect the corpus census window, which is applied when the
corpus is loaded. Self-citations are kept.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus


@dataclass(frozen=True)
class RawCounts:
    times_cited: int
    second_gen: int
    second_gen_per_citing: float | None


def _require(c: Corpus, p: str) -> None:
    if p not in c:
        raise KeyError(f"unknown paper id {p!r}")


def citing_papers(c: Corpus, p: str) -> frozenset[str]:
    """Distinct papers that cite ``p``."""
    _require(c, p)
    return c.incoming(p)


def times_cited(c: Corpus, p: str) -> int:
    _require(c, p)
    return len(c.incoming(p))


def second_generation_citations(c: Corpus, p: str) -> int:
    """Citations received by the citing papers of ``p``, summed over citers.

    A grand-citer reached through two different citers counts twice; this
    is a sum of counts, not the size of a distinct set.
    """
    _require(c, p)
    return sum(len(c.incoming(q)) for q in c.incoming(p))


def second_gen_per_citing(c: Corpus, p: str) -> float | None:
    """Second-generation citations divided by times cited; None if uncited."""
    n = times_cited(c, p)
    if n == 0:
        return None
    return second_generation_citations(c, p) / n


def raw_counts(c: Corpus, p: str) -> RawCounts:
    tc = times_cited(c, p)
    sg = second_generation_citations(c, p)
    return RawCounts(tc, sg, sg / tc if tc else None)
