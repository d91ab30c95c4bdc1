"""F1000 Article Factor (FFa) from individual Faculty ratings.

The FFa of a paper is its highest rating (6, 8 or 10) plus an increment
of 1, 2 or 3 for each further rating of 6, 8 or 10 respectively.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .corpus import Corpus

INCREMENTS = {6: 1, 8: 2, 10: 3}
LABELS = {6: "Recommended", 8: "Must Read", 10: "Exceptional"}


@dataclass(frozen=True)
class FfaScore:
    paper_id: str
    ffa: int
    n_ratings: int


def increment_of(score: int) -> int:
    try:
        return INCREMENTS[score]
    except (KeyError, TypeError):
        raise ValueError(f"invalid rating score {score!r}; expected one of 6, 8, 10") from None


def ffa(scores: Iterable[int]) -> int:
    """Aggregate a paper's ratings into its FFa.

    >>> ffa([10, 8, 6])
    13
    >>> ffa([10, 10, 6])
    14
    """
    scores = list(scores)
    if not scores:
        raise ValueError("ffa needs at least one rating")
    incs = [increment_of(s) for s in scores]
    top = max(scores)
    # exactly one maximal rating is the base; every other rating adds its increment
    return top + sum(incs) - increment_of(top)


def ffa_table(c: Corpus) -> list[FfaScore]:
    """One FfaScore per rated paper, in corpus order. Unrated papers are omitted."""
    out = []
    for pid in c.rated_paper_ids():
        scores = [r.score for r in c.ratings_for(pid)]
        out.append(FfaScore(pid, ffa(scores), len(scores)))
    return out
