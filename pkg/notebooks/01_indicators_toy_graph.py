"""
Citation indicators on a hand-made graph
========================================

Seven papers, two journals, one subject category. Every number printed
below can be checked by counting arrows on paper.
"""

# %%
from citevalid import (
    CitationEdge,
    Corpus,
    Paper,
    indicator_table,
    journal_impact_factor,
    second_generation_citations,
    times_cited,
)

papers = [
    Paper("A", "J1", 2008, "article", ("cell biology",)),
    Paper("B", "J1", 2008, "article", ("cell biology",)),
    Paper("C", "J2", 2008, "review", ("cell biology",)),
    Paper("D", "J2", 2009, "article", ("cell biology",)),
    Paper("E", "J2", 2009, "article", ("cell biology",)),
    Paper("F", "J1", 2010, "article", ("cell biology",)),
    Paper("G", "J1", 2010, "note", ("cell biology",)),
]
edges = [("D", "A"), ("E", "A"), ("F", "A"), ("E", "B"), ("F", "D"), ("G", "D"), ("G", "E")]
c = Corpus(papers, [CitationEdge(a, b) for a, b in edges], [], census_year=2010)

# %%
# A is cited by D, E and F. D is cited twice and E once, so the papers that
# cite A have themselves collected 3 citations.
print("times cited A:", times_cited(c, "A"))
print("2nd generation A:", second_generation_citations(c, "A"))

# %%
# Impact factor of J2 in 2010: citations made in 2010 to J2 items of 2008-2009.
# J2 has three such items (C, D, E) and the 2010 papers F and G cite them
# three times, so the ratio is 1.
print("JIF J2 2010:", journal_impact_factor(c, "J2", 2010))

# %%
# The full indicator table. A/E values divide by the mean of the paper's
# journal (or category), year and document type. C is the only review so its
# reference sets contain only itself and have a zero mean.
for v in indicator_table(c, 2010):
    row = v.as_dict()
    print(" ".join(f"{k}={row[k]}" for k in ("paper_id", "times_cited", "journal_ae",
                                            "category_ae", "percentile")))
