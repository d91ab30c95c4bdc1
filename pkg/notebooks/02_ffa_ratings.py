"""
Combining several ratings into one score
========================================

Each rating is 6, 8 or 10. The combined score keeps the highest rating and
adds a fixed increment for every further one.
"""

# %%
import itertools

import numpy as np

from citevalid import ffa, increment_of

for scores in ([10], [10, 8], [10, 8, 6], [6, 6, 6], [10, 10, 10]):
    print(scores, "->", ffa(scores))

# %%
# The increments are 1, 2 and 3 for 6, 8 and 10.
print({s: increment_of(s) for s in (6, 8, 10)})

# %%
# The score depends only on the multiset of ratings, never on their order.
for combo in itertools.product((6, 8, 10), repeat=3):
    assert ffa(combo) == ffa(sorted(combo))

# %%
# Distribution of the score when each paper gets between one and three
# ratings drawn at random. Most of the mass sits at the single-rating values.
rng = np.random.default_rng(0)
draws = [ffa(rng.choice((6, 8, 10), size=rng.integers(1, 4))) for _ in range(5000)]
values, counts = np.unique(draws, return_counts=True)
for v, n in zip(values, counts):
    print(f"{v:3d} {'#' * (n // 50)}")
