# %% [markdown]
# How big is the part of a random invertible matrix that sits at eigenvalue 1?
# We enumerate GL(3,2) outright, read off the Jordan blocks at 1 for each of the
# 168 elements, and set the counts beside the exact closed-form distribution.

# %%
from collections import Counter

from clpart.ffgroups import empirical_table, enumerate_group, jordan_partition_at_1
from clpart.measures import Family, MeasureParams, distribution_table, limit_measure
from clpart.partitions import EMPTY

elements = list(enumerate_group(Family.GL, 3, 2))
len(elements)

# %%
counts = Counter(jordan_partition_at_1(g) for g in elements)
for lam, c in sorted(counts.items(), key=lambda kv: kv[0].sort_key()):
    print(f"{str(lam):>7}  {c:4d}/168")

# %% the same numbers from the formula, as exact rationals
table = distribution_table(Family.GL, 3, 2)
for lam, p in table.nonzero().items():
    print(f"{str(lam):>7}  {p}")

# %% enumeration and formula agree exactly
emp = empirical_table(Family.GL, 3, 2)
assert all(table[lam] * 168 == c for lam, c in emp.counts.items())

# %% [markdown]
# As n grows the table converges to the limit measure.  The mass at the empty
# partition (1 is not an eigenvalue) approaches the infinite product.

# %%
limit = limit_measure(MeasureParams(Family.GL, 2), EMPTY)
for n in (1, 2, 4, 8, 16):
    print(n, float(distribution_table(Family.GL, n, 2)[EMPTY]), float(limit.mid))
