# %% [markdown]
# Drawing partitions from the limit measures, including the u-deformed ones.

# %%
from collections import Counter
from fractions import Fraction

from clpart.measures import Family, MeasureParams, limit_measure, sample

# %%
params = MeasureParams(Family.SP, 3)
draws = sample(params, 5000, seed=42).draws
freq = Counter(draws)
for lam, c in freq.most_common(6):
    print(f"{str(lam):>9}  empirical {c / 5000:.4f}  exact {float(limit_measure(params, lam).mid):.4f}")

# %% smaller u pushes the mass toward small partitions
for u in (Fraction(1), Fraction(1, 2), Fraction(1, 8)):
    p = MeasureParams(Family.GL, 2, u)
    sizes = [lam.size for lam in sample(p, 3000, seed=1).draws if lam is not None]
    print(f"u={u}  mean size {sum(sizes) / len(sizes):.3f}")
