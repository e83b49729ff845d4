# %% [markdown]
# Total variation between the rank-n distribution and its limit, as certified
# intervals.  Rescaling by the decay rate shows the ratio settling between the
# proved constants.

# %%
from clpart.measures import Family
from clpart.tvdist import theorem_bounds, tv_proposition

# %%
for family, q, rate in [
    (Family.GL, 2, lambda n: 2 ** (n + 1)),
    (Family.U, 3, lambda n: 3 ** (n + 1)),
    (Family.SP, 2, lambda n: 2 ** (n + 1)),
    (Family.O_EVEN, 2, lambda n: 2**n),
]:
    print(family.value, "q =", q)
    for n in range(1, 9):
        tv = tv_proposition(family, n, q).interval
        lo, hi = theorem_bounds(family, n, q)
        print(f"  n={n}  tv~{float(tv.mid):.3e}  scaled {float(tv.mid) * rate(n):6.3f}  "
              f"allowed [{float(lo) * rate(n):.3f}, {float(hi) * rate(n):.3f}]")

# %% odd characteristic orthogonal groups decay only like q^(-n/2)
for n in range(1, 9):
    tv = tv_proposition(Family.O_ODD, n, 3).interval
    print(n, f"{float(tv.mid):.4e}")
