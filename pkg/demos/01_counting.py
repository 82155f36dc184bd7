"""Asymptotic counts of simple 3-uniform hypergraphs, and how they compare
with exact counts at small sizes."""

# %% The leading term is an exact rational; the correction is exp(-(r-1)M_2/(2M)).
from hyperdeg import DegreeSequence, asymptotic_count, asymptotic_count_regular, enumerate_simple_hypergraphs

k = DegreeSequence([2, 2, 1, 1], r=3)
res = asymptotic_count(k)
print("k =", list(k.degrees))
print("  leading term  ", res.leading_term, "=", float(res.leading_term))
print("  log correction", round(res.log_correction, 6))
print("  estimate      ", round(res.estimate, 6))
print("  exact         ", enumerate_simple_hypergraphs(k))

# %% With every degree equal to one there is no correction at all, so the
# formula is exact.
for M in (3, 6, 9, 12):
    k = DegreeSequence([1] * M, 3)
    print(f"all ones, M={M:2d}: estimate {asymptotic_count(k).estimate:10.1f}  exact {enumerate_simple_hypergraphs(k)}")

# %% Regular sequences have their own closed form; it agrees with the general one.
for n, deg in [(4, 3), (6, 2), (30, 4)]:
    reg = asymptotic_count_regular(n, deg, 3)
    gen = asymptotic_count(DegreeSequence.regular(n, deg, 3))
    print(f"n={n}, k={deg}: estimate {reg.estimate:.6g}  same leading term: {reg.leading_term == gen.leading_term}")

# %% The 2-regular family within reach of exhaustive counting. At this scale
# the dropped error term still matters.
for n in (3, 6):
    k = DegreeSequence([2] * n, 3)
    exact = enumerate_simple_hypergraphs(k)
    est = asymptotic_count(k).estimate
    print(f"2-regular n={n}: exact {exact}, estimate {est:.3f}")
