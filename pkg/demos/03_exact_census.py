"""Exhaustive census of a 12-point configuration: class sizes by number of
loop parts, the probability of simplicity, and the switching identities."""

# %%
from hyperdeg import DegreeSequence, census, ratio_prediction, switching_tally

k = DegreeSequence([2] * 6, 3)
c = census(k)
print("partitions       ", c.lambda_size)
print("in Lambda+       ", c.lambda_plus_size)
print("class sizes      ", c.class_sizes)
print("P(simple)        ", c.p_simple, "=", round(float(c.p_simple), 4))
print("hypergraphs      ", c.hypergraph_count)

# %% Consecutive class ratios next to the switching prediction (r-1)M_2/(2 l M).
for ell in range(1, max(c.class_sizes) + 1):
    exact = c.class_size(ell) / c.class_size(ell - 1)
    print(f"l={ell}: exact {exact:.4f}  predicted {ratio_prediction(k, ell):.4f}")

# %% Every legal forward move out of C_l is a legal reverse move out of C_{l-1},
# so the two totals agree level by level.
t = switching_tally(k)
for ell, lev in t.levels.items():
    print(f"l={ell}: forward legal {lev.forward_legal:8d}  reverse legal {lev.reverse_legal:8d}")
print("counterexamples:", len(t.forward_counterexamples), len(t.reverse_counterexamples))
