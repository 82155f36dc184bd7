"""Monte Carlo estimates of P(simple), event rates, and rejection sampling
of simple hypergraphs."""

# %%
import numpy as np

from hyperdeg import DegreeSequence, estimate_event_rates, estimate_p_simple, p_simple_from_switching_model
from hyperdeg import sample_simple_hypergraph

k = DegreeSequence([2, 2, 1, 1], 3)
rep = estimate_p_simple(k, 100_000, seed=0)
print(f"p_hat {rep.p_hat:.4f}  3-sigma CI [{rep.ci_low:.4f}, {rep.ci_high:.4f}]  exact 0.4")

# %% Along the 3-regular family the simple fraction settles toward exp(-2).
for n in (6, 12, 24, 48, 96):
    k = DegreeSequence([3] * n, 3)
    rep = estimate_p_simple(k, 50_000, seed=1)
    model = p_simple_from_switching_model(k).estimate
    print(f"n={n:3d}: p_hat {rep.p_hat:.4f} +- {rep.std_err:.4f}   model {model:.4f}")

# %% Failure rates of the structural properties fall off as M grows.
for n in (4, 8, 16):
    rates = estimate_event_rates(DegreeSequence([3] * n, 3), 20_000, seed=2)
    print(f"n={n:2d}: " + "  ".join(f"{e}={r.p_hat:.4f}" for e, r in rates.items()))

# %% Uniform simple hypergraphs by rejection.
rng = np.random.default_rng(5)
for _ in range(3):
    print(sample_simple_hypergraph(DegreeSequence([2] * 6, 3), rng).edges)
