"""The summation bounds for ratio-recurrence sequences, and the model of
P(simple) built from them."""

# %%
import math

from hyperdeg import DegreeSequence, SummationProblem, evaluate_summation, p_simple_from_switching_model

# Constant ratios give a truncated exponential series.
res = evaluate_summation(SummationProblem(N=10, A=[0.8] * 10, C=[0.0] * 10, c_hat=0.1))
print(f"sigma1 {res.sigma1:.6f} <= total {res.total:.6f} <= sigma2 {res.sigma2:.6f}   e^0.8 = {math.exp(0.8):.6f}")

# %% A positive correction term pulls the total below e^A.
res = evaluate_summation(SummationProblem(N=12, A=lambda i: 1.2, C=lambda i: 0.05, c_hat=0.1))
print(f"sigma1 {res.sigma1:.6f} <= total {res.total:.6f} <= sigma2 {res.sigma2:.6f}")

# %% The model for P(simple) with its brackets.
for degs in ([2, 2, 1, 1], [2] * 6, [3] * 30, [4] * 60):
    k = DegreeSequence(degs, 3)
    m = p_simple_from_switching_model(k)
    print(f"M={k.M:3d}: estimate {m.estimate:.5f}  brackets [{m.lower:.10f}, {m.upper:.10f}]")
