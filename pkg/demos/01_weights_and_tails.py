"""Weights of the discrete Riesz-Feller operator and their exterior sums.

Run: python demos/01_weights_and_tails.py
"""
# %%
import numpy as np

from rfbvp import FractionalParams, SchemeWeights, build_weight_table, bruteforce_tail, tail_sum_right

# At alpha = 2 the weights collapse to the classical second difference.
table = build_weight_table(FractionalParams(2.0, 0.0), SchemeWeights(), kmax=4)
print("alpha=2 weights:", dict(zip(table.offsets.tolist(), table.w.tolist())))

# %%
# For alpha < 2 every node talks to every other node; weights decay like |k|^(-1-alpha).
for alpha in (0.5, 1.5):
    t = build_weight_table(FractionalParams(alpha, 0.0), kmax=6)
    print(f"alpha={alpha}: w_0..w_6 =", np.round(t.w[t.kmax:], 5))

# %%
# Skewness tilts the stencil: w_k(theta) == w_{-k}(-theta).
p = FractionalParams(1.5, 0.4)
t, m = build_weight_table(p, kmax=5), build_weight_table(p.mirrored, kmax=5)
print("mirror holds:", np.array_equal(t.w, m.w[::-1]))

# %%
# The closed-form exterior sums against a direct partial sum of 10^6 weights.
for j in (1, 5, 20):
    closed = tail_sum_right(j, p)
    brute = bruteforce_tail(j, p, K=10**6, side="right")
    print(f"j={j:2d}  closed={closed:+.10f}  brute={brute:+.10f}  diff={abs(closed - brute):.1e}")
