"""Smoothed maximum walkthrough: the log-partition function F_beta.

F_beta(x) = (1/beta) log sum_t exp(beta <x,t>) squeezes the true maximum
from above within log|T|/beta, and its coordinate derivatives are central
moments of the Gibbs measure.  Run: python3 demos/smoothed_maximum.py
"""
import numpy as np

from supcompare import index_sets as isets
from supcompare import softmax as sm

rng = np.random.default_rng(7)
T = isets.build_explicit(rng.standard_normal((12, 4)))
x = rng.standard_normal(4)
sup = float((T.points @ x).max())

print("=== sandwich: max <= F_beta <= max + log|T|/beta ===")
for beta in (0.5, 1.0, 2.0, 5.0, 20.0, 100.0):
    F = sm.log_partition(T, beta, x)
    print(f"beta={beta:6.1f}  F={F:9.5f}  max={sup:9.5f}  "
          f"excess={F - sup:.2e}  cap={np.log(12) / beta:.2e}")

# the gap closes like 1/beta: by beta=100 the soft max is the max to ~1e-2
print()
print("=== derivatives are Gibbs central moments ===")
beta = 1.5
i = 2
labels = {1: "mean", 2: "beta*var", 3: "beta^2*m3", 4: "beta^3*(m4-3var^2)"}
for order in (1, 2, 3, 4):
    analytic, fd = sm.grad_fd_report(T, beta, x, i, order)
    print(f"order {order} ({labels[order]:>18s}): analytic={analytic:+.8f}  "
          f"finite-diff={fd:+.8f}  diff={abs(analytic - fd):.1e}")

rep = sm.derivative_bound_check(T, beta, x, i)
print(f"\n|d3| <= 6 beta^2 E|l|^3 : {abs(rep.d3):.4f} <= {rep.d3_bound:.4f}")
print(f"|d4| <= 26 beta^3 E l^4 : {abs(rep.d4):.4f} <= {rep.d4_bound:.4f}")

print()
print("=== gradient lies in the convex hull of T ===")
g = sm.log_partition_grad(T, beta, x)
# hull membership shows as: <g, x> <= F and g a convex combination of rows
w = sm.gibbs_weights(T, beta, x)
print(f"grad = {np.round(g, 4)}")
print(f"reconstructed from weights: {np.round(w @ T.points, 4)}")
print(f"weights sum to {w.sum():.12f}, all nonnegative: {bool((w >= 0).all())}")

print()
print("=== second partial is a variance, hence nonnegative ===")
worst = min(sm.log_partition_partial(T, 2.0, rng.standard_normal(4), j, 2)
            for j in range(4) for _ in range(50))
print(f"min d2 over 200 random locations: {worst:.3e} (>= 0)")
