"""Coefficient sequences and combination weights.

Shows the Gruenwald and Lubich sequences, the closed forms of the first few
Lubich coefficients, the zero-sum tail property, and the weights that
combine shifted stencils into 2nd/3rd/4th-order operators.
"""

import numpy as np

from wsld import (
    DEFAULT_TUPLE,
    branch_weights,
    grunwald_coeffs,
    lubich_coeffs,
    stencil_coeffs,
    weights_order2,
    weights_order3,
    weights_order4,
)

alpha = 1.5

print(f"alpha = {alpha}")
print("\nFirst coefficients of (1-z)^alpha (Gruenwald) and of the")
print("second-order Lubich generating function:")
g = grunwald_coeffs(alpha, 6)
q = lubich_coeffs(alpha, 6)
print("  k    g_k              q_k")
for k in range(7):
    print(f"  {k}   {g[k]: .12f}   {q[k]: .12f}")

print("\nClosed forms of the first three q values:")
c = 1.5**alpha
print(f"  q_0 = (3/2)^a           = {c:.12f}")
print(f"  q_1 = -(3/2)^a 4a/3     = {-c * 4 * alpha / 3:.12f}")
print(f"  q_2 = (3/2)^a a(8a-5)/9 = {c * alpha * (8 * alpha - 5) / 9:.12f}")

print("\nThe full sequence sums to zero; partial sums decay like K^(-alpha):")
for k_max in (50, 500, 5000):
    print(f"  |sum q_k for k <= {k_max:>4}| = {abs(lubich_coeffs(alpha, k_max).sum()):.3e}")

print("\nCombination weights (always summing to one):")
print(f"  order 2, shifts (1, 2):          {weights_order2(1, 2)}")
print(f"  order 2, shifts (1, -2):         {weights_order2(1, -2)}")
print(f"  order 3, shifts (1, 2, 1, -2):   {weights_order3(alpha, 1, 2, 1, -2)}")
print(f"  order 4, default tuple:          {weights_order4(alpha, DEFAULT_TUPLE)}")

print(f"\nFlattened branch weights of the default tuple {DEFAULT_TUPLE}:")
for w, shift in branch_weights(alpha, DEFAULT_TUPLE):
    print(f"  shift {shift:+d}: weight {w:+.6f}")
total = sum(w for w, _ in branch_weights(alpha, DEFAULT_TUPLE))
print(f"  total: {total:.15f}")

table = stencil_coeffs(alpha, DEFAULT_TUPLE, 8)
print(f"\nCombined stencil phi_0..phi_8 (alignment offset m = {table.max_shift}):")
print(" ", np.array2string(table.phi, precision=6))
