"""Stability certification of shift tuples.

A tuple is safe for time stepping when the generating function of the
symmetric operator part stays nonpositive and the largest eigenvalue of
(A + A^T)/2 is negative.  This script certifies the built-in fourth-order
family, shows the unshifted operator failing (the reason plain stencils
cannot be time stepped), and writes generating-function samples to CSV for
plotting.
"""

import numpy as np

from wsld import CERTIFIED_TUPLES, DegenerateTupleError, certify, generating_function

print("tuple                          alpha   f_max        lambda_max   verdict")
for shifts in CERTIFIED_TUPLES:
    for alpha in (1.1, 1.5, 1.9):
        try:
            r = certify(shifts, alphas=[alpha], n_interior=32, x_points=1001)
        except DegenerateTupleError:
            print(f"{str(shifts):<30} {alpha:<7} combination weights degenerate here")
            continue
        print(
            f"{str(shifts):<30} {alpha:<7} {r.f_max:>11.3e} {r.lambda_max_sym:>12.3e} "
            f"{r.verdict}"
        )

print("\nNegative control, unshifted stencil (shift 0):")
r = certify((0,), alphas=[1.5], n_interior=32, x_points=1001)
print(f"  f_max = {r.f_max:.4f}, lambda_max = {r.lambda_max_sym:.4f} -> {r.verdict}")

out = "generating_function_samples.csv"
x = np.linspace(0.0, np.pi, 401)
with open(out, "w", encoding="utf-8") as fh:
    fh.write("tuple,alpha,x,f\n")
    for shifts in ((1, 2), (1, -2)):
        for alpha in (1.1, 1.3, 1.5, 1.7, 1.9):
            for xi, fi in zip(x, generating_function(shifts, alpha, x)):
                fh.write(f'"{shifts}",{alpha},{xi:.12e},{fi:.12e}\n')
print(f"\nwrote {out} (plot f against x per alpha to see the nonpositive fans)")
