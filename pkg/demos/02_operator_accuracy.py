"""Observed accuracy of the shifted-stencil operators, orders 1 through 4.

Applies each operator to u(x) = x^8 (2-x)^8 on (0, 2) -- smooth and
vanishing to 8th order at both ends -- and compares against the exact
fractional derivative from the monomial rule.  Halving h should divide the
error by about 2^k for the order-k operator.
"""

import math

import numpy as np

from wsld import Grid1D, apply_stencil, observed_rate, rl_exact_poly, table_for_grid

DOMAIN = (0.0, 2.0)

terms = [(8 + j, math.comb(8, j) * 2.0 ** (8 - j) * (-1) ** j) for j in range(9)]
powers = [p for p, _ in terms]
coeffs = [c for _, c in terms]

order_tuples = {
    1: (1,),
    2: (1, 2),
    3: (1, 2, 1, 0),
    4: (1, 2, 1, 0, 1, 2, 1, -2),
}

print("max interior error of the left-derivative operator on u = x^8 (2-x)^8")
print(f"{'order':>5} {'alpha':>6} {'h=1/32':>12} {'h=1/64':>12} {'rate':>7}")
for order, shifts in order_tuples.items():
    for alpha in (1.1, 1.5, 1.9):
        errors = []
        for n_cells in (64, 128):
            grid = Grid1D(*DOMAIN, n_cells)
            x = grid.interior_nodes()
            u = x**8 * (2.0 - x) ** 8
            table = table_for_grid(alpha, shifts, grid)
            numeric = apply_stencil("left", table, grid, u)
            exact = rl_exact_poly("left", alpha, powers, coeffs, x, DOMAIN)
            errors.append(np.max(np.abs(numeric - exact)))
        rate = observed_rate(errors[0], errors[1], 1 / 32, 1 / 64)
        print(f"{order:>5} {alpha:>6} {errors[0]:>12.3e} {errors[1]:>12.3e} {rate:>7.3f}")
