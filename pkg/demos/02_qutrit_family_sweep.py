"""Sweep the qutrit mixing family and write the bounds table to CSV.

rho(p) = p |psi><psi| + (1-p) I/3 with psi = (1,1,1)/sqrt(3), observables
the spin-1 J_x and J_y. The CSV feeds the frontend line renderer.
"""

import numpy as np

from quvar import experiments

grid = np.linspace(0.0, 1.0, 41)
rows = experiments.fig1_rows(grid)
experiments.write_csv("fig1_sweep.csv", experiments.FIG1_HEADER, rows)
print(f"wrote fig1_sweep.csv with {len(rows)} rows")

print("\n  p     sum       robertson  entropy    reverse")
for row in rows[::10]:
    p, total, rob, pb, rev = row
    print(f"{p:5.2f} {total:9.5f} {rob:9.5f} {pb:9.5f} {rev:9.5f}")

print("\nanchors: sum(p=0) = 4/3, sum(p=1) = 4/9, reverse(p=0) = 8/3")
print("the entropy bound stays strictly above robertson wherever <J_z> != 0")
