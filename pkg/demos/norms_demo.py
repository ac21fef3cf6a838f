"""Tour of the function-space norms on a rough random field.

Run: python3 demos/norms_demo.py

Prints the norm table the ``fracharm norms`` subcommand emits, then checks two
classical facts numerically: L^(p,p) = L^p, and the Besov-BMO-Sobolev chain
B^0_{inf,inf} <~ BMO <~ W^{n/2,2} with grid-stable constants.
"""

from fracharm import norms, spectral
from fracharm.experiments import embedding_constants
from fracharm.spectral import PeriodicGrid

grid = PeriodicGrid(1, 256)
f = spectral.gaussian_random_field(grid, 0.75, 7)
for row in norms.norm_table(grid, f):
    name, params, value = row.row()
    print(f"{name:10s} {params:22s} {float(value):.6g}")

print()
for p in (1.5, 2.0, 4.0):
    a, b = norms.lorentz_norm(grid, f, p, p), norms.lp_norm(grid, f, p)
    print(f"L^({p},{p}) = {a:.12g}   L^{p} = {b:.12g}")

print()
for g in (PeriodicGrid(1, 128), PeriodicGrid(1, 256)):
    besov_bmo, bmo_sob = embedding_constants(g, range(1, 11))
    print(f"N={g.N}: max Besov/BMO {besov_bmo:.3f}, max BMO/Sobolev {bmo_sob:.3f}")
