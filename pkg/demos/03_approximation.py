"""The fast approximation and its limits.

The approximation embeds the instance in a square, looks for the largest
empty axis-aligned hole, and retracts everything radially from its center.
It is fast and comes with a guarantee in terms of the distance lower bound
ell, but on column-deleted grids it is off by a factor that grows with the
instance: those graphs have optimum 2 while the hole-based bound forces the
approximation up to about m/4.
"""

from math import sqrt

from retract import distance_lower_bound, gen_column_deleted_grid, gen_grid
from retract.approx import approx_retract
from retract.planar import optimal_retract_planar

for m in (4, 6, 8):
    inst = gen_grid(m)
    _, rep = approx_retract(inst)
    ell = distance_lower_bound(inst)
    cap = 1 + 80 * sqrt(2) * sqrt(inst.n) * float(ell)
    print("grid m=%d: approx=%d (guarantee: <= min(%d, %.0f))"
          % (m, rep.max_stretch, inst.k // 2, cap))

print()
for m in (5, 8):
    inst = gen_column_deleted_grid(m)
    _, arep = approx_retract(inst)
    _, orep = optimal_retract_planar(inst)
    print("column-deleted grid m=%d: approx=%d but optimum=%d"
          % (m, arep.max_stretch, orep.max_stretch))
