"""Instances, the cycle metric, and stretch.

An instance is a connected graph whose first k vertices form a designated
anchor cycle. A retraction maps every vertex onto the cycle, keeping each
anchor where it is; its stretch is the largest cycle distance between the
images of two adjacent vertices.
"""

from retract import (Instance, Retraction, cycle_dist, distance_lower_bound,
                     gen_grid, parse_instance, serialize_instance, stretch)

# the boundary of a 3x3 grid is the anchor cycle; the center is free
grid = gen_grid(3)
print("3x3 grid: n=%d vertices, k=%d anchors" % (grid.n, grid.k))
print("cycle distance between anchors 0 and 5:", cycle_dist(grid.k, 0, 5))

# send the center (vertex 4, the one non-anchor) to anchor 0
images = list(range(9))
images[4] = grid.anchors[0]
ret = Retraction(tuple(images))
rep = stretch(grid, ret)
print("stretch of the naive retraction: %d (worst edge %s)"
      % (rep.max_stretch, rep.witness_edge))

# a distance-ratio argument shows no retraction can do better than ceil(ell)
ell = distance_lower_bound(grid)
print("distance lower bound ell =", ell)

# instances round-trip through a JSON serialization
text = serialize_instance(grid)
again = parse_instance(text)
assert again.edges == grid.edges and again.anchors == grid.anchors
print("serialization round-trip OK (%d bytes)" % len(text))
