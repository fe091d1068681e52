"""Delta-covers of point clouds and the volume ceiling.

The transfer theorems need a delta0-cover of the site set. The greedy
farthest-point construction gives one quickly and verifies itself; a
maximal packing gives the matching lower-bound structure. For points
in the unit cube a volume comparison caps how many centers can ever
be needed.
"""

import numpy as np

from lipjet import cube_bound, diameter, greedy_cover, greedy_packing, is_cover

rng = np.random.default_rng(0)

# a 50 x 50 grid over the unit square
grid = np.array([[i / 49, j / 49] for i in range(50) for j in range(50)])
print(f"grid: {grid.shape[0]} points, diameter {diameter(grid):.4f}")

for delta in (0.5, 0.25, 0.1):
    plan = greedy_cover(grid, delta)
    cb = cube_bound(2, delta)
    print(f"  delta {delta:4.2f}: greedy cover {len(plan.center_indices):4d} centers "
          f"(verified: {plan.verified}), volume ceiling {cb.m}")
print()

# packings: pairwise separation strictly above delta, and maximality
# makes every packing a cover as well
pts = rng.random((200, 2))
kept = greedy_packing(pts, 0.2)
ok, _ = is_cover(pts, kept, 0.2)
print(f"random cloud: packing of size {len(kept)} at delta 0.2, "
      f"is also a cover: {ok}")

seps = [
    np.linalg.norm(pts[i] - pts[j])
    for a, i in enumerate(kept)
    for j in kept[a + 1 :]
]
print(f"smallest pairwise separation in the packing: {min(seps):.4f} (> 0.2)")
