"""
Forty random rectangles
=======================

Generate a random rectangle instance, anneal it once and compare the radius
with the area bound: no container can be smaller than the circle whose area
equals the total area of the pieces.
"""

from polypack import AnnealConfig, anneal, random_rectangles, render_svg
from polypack.instances import area_lower_bound

inst = random_rectangles(40, size_range=(2, 10), mass_range=(5, 30), seed=2024)
bound = area_lower_bound(inst)
print(f"k={inst.k}, r0={inst.initial_radius:.3f}, area bound={bound:.3f}")

rep = anneal(inst, AnnealConfig.for_instance(inst, seed=11))
print(f"radius {rep.best_radius:.3f} = {rep.best_radius / bound:.3f} x bound, "
      f"feasible={rep.feasible}, {rep.iterations_used} iterations in {rep.wall_time:.1f}s")

render_svg(inst, rep.best_layout, "forty.svg")
print("wrote forty.svg")
