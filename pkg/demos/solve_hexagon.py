"""
Packing six triangles
=====================

Six equilateral triangles pack into a regular hexagon whose covering circle
has radius ``2*sqrt(3)``. A short campaign of annealing runs gets close to it.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from polypack import AnnealConfig, builtin, render_svg, run_campaign

inst = builtin("opt-3")
print(f"{inst.name}: k={inst.k}, r0={inst.initial_radius}, optimum={inst.known_optimum:.4f}")

# 20000 k iterations, cooling every 100 k
cfg = AnnealConfig.for_instance(inst, seed=1)
stats, runs = run_campaign(inst, cfg, n_runs=10)
best = runs[stats.best_run]
print(f"best of {stats.runs}: r={stats.r_best:.4f} (mean {stats.r_mean:.4f}, std {stats.r_std:.4f})")
print(f"feasible runs: {stats.feasible_runs}/{stats.runs}")

render_svg(inst, best.best_layout, "hexagon.svg")
print("wrote hexagon.svg")

# %%
# Energy of the current layout and of the best one seen, along the run.

it = [p[0] for p in best.energy_trace]
fig, ax = plt.subplots(figsize=(5, 3))
ax.semilogy(it, [p[1] for p in best.energy_trace], lw=0.8, label="current")
ax.semilogy(it, [p[2] for p in best.energy_trace], lw=1.2, label="best")
ax.set_xlabel("iteration")
ax.set_ylabel("energy")
ax.legend()
fig.tight_layout()
fig.savefig("hexagon_trace.png", dpi=120)
print("wrote hexagon_trace.png")
