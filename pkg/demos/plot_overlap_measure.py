"""
The overlap penalty and its jump
================================

Two edge-2 squares slide toward each other along the x axis. While their
interiors are apart the penalty is zero; the moment they interpenetrate it
jumps to the gap between their covering circles, ``2*sqrt(2) - 2``, and grows
linearly from there.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from polypack import PolygonState, overlap_measure, rectangle_structure

square = rectangle_structure(2, 2, mass=1)

# centers at -d/2 and +d/2, so the squares touch at d = 2
gaps = np.linspace(1.0, 3.5, 501)
penalty = [overlap_measure(square, PolygonState(-d / 2, 0, 0), square, PolygonState(d / 2, 0, 0))
           for d in gaps]

for d in (2.5, 2.0, 2.0 - 1e-9, 1.5):
    m = overlap_measure(square, PolygonState(-d / 2, 0, 0), square, PolygonState(d / 2, 0, 0))
    print(f"center distance {d:.9f}: penalty {m:.6f}")

# %%
# The curve is flat at zero, then jumps at contact.

fig, ax = plt.subplots(figsize=(5, 3))
ax.plot(gaps, penalty, ".", ms=2)
ax.axvline(2.0, color="grey", lw=0.5)
ax.set_xlabel("center distance")
ax.set_ylabel("overlap penalty")
fig.tight_layout()
fig.savefig("overlap_measure.png", dpi=120)
print("wrote overlap_measure.png")
