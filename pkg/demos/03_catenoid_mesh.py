"""Rebuild the catenoid from its Gauss map and export a mesh.

g = q on the cylinder of circumference 2 pi integrates to the catenoid
cosh z = sqrt(x^2 + y^2).  A perturbed Gauss map q exp(q/2) is still a
perfectly good input for the area estimates, but its horizontal
coordinates do not close up around the cylinder.
"""

import sys
import tempfile
from pathlib import Path

import numpy as np

from slabarea import GaussMap, export_mesh, immerse, period_closure
from slabarea.catenoid import CatenoidalWaist, waist_area
from slabarea.weierstrass import mean_curvature, mesh_area, mesh_arrays

two_pi = 2 * np.pi
sample = immerse(GaussMap(1, two_pi), 1.0, 64, 256)
x, y, z = np.moveaxis(sample.grid, -1, 0)
print(f"max |cosh^2 z - (x^2 + y^2)| = {np.max(np.abs(np.cosh(z) ** 2 - x**2 - y**2)):.2e}")

verts, tris = mesh_arrays(sample)
exact = waist_area(CatenoidalWaist(1.0, 0.0, 1.0))
print(f"mesh area {mesh_area(verts, tris):.6f} vs closed form {exact:.6f}")
h = mean_curvature(verts, tris).reshape(sample.shape)
print(f"largest discrete |H| away from the boundary: {h[1:-1].max():.2e}")

period, closed = period_closure(GaussMap(1, two_pi, {1: 0.5}))
print(f"perturbed data: period {period:.6f}, closed = {closed}")

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.gettempdir()) / "catenoid.obj"
export_mesh(sample, out)
print(f"wrote {out}")
