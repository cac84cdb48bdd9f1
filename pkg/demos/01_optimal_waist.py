"""Which catenoidal waist spanning a slab has the least area?

A catenoid cut by the planes z = -a and z = a has area

    A(lam) = 2 pi a / lam + (pi / lam^2) sinh(2 lam a)

as a function of its neck parameter lam.  Thin necks (large lam) pay for
the flaring ends, fat necks (small lam) pay for the long circumference, and
the balance point is lam = beta / a with tanh(beta) = 1 / beta.
"""

import numpy as np

from slabarea import BETA, CatenoidalWaist, optimal_waist, waist_area
from slabarea.catenoid import boundary_tangent_apexes

a = 1.0
print(f"beta = {BETA.value:.15f}  (|tanh beta - 1/beta| = {BETA.residual:.1e})")

lams = np.geomspace(0.2, 6.0, 15)
for lam in lams:
    area = waist_area(CatenoidalWaist(float(lam), 0.0, a))
    print(f"lam = {lam:6.3f}  area = {area:10.4f}")

best = optimal_waist(a)
print(f"\noptimal lam = {best.lam:.12f}, area = {waist_area(best):.12f}")

# At the optimum the tangent lines to the profile r = cosh(lam z)/lam at
# both boundary circles pass through the centre of the slab.
lo, hi = boundary_tangent_apexes(best)
print(f"tangent lines meet the axis at z = {lo:.2e} and z = {hi:.2e}")
