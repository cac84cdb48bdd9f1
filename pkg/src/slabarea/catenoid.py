"""Catenoidal waists in a slab and the optimal waist.

The catenoid with Gauss map ``exp(lam * w + d0)`` has vertical flux
``2 pi / lam`` and conformal factor ``cosh(lam * u + d0)**2``; its slice
between the planes ``z = -a`` and ``z = a`` is a catenoidal waist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RangeError


@dataclass(frozen=True)
class BetaConstant:
    value: float
    residual: float


def _beta_equation(z: float) -> float:
    return z * math.tanh(z) - 1.0


def solve_beta(tol: float = 1e-13) -> BetaConstant:
    """Positive root of ``tanh z = 1/z``.

    ``z tanh z - 1`` is negative at 1 and positive at 2, so the root is
    bracketed; a few bisection steps shrink the bracket and Newton's method
    finishes, falling back to bisection if a step leaves the bracket.
    """
    if tol < 1e-15:
        raise ValueError(f"tol must be >= 1e-15, got {tol}")
    lo, hi = 1.0, 2.0
    for _ in range(8):
        mid = 0.5 * (lo + hi)
        if _beta_equation(mid) < 0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(50):
        t = math.tanh(z)
        fz = z * t - 1.0
        if fz < 0:
            lo = z
        else:
            hi = z
        step = fz / (t + z * (1.0 - t * t))
        z_new = z - step
        if not lo <= z_new <= hi:
            z_new = 0.5 * (lo + hi)
        if z_new == z:
            break
        z = z_new
    residual = abs(math.tanh(z) - 1.0 / z)
    if residual > tol:
        # pick the best float neighbour; the root is resolved to ~1 ulp here
        cands = [z, math.nextafter(z, 0.0), math.nextafter(z, 2.0)]
        z = min(cands, key=lambda c: abs(math.tanh(c) - 1.0 / c))
        residual = abs(math.tanh(z) - 1.0 / z)
    return BetaConstant(z, residual)


# computed once at import, never hard-coded
BETA = solve_beta(1e-15)


@dataclass(frozen=True)
class CatenoidalWaist:
    """``C(lam; d0)`` cut by the slab ``-a <= z <= a``."""

    lam: float
    d0: float
    a: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValueError(f"a must be positive, got {self.a}")
        if not math.isfinite(self.d0):
            raise ValueError(f"d0 must be finite, got {self.d0}")

    @property
    def flux(self) -> float:
        return 2.0 * math.pi / self.lam

    @property
    def neck_radius(self) -> float:
        return 1.0 / self.lam


def waist_area(c: CatenoidalWaist) -> float:
    """Closed-form area ``(2 pi / lam) * int_{-a}^{a} cosh^2(lam u + d0) du``."""
    lam, d0, a = c.lam, c.d0, c.a
    try:
        if d0 == 0.0:
            return 2.0 * math.pi * a / lam + math.pi / lam**2 * math.sinh(2.0 * lam * a)
        s = math.sinh(2.0 * (lam * a + d0)) + math.sinh(2.0 * (lam * a - d0))
    except OverflowError as exc:
        raise RangeError(f"waist area overflows for lam*a={lam * a:g}, d0={d0:g}") from exc
    return 2.0 * math.pi / lam * (a + s / (4.0 * lam))


def area_derivative(lam: float, a: float) -> float:
    """d/d(lam) of the symmetric waist area, as a closed form."""
    return (
        -2.0 * math.pi * a / lam**2
        - 2.0 * math.pi / lam**3 * math.sinh(2.0 * lam * a)
        + 2.0 * a * math.pi / lam**2 * math.cosh(2.0 * lam * a)
    )


def optimal_waist(a: float) -> CatenoidalWaist:
    """Least-area catenoidal waist in the slab of half-height ``a``.

    This is ``(a / beta) * C`` cut at ``|z| <= a``, i.e. ``lam = beta / a``.
    """
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    return CatenoidalWaist(BETA.value / a, 0.0, a)


def is_maximally_stable(c: CatenoidalWaist, tol: float = 1e-9) -> bool:
    return abs(c.d0) <= tol and abs(c.lam * c.a - BETA.value) <= tol


def boundary_tangent_apexes(c: CatenoidalWaist) -> tuple:
    """Heights where the boundary tangent lines of the profile meet the axis.

    The meridian is ``r(z) = cosh(lam z + d0) / lam``.  The waist is
    maximally stable when both tangents at ``z = -a`` and ``z = a`` pass
    through the same axis point.
    """
    lam, d0, a = c.lam, c.d0, c.a
    out = []
    for z in (-a, a):
        out.append(z - 1.0 / (lam * math.tanh(lam * z + d0)))
    return tuple(out)
