"""Gauss maps on a flat cylinder and their logarithms.

A Gauss map is stored in logarithm-canonical form

    g(w) = q**n * exp(sum_k c_k q**k),    q = exp(2*pi*w/f),

on the cylinder C / i f Z with w = u + i v.  This form has no zeros or poles,
so every height u is a regular value of the height function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from .errors import RangeError, WindingError

# log(max float) with a little headroom; exp() beyond this overflows
LOG_FLOAT_MAX = 709.0


@dataclass(frozen=True)
class CylinderPoint:
    """Point w = u + i v on a cylinder component of circumference f."""

    u: float
    v: float

    @property
    def w(self) -> complex:
        return complex(self.u, self.v)


@dataclass(frozen=True)
class GaussMap:
    """Canonical nonvanishing Gauss map ``q**n * exp(sum c_k q**k)``.

    ``coeffs`` may be given as any mapping ``{k: c_k}``; it is normalized to
    a tuple of ``(k, complex)`` pairs sorted by index so instances hash and
    compare by value.
    """

    n: int
    circumference: float
    coeffs: tuple = field(default=())

    def __post_init__(self):
        if isinstance(self.coeffs, Mapping):
            items = self.coeffs.items()
        else:
            items = self.coeffs
        norm = {}
        for k, c in items:
            k = int(k)
            if k in norm:
                norm[k] += complex(c)
            else:
                norm[k] = complex(c)
        object.__setattr__(self, "coeffs", tuple(sorted(norm.items())))
        object.__setattr__(self, "n", int(self.n))
        f = float(self.circumference)
        if not (f > 0 and math.isfinite(f)):
            raise ValueError(f"circumference must be positive and finite, got {f!r}")
        object.__setattr__(self, "circumference", f)

    @classmethod
    def catenoid(cls, circumference: float, d0: float = 0.0) -> "GaussMap":
        """Gauss map exp(2 pi w / f + d0) of the catenoid with flux f."""
        return cls(1, circumference, {0: d0})

    @property
    def coeff_map(self) -> dict:
        return dict(self.coeffs)

    @property
    def rate(self) -> float:
        """2 pi / f, the exponential rate of q in u."""
        return 2.0 * math.pi / self.circumference

    @property
    def max_index(self) -> int:
        return max((abs(k) for k, _ in self.coeffs), default=0)

    def log_g(self, w):
        """log g = n 2 pi w / f + sum c_k q^k, with Im w reduced mod f."""
        w = np.asarray(w, dtype=complex)
        w = w.real + 1j * np.mod(w.imag, self.circumference)
        z = self.rate * w
        out = self.n * z
        if self.coeffs:
            # guard before exponentiating q^k
            _check_range(np.max(np.abs(z.real)) * self.max_index, "q^k")
            for k, c in self.coeffs:
                out = out + c * np.exp(k * z)
        return out

    def kappa_grid(self, u, v):
        """ln|g| on the tensor grid ``u x v``, shape ``u.shape + (len(v),)``.

        Uses ``Re(c_k q^k) = exp(k r u) Re(c_k exp(i k r v))`` with
        ``r = 2 pi / f``, so the sum over k is one real matrix product.
        """
        u = np.asarray(u, dtype=float)
        v = np.mod(np.asarray(v, dtype=float), self.circumference)
        r = self.rate
        out = np.multiply.outer(self.n * r * u, np.ones(v.shape))
        if self.coeffs:
            _check_range(np.max(np.abs(u), initial=0.0) * r * self.max_index, "q^k")
            ks = np.array([k for k, _ in self.coeffs], dtype=float)
            cs = np.array([c for _, c in self.coeffs])
            radial = np.exp(np.multiply.outer(u, ks * r))
            angular = np.real(cs[:, None] * np.exp(1j * r * np.outer(ks, v)))
            out = out + radial @ angular
        return out

    def dlog_g(self, w):
        """Derivative of log g with respect to w, i.e. g'/g."""
        w = np.asarray(w, dtype=complex)
        z = self.rate * w
        out = np.full(z.shape, self.n * self.rate, dtype=complex)
        for k, c in self.coeffs:
            if k:
                out = out + c * k * self.rate * np.exp(k * z)
        return out


def _check_range(x, what: str, where=None):
    if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > LOG_FLOAT_MAX:
        loc = "" if where is None else f" at {where}"
        raise RangeError(f"{what} exceeds the floating-point range{loc}")


def _as_w(p) -> complex | np.ndarray:
    if isinstance(p, CylinderPoint):
        return p.w
    return p


def eval_gauss_map(g: GaussMap, p):
    """Evaluate g at a :class:`CylinderPoint` or complex array ``w``.

    Raises :class:`RangeError` instead of returning inf or 0 when
    Re log g leaves the floating-point range.
    """
    lg = g.log_g(_as_w(p))
    _check_range(np.real(lg), "Re log g", where=p if isinstance(p, CylinderPoint) else None)
    out = np.exp(lg)
    return complex(out) if np.ndim(out) == 0 else out


def kappa(g: GaussMap, p, v=None):
    """kappa = ln|g| = (2 pi n / f) u + Re sum c_k q^k.

    Accepts a CylinderPoint, a complex ``w`` array, or separate ``u``, ``v``.
    """
    w = _as_w(p) if v is None else np.asarray(p) + 1j * np.asarray(v)
    out = np.real(g.log_g(w))
    return float(out) if np.ndim(out) == 0 else out


class Winding(NamedTuple):
    value: int
    residual: float


def winding_number(g: GaussMap, u: float, nodes: int = 256, tol: float = 1e-6) -> Winding:
    """Rotation number of g along the level curve at height ``u``.

    Integrates Im(g'/g dw) = Re(g'/g) dv over one period with the periodic
    trapezoid rule and rounds.  Raises :class:`WindingError` if the raw value
    is further than ``tol`` from an integer.
    """
    f = g.circumference
    v = np.arange(nodes) * (f / nodes)
    vals = np.real(g.dlog_g(u + 1j * v))
    raw = float(np.sum(vals) * (f / nodes) / (2.0 * math.pi))
    n = round(raw)
    residual = raw - n
    if abs(residual) > tol:
        raise WindingError(
            f"winding integral {raw!r} is not within {tol} of an integer; "
            f"increase the number of nodes (currently {nodes})"
        )
    return Winding(int(n), residual)
