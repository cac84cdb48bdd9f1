"""Area lower bound for minimal surfaces in a slab.

A surface is a slab half-height ``a`` plus one or more cylinder components,
each carrying a canonical Gauss map on ``C / i f_i Z``.  The height ``u`` is
the real part of the cylinder coordinate, so the level set at height ``u``
is the union of one circle per component and the vertical flux is
``f_total = sum f_i``.

Orientation: ``v`` increases along each level curve, so components with
positive winding give an increasing average profile ``h`` with slope
``2 pi (sum n_i) / f_total``.  Surfaces whose windings are all negative are
handled by reflecting ``u -> -u``, which preserves every area.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .catenoid import CatenoidalWaist, is_maximally_stable, optimal_waist, waist_area
from .complex_core import GaussMap, winding_number
from .errors import HypothesisViolation, NotApplicable, RangeError
from .quadrature import DEFAULT_SPEC, EPS, ROUNDING_ULPS, QuadratureSpec, integrate_interval, integrate_periodic

# cosh(kappa)**2 overflows a double just above |kappa| = 355
KAPPA_LIMIT = 350.0


@dataclass(frozen=True)
class SlabSurface:
    a: float
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a surface needs at least one component")
        for g in comps:
            if not isinstance(g, GaussMap):
                raise TypeError(f"components must be GaussMap instances, got {type(g).__name__}")
            if g.n == 0:
                raise ValueError("component with rotation number zero")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValueError(f"slab half-height must be positive, got {self.a}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "a", float(self.a))

    @property
    def f_total(self) -> float:
        return math.fsum(g.circumference for g in self.components)

    @property
    def sum_n(self) -> int:
        return sum(g.n for g in self.components)

    @property
    def orientation(self) -> int:
        """+1 or -1 if all windings share that sign, else 0."""
        signs = {1 if g.n > 0 else -1 for g in self.components}
        return signs.pop() if len(signs) == 1 else 0

    @property
    def eligible(self) -> bool:
        return self.orientation != 0


def vertical_flux(s: SlabSurface) -> float:
    return s.f_total


def _cosh2_grid(g: GaussMap, u, v):
    k = g.kappa_grid(u, v)
    big = np.abs(k)
    if not np.all(big <= KAPPA_LIMIT):
        idx = np.unravel_index(np.nanargmax(np.where(np.isfinite(big), big, np.inf)), big.shape)
        uu = np.broadcast_to(np.asarray(u, dtype=float)[..., None], big.shape)[idx]
        raise RangeError(
            f"|kappa| = {big[idx]:.4g} exceeds {KAPPA_LIMIT} at (u, v) = ({uu:.6g}, {v[idx[-1]]:.6g})"
        )
    return np.cosh(k) ** 2


def h_values(s: SlabSurface, u, spec: QuadratureSpec = DEFAULT_SPEC):
    """Average of kappa over the level set at each height in ``u``.

    Returns ``(h, err)`` arrays shaped like ``u``.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    total = np.zeros_like(u)
    err = np.zeros_like(u)
    for g in s.components:
        val, e = integrate_periodic(lambda v, g=g: g.kappa_grid(u, v), g.circumference, spec)
        total += val
        err += e
    f = s.f_total
    return total / f, err / f


@dataclass(frozen=True)
class HProfile:
    samples: np.ndarray = field(repr=False)
    slope: float
    intercept: float
    max_linear_deviation: float

    def __call__(self, u):
        return self.slope * np.asarray(u) + self.intercept


def h_profile(s: SlabSurface, grid, spec: QuadratureSpec = DEFAULT_SPEC) -> HProfile:
    grid = np.asarray(grid, dtype=float)
    if np.any(np.abs(grid) > s.a * (1 + 1e-12)):
        raise ValueError("grid must lie in [-a, a]")
    h, _ = h_values(s, grid, spec)
    slope, intercept = np.polyfit(grid, h, 1)
    dev = float(np.max(np.abs(h - (slope * grid + intercept))))
    return HProfile(np.column_stack([grid, h]), float(slope), float(intercept), dev)


class SlopeIdentity(NamedTuple):
    lhs: float
    rhs: float
    windings: tuple


def total_winding(s: SlabSurface, u: float) -> int:
    return sum(winding_number(g, u).value for g in s.components)


def h_slope_identity(s: SlabSurface, spec: QuadratureSpec = DEFAULT_SPEC, heights: int = 5) -> SlopeIdentity:
    """Compare the difference slope of h with 2 pi (total winding) / f_total.

    The winding is evaluated at ``heights`` levels; ``rhs`` uses the first,
    and all of them are returned so constancy can be checked.
    """
    us = np.linspace(-s.a, s.a, heights)
    h, _ = h_values(s, us, spec)
    lhs = float(np.mean(np.diff(h) / np.diff(us)))
    windings = tuple(total_winding(s, float(u)) for u in us)
    rhs = 2.0 * math.pi * windings[0] / s.f_total
    return SlopeIdentity(lhs, rhs, windings)


def surface_area(s: SlabSurface, spec: QuadratureSpec = DEFAULT_SPEC):
    """Area ``sum_i int_{-a}^{a} int_0^{f_i} cosh^2 kappa_i dv du`` and its error."""
    value = 0.0
    err = 0.0
    for g in s.components:
        def inner(u, g=g):
            return integrate_periodic(lambda v: _cosh2_grid(g, u, v), g.circumference, spec)

        val, e = integrate_interval(inner, -s.a, s.a, spec)
        value += val
        err += e
    return value, err


class JensenGap(NamedTuple):
    slice_area: float
    avg_bound: float
    err: float

    @property
    def gap(self) -> float:
        return self.slice_area - self.avg_bound


def jensen_gap(s: SlabSurface, u: float, spec: QuadratureSpec = DEFAULT_SPEC) -> JensenGap:
    """Slice integral of cosh^2 kappa at height ``u`` against f cosh^2 h(u)."""
    if abs(u) > s.a * (1 + 1e-12):
        raise ValueError(f"height {u} outside [-{s.a}, {s.a}]")
    uu = np.array([u], dtype=float)
    slice_area = 0.0
    err = 0.0
    for g in s.components:
        val, e = integrate_periodic(lambda v, g=g: _cosh2_grid(g, uu, v), g.circumference, spec)
        slice_area += float(val[0])
        err += float(e[0])
    h, herr = h_values(s, uu, spec)
    f = s.f_total
    avg = f * math.cosh(h[0]) ** 2
    err += f * abs(math.sinh(2 * h[0])) * herr[0] + ROUNDING_ULPS * EPS * avg
    return JensenGap(slice_area, avg, err)


ZERO_CROSSING = "zero-crossing"
ALL_POSITIVE = "all-positive"
ALL_NEGATIVE = "all-negative"


@dataclass(frozen=True)
class ComparisonLine:
    """Affine profile ``k(u) = slope * u + offset`` bounded by h.

    ``slope`` is ``+2 pi / f_total`` for increasing h and its negative for
    decreasing h; ``offset`` equals ``k(0)``, the Weierstrass offset d0.
    """

    slope: float
    offset: float
    case_tag: str
    d: Optional[float] = None

    def __call__(self, u):
        return self.slope * np.asarray(u) + self.offset

    @property
    def lam(self) -> float:
        return abs(self.slope)


def comparison_line(hp: HProfile, f_total: float, a: float, affine_tol: float = 1e-6) -> ComparisonLine:
    """Build the comparison line k for an affine h profile.

    * h changes sign at d: ``k = lam (u - d)``
    * h > 0 on the slab:   ``k = lam (u + a) + h(-a)``
    * h < 0 on the slab:   ``k = lam (u - a) + h(a)``

    with ``lam = 2 pi / f_total``.  Decreasing profiles are handled by the
    reflection ``u -> -u``.  Raises :class:`NotApplicable` if h is flat.
    """
    scale = 1.0 + abs(hp.intercept) + abs(hp.slope) * a
    if hp.max_linear_deviation > affine_tol * scale:
        raise NotApplicable(f"h is not affine (deviation {hp.max_linear_deviation:.3g})")
    if abs(hp.slope) * a <= 1e-12 * scale:
        raise NotApplicable("h is constant; total rotation number is zero")
    sigma = 1.0 if hp.slope > 0 else -1.0
    lam = 2.0 * math.pi / f_total
    # in reflected coordinates h(u) = m u + b is increasing
    m, b = sigma * hp.slope, hp.intercept
    lo, hi = b - m * a, b + m * a
    if lo > 0:
        tag, d, off = ALL_POSITIVE, None, lam * a + lo
    elif hi < 0:
        tag, d, off = ALL_NEGATIVE, None, -lam * a + hi
    else:
        tag, d = ZERO_CROSSING, -b / m
        off = -lam * d
    return ComparisonLine(sigma * lam, off, tag, None if d is None else sigma * d)


CHAIN_LABELS = (
    "area_sigma >= avg_bound",
    "avg_bound >= line_bound",
    "line_bound >= waist_d0",
    "waist_d0 >= waist_sym",
    "waist_sym >= optimal",
)


@dataclass
class ChainReport:
    a: float
    f_total: float
    sum_n: int
    area_sigma: float
    avg_bound: float
    line_bound: float
    waist_area_d0: float
    waist_area_sym: float
    optimal_area: float
    slacks: tuple
    err_ests: tuple
    link_pass: tuple
    equality_case: bool
    waist_equality: bool
    windings: tuple
    line: Optional[ComparisonLine]
    exploratory: bool = False
    spec: QuadratureSpec = DEFAULT_SPEC

    @property
    def quantities(self) -> tuple:
        return (
            self.area_sigma,
            self.avg_bound,
            self.line_bound,
            self.waist_area_d0,
            self.waist_area_sym,
            self.optimal_area,
        )

    @property
    def passed(self) -> bool:
        return all(self.link_pass)

    @property
    def err_est(self) -> float:
        return math.fsum(self.err_ests)

    @property
    def verdict(self) -> str:
        v = "pass" if self.passed else "fail"
        return f"exploratory-{v}" if self.exploratory else v

    def failed_links(self) -> list:
        return [label for label, ok in zip(CHAIN_LABELS, self.link_pass) if not ok]

    def csv_row(self, surface_id: str) -> list:
        nums = [self.a, self.f_total]
        row = [surface_id] + [_num(x) for x in nums] + [str(self.sum_n)]
        row += [_num(x) for x in self.quantities]
        row += [_num(x) for x in self.slacks]
        row += [_num(self.err_est), self.verdict, "true" if self.equality_case else "false"]
        return row


CSV_COLUMNS = (
    ["surface-id", "a", "f_total", "sum_n", "area_sigma", "avg_bound", "line_bound"]
    + ["waist_d0", "waist_sym", "optimal"]
    + [f"slack{i}" for i in range(1, 6)]
    + ["err_est", "verdict", "equality"]
)


def _num(x: float) -> str:
    return format(x, ".17g")


def write_chain_csv(rows, out, spec: QuadratureSpec = DEFAULT_SPEC):
    """Write ``(surface_id, ChainReport)`` pairs as CSV.

    Items may also be preformatted rows (lists of strings).  The first line
    is a ``#`` comment recording the quadrature settings.  ``out`` is a path
    or a text stream.
    """
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", newline="") as fh:
            return write_chain_csv(rows, fh, spec)
    out.write(f"# quadrature {spec.describe()}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for item in rows:
        writer.writerow(item if isinstance(item, list) else item[1].csv_row(item[0]))


def chain_csv_text(rows, spec: QuadratureSpec = DEFAULT_SPEC) -> str:
    buf = io.StringIO()
    write_chain_csv(rows, buf, spec)
    return buf.getvalue()


def _closed_err(x: float) -> float:
    return ROUNDING_ULPS * EPS * abs(x)


def is_optimal_catenoid(s: SlabSurface, tol: float = 1e-9) -> bool:
    """Structural test for ``(a / beta) C`` cut by the slab, up to translation.

    ``Im c_0`` only rotates the parametrization of a surface of revolution,
    so it is not constrained.
    """
    if not is_catenoid(s):
        return False
    g = s.components[0]
    d0 = g.coeff_map.get(0, 0j).real
    return is_maximally_stable(CatenoidalWaist(g.rate, d0, s.a), tol)


def is_catenoid(s: SlabSurface) -> bool:
    """Single component with Gauss map ``exp(2 pi w / f + c_0)``."""
    if len(s.components) != 1:
        return False
    g = s.components[0]
    return g.n == 1 and all(k == 0 for k, _ in g.coeffs)


def verify_chain(
    s: SlabSurface,
    spec: QuadratureSpec = DEFAULT_SPEC,
    mixed_ok: bool = False,
    eq_tol: float = 1e-8,
) -> ChainReport:
    """Evaluate the five-link inequality chain for ``s``.

    Quantities, in order: surface area, the averaged bound
    ``int f cosh^2 h``, the line bound ``int f cosh^2 k``, the waist
    ``C(2 pi / f; d0)``, its symmetric version ``d0 = 0`` and the optimal
    waist.  A link passes if its slack is at least minus the combined error
    estimate of its two ends.
    """
    if not s.eligible and not mixed_ok:
        raise HypothesisViolation(
            "level curves have mixed orientations (windings "
            f"{[g.n for g in s.components]}); enable mixed-orientation mode to explore"
        )
    a, f = s.a, s.f_total

    area, area_err = surface_area(s, spec)

    def avg_integrand(u):
        h, herr = h_values(s, u, spec)
        return f * np.cosh(h) ** 2, f * np.abs(np.sinh(2 * h)) * herr

    avg, avg_err = integrate_interval(avg_integrand, -a, a, spec)

    hp = h_profile(s, np.linspace(-a, a, 9), spec)
    windings = tuple(total_winding(s, float(u)) for u in np.linspace(-a, a, 5))
    lam = 2.0 * math.pi / f
    try:
        line = comparison_line(hp, f, a)
    except NotApplicable:
        if not mixed_ok:
            raise
        line = None

    if line is not None:
        line_bound, line_err = integrate_interval(lambda u: f * np.cosh(line(u)) ** 2, -a, a, spec)
        w_d0 = waist_area(CatenoidalWaist(lam, line.offset, a))
    else:
        line_bound = line_err = w_d0 = math.nan
    w_sym = waist_area(CatenoidalWaist(lam, 0.0, a))
    w_opt = waist_area(optimal_waist(a))

    quantities = (area, avg, line_bound, w_d0, w_sym, w_opt)
    errs = (area_err, avg_err, line_err, _closed_err(w_d0), _closed_err(w_sym), _closed_err(w_opt))
    slacks = tuple(quantities[i] - quantities[i + 1] for i in range(5))
    link_err = tuple(errs[i] + errs[i + 1] for i in range(5))
    link_pass = tuple(bool(sl >= -e) for sl, e in zip(slacks, link_err))

    small = all(abs(sl) <= eq_tol for sl in slacks)
    equality = small and is_optimal_catenoid(s)
    waist_equality = is_catenoid(s) and all(abs(sl) <= eq_tol for sl in slacks[:3])

    return ChainReport(
        a=a,
        f_total=f,
        sum_n=s.sum_n,
        area_sigma=area,
        avg_bound=avg,
        line_bound=line_bound,
        waist_area_d0=w_d0,
        waist_area_sym=w_sym,
        optimal_area=w_opt,
        slacks=slacks,
        err_ests=errs,
        link_pass=link_pass,
        equality_case=equality,
        waist_equality=waist_equality,
        windings=windings,
        line=line,
        exploratory=not s.eligible,
        spec=spec,
    )
