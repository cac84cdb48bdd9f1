"""Area bounds for minimal surfaces in a slab, from cylinder Weierstrass data.

A surface is described by one or more flat cylinders ``C / i f Z`` with a
nonvanishing Gauss map ``g = q^n exp(sum c_k q^k)``, ``q = exp(2 pi w / f)``,
and height differential ``dw``.  The package evaluates areas, fluxes and
rotation numbers, builds the averaged profile of ``ln|g|`` over level sets,
and checks the chain of inequalities down to the least-area catenoidal waist.
"""

from .catenoid import (
    BETA,
    BetaConstant,
    CatenoidalWaist,
    is_maximally_stable,
    optimal_waist,
    solve_beta,
    waist_area,
)
from .complex_core import CylinderPoint, GaussMap, eval_gauss_map, kappa, winding_number
from .corpus import Corpus, parse_corpus, random_surface, read_corpus
from .errors import (
    GaussMapSyntaxError,
    HypothesisViolation,
    IndexOverflow,
    NonConvergence,
    NotApplicable,
    RangeError,
    WindingError,
    WindingZero,
)
from .gauss_map_parser import format_gauss_map, parse_gauss_map
from .quadrature import QuadratureSpec, integrate_interval, integrate_periodic
from .slab_analysis import (
    ChainReport,
    ComparisonLine,
    HProfile,
    SlabSurface,
    comparison_line,
    h_profile,
    h_slope_identity,
    jensen_gap,
    surface_area,
    verify_chain,
    vertical_flux,
)
from .weierstrass import ImmersionSample, export_mesh, immerse, period_closure

__version__ = "0.1.0"
