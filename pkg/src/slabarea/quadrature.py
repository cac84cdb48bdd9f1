"""Quadrature on the cylinder.

Periodic directions use the uniform trapezoid rule, which converges
spectrally for analytic periodic integrands; the height direction uses a
composite Gauss-Legendre rule.  Both estimate their error by comparing
against the rule with half as many nodes (or panels) and refine by doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonConvergence

EPS = float(np.finfo(float).eps)
# error estimates never go below this many ulps of the integral of |fn|
ROUNDING_ULPS = 16


@dataclass(frozen=True)
class QuadratureSpec:
    v_nodes: int = 256
    u_panels: int = 64
    u_order: int = 8
    rel_tol: float = 1e-10
    max_refinements: int = 6

    def __post_init__(self):
        if self.v_nodes < 8 or self.v_nodes & (self.v_nodes - 1):
            raise ValueError(f"v_nodes must be a power of two >= 8, got {self.v_nodes}")
        if self.u_panels < 1 or self.u_order < 1:
            raise ValueError("u_panels and u_order must be positive")
        if not self.rel_tol > 100 * EPS:
            raise ValueError(f"rel_tol must exceed 100 * machine epsilon, got {self.rel_tol}")
        if self.max_refinements < 0:
            raise ValueError("max_refinements must be nonnegative")

    def describe(self) -> str:
        return (
            f"v_nodes={self.v_nodes} u_panels={self.u_panels} u_order={self.u_order} "
            f"rel_tol={self.rel_tol:g} max_refinements={self.max_refinements}"
        )


DEFAULT_SPEC = QuadratureSpec()


def periodic_nodes(f: float, n: int) -> np.ndarray:
    return np.arange(n) * (f / n)


def integrate_periodic(fn, f: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Integrate an ``f``-periodic function over one period.

    ``fn`` maps a 1-d array of ``v`` nodes to values of the same length, or
    to an array of shape ``(..., len(v))`` to integrate a batch at once.
    Returns ``(value, err_est)``, scalars or arrays matching the batch shape.
    Refinement stops when every ``err_est <= rel_tol * int|fn|``.
    """
    n = spec.v_nodes
    vals = np.asarray(fn(periodic_nodes(f, n)), dtype=float)
    for level in range(spec.max_refinements + 1):
        h = f / n
        value = h * np.sum(vals, axis=-1)
        coarse = 2.0 * h * np.sum(vals[..., ::2], axis=-1)
        scale = h * np.sum(np.abs(vals), axis=-1)
        err = np.maximum(np.abs(value - coarse), ROUNDING_ULPS * EPS * scale)
        if not np.all(np.isfinite(value)):
            raise NonConvergence("periodic integrand is not finite", value, err)
        if np.all(err <= spec.rel_tol * scale):
            return _unwrap(value), _unwrap(err)
        if level == spec.max_refinements:
            break
        odd = periodic_nodes(f, 2 * n)[1::2]
        new = np.asarray(fn(odd), dtype=float)
        merged = np.empty(vals.shape[:-1] + (2 * n,))
        merged[..., ::2] = vals
        merged[..., 1::2] = new
        vals = merged
        n *= 2
    raise NonConvergence(
        f"periodic rule did not reach rel_tol={spec.rel_tol:g} with {n} nodes",
        _unwrap(value),
        _unwrap(err),
    )


@lru_cache(maxsize=None)
def legendre_rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_rule(lo: float, hi: float, panels: int, order: int):
    """Nodes and weights of the composite Gauss-Legendre rule, panel-major."""
    x, w = legendre_rule(order)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x).ravel()
    weights = (half[:, None] * w).ravel()
    return nodes, weights


def _apply_panel_rule(fn, lo, hi, panels, order):
    nodes, weights = panel_rule(lo, hi, panels, order)
    out = fn(nodes)
    if isinstance(out, tuple):
        vals, pointwise_err = (np.asarray(a, dtype=float) for a in out)
        inner_err = float(np.sum(weights * pointwise_err))
    else:
        vals = np.asarray(out, dtype=float)
        inner_err = 0.0
    return float(np.sum(weights * vals)), float(np.sum(weights * np.abs(vals))), inner_err


def integrate_interval(fn, lo: float, hi: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Integrate ``fn`` over ``[lo, hi]`` with a composite Gauss-Legendre rule.

    ``fn`` is called on a 1-d node array.  It may return ``(values, errs)``
    where ``errs`` bounds the error of each value (e.g. an inner quadrature);
    those are integrated and added to the returned estimate.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    panels = spec.u_panels
    coarse, _, _ = _apply_panel_rule(fn, lo, hi, panels, spec.u_order)
    for level in range(spec.max_refinements + 1):
        value, scale, inner_err = _apply_panel_rule(fn, lo, hi, 2 * panels, spec.u_order)
        if not math.isfinite(value):
            raise NonConvergence("interval integrand is not finite", value, math.inf)
        err = max(abs(value - coarse), ROUNDING_ULPS * EPS * scale)
        if err <= spec.rel_tol * scale:
            return value, err + inner_err
        panels *= 2
        coarse = value
    raise NonConvergence(
        f"panel rule did not reach rel_tol={spec.rel_tol:g} with {panels} panels",
        value,
        err + inner_err,
    )


def _unwrap(x):
    return float(x) if np.ndim(x) == 0 else x
