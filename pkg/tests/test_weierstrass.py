import math
from collections import defaultdict

import numpy as np
import pytest

from slabarea import GaussMap
from slabarea.catenoid import CatenoidalWaist, waist_area
from slabarea.weierstrass import (
    export_mesh,
    horizontal_winding,
    immerse,
    mean_curvature,
    mesh_area,
    mesh_arrays,
    period_closure,
    read_mesh,
)

from .conftest import TWO_PI


def laurent_exp(coeffs, sign, terms=40, cutoff=60):
    """Laurent coefficients of exp(sign * sum c_k q^k) by series products."""
    out = {0: 1.0 + 0j}
    for k, c in coeffs.items():
        factor = {}
        term = 1.0 + 0j
        for m in range(terms):
            if abs(k * m) > cutoff:
                break
            factor[k * m] = factor.get(k * m, 0) + term
            term *= sign * c / (m + 1)
        prod = defaultdict(complex)
        for p, x in out.items():
            for q, y in factor.items():
                if abs(p + q) <= cutoff:
                    prod[p + q] += x * y
        out = dict(prod)
    return out


def period_oracle(g):
    """Horizontal period from the constant Laurent terms of 1/g and g.

    On the level curve dw = i dv, so a loop integral of F dw is
    i f times the q^0 coefficient of F.
    """
    cm = g.coeff_map
    a_inv = laurent_exp(cm, -1).get(g.n, 0)   # q^-n exp(-S): q^0 term is the q^n term of exp(-S)
    a_g = laurent_exp(cm, +1).get(-g.n, 0)
    f = g.circumference
    loop_x = 1j * f * 0.5 * (a_inv - a_g)
    loop_y = 1j * f * 0.5j * (a_inv + a_g)
    return complex(loop_x.real, loop_y.real)


def test_catenoid_points_on_catenoid():
    s = immerse(GaussMap(1, TWO_PI), 1.0, 64, 256)
    x, y, z = np.moveaxis(s.grid, -1, 0)
    assert np.max(np.abs(np.cosh(z) ** 2 - (x**2 + y**2))) <= 1e-8
    assert s.closed and abs(s.period) <= 1e-10


def test_height_is_parameter():
    g = GaussMap(2, 5.0, {1: 0.3 - 0.1j, -1: 0.2})
    s = immerse(g, 0.7, 9, 32)
    np.testing.assert_array_equal(s.grid[..., 2], np.broadcast_to(s.u[:, None], s.shape))
    assert s.shape == (9, 32)


def test_double_cover_winds_twice():
    s = immerse(GaussMap(2, TWO_PI), 0.5, 5, 128)
    assert horizontal_winding(s) == 2
    assert horizontal_winding(immerse(GaussMap(1, TWO_PI), 0.5, 5, 128)) == 1


@pytest.mark.parametrize("lam,d0", [(0.5, 0.0), (1.0, 0.3), (2.3, -0.8)])
def test_catenoid_period_vanishes(lam, d0):
    period, closed = period_closure(GaussMap.catenoid(TWO_PI / lam, d0))
    assert abs(period) <= 1e-12 and closed


def test_perturbed_period_is_open():
    g = GaussMap(1, TWO_PI, {1: 0.5})
    period, closed = period_closure(g)
    assert period == pytest.approx(0.5j * math.pi, abs=1e-13)
    assert not closed


def test_double_cover_closes():
    period, closed = period_closure(GaussMap(2, 3.0))
    assert abs(period) <= 1e-12 and closed


@pytest.mark.parametrize(
    "g",
    [
        GaussMap(1, TWO_PI, {1: 0.5}),
        GaussMap(1, 4.0, {0: 0.2, 1: 0.3 - 0.4j, -1: 0.1j}),
        GaussMap(2, 7.0, {1: 0.6, 2: -0.2 + 0.1j, -1: 0.3}),
        GaussMap(-1, 5.0, {-1: 0.7j, 1: 0.25}),
    ],
)
def test_period_against_laurent_oracle(g):
    period, _ = period_closure(g)
    assert abs(period - period_oracle(g)) <= 1e-11 * max(1.0, abs(period))


def test_period_independent_of_height():
    g = GaussMap(1, 4.0, {1: 0.3 - 0.4j, -1: 0.1j})
    p0, _ = period_closure(g, u0=0.0)
    p1, _ = period_closure(g, u0=0.6)
    assert abs(p0 - p1) <= 1e-11 * abs(p0)


def test_small_export_counts(tmp_path):
    s = immerse(GaussMap(1, TWO_PI), 1.0, 2, 2)
    path = tmp_path / "m.obj"
    export_mesh(s, path)
    lines = path.read_bytes().split(b"\n")
    assert lines[-1] == b""
    assert sum(ln.startswith(b"v ") for ln in lines) == 4
    assert sum(ln.startswith(b"f ") for ln in lines) == 4
    assert b"\r" not in path.read_bytes()


def test_export_round_trip(tmp_path):
    s = immerse(GaussMap(1, TWO_PI), 1.0, 16, 64)
    path = tmp_path / "cat.obj"
    export_mesh(s, path)
    verts, faces = read_mesh(path)
    assert len(verts) == 1024
    ref_v, ref_f = mesh_arrays(s)
    np.testing.assert_array_equal(verts, ref_v)
    np.testing.assert_array_equal(faces, ref_f)
    assert faces.min() == 0 and faces.max() == 1023


def test_export_is_byte_deterministic(tmp_path):
    g = GaussMap(2, 5.0, {1: 0.3})
    export_mesh(immerse(g, 0.8, 8, 32), tmp_path / "a.obj")
    export_mesh(immerse(g, 0.8, 8, 32), tmp_path / "b.obj")
    assert (tmp_path / "a.obj").read_bytes() == (tmp_path / "b.obj").read_bytes()


def test_export_error_names_path(tmp_path):
    s = immerse(GaussMap(1, TWO_PI), 1.0, 2, 4)
    bad = tmp_path / "missing" / "m.obj"
    with pytest.raises(OSError) as info:
        export_mesh(s, bad)
    assert info.value.filename == str(bad)


def test_mesh_area_converges():
    exact = waist_area(CatenoidalWaist(1.0, 0.0, 1.0))
    errors = []
    for nu, nv in [(16, 64), (32, 128), (64, 256)]:
        verts, tris = mesh_arrays(immerse(GaussMap(1, TWO_PI), 1.0, nu, nv))
        errors.append(abs(mesh_area(verts, tris) - exact) / exact)
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] <= 5e-3


def test_catenoid_mean_curvature_small():
    s = immerse(GaussMap(1, TWO_PI), 1.0, 64, 256)
    verts, tris = mesh_arrays(s)
    h = mean_curvature(verts, tris).reshape(s.shape)
    assert np.max(h[1:-1]) <= 0.01


def test_unit_sphere_mean_curvature():
    # sanity check of the discrete operator on a non-minimal surface
    th = np.linspace(0.3, math.pi - 0.3, 60)
    ph = np.arange(240) * TWO_PI / 240
    T, P = np.meshgrid(th, ph, indexing="ij")
    verts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], -1).reshape(-1, 3)
    i, j = np.meshgrid(np.arange(59), np.arange(240), indexing="ij")
    i, j = i.ravel(), j.ravel()
    jn = (j + 1) % 240
    tris = np.concatenate(
        [np.column_stack([i * 240 + j, (i + 1) * 240 + j, (i + 1) * 240 + jn]),
         np.column_stack([i * 240 + j, (i + 1) * 240 + jn, i * 240 + jn])]
    )
    h = mean_curvature(verts, tris).reshape(60, 240)
    assert np.median(h[1:-1]) == pytest.approx(1.0, rel=2e-2)


def test_immerse_validation():
    with pytest.raises(ValueError):
        immerse(GaussMap(1, TWO_PI), 1.0, 1, 8)
