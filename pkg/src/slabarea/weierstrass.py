"""Immersions from cylinder Weierstrass data, period checks and mesh export.

With Gauss map g and height differential dw, the coordinate differentials
are

    dx = Re[(1/g - g)/2 dw],  dy = Re[i (1/g + g)/2 dw],  dz = Re[dw],

so the height of the point at ``w = u + i v`` is ``u`` and the induced
metric is ``cosh^2(ln|g|) |dw|^2``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .complex_core import GaussMap, eval_gauss_map
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_periodic, legendre_rule, periodic_nodes


def horizontal_forms(g: GaussMap, w):
    """Coefficients of dw in dx and dy (complex, before taking real parts)."""
    gv = eval_gauss_map(g, w)
    inv = 1.0 / gv
    return 0.5 * (inv - gv), 0.5j * (inv + gv)


@dataclass
class ImmersionSample:
    u: np.ndarray
    v: np.ndarray
    grid: np.ndarray = field(repr=False)
    period: complex
    closed: bool

    @property
    def shape(self) -> tuple:
        return self.grid.shape[:2]


def _segment_integrals(fn, t, order, sub):
    """Integrals of ``fn`` over consecutive intervals of the sorted array ``t``.

    ``fn`` maps a 1-d node array to an array of shape ``(..., nodes)``.
    Each interval is split into ``sub`` Gauss-Legendre panels.
    """
    x, w = legendre_rule(order)
    edges = np.linspace(0.0, 1.0, sub + 1)
    # panel nodes and weights on [0, 1]
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    ref_nodes = (mid[:, None] + half[:, None] * x).ravel()
    ref_weights = (half[:, None] * w).ravel()
    lo, width = t[:-1], np.diff(t)
    nodes = lo[:, None] + width[:, None] * ref_nodes
    vals = fn(nodes.ravel())
    vals = vals.reshape(vals.shape[:-1] + nodes.shape)
    return np.sum(vals * (width[:, None] * ref_weights), axis=-1)


def immerse(
    g: GaussMap,
    a: float,
    u_count: int,
    v_count: int,
    spec: QuadratureSpec = DEFAULT_SPEC,
    substeps: int = 2,
) -> ImmersionSample:
    """Sample the immersion on a ``u_count x v_count`` grid.

    Heights run over ``linspace(-a, a, u_count)``; ``v`` takes ``v_count``
    uniform values in ``[0, f)``.  The horizontal differentials are
    integrated from the base point ``w = -a`` up the line ``v = 0`` and then
    around each level curve, using Gauss-Legendre panels of ``spec.u_order``
    nodes.  The result is translated so the base level curve has its
    horizontal centroid at the origin, and ``z`` is set to ``u``.
    """
    if u_count < 2 or v_count < 2:
        raise ValueError("u_count and v_count must be at least 2")
    f = g.circumference
    u = np.linspace(-a, a, u_count)
    v = np.arange(v_count) * (f / v_count)

    def along_u(t):
        return np.stack(horizontal_forms(g, t.astype(complex)))

    seg_u = _segment_integrals(along_u, u, spec.u_order, substeps)
    up = np.concatenate([np.zeros((2, 1), dtype=complex), np.cumsum(seg_u, axis=1)], axis=1)

    def along_v(t):
        w = u[:, None] + 1j * t[None, :]
        fx, fy = horizontal_forms(g, w)
        return np.stack([1j * fx, 1j * fy])

    seg_v = _segment_integrals(along_v, v, spec.u_order, substeps)
    around = np.concatenate(
        [np.zeros((2, u_count, 1), dtype=complex), np.cumsum(seg_v, axis=2)], axis=2
    )
    total = up[:, :, None] + around
    x = total[0].real
    y = total[1].real
    x -= x[0].mean()
    y -= y[0].mean()
    z = np.broadcast_to(u[:, None], x.shape)
    grid = np.stack([x, y, z], axis=-1)
    period, closed = period_closure(g, spec=spec)
    return ImmersionSample(u, v, grid, period, closed)


def period_closure(g: GaussMap, tol: float = 1e-10, u0: float = 0.0, spec: QuadratureSpec = DEFAULT_SPEC):
    """Horizontal period ``P_x + i P_y`` of the data around the cylinder.

    ``P_x`` and ``P_y`` are the real parts of the loop integrals of the x and
    y differentials along the level curve at ``u0`` (all level curves are
    homologous).  ``closed`` is ``|period| <= tol * max(1, scale)`` where
    ``scale`` is the loop integral of ``|dx| + |dy|``.
    """
    f = g.circumference

    def integrand(v):
        fx, fy = horizontal_forms(g, u0 + 1j * v)
        return np.stack([np.real(1j * fx), np.real(1j * fy)])

    vals, _ = integrate_periodic(integrand, f, spec)
    period = complex(vals[0], vals[1])
    # |dx| + |dy| has kinks, so a plain node average is used for the scale
    fx, fy = horizontal_forms(g, u0 + 1j * periodic_nodes(f, spec.v_nodes))
    scale = f * float(np.mean(np.abs(fx) + np.abs(fy)))
    closed = abs(period) <= tol * max(1.0, scale)
    return period, bool(closed)


def mesh_arrays(sample: ImmersionSample):
    """Vertices ``(U*V, 3)`` and 0-based triangles, wrapped in ``v``."""
    nu, nv = sample.shape
    verts = sample.grid.reshape(-1, 3)
    i, j = np.meshgrid(np.arange(nu - 1), np.arange(nv), indexing="ij")
    i, j = i.ravel(), j.ravel()
    jn = (j + 1) % nv
    p00 = i * nv + j
    p01 = i * nv + jn
    p10 = (i + 1) * nv + j
    p11 = (i + 1) * nv + jn
    tris = np.empty((2 * len(p00), 3), dtype=np.int64)
    tris[0::2] = np.column_stack([p00, p10, p11])
    tris[1::2] = np.column_stack([p00, p11, p01])
    return verts, tris


def export_mesh(sample: ImmersionSample, path) -> None:
    """Write the sample as a plain-text triangle mesh ("v x y z" / "f i j k")."""
    verts, tris = mesh_arrays(sample)
    lines = [f"v {x:.17g} {y:.17g} {z:.17g}\n" for x, y, z in verts.tolist()]
    lines += [f"f {i} {j} {k}\n" for i, j, k in (tris + 1).tolist()]
    data = "".join(lines).encode("ascii")
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write mesh: {exc.strerror}", os.fspath(path)) from exc


def read_mesh(path):
    """Read back a mesh written by :func:`export_mesh`; 0-based faces."""
    verts, faces = [], []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(t) for t in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(t) - 1 for t in parts[1:4]])
    return np.array(verts, dtype=float).reshape(-1, 3), np.array(faces, dtype=np.int64).reshape(-1, 3)


def mesh_area(verts, tris) -> float:
    e1 = verts[tris[:, 1]] - verts[tris[:, 0]]
    e2 = verts[tris[:, 2]] - verts[tris[:, 0]]
    return float(0.5 * np.sum(np.linalg.norm(np.cross(e1, e2), axis=1)))


def mean_curvature(verts, tris) -> np.ndarray:
    """Per-vertex |H| from the cotangent Laplacian with barycentric areas."""
    nverts = len(verts)
    lap = np.zeros_like(verts)
    area = np.zeros(nverts)
    for c in range(3):
        i = tris[:, c]
        j = tris[:, (c + 1) % 3]
        k = tris[:, (c + 2) % 3]
        # angle at k, opposite edge (i, j)
        a = verts[i] - verts[k]
        b = verts[j] - verts[k]
        cross = np.linalg.norm(np.cross(a, b), axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            cot = np.where(cross > 0, np.einsum("ij,ij->i", a, b) / cross, 0.0)
        d = verts[j] - verts[i]
        np.add.at(lap, i, 0.5 * cot[:, None] * d)
        np.add.at(lap, j, -0.5 * cot[:, None] * d)
    e1 = verts[tris[:, 1]] - verts[tris[:, 0]]
    e2 = verts[tris[:, 2]] - verts[tris[:, 0]]
    tri_area = 0.5 * np.linalg.norm(np.cross(e1, e2), axis=1)
    for c in range(3):
        np.add.at(area, tris[:, c], tri_area / 3.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.linalg.norm(lap, axis=1) / (2.0 * area)


def horizontal_winding(sample: ImmersionSample, row: int = 0) -> int:
    """How many times ``x + i y`` turns around the axis along one level curve."""
    xy = sample.grid[row, :, 0] + 1j * sample.grid[row, :, 1]
    steps = np.angle(np.roll(xy, -1) / xy)
    return int(round(float(np.sum(steps)) / (2 * math.pi)))
