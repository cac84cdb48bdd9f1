"""Corpus files of slab surfaces, and random surface generation.

File format::

    # comment
    slab a=1.0
    surface cat:
      component f=5.2373 g=q^1
    surface wavy:
      component f=6.2832 g=q^2 * exp(0.3*q^1 - 0.1*q^-1)
      component f=3.0 g=q^1

``slab`` appears once, before any surface.  Each ``surface <id>:`` is
followed by one or more ``component`` lines.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .complex_core import GaussMap
from .errors import GaussMapSyntaxError
from .gauss_map_parser import format_gauss_map, parse_gauss_map
from .slab_analysis import SlabSurface


class CorpusError(ValueError):
    def __init__(self, message, line, column=1, surface_id=None, path=None):
        where = f"line {line}, column {column}"
        if surface_id is not None:
            where = f"surface {surface_id}, {where}"
        if path is not None:
            where = f"{path}: {where}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
        self.surface_id = surface_id


@dataclass
class Corpus:
    a: float
    surfaces: list = field(default_factory=list)  # (id, SlabSurface)

    def ids(self) -> list:
        return [sid for sid, _ in self.surfaces]


_SLAB = re.compile(r"^(\s*)slab\s+a\s*=\s*(\S+)\s*$")
_SURFACE = re.compile(r"^(\s*)surface\s+([^\s:]+)\s*:\s*$")
_COMPONENT = re.compile(r"^(\s*)component\s+f\s*=\s*(\S+)\s+g\s*=\s*")


def _real(text, line, column, sid):
    try:
        x = float(text)
    except ValueError:
        raise CorpusError(f"expected a real number, found {text!r}", line, column, sid) from None
    if not math.isfinite(x):
        raise CorpusError(f"expected a finite number, found {text!r}", line, column, sid)
    return x


def parse_corpus(text: str, path=None) -> Corpus:
    a = None
    blocks = []  # [id, line, [GaussMap]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        sid = blocks[-1][0] if blocks else None
        if m := _SLAB.match(line):
            if a is not None:
                raise CorpusError("duplicate slab directive", lineno, len(m.group(1)) + 1, path=path)
            if blocks:
                raise CorpusError("slab directive must precede surfaces", lineno, 1, path=path)
            a = _real(m.group(2), lineno, m.start(2) + 1, None)
            if a <= 0:
                raise CorpusError("slab half-height must be positive", lineno, m.start(2) + 1, path=path)
        elif m := _SURFACE.match(line):
            if a is None:
                raise CorpusError("missing 'slab a=<real>' before surfaces", lineno, 1, path=path)
            new_id = m.group(2)
            if any(b[0] == new_id for b in blocks):
                raise CorpusError(f"duplicate surface id {new_id!r}", lineno, m.start(2) + 1, new_id, path)
            if blocks and not blocks[-1][2]:
                raise CorpusError("surface has no components", blocks[-1][1], 1, sid, path)
            blocks.append([new_id, lineno, []])
        elif m := _COMPONENT.match(line):
            if not blocks:
                raise CorpusError("component outside a surface block", lineno, 1, path=path)
            f = _real(m.group(2), lineno, m.start(2) + 1, sid)
            if f <= 0:
                raise CorpusError("component circumference must be positive", lineno, m.start(2) + 1, sid, path)
            expr = line[m.end():]
            try:
                g = parse_gauss_map(expr, f)
            except GaussMapSyntaxError as exc:
                col = m.end() + exc.column
                msg = str(exc).rsplit(" at column", 1)[0]
                raise CorpusError(msg, lineno, col, sid, path) from exc
            blocks[-1][2].append(g)
        else:
            raise CorpusError(f"unrecognized line {line.strip()!r}", lineno, 1, sid, path)
    if a is None:
        raise CorpusError("missing 'slab a=<real>' directive", 1, 1, path=path)
    if not blocks:
        raise CorpusError("corpus contains no surfaces", 1, 1, path=path)
    if not blocks[-1][2]:
        raise CorpusError("surface has no components", blocks[-1][1], 1, blocks[-1][0], path)
    return Corpus(a, [(sid, SlabSurface(a, comps)) for sid, _, comps in blocks])


def read_corpus(path) -> Corpus:
    with open(path) as fh:
        return parse_corpus(fh.read(), path=str(path))


def format_corpus(corpus: Corpus) -> str:
    lines = [f"slab a={corpus.a:.17g}"]
    for sid, s in corpus.surfaces:
        lines.append(f"surface {sid}:")
        for g in s.components:
            lines.append(f"  component f={g.circumference:.17g} g={format_gauss_map(g)}")
    return "\n".join(lines) + "\n"


def random_gauss_map(
    rng: np.random.Generator,
    a: float,
    n_range=(1, 4),
    max_k: int = 4,
    max_abs: float = 1.0,
    rate_range=(0.2, 0.8),
) -> GaussMap:
    """Random canonical Gauss map for a slab of half-height ``a``.

    The circumference is ``2 pi a / rho`` with ``rho`` drawn from
    ``rate_range``, which keeps ``|q^k| <= exp(max_k * rho)`` on the slab.
    Each index in ``[-K, K]`` (``K`` drawn up to ``max_k``) gets a
    coefficient of modulus at most ``max_abs``.
    """
    rho = rng.uniform(*rate_range)
    f = 2.0 * math.pi * a / rho
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    k_top = int(rng.integers(0, max_k + 1))
    coeffs = {}
    for k in range(-k_top, k_top + 1):
        r = max_abs * rng.uniform()
        phase = rng.uniform(0, 2 * math.pi)
        coeffs[k] = complex(r * math.cos(phase), r * math.sin(phase))
    return GaussMap(n, f, coeffs)


def random_surface(
    rng: np.random.Generator,
    a: float | None = None,
    max_components: int = 3,
    a_range=(0.5, 2.0),
    **kwargs,
) -> SlabSurface:
    """Theorem-eligible random surface with 1 to ``max_components`` components."""
    if a is None:
        a = float(rng.uniform(*a_range))
    m = int(rng.integers(1, max_components + 1))
    return SlabSurface(a, [random_gauss_map(rng, a, **kwargs) for _ in range(m)])
