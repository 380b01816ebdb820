"""Exact constructions of the arrangement families studied here.

Polygons whose vertices need irrational coordinates are built inside a prime
field that contains the required roots of unity.  Each such arrangement keeps
float approximations of its lines (``float_lines``) for drawing only.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable

from .arrangement import LineArrangement, PointConfiguration, dual_arrangement, sing_at_least
from .errors import FieldError, PreconditionError
from .fields import CyclotomicEmbedding, Fp
from .geometry import ProjLine, ProjPoint, cross

F = Fraction
LINE_AT_INFINITY = (0, 0, 1)


def _float_triple(t) -> tuple[float, float, float]:
    return tuple(float(c) if not isinstance(c, Fp) else math.nan for c in t)


def _rational(lines, label) -> LineArrangement:
    return LineArrangement(lines, label=label, float_lines=[_float_triple(L) for L in lines])


def pencil(m: int, label: str | None = None) -> LineArrangement:
    """``m`` lines through ``(0:0:1)``."""
    if m < 1:
        raise PreconditionError("m must be positive")
    lines = [(1, t, 0) for t in range(m - 1)] + [(0, 1, 0)]
    return _rational(lines[:m], label or f"pencil({m})")


# --------------------------------------------------------------------------
# polygonal arrangements

_RATIONAL_POLYGONS = {
    # affine images of the regular polygon; each fixes the line at infinity
    3: dict(edges=[(0, 2, 1), (2, -1, -1), (-2, -1, -1)],
            axes=[(1, 0, 0), (2, -3, -1), (2, 3, 1)]),
    4: dict(edges=[(1, 0, -1), (0, 1, -1), (1, 0, 1), (0, 1, 1)],
            axes=[(1, 0, 0), (1, -1, 0), (0, 1, 0), (1, 1, 0)]),
    6: dict(edges=[(0, -4, -1), (3, -2, -1), (3, 2, -1), (0, 4, -1), (-3, 2, -1), (-3, -2, -1)],
            axes=[(3, -2, 0), (1, -2, 0), (0, 1, 0), (1, 2, 0), (3, 2, 0), (1, 0, 0)]),
}


def _polygon_lines(N: int, cos: Callable[[int], object], sin: Callable[[int], object], one):
    """Edges and symmetry axes of the regular N-gon; angles are multiples of pi/N."""
    # cos(k), sin(k) evaluate at angle k*pi/N
    zero = one * 0
    verts = [(cos(2 * k), sin(2 * k), one) for k in range(N)]
    edges = [cross(verts[k], verts[(k + 1) % N]) for k in range(N)]
    axes = [(sin(k), zero - cos(k), zero) for k in range(N)]
    return edges, axes


def polygonal(N: int, complete: bool = False, *, field: str = "cyclotomic", seed: int = 0,
              bits: int = 31, p: int | None = None) -> LineArrangement:
    """``P_N`` (edges and symmetry axes of a regular N-gon), plus the line at infinity if ``complete``.

    ``field="rational"`` uses an exact affine model (N in 3, 4, 6 only);
    ``field="cyclotomic"`` embeds the regular polygon in GF(p), p = 1 mod lcm(2N, 4).
    """
    if N < 3:
        raise PreconditionError("N must be at least 3")
    name = f"{'complete-' if complete else ''}polygonal({N})"
    if field == "rational":
        if N not in _RATIONAL_POLYGONS:
            raise FieldError(f"no rational model of the regular {N}-gon; use field='cyclotomic'")
        model = _RATIONAL_POLYGONS[N]
        lines = list(model["edges"]) + list(model["axes"])
        if complete:
            lines.append(LINE_AT_INFINITY)
        return _rational(lines, name)
    if field != "cyclotomic":
        raise FieldError(f"unknown field {field!r}")
    order = lcm(2 * N, 4)
    emb = CyclotomicEmbedding.create(order, bits=bits, seed=seed, p=p)
    step = order // (2 * N)
    edges, axes = _polygon_lines(N, lambda k: emb.cos(k * step), lambda k: emb.sin(k * step), Fp(1, emb.p))
    fe, fa = _polygon_lines(N, lambda k: math.cos(k * math.pi / N), lambda k: math.sin(k * math.pi / N), 1.0)
    lines, floats = edges + axes, fe + fa
    if complete:
        lines.append(tuple(Fp(c, emb.p) for c in LINE_AT_INFINITY))
        floats.append((0.0, 0.0, 1.0))
    return LineArrangement(lines, label=name, float_lines=floats)


# --------------------------------------------------------------------------
# tic-tac-toe arrangements

def _ttt_lines(k: int, j: int) -> dict[str, list[tuple]]:
    return {
        "v": [(1, 0, -i) for i in range(-k, k + 1)],
        "h": [(0, 1, -i) for i in range(-k, k + 1)],
        "d": [(1, -1, i) for i in range(-j, j + 1)],
        "e": [(1, 1, i) for i in range(-j, j + 1)],
    }


def diagonal(i: int) -> ProjLine:
    """``d_i : x - y + i z = 0``."""
    return ProjLine(1, -1, i)


def antidiagonal(i: int) -> ProjLine:
    """``e_i : x + y + i z = 0``."""
    return ProjLine(1, 1, i)


def tictactoe(k: int, j: int, complete: bool = False) -> LineArrangement:
    """Grid lines ``x = i z``, ``y = i z`` (|i| <= k) and diagonals ``x -+ y + i z`` (|i| <= j)."""
    if not k >= j >= 0:
        raise PreconditionError("need k >= j >= 0")
    g = _ttt_lines(k, j)
    lines = g["v"] + g["h"] + g["d"] + g["e"]
    if complete:
        lines.append(LINE_AT_INFINITY)
    return _rational(lines, f"{'complete-' if complete else ''}tictactoe({k},{j})")


def tictactoe_chain_lines(k: int, j: int) -> list[ProjLine]:
    """Lines added to the complete ``(k, 0)`` arrangement to reach ``(k, j)``, in proof order."""
    out = []
    for i in range(1, j + 1):
        out += [diagonal(i), diagonal(-i), antidiagonal(i), antidiagonal(-i)]
    return out


# --------------------------------------------------------------------------
# B3 / A(9,1)

B3_POINTS = [(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1), (0, 0, 1),
             (1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0)]


def b3_configuration() -> PointConfiguration:
    """Square vertices, its center, and four points at infinity."""
    return PointConfiguration(B3_POINTS, label="b3")


def b3_arrangement() -> LineArrangement:
    lines = [P for P in B3_POINTS]
    return _rational(lines, "A(9,1)")


# --------------------------------------------------------------------------
# hexagon chains over the rationals

HEXAGON_POINTS = [(F(-1, 2), F(-1, 4)), (F(-1, 2), F(1, 4)), (F(0), F(1, 2)),
                  (F(1, 2), F(1, 4)), (F(1, 2), F(-1, 4)), (F(0), F(-1, 2))]

HEXAGON_PRIMED = [(3, 2, 2), (-3, 2, -2), (0, 2, -1), (3, 2, -2), (3, -2, -2), (0, 2, 1)]
HEXAGON_M = [(1, 0, 1), (1, -2, 2), (1, 2, -2), (1, 0, -1), (1, -2, -2), (1, 2, 2)]
HEXAGON_M_PRIMED = [(0, 1, -1), (3, 2, -4), (3, -2, -4), (0, 1, 1), (3, 2, 4), (3, -2, 4)]


def hexagon_points() -> list[ProjPoint]:
    return [ProjPoint(x, y, 1) for x, y in HEXAGON_POINTS]


def hexagon_stage_lines() -> dict[str, list[ProjLine]]:
    P = [(x, y, 1) for x, y in HEXAGON_POINTS]
    ell = [ProjLine(cross(P[i], P[(i + 1) % 6])) for i in range(6)]
    return {
        "": ell,
        "'": [ProjLine(t) for t in HEXAGON_PRIMED],
        "''": [ProjLine(t) for t in HEXAGON_M],
        "'''": [ProjLine(t) for t in HEXAGON_M_PRIMED],
    }


_STAGE_RE = re.compile(r"^B('{0,3})(\d)$")
_PRIMES_ORDER = ["", "'", "''", "'''"]


def hexagon_chain(stage: str = "B0") -> LineArrangement:
    """Stage ``B<primes><i>`` of the hexagon chain; ``B0`` is the complete 6-gonal arrangement.

    ``B_i`` adds the sides ``P_i P_{i+1}`` of the star hexagon; ``B'_i`` adds the
    lines through the ``P_i``; ``B''_i`` and ``B'''_i`` the two further rounds.
    """
    m = _STAGE_RE.match(stage.replace("’", "'"))
    if not m:
        raise PreconditionError(f"invalid stage {stage!r}")
    primes, i = m.group(1), int(m.group(2))
    if not 0 <= i <= 6 or (primes and i == 0):
        raise PreconditionError(f"invalid stage {stage!r}")
    base = polygonal(6, complete=True, field="rational")
    return _rational(list(base.lines) + hexagon_chain_lines(stage), stage)


def hexagon_chain_lines(stage: str) -> list[ProjLine]:
    """All lines added to the complete 6-gonal arrangement up to ``stage``, in order."""
    m = _STAGE_RE.match(stage.replace("’", "'"))
    if not m:
        raise PreconditionError(f"invalid stage {stage!r}")
    primes, i = m.group(1), int(m.group(2))
    rounds = hexagon_stage_lines()
    out: list[ProjLine] = []
    for key in _PRIMES_ORDER[:_PRIMES_ORDER.index(primes)]:
        out += rounds[key]
    return out + rounds[primes][:i]


# --------------------------------------------------------------------------
# octagon chains in GF(p) with sqrt(2)

def _octagon_model(one, s):
    """Complete octagonal arrangement and added lines; ``s`` plays sqrt(2)."""
    zero = one * 0
    half = one / 2
    u, w = s, s + 2  # normal (sqrt2, 2+sqrt2) points at 67.5 degrees
    edges = [(w, u, -one), (u, w, -one), (-u, w, -one), (-w, u, -one),
             (-w, -u, -one), (-u, -w, -one), (u, -w, -one), (w, -u, -one)]
    t1, t3 = s - 1, s + 1  # tan 22.5, tan 67.5
    axes = [(zero, one, zero), (t1, -one, zero), (one, -one, zero), (t3, -one, zero),
            (one, zero, zero), (t3, one, zero), (one, one, zero), (t1, one, zero)]
    r = s / 2
    pts = [(zero, r, one), (half, half, one), (r, zero, one), (half, -half, one),
           (zero, -r, one), (-half, -half, one), (-r, zero, one), (-half, half, one)]
    ell = [cross(pts[i], pts[(i + 1) % 8]) for i in range(8)]
    mm = [cross(pts[i], pts[(i + 2) % 8]) for i in range(8)]
    return edges + axes + [(zero, zero, one)], ell, mm, pts


_OCT_RE = re.compile(r"^(?:P8bar|L(\d)|M(\d))$")


def octagon_chain(stage: str = "P8bar", *, seed: int = 0, bits: int = 31,
                  p: int | None = None) -> LineArrangement:
    """``P8bar``, ``L<i>`` (add ``P_1P_2 .. P_iP_{i+1}``) or ``M<j>`` (all eight ``L`` lines plus ``P_1P_3 .. P_jP_{j+2}``).

    Built in GF(p) with p = 1 mod 8 so that sqrt(2) exists.
    """
    m = _OCT_RE.match(stage)
    if not m:
        raise PreconditionError(f"invalid stage {stage!r}")
    n_l = 8 if m.group(2) is not None else int(m.group(1) or 0)
    n_m = int(m.group(2) or 0)
    if n_l > 8 or n_m > 8:
        raise PreconditionError(f"invalid stage {stage!r}")
    emb = CyclotomicEmbedding.create(8, bits=bits, seed=seed, p=p)
    base, ell, mm, _ = _octagon_model(Fp(1, emb.p), emb.sqrt2())
    fbase, fell, fmm, _ = _octagon_model(1.0, math.sqrt(2.0))
    lines = base + ell[:n_l] + mm[:n_m]
    floats = fbase + fell[:n_l] + fmm[:n_m]
    return LineArrangement(lines, label=f"octagon:{stage}", float_lines=floats)


def octagon_points(*, seed: int = 0, bits: int = 31, p: int | None = None) -> list[ProjPoint]:
    emb = CyclotomicEmbedding.create(8, bits=bits, seed=seed, p=p)
    return [ProjPoint(t) for t in _octagon_model(Fp(1, emb.p), emb.sqrt2())[3]]


def octagon_chain_lines(stage: str, *, seed: int = 0, bits: int = 31, p: int | None = None) -> list[ProjLine]:
    full = octagon_chain(stage, seed=seed, bits=bits, p=p)
    return list(full.lines[17:])


# --------------------------------------------------------------------------
# family dispatch

FAMILIES = ("pencil", "polygonal", "complete-polygonal", "tictactoe", "complete-tictactoe", "b3",
            "hexagon-chain", "octagon-chain", "dual-of", "sing-geq-of")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    N: int | None = None
    k: int | None = None
    j: int | None = None
    m: int | None = None
    stage: str | None = None
    threshold: int | None = None
    field: str = "cyclotomic"
    seed: int = 0
    bits: int = 31
    of: "FamilySpec | None" = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")


def build(spec: FamilySpec):
    """Construct the arrangement (or, for ``sing-geq-of``/``b3`` points, configuration) named by ``spec``."""
    f = spec.family
    if f == "pencil":
        return pencil(_need(spec.m, "m"))
    if f in ("polygonal", "complete-polygonal"):
        return polygonal(_need(spec.N, "N"), f == "complete-polygonal", field=spec.field,
                         seed=spec.seed, bits=spec.bits)
    if f in ("tictactoe", "complete-tictactoe"):
        return tictactoe(_need(spec.k, "k"), spec.j or 0, f == "complete-tictactoe")
    if f == "b3":
        return b3_configuration()
    if f == "hexagon-chain":
        return hexagon_chain(spec.stage or "B0")
    if f == "octagon-chain":
        return octagon_chain(spec.stage or "P8bar", seed=spec.seed, bits=spec.bits)
    inner = build(_need(spec.of, "of"))
    if isinstance(inner, PointConfiguration):
        inner = inner.dual()
    if f == "dual-of":
        return dual_arrangement(inner)
    return sing_at_least(inner, _need(spec.threshold, "threshold"))


def _need(value, name):
    if value is None:
        raise PreconditionError(f"family parameter {name!r} is required")
    return value
