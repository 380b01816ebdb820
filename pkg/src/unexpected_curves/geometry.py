"""Points and lines of the projective plane, incidence and duality."""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DegeneratePairError
from .fields import Fp, Scalar, as_exact, common_backend


def _canonical(coords: Sequence) -> tuple:
    vals = tuple(as_exact(c) for c in coords)
    if len(vals) != 3:
        raise ValueError("homogeneous triples have exactly three entries")
    common_backend(vals)
    lead = next((c for c in vals if c != 0), None)
    if lead is None:
        raise ValueError("the zero triple is not a projective point")
    if lead == 1:
        return vals
    inv = 1 / lead
    return tuple(c * inv for c in vals)


class _Triple:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = coords[0]
        object.__setattr__(self, "coords", _canonical(coords))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return type(other) is type(self) and other.coords == self.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    @property
    def p(self) -> int | None:
        c = self.coords[0]
        return c.p if isinstance(c, Fp) else None

    def __repr__(self):
        return f"{type(self).__name__}({':'.join(str(c) for c in self.coords)})"


class ProjPoint(_Triple):
    """A point ``(x0:x1:x2)``; the first nonzero coordinate is scaled to 1."""

    __slots__ = ()


class ProjLine(_Triple):
    """The line ``a*y0 + b*y1 + c*y2 = 0`` stored by its coefficients."""

    __slots__ = ()


def dualize_point(P: ProjPoint) -> ProjLine:
    return ProjLine(P.coords)


def dualize_line(L: ProjLine) -> ProjPoint:
    return ProjPoint(L.coords)


def pairing(u: Sequence[Scalar], v: Sequence[Scalar]):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def incident(P: ProjPoint, L: ProjLine) -> bool:
    return pairing(P.coords, L.coords) == 0


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def line_through(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    if P == Q:
        raise DegeneratePairError(f"{P} twice does not span a line")
    return ProjLine(cross(P.coords, Q.coords))


def meet(L: ProjLine, M: ProjLine) -> ProjPoint:
    if L == M:
        raise DegeneratePairError(f"{L} twice does not meet in a point")
    return ProjPoint(cross(L.coords, M.coords))


def collinear_groups(points: Sequence[ProjPoint]) -> dict[ProjLine, set[int]]:
    """Map every line spanned by two of ``points`` to the indices lying on it."""
    groups: dict[ProjLine, set[int]] = defaultdict(set)
    for i, j in combinations(range(len(points)), 2):
        L = line_through(points[i], points[j])
        groups[L].update((i, j))
    return groups


def max_collinear(points: Sequence[ProjPoint]) -> int:
    """Size of the largest collinear subset."""
    pts = list(dict.fromkeys(points))
    if len(pts) < 2:
        return len(pts)
    return max(len(g) for g in collinear_groups(pts).values())


def points_on(L: ProjLine, points: Iterable[ProjPoint]) -> list[ProjPoint]:
    return [P for P in points if incident(P, L)]
