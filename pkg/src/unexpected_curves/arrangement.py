"""Combinatorics of line arrangements and point configurations."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import DuplicateLineError, PreconditionError
from .geometry import (
    ProjLine,
    ProjPoint,
    dualize_line,
    dualize_point,
    incident,
    line_through,
    meet,
)
from .linalg import Matrix


@dataclass(frozen=True)
class SingularPoint:
    point: ProjPoint
    lines: frozenset[int]

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class SingularLocus:
    entries: tuple[SingularPoint, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def points(self) -> list[ProjPoint]:
        return [e.point for e in self.entries]

    def multiplicities(self) -> list[int]:
        return [e.multiplicity for e in self.entries]

    def count(self, k: int) -> int:
        """Number of points of multiplicity exactly ``k``."""
        return sum(1 for e in self.entries if e.multiplicity == k)


class PointConfiguration:
    """A finite set of distinct points (order kept for reproducible output)."""

    def __init__(self, points: Iterable, label: str | None = None):
        pts = [P if isinstance(P, ProjPoint) else ProjPoint(P) for P in points]
        seen: dict[ProjPoint, int] = {}
        for i, P in enumerate(pts):
            if P in seen:
                raise ValueError(f"points {seen[P]} and {i} coincide: {P}")
            seen[P] = i
        self.points = tuple(pts)
        self.label = label

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"PointConfiguration{name}({len(self)} points)"

    @property
    def p(self) -> int | None:
        return self.points[0].p if self.points else None

    def dual(self) -> "LineArrangement":
        return LineArrangement([dualize_point(P) for P in self.points],
                               label=f"dual({self.label})" if self.label else None)


class LineArrangement:
    """Finite set of distinct lines.  Derived data is computed once, thread-safely.

    ``float_lines`` optionally carries real approximations of each line for
    drawing when the exact coefficients live in a prime-field surrogate.
    """

    def __init__(self, lines: Iterable, label: str | None = None,
                 float_lines: Sequence[Sequence[float]] | None = None):
        ls = [L if isinstance(L, ProjLine) else ProjLine(L) for L in lines]
        if not ls:
            raise ValueError("an arrangement needs at least one line")
        seen: dict[ProjLine, int] = {}
        for i, L in enumerate(ls):
            if L in seen:
                raise DuplicateLineError(f"lines {seen[L]} and {i} coincide: {L}", (seen[L], i))
            seen[L] = i
        if float_lines is not None and len(float_lines) != len(ls):
            raise ValueError("float_lines must match lines")
        self.lines = tuple(ls)
        self.label = label
        self.float_lines = tuple(tuple(map(float, f)) for f in float_lines) if float_lines else None
        self._index = seen
        self._lock = threading.Lock()
        self._sing: SingularLocus | None = None

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __contains__(self, L):
        return L in self._index

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"LineArrangement{name}({len(self)} lines)"

    @property
    def p(self) -> int | None:
        return self.lines[0].p

    def index(self, L: ProjLine) -> int:
        return self._index[L]

    def add(self, *lines, label: str | None = None, float_lines=None) -> "LineArrangement":
        floats = None
        if self.float_lines is not None and float_lines is not None:
            floats = list(self.float_lines) + list(float_lines)
        return LineArrangement(self.lines + tuple(lines), label=label, float_lines=floats)

    def dual_configuration(self) -> PointConfiguration:
        return PointConfiguration([dualize_line(L) for L in self.lines],
                                  label=f"dual({self.label})" if self.label else None)

    def singular_locus(self) -> SingularLocus:
        with self._lock:
            if self._sing is None:
                self._sing = _compute_singular_locus(self.lines)
            return self._sing

    def same_lines(self, other: "LineArrangement") -> bool:
        return set(self.lines) == set(other.lines)


def _compute_singular_locus(lines: Sequence[ProjLine]) -> SingularLocus:
    groups: dict[ProjPoint, set[int]] = {}
    for i, j in combinations(range(len(lines)), 2):
        P = meet(lines[i], lines[j])
        groups.setdefault(P, set()).update((i, j))
    entries = tuple(SingularPoint(P, frozenset(s)) for P, s in groups.items())
    d = len(lines)
    assert sum(comb(e.multiplicity, 2) for e in entries) == comb(d, 2)
    return SingularLocus(entries)


def singular_locus(A: LineArrangement) -> SingularLocus:
    if len(A) < 2:
        return SingularLocus(())
    return A.singular_locus()


def sing_at_least(A: LineArrangement, k: int) -> PointConfiguration:
    if k < 2:
        raise PreconditionError("k must be at least 2")
    pts = [e.point for e in singular_locus(A) if e.multiplicity >= k]
    return PointConfiguration(pts, label=f"Sing>={k}({A.label})" if A.label else None)


def max_multiplicity(A: LineArrangement) -> int:
    sing = singular_locus(A)
    return max((e.multiplicity for e in sing), default=1)


def multiplicity(P: ProjPoint, A: LineArrangement) -> int:
    return sum(1 for L in A.lines if incident(P, L))


def modular_points(A: LineArrangement) -> list[ProjPoint]:
    """Singular points joined to every other singular point by a line of ``A``.

    ``Q`` is joined to ``P`` iff some line of ``A`` passes through both, i.e.
    the index sets of lines through ``P`` and ``Q`` intersect.
    """
    sing = list(singular_locus(A))
    out = []
    for e in sing:
        if all(q is e or (q.lines & e.lines) for q in sing):
            out.append(e)
    out.sort(key=lambda e: -e.multiplicity)
    return [e.point for e in out]


@dataclass(frozen=True)
class Supersolvability:
    value: bool
    witness: ProjPoint | None = None
    note: str = ""

    def __bool__(self):
        return self.value


def is_supersolvable(A: LineArrangement) -> Supersolvability:
    mods = modular_points(A)
    if not mods:
        return Supersolvability(False)
    return Supersolvability(True, mods[0])


def is_nearly_supersolvable(A: LineArrangement) -> Supersolvability:
    """Search for a nearly modular point (supersolvable inputs return False)."""
    if len(A) < 3:
        raise PreconditionError("need at least three lines")
    if is_supersolvable(A):
        return Supersolvability(False, note="arrangement is supersolvable")
    sing = list(singular_locus(A))
    best = None
    for e in sing:
        missing = [q for q in sing if q is not e and not (q.lines & e.lines)]
        if len(missing) != 1 or missing[0].multiplicity != 2:
            continue
        other = missing[0]
        L = line_through(e.point, other.point)
        if any(incident(q.point, L) for q in sing if q is not e and q is not other):
            continue
        if best is None or e.multiplicity > best.multiplicity:
            best = e
    if best is None:
        return Supersolvability(False)
    return Supersolvability(True, best.point)


def is_full_rank(A: LineArrangement) -> bool:
    return Matrix([L.coords for L in A.lines]).rank() == 3


def dual_arrangement(A: LineArrangement) -> LineArrangement:
    """Lines dual to the points of ``Sing(A)``."""
    lines = list(dict.fromkeys(dualize_point(P) for P in singular_locus(A).points))
    return LineArrangement(lines, label=f"{A.label}^d" if A.label else None)


def restriction_points(A: LineArrangement, ell: ProjLine) -> set[ProjPoint]:
    """Distinct points where ``ell`` meets the lines of ``A``."""
    if ell in A:
        raise DuplicateLineError(f"{ell} already belongs to the arrangement", (A.index(ell),))
    return {meet(ell, L) for L in A.lines}


def incidence_graph(A: LineArrangement):
    """Bipartite line/singular-point incidence graph (networkx)."""
    import networkx as nx

    g = nx.Graph()
    for i in range(len(A)):
        g.add_node(("L", i), kind="line")
    for k, e in enumerate(singular_locus(A)):
        g.add_node(("P", k), kind="point")
        for i in e.lines:
            g.add_edge(("L", i), ("P", k))
    return g


def isomorphic_incidence(A: LineArrangement, B: LineArrangement) -> bool:
    """Whether ``A`` and ``B`` have isomorphic intersection combinatorics."""
    import networkx as nx
    from networkx.algorithms.isomorphism import categorical_node_match

    if len(A) != len(B):
        return False
    if sorted(singular_locus(A).multiplicities()) != sorted(singular_locus(B).multiplicities()):
        return False
    return nx.is_isomorphic(incidence_graph(A), incidence_graph(B),
                            node_match=categorical_node_match("kind", None))
