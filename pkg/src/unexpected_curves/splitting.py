"""Splitting types ``(a, b)`` of line arrangements, three ways.

* empirically, from the multiplicity index of the dual configuration;
* in closed form for supersolvable and nearly supersolvable arrangements;
* by folding the Addition-Deletion theorem along a chain of added lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .arrangement import (
    LineArrangement,
    is_nearly_supersolvable,
    is_supersolvable,
    max_multiplicity,
    restriction_points,
)
from .errors import AdditionDeletionError, PreconditionError
from .geometry import ProjLine, incident
from .interpolation import multiplicity_index


@dataclass(frozen=True, order=True)
class SplittingType:
    """Unordered pair stored with ``a <= b``; ``method``/``certificate`` are provenance."""

    a: int
    b: int
    method: str = field(default="", compare=False)
    certificate: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        if self.a < 0:
            raise ValueError("exponents are non-negative")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def degree(self) -> int:
        """Number of lines described: ``a + b + 1``."""
        return self.a + self.b + 1

    def __iter__(self):
        return iter((self.a, self.b))

    def __eq__(self, other):
        if isinstance(other, SplittingType):
            return self.pair == other.pair
        if isinstance(other, tuple) and len(other) == 2:
            return self.pair == tuple(sorted(other))
        return NotImplemented

    def __hash__(self):
        return hash(self.pair)

    def to_json(self) -> dict:
        out = {"a": self.a, "b": self.b, "method": self.method}
        if isinstance(self.certificate, AdditionChainCertificate):
            out["certificate"] = self.certificate.to_json()
        elif self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _check_sum(A: LineArrangement, s: SplittingType) -> SplittingType:
    assert s.a + s.b == len(A) - 1, (s, len(A))
    return s


def empirical_splitting(A: LineArrangement, *, samples: int = 3, seed: int = 0, primes=2) -> SplittingType:
    """``a = m_Z`` for the dual configuration ``Z``; ``b = d - 1 - a``."""
    d = len(A)
    if d < 2:
        raise PreconditionError("need at least two lines")
    reports: list = []
    a = multiplicity_index(A.dual_configuration(), samples=samples, seed=seed, primes=primes,
                           reports=reports)
    cert = {
        "multiplicity_index": a,
        "samples": samples,
        "seed": seed,
        "primes": sorted({q for r in reports for q in r.primes_used}),
        "stable": all(r.stable for r in reports),
        "dimensions": [r.dimension for r in reports],
    }
    return _check_sum(A, SplittingType(a, d - 1 - a, "empirical", cert))


def supersolvable_splitting(A: LineArrangement) -> SplittingType:
    """``(m - 1, d - m)`` with ``m`` the maximal multiplicity."""
    ss = is_supersolvable(A)
    if not ss:
        raise PreconditionError("arrangement is not supersolvable")
    m, d = max_multiplicity(A), len(A)
    cert = {"modular_point": [str(c) for c in ss.witness.coords], "m": m, "d": d}
    return _check_sum(A, SplittingType(m - 1, d - m, "supersolvable", cert))


def nearly_supersolvable_splitting(A: LineArrangement) -> SplittingType:
    """``(d - m, m - 1)`` if ``2m >= d``; ``(d // 2, d // 2)`` if ``2m < d`` and ``d`` odd.

    The ``2m < d`` branch does not sum to ``d - 1`` for even ``d``; that case is
    refused rather than guessed.
    """
    ns = is_nearly_supersolvable(A)
    if not ns:
        raise PreconditionError("arrangement is not nearly supersolvable" +
                                (f" ({ns.note})" if ns.note else ""))
    m, d = max_multiplicity(A), len(A)
    cert = {"nearly_modular_point": [str(c) for c in ns.witness.coords], "m": m, "d": d}
    if 2 * m >= d:
        return _check_sum(A, SplittingType(d - m, m - 1, "nearly-supersolvable", cert))
    if d % 2 == 0:
        raise PreconditionError(
            f"closed form (d/2, d/2) = ({d // 2}, {d // 2}) does not sum to d-1 = {d - 1} for even d")
    return _check_sum(A, SplittingType(d // 2, d // 2, "nearly-supersolvable", cert))


def restriction_count(A: LineArrangement, ell: ProjLine) -> int:
    """``|Sing(A + ell) ∩ ell|``: distinct traces of ``A`` on ``ell``."""
    return len(restriction_points(A, ell))


@dataclass(frozen=True)
class ChainStep:
    line: ProjLine
    count: int
    incremented: str  # "a" or "b" of the normalized pair before the step
    result: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "line": [str(c) for c in self.line.coords],
            "restriction_count": self.count,
            "incremented": self.incremented,
            "result": list(self.result),
        }


@dataclass(frozen=True)
class AdditionChainCertificate:
    base: LineArrangement
    base_splitting: SplittingType
    steps: tuple[ChainStep, ...]

    @property
    def terminus(self) -> SplittingType:
        if not self.steps:
            return self.base_splitting
        return SplittingType(*self.steps[-1].result, method="chain", certificate=self)

    @property
    def sequence(self) -> list[tuple[int, int]]:
        return [self.base_splitting.pair] + [s.result for s in self.steps]

    def to_json(self) -> dict:
        return {
            "base_lines": len(self.base),
            "base_splitting": list(self.base_splitting.pair),
            "base_method": self.base_splitting.method,
            "steps": [s.to_json() for s in self.steps],
        }


def _step(A: LineArrangement, s: SplittingType, ell: ProjLine, index: int) -> tuple[SplittingType, ChainStep]:
    c = restriction_count(A, ell)
    if c == s.b + 1:
        new, which = SplittingType(s.a + 1, s.b), "a"
    elif c == s.a + 1:
        new, which = SplittingType(s.a, s.b + 1), "b"
    else:
        raise AdditionDeletionError(
            f"step {index}: restriction count {c} is neither a+1={s.a + 1} nor b+1={s.b + 1}",
            index, c, s.pair)
    return new, ChainStep(ell, c, which, new.pair)


def addition_step(A: LineArrangement, s, ell: ProjLine) -> SplittingType:
    """Splitting type of ``A + ell`` given the certified splitting ``s`` of ``A``."""
    s = s if isinstance(s, SplittingType) else SplittingType(*s)
    new, step = _step(A, s, ell, 0)
    return SplittingType(new.a, new.b, "addition-deletion", step)


def addition_chain(base: LineArrangement, s, lines: Sequence[ProjLine]) -> AdditionChainCertificate:
    """Fold :func:`addition_step` over ``lines``; raises on the first failing step."""
    s0 = s if isinstance(s, SplittingType) else SplittingType(*s, method="given")
    cur, current = base, s0
    steps: list[ChainStep] = []
    for i, ell in enumerate(lines):
        current, step = _step(cur, current, ell, i)
        steps.append(step)
        cur = cur.add(ell)
    return AdditionChainCertificate(base, s0, tuple(steps))


def pencil_splitting(A: LineArrangement) -> SplittingType:
    """Closed form ``(0, m - 1)`` for ``m >= 1`` concurrent lines."""
    d = len(A)
    if d >= 3:
        sing = A.singular_locus()
        if len(sing) != 1:
            raise PreconditionError("lines are not concurrent")
    return SplittingType(0, d - 1, "pencil")


def supersolvable_chain(A: LineArrangement) -> tuple[LineArrangement, AdditionChainCertificate]:
    """Chain from the pencil at a modular point of maximal multiplicity to ``A``.

    Returns the arrangement reordered (pencil lines first) and its certificate.
    """
    ss = is_supersolvable(A)
    if not ss:
        raise PreconditionError("arrangement is not supersolvable")
    O = ss.witness
    pencil = [L for L in A.lines if incident(O, L)]
    rest = [L for L in A.lines if not incident(O, L)]
    base = LineArrangement(pencil, label="pencil")
    cert = addition_chain(base, pencil_splitting(base), rest)
    return base.add(*rest, label=A.label), cert
