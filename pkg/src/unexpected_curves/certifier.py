"""Verdicts on unexpected curves of a point configuration.

All curve degrees reported here are *curve* degrees: a curve of degree ``j``
through ``Z`` with a general point of multiplicity ``j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

from .arrangement import LineArrangement, PointConfiguration, is_full_rank, is_supersolvable, max_multiplicity
from .errors import PreconditionError
from .geometry import ProjPoint, max_collinear
from .interpolation import (
    CurveEquation,
    FatPoint,
    FatPointScheme,
    _as_points,
    expected_dimension,
    ideal_dimension,
    t_index,
    unexpected_curve_equation,
)
from .splitting import SplittingType, empirical_splitting

IRREDUCIBILITY_NOTE = "irreducibility of the curve is not verified"


@dataclass
class UnexpectedVerdict:
    admits: bool | None
    splitting: SplittingType | None = None
    interval: tuple[int, int] | None = None  # curves exist in degrees low < deg <= high
    reasons: dict[str, Any] = field(default_factory=dict)
    t_index: int | None = None
    curve: CurveEquation | None = None

    @property
    def degrees(self) -> list[int]:
        if not self.admits or self.interval is None:
            return []
        return list(range(self.interval[0] + 1, self.interval[1] + 1))

    def to_json(self) -> dict:
        return {
            "admits": self.admits,
            "splitting": self.splitting.to_json() if self.splitting else None,
            "interval": list(self.interval) if self.interval else None,
            "degrees": self.degrees,
            "t_index": self.t_index,
            "reasons": self.reasons,
            "curve": self.curve.to_json() if self.curve else None,
        }


def _config(Z) -> list[ProjPoint]:
    if isinstance(Z, LineArrangement):
        Z = Z.dual_configuration()
    return _as_points(Z)


def certify(Z, *, samples: int = 3, seed: int = 0, primes=2, compute_curve: bool = True,
            splitting: SplittingType | None = None) -> UnexpectedVerdict:
    """Existence of unexpected curves from the dual splitting type.

    Admits iff ``2a + 2 < |Z|`` and no ``a + 2`` points are collinear; then curves
    exist exactly in degrees ``a < j <= |Z| - a - 2``.
    """
    points = _config(Z)
    n = len(points)
    if n < 3:
        return UnexpectedVerdict(None, reasons={"degenerate input": f"{n} points"})
    s = splitting or empirical_splitting(PointConfiguration(points).dual(), samples=samples, seed=seed,
                                         primes=primes)
    a = s.a
    mc = max_collinear(points)
    cond_size = 2 * a + 2 < n
    cond_col = mc <= a + 1
    admits = cond_size and cond_col
    reasons = {
        "points": n,
        "a": a,
        "b": s.b,
        "2a+2<|Z|": cond_size,
        "max_collinear": mc,
        "max_collinear<=a+1": cond_col,
    }
    verdict = UnexpectedVerdict(admits, s, (a, n - a - 2), reasons,
                                t_index=t_index(points, seed=seed, primes=primes))
    if admits and compute_curve:
        eq = unexpected_curve_equation(points, a, seed=seed)
        verdict.curve = eq
        reasons["curve_degree"] = a + 1
        reasons["curve_unique"] = True
        reasons["irreducible"] = IRREDUCIBILITY_NOTE
    return verdict


def definition_excess(Z, degree: int, *, samples: int = 3, seed: int = 0, primes=2) -> tuple[int, int]:
    """``(dim [I(Z + (degree-1) Q)]_degree, max(dim [I(Z)]_degree - C(degree, 2), 0))``."""
    points = _config(Z)
    X = [FatPoint.generic(degree - 1)] if degree > 1 else []
    actual = ideal_dimension(points, X, degree, samples=samples, seed=seed, primes=primes).dimension
    expected = expected_dimension(points, X, degree, seed=seed, primes=primes)
    return actual, expected


def unexpected_by_definition(Z, degree: int, **kw) -> bool:
    """Raw dimension-count test for a curve of the given degree."""
    actual, expected = definition_excess(Z, degree, **kw)
    return actual > expected


@dataclass
class DegreeVerdict:
    degree: int
    value: bool
    reasons: dict[str, Any]

    def __bool__(self):
        return self.value

    def to_json(self) -> dict:
        return {"degree": self.degree, "admits": self.value, "reasons": self.reasons}


def certify_degree(Z, degree: int, *, samples: int = 3, seed: int = 0, primes=2,
                   splitting: SplittingType | None = None, cross_check: bool = True) -> DegreeVerdict:
    """Does ``Z`` admit an unexpected curve of (curve) degree ``degree``?

    With ``j = degree - 1``: requires ``a <= j <= b - 2`` and ``a < t_Z``.  The
    printed second condition ``dim [I(Z)]_{t_Z} = C(t_Z+1, 2) - |Z|`` is
    recorded in the reasons but not used (it fails on the nine-point example).
    """
    if degree < 2:
        raise PreconditionError("curve degree must be at least 2")
    points = _config(Z)
    n = len(points)
    if n < 3:
        return DegreeVerdict(degree, False, {"degenerate input": f"{n} points"})
    j = degree - 1
    s = splitting or empirical_splitting(PointConfiguration(points).dual(), samples=samples, seed=seed,
                                         primes=primes)
    t = t_index(points, seed=seed, primes=primes)
    h_t = ideal_dimension(points, (), t, seed=seed, primes=primes).dimension
    in_range = s.a <= j <= s.b - 2
    reasons = {
        "j": j,
        "a": s.a,
        "b": s.b,
        "a<=j<=b-2": in_range,
        "t_index": t,
        "a<t_index": s.a < t,
        "dim_I_t": h_t,
        "literal_condition_ii": h_t == comb(t + 1, 2) - n,
        "independent_in_degree_t": h_t == comb(t + 2, 2) - n,
    }
    value = in_range and s.a < t
    if cross_check:
        actual, expected = definition_excess(points, degree, samples=samples, seed=seed, primes=primes)
        reasons["definition_actual"] = actual
        reasons["definition_expected"] = expected
        reasons["definition_agrees"] = (actual > expected) == value
    return DegreeVerdict(degree, value, reasons)


def certify_supersolvable(A: LineArrangement, *, cross_check: bool = False, samples: int = 3,
                          seed: int = 0, primes=2) -> UnexpectedVerdict:
    """Supersolvable shortcut: admits iff ``d > 2m``; unique curve of degree ``m`` when ``d = 2m + 1``."""
    ss = is_supersolvable(A)
    if not ss:
        raise PreconditionError("arrangement is not supersolvable")
    d, m = len(A), max_multiplicity(A)
    s = SplittingType(m - 1, d - m, "supersolvable")
    admits = d > 2 * m
    reasons: dict[str, Any] = {"d": d, "m": m, "d>2m": admits}
    if not is_full_rank(A):
        reasons["note"] = "lines are concurrent (not full rank)"
    if d == 2 * m + 1:
        reasons["unique_curve_degree"] = m
    verdict = UnexpectedVerdict(admits, s, (s.a, d - s.a - 2), reasons)
    if cross_check:
        general = certify(A.dual_configuration(), samples=samples, seed=seed, primes=primes,
                          compute_curve=False)
        reasons["general_admits"] = general.admits
        reasons["general_splitting"] = list(general.splitting.pair)
        reasons["agrees"] = general.admits == admits and general.splitting == s
    return verdict


def certify_problem_b(Z, X: Sequence[FatPoint], degree: int, *, samples: int = 3, seed: int = 0,
                      primes=2) -> DegreeVerdict:
    """``dim [I(Z + X)]_degree > max(dim [I(Z)]_degree - deg X, 0)``."""
    points = _config(Z)
    X = FatPointScheme(X)
    actual = ideal_dimension(points, X, degree, samples=samples, seed=seed, primes=primes).dimension
    expected = expected_dimension(points, X, degree, seed=seed, primes=primes)
    return DegreeVerdict(degree, actual > expected,
                         {"actual": actual, "expected": expected, "length_X": X.length})


def further_scheme(a: int, j: int) -> FatPointScheme:
    """``(a + j) P + j`` general simple points."""
    return FatPointScheme([FatPoint.generic(a + j)] + [FatPoint.generic(1) for _ in range(j)])
