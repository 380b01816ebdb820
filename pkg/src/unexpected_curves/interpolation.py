"""Linear systems of plane curves through points and fat points.

Every dimension here is ``C(degree+2, 2) - rank`` of a condition matrix whose
columns are the degree-``degree`` monomials in graded lex order on
``(x0, x1, x2)``.  A simple point contributes one evaluation row; a fat point
of multiplicity ``m`` contributes the ``C(m+1, 2)`` partial derivatives of
order ``m - 1`` (by Euler's identity these force all lower-order partials to
vanish too).

A *generic* fat point is handled by Monte Carlo: its support is sampled
``samples`` times and the minimum dimension is kept (the dimension at a
special point can only be larger).  Rational inputs are reduced modulo
several independent primes and the results must agree.
"""

from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, perm
from typing import Iterable, Sequence

import numpy as np

from .arrangement import PointConfiguration
from .errors import BadPrimeError, InconclusiveError, NotUniqueError, OverlapError, PreconditionError
from .fields import Fp, common_backend, sample_prime, to_residue
from .geometry import ProjPoint
from .linalg import bareiss_rank, kernel_mod_p, kernel_rational, rank_mod_p

GENERIC_RANGE = 10**6
PRIME_BITS_ENV = "UNEXPECTED_CURVES_PRIME_BITS"


def default_prime_bits() -> int:
    return int(os.environ.get(PRIME_BITS_ENV, "31"))


# --------------------------------------------------------------------------
# fat point schemes

@dataclass(frozen=True)
class FatPoint:
    """``multiplicity`` times a point; ``support=None`` means a general point."""

    multiplicity: int
    support: ProjPoint | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @classmethod
    def generic(cls, multiplicity: int, seed: int | None = None) -> "FatPoint":
        return cls(multiplicity, None, seed)

    @property
    def is_generic(self) -> bool:
        return self.support is None

    @property
    def length(self) -> int:
        return comb(self.multiplicity + 1, 2)

    def __str__(self):
        where = "generic" if self.support is None else "(" + ":".join(map(str, self.support)) + ")"
        return f"{self.multiplicity}@{where}"


_FAT_RE = re.compile(r"^\s*(\d+)\s*@\s*(.+?)\s*$")


def parse_fat(text: str) -> FatPoint:
    """Parse ``"3@generic"`` or ``"2@(1:-1:1)"``."""
    m = _FAT_RE.match(text)
    if not m:
        raise ValueError(f"bad fat point spec {text!r}")
    mult, where = int(m.group(1)), m.group(2)
    if where.lower() == "generic":
        return FatPoint.generic(mult)
    inner = where.strip("()[] ")
    parts = [s.strip().replace("−", "-") for s in re.split(r"[:,]", inner)]
    if len(parts) != 3:
        raise ValueError(f"bad support {where!r}")
    return FatPoint(mult, ProjPoint([Fraction(s) for s in parts]))


class FatPointScheme(tuple):
    """A tuple of :class:`FatPoint` with distinct concrete supports."""

    def __new__(cls, parts: Iterable[FatPoint] = ()):
        parts = tuple(parts)
        supports = [f.support for f in parts if f.support is not None]
        if len(set(supports)) != len(supports):
            raise ValueError("fat point supports must be distinct")
        return super().__new__(cls, parts)

    @property
    def length(self) -> int:
        """``deg(X) = sum C(m_i + 1, 2)``."""
        return sum(f.length for f in self)

    @property
    def has_generic(self) -> bool:
        return any(f.is_generic for f in self)


def _as_points(Z) -> list[ProjPoint]:
    if Z is None:
        return []
    if isinstance(Z, PointConfiguration):
        return list(Z.points)
    return [P if isinstance(P, ProjPoint) else ProjPoint(P) for P in Z]


# --------------------------------------------------------------------------
# monomials and condition rows

def monomials(degree: int) -> list[tuple[int, int, int]]:
    """Exponent vectors of degree ``degree`` in graded lex order."""
    return [(a, b, degree - a - b) for a in range(degree, -1, -1) for b in range(degree - a, -1, -1)]


def derivative_orders(order: int) -> list[tuple[int, int, int]]:
    return monomials(order)


def _powers(x: int, n: int, p: int | None) -> list:
    out = [1]
    for _ in range(n):
        out.append(out[-1] * x if p is None else out[-1] * x % p)
    return out


def _condition_rows(point, mons, order: int, p: int | None) -> list[list]:
    """Rows forcing all partials of order ``order`` to vanish at ``point``.

    ``point`` is a triple of residues (``p`` given) or of Fractions.
    """
    deg = sum(mons[0]) if mons else 0
    pw = [_powers(c, deg, p) for c in point]
    rows = []
    for (da, db, dc) in derivative_orders(order):
        row = []
        for (a, b, c) in mons:
            if a < da or b < db or c < dc:
                row.append(0)
                continue
            coef = perm(a, da) * perm(b, db) * perm(c, dc)
            v = coef * pw[0][a - da] * pw[1][b - db] * pw[2][c - dc]
            row.append(v % p if p is not None else v)
        rows.append(row)
    return rows


def _fat_order(mult: int, degree: int) -> int:
    # f of degree e < m singular to order m at a point must vanish: take order-e partials.
    return min(mult - 1, degree)


def condition_rows(Z_res: Sequence, fat_res: Sequence[tuple[int, Sequence]], degree: int,
                   p: int | None) -> list[list]:
    mons = monomials(degree)
    rows: list[list] = []
    for P in Z_res:
        rows.extend(_condition_rows(P, mons, 0, p))
    for mult, Q in fat_res:
        rows.extend(_condition_rows(Q, mons, _fat_order(mult, degree), p))
    return rows


# --------------------------------------------------------------------------
# dimension reports

@dataclass(frozen=True)
class DimensionReport:
    degree: int
    dimension: int
    samples_used: int
    primes_used: tuple[int, ...]
    stable: bool
    per_prime: dict = field(default_factory=dict, compare=False)
    exact: bool = False

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "samples_used": self.samples_used,
            "primes_used": list(self.primes_used),
            "stable": self.stable,
            "exact_rational": self.exact,
            "per_prime": {str(k): v for k, v in self.per_prime.items()},
        }


def _backend(points: Sequence[ProjPoint], X: Sequence[FatPoint]) -> int | None:
    coords = [c for P in points for c in P.coords]
    coords += [c for f in X if f.support is not None for c in f.support.coords]
    return common_backend(coords)


def resolve_primes(primes, seed: int, backend: int | None) -> list[int]:
    """Primes to run over: the backend's own modulus, or fresh random ones."""
    if backend is not None:
        if isinstance(primes, (list, tuple)) and any(q != backend for q in primes):
            raise PreconditionError(f"input lives in GF({backend}); cannot use other primes")
        return [backend]
    if isinstance(primes, (list, tuple)):
        return [int(q) for q in primes]
    n = int(primes)
    if n < 1:
        raise ValueError("need at least one prime")
    bits = default_prime_bits()
    out: list[int] = []
    k = 0
    while len(out) < n:
        q = sample_prime(1, bits, (seed << 20) ^ (0x5EED + k))
        if q not in out:
            out.append(q)
        k += 1
    return out


def _sample_rng(seed: int, sample: int, marker: int, p: int | None) -> random.Random:
    return random.Random(f"{seed}:{sample}:{marker}:{p}")


def _generic_support(rng: random.Random, p: int | None, avoid: set) -> tuple:
    while True:
        if p is None:
            Q = tuple(Fraction(rng.randint(-GENERIC_RANGE, GENERIC_RANGE)) for _ in range(3))
        else:
            Q = tuple(rng.randrange(p) for _ in range(3))
        if any(Q):
            key = ProjPoint(Q if p is None else [Fp(c, p) for c in Q])
            if key not in avoid:
                return Q


def _check_overlap(points: Sequence[ProjPoint], X: Sequence[FatPoint]):
    zs = set(points)
    for f in X:
        if f.support is not None and f.support in zs:
            raise OverlapError(f"fat point support {f.support} is a point of Z")


def _dimension_once(points, X, degree, p, sample, seed, exact_q=False) -> tuple[int, list]:
    """Dimension for one prime (or over Q if ``p is None``) and one sample."""
    avoid = set(points) | {f.support for f in X if f.support is not None}
    if p is None:
        Z_res = [P.coords for P in points]
    else:
        Z_res = [tuple(to_residue(c, p) for c in P.coords) for P in points]
    fat_res = []
    sampled = []
    for idx, f in enumerate(X):
        if f.support is None:
            rng = _sample_rng(seed if f.seed is None else f.seed, sample, idx, p)
            Q = _generic_support(rng, p, avoid)
            sampled.append(Q)
        else:
            Q = f.support.coords if p is None else tuple(to_residue(c, p) for c in f.support.coords)
        fat_res.append((f.multiplicity, Q))
    ncols = comb(degree + 2, 2)
    rows = condition_rows(Z_res, fat_res, degree, p)
    if not rows:
        return ncols, sampled
    if p is None:
        from .linalg import integer_rows
        r = bareiss_rank(integer_rows(rows))
    else:
        dtype = np.int64 if p < (1 << 31) else object
        r = rank_mod_p(np.array(rows, dtype=dtype), p)
    return ncols - r, sampled


def ideal_dimension(Z, X: Sequence[FatPoint] = (), degree: int = 1, *, samples: int = 3,
                    seed: int = 0, primes=2, exact: bool = False) -> DimensionReport:
    """``dim [I(Z + X)]_degree`` with generic supports sampled ``samples`` times.

    ``exact=True`` works over the rationals (Bareiss) instead of modulo primes;
    only available for rational inputs.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    points = _as_points(Z)
    X = FatPointScheme(X)
    _check_overlap(points, X)
    backend = _backend(points, X)
    n_samples = max(1, samples) if X.has_generic else 1
    if exact:
        if backend is not None:
            raise PreconditionError("exact rational route needs rational coordinates")
        dims = [_dimension_once(points, X, degree, None, s, seed)[0] for s in range(n_samples)]
        return DimensionReport(degree, min(dims), n_samples, (), len(set(dims)) == 1,
                               {"QQ": dims}, exact=True)
    plist = resolve_primes(primes, seed, backend)
    per_prime: dict[int, list[int]] = {}
    used: list[int] = []
    extra = 0
    for q in list(plist):
        while True:
            try:
                per_prime[q] = [_dimension_once(points, X, degree, q, s, seed)[0]
                                for s in range(n_samples)]
                used.append(q)
                break
            except BadPrimeError:
                if backend is not None:
                    raise
                extra += 1
                q = sample_prime(1, default_prime_bits(), (seed << 20) ^ (0xBAD + extra))
    mins = {q: min(v) for q, v in per_prime.items()}
    if len(set(mins.values())) > 1:
        raise InconclusiveError(
            f"primes disagree on dim [I]_{degree}: {mins}", {"per_prime": per_prime})
    stable = all(len(set(v)) == 1 for v in per_prime.values())
    return DimensionReport(degree, next(iter(mins.values())), n_samples, tuple(used), stable, per_prime)


def expected_dimension(Z, X: Sequence[FatPoint] = (), degree: int = 1, *, seed: int = 0,
                       primes=2, exact: bool = False) -> int:
    """``max(dim [I(Z)]_degree - deg(X), 0)``."""
    base = ideal_dimension(Z, (), degree, seed=seed, primes=primes, exact=exact).dimension
    return max(base - FatPointScheme(X).length, 0)


def multiplicity_index(Z, *, samples: int = 3, seed: int = 0, primes=2, exact: bool = False,
                       reports: list | None = None) -> int:
    """Least ``j`` with a degree ``j+1`` curve through ``Z`` having multiplicity ``j`` at a general point."""
    points = _as_points(Z)
    if not points:
        raise PreconditionError("Z must be nonempty")
    for j in range(0, len(points) + 1):
        fat = [FatPoint.generic(j)] if j > 0 else []
        rep = ideal_dimension(points, fat, j + 1, samples=samples, seed=seed, primes=primes, exact=exact)
        if reports is not None:
            reports.append(rep)
        if rep.dimension > 0:
            return j
    raise InconclusiveError(f"no multiplicity index up to {len(points)}")


def t_index(Z, *, seed: int = 0, primes=2, exact: bool = False) -> int:
    """Least ``i`` with ``dim [I(Z)]_{i+1} > C(i+1, 2)``."""
    points = _as_points(Z)
    if not points:
        raise PreconditionError("Z must be nonempty")
    i = 0
    while True:
        dim = ideal_dimension(points, (), i + 1, seed=seed, primes=primes, exact=exact).dimension
        if dim > comb(i + 1, 2):
            return i
        i += 1


def hilbert_function(Z, degree: int, *, seed: int = 0, primes=2, exact: bool = False) -> int:
    """``dim [I(Z)]_degree``."""
    return ideal_dimension(Z, (), degree, seed=seed, primes=primes, exact=exact).dimension


# --------------------------------------------------------------------------
# explicit curves

@dataclass(frozen=True)
class CurveEquation:
    """A form of degree ``degree`` given by coefficients on ``monomials(degree)``."""

    degree: int
    coefficients: tuple
    point: ProjPoint
    multiplicity: int
    p: int | None = None

    @property
    def monomials(self) -> list[tuple[int, int, int]]:
        return monomials(self.degree)

    def partial(self, orders: tuple[int, int, int], at: Sequence):
        """Value of the partial derivative with the given orders at a triple."""
        da, db, dc = orders
        if self.p is not None:
            at = [Fp(to_residue(c, self.p), self.p) for c in at]
        total = Fraction(0) if self.p is None else Fp(0, self.p)
        for coef, (a, b, c) in zip(self.coefficients, self.monomials):
            if coef == 0 or a < da or b < db or c < dc:
                continue
            k = perm(a, da) * perm(b, db) * perm(c, dc)
            total = total + coef * k * at[0] ** (a - da) * at[1] ** (b - db) * at[2] ** (c - dc)
        return total

    def __call__(self, at: Sequence):
        return self.partial((0, 0, 0), at)

    def vanishes_at(self, P: ProjPoint) -> bool:
        return self(P.coords) == 0

    def singular_to_order(self, P: ProjPoint, m: int) -> bool:
        """All partials of order ``m - 1`` vanish at ``P``."""
        if m < 1:
            return True
        order = _fat_order(m, self.degree)
        return all(self.partial(o, P.coords) == 0 for o in derivative_orders(order))

    def to_polynomial_string(self, names=("x", "y", "z")) -> str:
        terms = []
        for coef, (a, b, c) in zip(self.coefficients, self.monomials):
            if coef == 0:
                continue
            mono = "*".join(f"{n}^{e}" if e > 1 else n for n, e in zip(names, (a, b, c)) if e)
            terms.append(f"({coef})*{mono}" if mono else f"({coef})")
        return " + ".join(terms) or "0"

    def to_json(self) -> dict:
        from .fields import scalar_to_json
        return {
            "degree": self.degree,
            "multiplicity": self.multiplicity,
            "point": [scalar_to_json(c) for c in self.point.coords],
            "monomials": [list(m) for m in self.monomials],
            "coefficients": [scalar_to_json(c) for c in self.coefficients],
            "field": "QQ" if self.p is None else {"mod": self.p},
        }


def unexpected_curve_equation(Z, j: int, *, seed: int = 0, prime: int | None = None,
                              exact: bool | None = None) -> CurveEquation:
    """The unique form of degree ``j+1`` through ``Z`` with multiplicity ``j`` at a sampled point.

    Rational inputs use exact rational elimination unless ``exact=False``, in
    which case the kernel is taken modulo ``prime`` (sampled if absent).
    """
    if j < 1:
        raise PreconditionError("j must be at least 1")
    points = _as_points(Z)
    backend = _backend(points, ())
    if exact is None:
        exact = backend is None
    if exact and backend is not None:
        raise PreconditionError("exact rational route needs rational coordinates")
    p = None if exact else (backend or prime or resolve_primes(1, seed, None)[0])
    degree = j + 1
    ncols = comb(degree + 2, 2)
    rng = _sample_rng(seed, 0, 0, p)
    Q = _generic_support(rng, p, set(points))
    if p is None:
        rows = condition_rows([P.coords for P in points], [(j, Q)], degree, None)
        basis = kernel_rational(rows, ncols)
        Qpt = ProjPoint(Q)
    else:
        Z_res = [tuple(to_residue(c, p) for c in P.coords) for P in points]
        rows = condition_rows(Z_res, [(j, Q)], degree, p)
        basis = kernel_mod_p(np.array(rows, dtype=np.int64 if p < (1 << 31) else object), p)
        Qpt = ProjPoint([Fp(c, p) for c in Q])
    if len(basis) != 1:
        raise NotUniqueError(f"expected a unique curve, found dimension {len(basis)}", len(basis))
    v = basis[0]
    if p is None:
        coeffs = _primitive_integer_vector(v)
    else:
        lead = next(x for x in v if x % p)
        inv = pow(lead, -1, p)
        coeffs = tuple(Fp(x * inv, p) for x in v)
    return CurveEquation(degree, coeffs, Qpt, j, p)


def _primitive_integer_vector(v: Sequence[Fraction]) -> tuple:
    from math import gcd, lcm
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    lead = next(x for x in ints if x)
    sign = -1 if lead < 0 else 1
    return tuple(Fraction(sign * x // g) for x in ints)
