"""Exact scalar backends: rationals, prime-field residues and roots of unity.

Rationals are plain :class:`fractions.Fraction` values (ints are accepted
wherever a rational is).  Prime-field residues are :class:`Fp` instances.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from .errors import BackendMismatchError, BadPrimeError, FieldError

# Witnesses making Miller-Rabin deterministic below 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class Fp:
    """Residue modulo a prime ``p``.  Immutable."""

    __slots__ = ("res", "p")

    def __init__(self, res: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "res", res % p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise BackendMismatchError(f"moduli differ: {self.p} vs {other.p}")
            return other.res
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise BackendMismatchError("cannot mix a rational with a prime-field residue")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.res + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.res - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.res, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.res * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.res == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Fp(pow(self.res, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(o, self.p) * self.inverse()

    def __neg__(self):
        return Fp(-self.res, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.res, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.res == other.res
        if isinstance(other, int):
            return self.res == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.res, self.p))

    def __bool__(self):
        return self.res != 0

    def __repr__(self):
        return f"Fp({self.res}, {self.p})"

    def __str__(self):
        return str(self.res)


Scalar = Union[Fraction, int, Fp]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sample_prime(order: int = 1, bits: int = 31, seed: int = 0) -> int:
    """Return a ``bits``-bit prime ``p`` with ``p % order == 1``, chosen by ``seed``."""
    if order < 1:
        raise ValueError("order must be positive")
    if bits < 31:
        raise ValueError("bits must be at least 31")
    rng = random.Random(seed)
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    kmin, kmax = (lo - 1) // order + 1, (hi - 1) // order
    while True:
        p = rng.randint(kmin, kmax) * order + 1
        if is_prime(p):
            return p


def sample_primes(count: int, order: int = 1, bits: int = 31, seed: int = 0) -> list[int]:
    """Distinct primes for multi-prime agreement checks."""
    out: list[int] = []
    k = 0
    while len(out) < count:
        p = sample_prime(order, bits, seed * 1_000_003 + k)
        if p not in out:
            out.append(p)
        k += 1
    return out


def _prime_factors(n: int) -> list[int]:
    fs, q = [], 2
    while q * q <= n:
        if n % q == 0:
            fs.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        fs.append(n)
    return fs


def primitive_root_of_unity(order: int, p: int) -> int:
    """Canonical residue of exact multiplicative order ``order`` modulo ``p``.

    Scans ``g = 2, 3, ...`` and returns the first ``g**((p-1)/order)`` of full
    order, so the root is a function of ``(order, p)`` alone.
    """
    if (p - 1) % order:
        raise FieldError(f"{p} has no primitive {order}-th roots of unity")
    if order == 1:
        return 1
    qs = _prime_factors(order)
    for g in range(2, p):
        r = pow(g, (p - 1) // order, p)
        if all(pow(r, order // q, p) != 1 for q in qs):
            return r
    raise FieldError("no primitive root found")  # unreachable for prime p


@dataclass(frozen=True)
class CyclotomicEmbedding:
    """A fixed primitive ``order``-th root of unity inside GF(p).

    The power ``root**k`` stands in for ``exp(2*pi*i*k/order)``; cosines and
    sines of those angles are formed from it, so any incidence statement about
    the real figure holds for its image (up to finitely many bad primes).
    """

    order: int
    p: int
    root: int

    @classmethod
    def create(cls, order: int, bits: int = 31, seed: int = 0, p: int | None = None):
        if p is None:
            p = sample_prime(order, bits, seed)
        return cls(order, p, primitive_root_of_unity(order, p))

    def power(self, k: int) -> Fp:
        return Fp(pow(self.root, k % self.order, self.p), self.p)

    @cached_property
    def i(self) -> Fp:
        if self.order % 4:
            raise FieldError("a square root of -1 needs 4 | order")
        return self.power(self.order // 4)

    def cos(self, k: int) -> Fp:
        """Surrogate for cos(2*pi*k/order)."""
        return (self.power(k) + self.power(-k)) / 2

    def sin(self, k: int) -> Fp:
        """Surrogate for sin(2*pi*k/order)."""
        return (self.power(k) - self.power(-k)) / (2 * self.i)

    def sqrt2(self) -> Fp:
        if self.order % 8:
            raise FieldError("sqrt(2) via roots of unity needs 8 | order")
        return self.power(self.order // 8) + self.power(-self.order // 8)

    def power_to_json(self, k: int) -> dict:
        return {"cyc": self.order, "pow": k % self.order, "mod": self.p}


# --------------------------------------------------------------------------
# backend helpers

def backend_of(x) -> int | None:
    """``None`` for rationals, else the modulus."""
    if isinstance(x, Fp):
        return x.p
    if isinstance(x, (int, Fraction)):
        return None
    raise BackendMismatchError(f"unsupported scalar {x!r}")


def common_backend(values) -> int | None:
    """Shared backend of an iterable of scalars (ints fit any backend)."""
    found = None
    seen_fraction = False
    for v in values:
        if isinstance(v, Fp):
            if found is not None and found != v.p:
                raise BackendMismatchError(f"moduli differ: {found} vs {v.p}")
            found = v.p
        elif isinstance(v, Fraction):
            seen_fraction = True
        elif not isinstance(v, int):
            raise BackendMismatchError(f"unsupported scalar {v!r}")
    if found is not None and seen_fraction:
        raise BackendMismatchError("cannot mix rationals and prime-field residues")
    return found


def to_residue(x, p: int) -> int:
    """Reduce a scalar modulo ``p``."""
    if isinstance(x, Fp):
        if x.p != p:
            raise BackendMismatchError(f"moduli differ: {x.p} vs {p}")
        return x.res
    if isinstance(x, int):
        return x % p
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise BadPrimeError(f"denominator {x.denominator} vanishes mod {p}")
        return x.numerator * pow(x.denominator, -1, p) % p
    raise BackendMismatchError(f"unsupported scalar {x!r}")


def as_exact(x) -> Scalar:
    """Normalize ints to Fraction; leave Fp alone."""
    if isinstance(x, Fp):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise BackendMismatchError(f"unsupported scalar {x!r}")


def in_field(x, p: int | None) -> Scalar:
    """Coerce ``x`` into the backend ``p`` (``None`` = rationals)."""
    if p is None:
        return as_exact(x)
    return Fp(to_residue(x, p), p)


# --------------------------------------------------------------------------
# JSON

def scalar_to_json(x):
    if isinstance(x, Fp):
        return {"mod": x.p, "res": x.res}
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_from_json(obj, p: int | None = None) -> Scalar:
    """Parse one JSON scalar; ``p`` is the document's declared modulus."""
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, int):
        return in_field(obj, p)
    if isinstance(obj, str):
        text = obj.strip().replace("−", "-")
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {obj!r}") from exc
        return in_field(value, p)
    if isinstance(obj, dict):
        if "cyc" in obj:
            emb_p = int(obj["mod"])
            order = int(obj["cyc"])
            root = primitive_root_of_unity(order, emb_p)
            x = Fp(pow(root, int(obj["pow"]) % order, emb_p), emb_p)
        elif "res" in obj:
            x = Fp(int(obj["res"]), int(obj["mod"]))
        else:
            raise ValueError(f"unrecognized scalar object {obj!r}")
        if p is not None and x.p != p:
            raise BackendMismatchError(f"scalar modulus {x.p} differs from field {p}")
        return x
    raise ValueError(f"unrecognized scalar {obj!r}")


def field_to_json(p: int | None):
    return "QQ" if p is None else {"mod": p}


def field_from_json(obj) -> int | None:
    if obj is None or obj in ("QQ", "rational", "Q"):
        return None
    if isinstance(obj, dict) and "mod" in obj:
        p = int(obj["mod"])
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return p
    raise ValueError(f"unrecognized field descriptor {obj!r}")


def gcd_normalize(values: list[int]) -> list[int]:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return [v // g for v in values] if g > 1 else list(values)
