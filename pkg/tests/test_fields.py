from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unexpected_curves.errors import BackendMismatchError, BadPrimeError, FieldError
from unexpected_curves.fields import (
    CyclotomicEmbedding,
    Fp,
    is_prime,
    primitive_root_of_unity,
    sample_prime,
    scalar_from_json,
    scalar_to_json,
    to_residue,
)

P = 2_147_483_647  # 2^31 - 1

residues = st.integers(min_value=0, max_value=P - 1)


@given(residues, residues)
def test_fp_matches_integer_arithmetic(x, y):
    a, b = Fp(x, P), Fp(y, P)
    assert (a + b).res == (x + y) % P
    assert (a - b).res == (x - y) % P
    assert (a * b).res == (x * y) % P
    if y:
        assert (a / b) * b == a


@given(st.integers(min_value=1, max_value=P - 1))
def test_inverse_roundtrip(x):
    assert Fp(x, P) * Fp(x, P).inverse() == 1


def test_mixing_backends_is_an_error():
    with pytest.raises(BackendMismatchError):
        Fp(1, P) + Fraction(1, 2)
    with pytest.raises(BackendMismatchError):
        Fp(1, P) + Fp(1, 7)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Fp(0, 7).inverse()


def test_primality_small_range():
    naive = [n for n in range(2, 2000) if all(n % d for d in range(2, int(n ** 0.5) + 1))]
    assert [n for n in range(2000) if is_prime(n)] == naive


@pytest.mark.parametrize("order", [1, 8, 12, 16, 20])
def test_sample_prime_congruence_and_determinism(order):
    p = sample_prime(order, 31, seed=5)
    assert is_prime(p) and (p - 1) % order == 0 and p.bit_length() == 31
    assert p == sample_prime(order, 31, seed=5)


def test_sample_prime_64_bits():
    p = sample_prime(8, 64, seed=1)
    assert is_prime(p) and p % 8 == 1 and p.bit_length() == 64


@pytest.mark.parametrize("order", [4, 6, 8, 12, 16, 20])
def test_cyclotomic_identities(order):
    emb = CyclotomicEmbedding.create(order, seed=3)
    z = emb.power(1)
    assert z ** order == 1 and all(z ** d != 1 for d in range(1, order))
    if order % 4 == 0:
        for k in range(order):
            assert emb.cos(k) ** 2 + emb.sin(k) ** 2 == 1
            # angle addition
            assert emb.cos(k + 1) == emb.cos(k) * emb.cos(1) - emb.sin(k) * emb.sin(1)
    if order % 8 == 0:
        assert emb.sqrt2() ** 2 == 2


def test_root_is_canonical():
    p = sample_prime(16, 31, seed=0)
    assert primitive_root_of_unity(16, p) == primitive_root_of_unity(16, p)


def test_sqrt2_needs_order_eight():
    with pytest.raises(FieldError):
        CyclotomicEmbedding.create(12).sqrt2()


@given(st.fractions(max_denominator=10 ** 6))
def test_rational_json_roundtrip(x):
    assert scalar_from_json(scalar_to_json(x)) == x


def test_modular_and_cyclotomic_json():
    emb = CyclotomicEmbedding.create(8, seed=2)
    x = emb.power(3)
    assert scalar_from_json(emb.power_to_json(3)) == x
    assert scalar_from_json(scalar_to_json(x)) == x
    assert scalar_from_json("−3/4") == Fraction(-3, 4)


def test_residue_of_bad_denominator():
    with pytest.raises(BadPrimeError):
        to_residue(Fraction(1, 7), 7)
    assert to_residue(Fraction(1, 2), 7) == 4
