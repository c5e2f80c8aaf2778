import itertools
import random

import pytest

from conftest import FIELD_GRID, field
from nikodym.errors import DivisionByZero, NotPrime, TooLarge
from nikodym.gf import canonical_modulus, make_field, prime_power


def _has_root(coeffs_low_first, p):
    return any(sum(c * x**i for i, c in enumerate(coeffs_low_first)) % p == 0 for x in range(p))


def test_prime_field_f2():
    F = make_field(2, 1)
    assert F.q == 2 and list(F.elements) == [0, 1] and F.modulus == ()


def test_f4_modulus_is_only_irreducible_quadratic():
    # a quadratic over F_2 is irreducible iff it has no root
    irreducible = [(a0, a1, 1) for a1, a0 in itertools.product(range(2), repeat=2)
                   if not _has_root((a0, a1, 1), 2)]
    assert irreducible == [(1, 1, 1)]
    assert make_field(2, 2).modulus == (1, 1, 1)


@pytest.mark.parametrize("p,k,expected", [
    (3, 2, (1, 0, 1)),      # t^2 + 1
    (2, 3, (1, 1, 0, 1)),   # t^3 + t + 1
    (5, 2, (2, 0, 1)),      # t^2 + 2
])
def test_canonical_modulus_is_least_rootless(p, k, expected):
    # degree 2 and 3 polynomials are irreducible iff rootless; check minimality
    assert canonical_modulus(p, k) == expected
    for high_first in itertools.product(range(p), repeat=k):
        cand = tuple(reversed(high_first)) + (1,)
        if cand == expected:
            break
        assert _has_root(cand, p)
    assert not _has_root(expected, p)


def test_not_prime_and_too_large():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(TooLarge):
        make_field(2, 17)
    assert make_field(2, 17, limit=2**17).q == 2**17


def test_small_examples():
    assert make_field(3).add(2, 2) == 1
    assert make_field(2, 2).mul(2, 2) == 3  # t*t = t + 1


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        make_field(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        make_field(2, 3).inv(0)


@pytest.mark.parametrize("q", FIELD_GRID)
def test_field_axioms_exhaustive(q):
    F = field(q)
    E = range(q)
    for a in E:
        assert F.add(a, 0) == a and F.mul(a, 1) == a and F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(a, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in E:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in E:
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", FIELD_GRID)
def test_frobenius_and_fermat(q):
    F = field(q)
    for x in range(q):
        assert F.pow(x, q) == x
        if x:
            assert F.pow(x, q - 1) == 1
    for a in range(1, q):
        for b in range(1, q):
            assert F.inv(F.mul(a, b)) == F.mul(F.inv(a), F.inv(b))


def test_prime_field_index_is_residue():
    F = make_field(7)
    for a in range(7):
        for b in range(7):
            assert F.mul(a, b) == a * b % 7
            assert F.add(a, b) == (a + b) % 7


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_tables_match_polynomial_arithmetic(p, k):
    F = make_field(p, k)
    for a in range(F.q):
        for b in range(F.q):
            assert F.mul(a, b) == F._raw_mul(a, b)
            assert F.add(a, b) == F._raw_add(a, b)


@pytest.mark.parametrize("p,k", [(2, 9), (3, 6), (257, 1)])
def test_table_free_fields(p, k):
    F = make_field(p, k)
    assert F._mul is None
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q) == a


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(8) == (2, 3)
    assert prime_power(7) == (7, 1)
    assert prime_power(6) is None
    assert prime_power(1) is None
