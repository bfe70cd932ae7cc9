from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sunitfermat.arith import (
    DETERMINISTIC_PRIME_LIMIT,
    factorize,
    is_prime,
    is_squarefree,
    kronecker,
    perfect_square_root,
    primality_is_deterministic,
    sqrt_mod_prime_power,
    val_p,
)
from sunitfermat.errors import DomainError, InvalidArgument


def squares_mod(n):
    return {x * x % n for x in range(n)}


def test_kronecker_13_37_by_enumeration():
    # no x in 0..36 squares to 13 mod 37
    assert 13 not in squares_mod(37)
    assert kronecker(13, 37) == -1


def test_kronecker_13_29_is_one():
    assert 13 in squares_mod(29)
    assert kronecker(13, 29) == 1


@pytest.mark.parametrize("n", [3, 5, 9, 15, 37, 101])
def test_kronecker_one_is_one(n):
    assert kronecker(1, n) == 1


def test_kronecker_shared_factor():
    assert kronecker(37 * 5, 37) == 0
    assert kronecker(6, 4) == 0


def test_kronecker_zero_modulus():
    with pytest.raises(InvalidArgument):
        kronecker(3, 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 29, 37, 53, 197])
def test_legendre_matches_residue_enumeration(p):
    sq = squares_mod(p)
    for a in range(-2 * p, 2 * p):
        expected = 0 if a % p == 0 else (1 if a % p in sq else -1)
        assert kronecker(a, p) == expected


@given(st.integers(-10**6, 10**6), st.integers(1, 10**5).filter(lambda n: n % 2))
def test_odd_modulus_matches_sympy_jacobi(a, n):
    assert kronecker(a, n) == sympy.jacobi_symbol(a, n)


@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4), st.sampled_from([3, 5, 37, 101, 197]))
def test_kronecker_multiplicative(a, b, p):
    assert kronecker(a, p) * kronecker(b, p) == kronecker(a * b, p)


def test_kronecker_at_two():
    # (a|2) is 1 for a = +-1 mod 8, -1 for a = +-3 mod 8
    assert [kronecker(a, 2) for a in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert kronecker(13, 8) == -1


def test_val_p_examples():
    assert val_p(Fraction(1, 4), 2) == -2
    assert val_p(18, 3) == 2
    assert val_p(35, 2) == 0


def test_val_p_errors():
    with pytest.raises(DomainError):
        val_p(0, 2)
    with pytest.raises(InvalidArgument):
        val_p(10, 4)


nonzero_q = st.fractions(max_denominator=10**6).filter(lambda r: r != 0)


@given(nonzero_q, nonzero_q, st.sampled_from([2, 3, 5, 37]))
def test_val_p_valuation_axioms(r, s, p):
    assert val_p(r * s, p) == val_p(r, p) + val_p(s, p)
    if r + s != 0:
        vr, vs = val_p(r, p), val_p(s, p)
        assert val_p(r + s, p) >= min(vr, vs)
        if vr != vs:
            assert val_p(r + s, p) == min(vr, vs)


def test_perfect_square_root_examples():
    assert perfect_square_root(144) == 12
    assert perfect_square_root(0) == 0
    assert perfect_square_root(13) is None
    with pytest.raises(InvalidArgument):
        perfect_square_root(-4)


@settings(max_examples=10**4, deadline=None)
@given(st.integers(0, 2**512))
def test_perfect_square_root_of_square(n):
    assert perfect_square_root(n * n) == n
    if n > 0:
        assert perfect_square_root(n * n + 1) is None


def test_primality_examples():
    assert is_prime(37)
    assert not is_squarefree(12)
    assert is_squarefree(13)
    with pytest.raises(InvalidArgument):
        is_prime(1)
    with pytest.raises(InvalidArgument):
        is_squarefree(0)


def test_is_prime_matches_sympy_small():
    for n in range(2, 20000):
        assert is_prime(n) == sympy.isprime(n), n


@given(st.integers(2, 2**64))
def test_is_prime_matches_sympy_64bit(n):
    assert is_prime(n) == sympy.isprime(n)


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
              341550071728321, 3825123056546413051):
        assert not is_prime(n)


def test_deterministic_range_flag():
    assert primality_is_deterministic(2**64)
    assert not primality_is_deterministic(DETERMINISTIC_PRIME_LIMIT)
    assert is_prime(2**127 - 1)


@given(st.integers(1, 10**12))
def test_factorize_matches_sympy(n):
    assert factorize(n) == sympy.factorint(n)


def test_factorize_beyond_trial_bound():
    n = (10**9 + 7) * (10**9 + 9)
    assert factorize(n) == {10**9 + 7: 1, 10**9 + 9: 1}


@pytest.mark.parametrize("d,p,start", [(13, 3, 1), (13, 17, 8), (21, 5, 1), (53, 7, 2)])
def test_sqrt_mod_odd_prime_power(d, p, start):
    for k in range(1, 30):
        r = sqrt_mod_prime_power(d, p, k, start)
        assert (r * r - d) % p**k == 0
        assert r % p == start % p


@pytest.mark.parametrize("d", [17, 41, 57, 73, 89, 97])
@pytest.mark.parametrize("start", [1, 3])
def test_sqrt_mod_two_power(d, start):
    prev = None
    for k in range(3, 40):
        r = sqrt_mod_prime_power(d, 2, k, start)
        assert (r * r - d) % 2**k == 0
        assert r % 4 == start
        if prev is not None:
            # successive lifts pin down the same 2-adic root
            assert (r - prev) % 2 ** (k - 2) == 0
        prev = r


def test_sqrt_mod_errors():
    with pytest.raises(InvalidArgument):
        sqrt_mod_prime_power(13, 2, 5, 1)
    with pytest.raises(InvalidArgument):
        sqrt_mod_prime_power(13, 37, 2, 5)
