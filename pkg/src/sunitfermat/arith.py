"""Exact integer and rational kernel.

Every quantity in the engine is a Python ``int`` or ``fractions.Fraction``;
nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Union

from .errors import DomainError, InvalidArgument, ResourceError

Rational = Union[int, Fraction]

# Miller-Rabin with the first 13 primes as bases is deterministic below this
# bound (Sorenson & Webster 2015), which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DETERMINISTIC_PRIME_LIMIT = 3317044064679887385961981
# extra pseudo-random bases used above the deterministic limit
_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

DEFAULT_TRIAL_BOUND = 10**6

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test, deterministic for ``n < DETERMINISTIC_PRIME_LIMIT``.

    Above that bound a battery of 25 strong-probable-prime bases is used; call
    :func:`primality_is_deterministic` to know which regime applied.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidArgument(f"is_prime expects an integer, got {n!r}")
    if n < 2:
        raise InvalidArgument(f"is_prime requires n >= 2, got {n}")
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    bases = _MR_BASES if n < DETERMINISTIC_PRIME_LIMIT else _MR_BASES + _EXTRA_BASES
    # a base divisible by n says nothing (41 itself would be reported composite)
    return all(_strong_probable_prime(n, a) for a in bases if a % n)


def primality_is_deterministic(n: int) -> bool:
    return n < DETERMINISTIC_PRIME_LIMIT


def is_squarefree(n: int) -> bool:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidArgument(f"is_squarefree requires an integer n >= 1, got {n!r}")
    return all(e == 1 for e in factorize(n).values())


def factorize(n: int, bound: int = DEFAULT_TRIAL_BOUND) -> dict[int, int]:
    """Factor ``|n|``: trial division up to ``bound``, then Pollard-Brent rho.

    Raises :class:`ResourceError` if rho fails to split a composite cofactor.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    if n % 2 == 0:
        k = (n & -n).bit_length() - 1
        out[2] = k
        n >>= k
    p = 3
    while p * p <= n and p <= bound:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out[p] = k
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return dict(sorted(out.items()))


def _pollard_brent(n: int, attempts: int = 64) -> int:
    r = perfect_square_root(n)
    if r is not None:
        return r
    for c in range(1, attempts + 1):
        y, m, g, q, x, ys = 2, 128, 1, 1, 2, 2
        r = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ResourceError(f"could not split the composite {n}")


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a|n)``; the Legendre symbol when ``n`` is an odd prime."""
    if n == 0:
        raise InvalidArgument("kronecker symbol (a|0) is not supported: n must be nonzero")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    # factor out powers of 2 from n
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        k = (n & -n).bit_length() - 1
        n >>= k
        if k % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # now n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def val_p(r: Rational, p: int) -> int:
    """Exponent of the prime ``p`` in the rational ``r`` (may be negative)."""
    r = Fraction(r)
    if r == 0:
        raise DomainError("the p-adic valuation of 0 is not finite")
    if p < 2 or not is_prime(p):
        raise InvalidArgument(f"val_p requires a prime, got {p}")
    return _val_int(r.numerator, p) - _val_int(r.denominator, p)


def _val_int(n: int, p: int) -> int:
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def perfect_square_root(n: int) -> Optional[int]:
    if n < 0:
        raise InvalidArgument(f"perfect_square_root requires n >= 0, got {n}")
    s = isqrt(n)
    return s if s * s == n else None


def strip_primes(n: int, primes) -> int:
    """Remove every factor of the given primes from ``|n|``."""
    n = abs(n)
    for p in primes:
        if p == 2:
            n >>= (n & -n).bit_length() - 1
        else:
            while n % p == 0:
                n //= p
    return n


def sqrt_mod_prime_power(d: int, p: int, k: int, start: int) -> int:
    """Lift the square root ``start`` of ``d`` to a root modulo ``p**k``.

    For odd ``p`` the lift of ``start mod p`` is unique (Newton iteration).
    For ``p = 2`` the input must satisfy ``d = 1 mod 8`` and ``start`` in
    {1, 3} selects the 2-adic root by its residue mod 4; the returned value
    agrees with that 2-adic root modulo ``2**(k-1)``.
    """
    if p == 2:
        if d % 8 != 1:
            raise InvalidArgument("2-adic square roots need d = 1 mod 8")
        r = start % 4
        mod_bits = 3
        while mod_bits < k:
            if (r * r - d) % (1 << (mod_bits + 1)):
                r += 1 << (mod_bits - 1)
            mod_bits += 1
        return r % (1 << k) if k >= 3 else r % (1 << max(k, 1))
    if (start * start - d) % p:
        raise InvalidArgument(f"{start} is not a square root of {d} mod {p}")
    r = start % p
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        m = p**prec
        r = (r - (r * r - d) * pow(2 * r, -1, m)) % m
    return r


def sqrt_mod_prime(d: int, p: int) -> int:
    """Smallest nonnegative ``r`` with ``r*r = d mod p``; raises if none exists."""
    d %= p
    if p == 2:
        return d
    if d == 0:
        return 0
    if pow(d, (p - 1) // 2, p) != 1:
        raise InvalidArgument(f"{d} is not a square mod {p}")
    if p % 4 == 3:
        r = pow(d, (p + 1) // 4, p)
    else:
        r = _tonelli_shanks(d, p)
    return min(r, p - r)


def _tonelli_shanks(n: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r

