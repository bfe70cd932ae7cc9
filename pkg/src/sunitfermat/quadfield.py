"""Arithmetic in a real quadratic field K = Q(sqrt d).

Elements are stored as rational pairs ``(x, y)`` meaning ``x + y*sqrt(d)``;
membership in the ring of integers is a predicate, not a representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt, lcm
from typing import Optional, Union

from .arith import (
    factorize,
    is_prime,
    is_squarefree,
    kronecker,
    sqrt_mod_prime,
    sqrt_mod_prime_power,
    val_p,
)
from .errors import DomainError, InvalidArgument, ResourceError

FUNDAMENTAL_UNIT_CAP = 10**6

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


@dataclass(frozen=True)
class QuadField:
    d: int
    disc: int = dc_field(compare=False)
    integral_basis_kind: str = dc_field(compare=False)

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"

    def elem(self, x=0, y=0) -> "QFElem":
        return QFElem(Fraction(x), Fraction(y), self)

    @property
    def one(self) -> "QFElem":
        return self.elem(1)

    @property
    def sqrt_d(self) -> "QFElem":
        return self.elem(0, 1)


def make_field(d: int) -> QuadField:
    if not isinstance(d, int) or isinstance(d, bool):
        raise InvalidArgument(f"d must be an integer, got {d!r}")
    if d < 2:
        raise InvalidArgument(f"d = {d} must be >= 2 for a real quadratic field")
    if not is_squarefree(d):
        raise InvalidArgument(f"d = {d} is not squarefree")
    if d % 4 == 1:
        return QuadField(d, d, "half-integer")
    return QuadField(d, 4 * d, "plain")


Operand = Union["QFElem", int, Fraction]


@dataclass(frozen=True, slots=True)
class QFElem:
    """The element ``x + y*sqrt(d)`` of ``field``."""

    x: Fraction
    y: Fraction
    field: QuadField

    def _coerce(self, other: Operand) -> "QFElem":
        if isinstance(other, QFElem):
            if other.field != self.field:
                raise InvalidArgument(
                    f"field mismatch: {self.field} vs {other.field}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QFElem(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other: Operand) -> "QFElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QFElem(self.x + o.x, self.y + o.y, self.field)

    __radd__ = __add__

    def __neg__(self) -> "QFElem":
        return QFElem(-self.x, -self.y, self.field)

    def __sub__(self, other: Operand) -> "QFElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QFElem(self.x - o.x, self.y - o.y, self.field)

    def __rsub__(self, other: Operand) -> "QFElem":
        return -self + other

    def __mul__(self, other: Operand) -> "QFElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.d
        return QFElem(
            self.x * o.x + d * self.y * o.y, self.x * o.y + self.y * o.x, self.field
        )

    __rmul__ = __mul__

    def inv(self) -> "QFElem":
        n = self.norm()
        if n == 0:
            raise DomainError("inverse of zero")
        return QFElem(self.x / n, -self.y / n, self.field)

    def __truediv__(self, other: Operand) -> "QFElem":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other: Operand) -> "QFElem":
        return self.inv() * other

    def __pow__(self, k: int) -> "QFElem":
        if k < 0:
            return self.inv() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QFElem):
            return self.field == other.field and self.x == other.x and self.y == other.y
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.field.d))

    def __bool__(self) -> bool:
        return bool(self.x) or bool(self.y)

    def conj(self) -> "QFElem":
        return QFElem(self.x, -self.y, self.field)

    def norm(self) -> Fraction:
        return self.x * self.x - self.field.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_integral(self) -> bool:
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def is_rational(self) -> bool:
        return self.y == 0

    def sign(self) -> int:
        """Sign under the real embedding with sqrt(d) > 0."""
        x, y, d = self.x, self.y, self.field.d
        if y == 0:
            return (x > 0) - (x < 0)
        if x == 0:
            return 1 if y > 0 else -1
        if (x > 0) == (y > 0):
            return 1 if x > 0 else -1
        # opposite signs: compare x^2 with d*y^2
        dominant_x = x * x > d * y * y
        if dominant_x:
            return 1 if x > 0 else -1
        return 1 if y > 0 else -1

    def integer_form(self) -> tuple[int, int, int]:
        """Return ``(X, Y, D)`` with ``self = (X + Y*sqrt(d)) / D`` and ``D > 0`` minimal."""
        D = lcm(self.x.denominator, self.y.denominator)
        return int(self.x * D), int(self.y * D), D

    def sort_key(self) -> tuple:
        x, y = self.x, self.y
        return (
            abs(x.numerator),
            x.denominator,
            abs(y.numerator),
            y.denominator,
            x < 0,
            y < 0,
        )

    def __str__(self) -> str:
        return format_elem(self)

    def __repr__(self) -> str:
        return f"QFElem({format_elem(self)}, d={self.field.d})"


def format_elem(a: QFElem) -> str:
    if a.y == 0:
        return str(a.x)
    X, Y, D = a.integer_form()
    d = a.field.d
    if Y == 1:
        rad = f"sqrt({d})"
    elif Y == -1:
        rad = f"-sqrt({d})"
    else:
        rad = f"{Y}*sqrt({d})"
    if X == 0:
        lin = rad
    else:
        lin = f"{X}{'' if rad.startswith('-') else '+'}{rad}"
    return lin if D == 1 else f"({lin})/{D}"


@dataclass(frozen=True)
class PrimeIdealQF:
    """A prime of O_K above the rational prime ``p``.

    ``root`` is set for split primes only: for odd ``p`` it is the residue
    ``r mod p`` with ``r^2 = d mod p`` such that ``sqrt(d) - r`` lies in the
    prime; for ``p = 2`` it is the residue mod 4 (1 or 3) of the 2-adic square
    root of ``d`` attached to the prime.
    """

    field: QuadField
    p: int
    split_type: str
    f: int
    e: int
    root: Optional[int] = None

    @property
    def order_key(self) -> tuple:
        return (self.p, -1 if self.root is None else self.root)

    def label(self) -> str:
        if self.split_type == INERT:
            return f"{self.p}O_K"
        if self.split_type == RAMIFIED:
            return f"P{self.p}"
        return f"P{self.p},{self.root}"

    def __str__(self) -> str:
        return self.label()

    def __lt__(self, other: "PrimeIdealQF") -> bool:
        return self.order_key < other.order_key

    def as_dict(self) -> dict:
        out = {"p": self.p, "split_type": self.split_type, "f": self.f, "e": self.e,
               "label": self.label()}
        if self.root is not None:
            out["root"] = self.root
        return out


def splitting_type(F: QuadField, p: int) -> list[PrimeIdealQF]:
    """One descriptor per prime of O_K above ``p``, in deterministic order."""
    if not isinstance(p, int) or p < 2 or not is_prime(p):
        raise InvalidArgument(f"p = {p} is not prime")
    d = F.d
    if p == 2:
        if d % 4 in (2, 3):
            return [PrimeIdealQF(F, 2, RAMIFIED, 1, 2)]
        if d % 8 == 5:
            return [PrimeIdealQF(F, 2, INERT, 2, 1)]
        return [PrimeIdealQF(F, 2, SPLIT, 1, 1, 1), PrimeIdealQF(F, 2, SPLIT, 1, 1, 3)]
    if d % p == 0:
        return [PrimeIdealQF(F, p, RAMIFIED, 1, 2)]
    if kronecker(d, p) == -1:
        return [PrimeIdealQF(F, p, INERT, 2, 1)]
    r = sqrt_mod_prime(d, p)
    return [PrimeIdealQF(F, p, SPLIT, 1, 1, r), PrimeIdealQF(F, p, SPLIT, 1, 1, p - r)]


def _vint(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_prime(P: PrimeIdealQF, x: QFElem) -> int:
    """P-adic valuation of the nonzero element ``x``."""
    if x.field != P.field:
        raise InvalidArgument(f"element of {x.field} evaluated at a prime of {P.field}")
    if not x:
        raise DomainError("ord_P(0) is not finite")
    p = P.p
    if P.split_type == INERT:
        return val_p(x.norm(), p) // 2
    if P.split_type == RAMIFIED:
        return val_p(x.norm(), p)
    X, Y, D = x.integer_form()
    shift = -_vint(D, p)
    # pull out the common power of p so that X, Y are not both divisible by p
    if X == 0:
        m = _vint(Y, p)
    elif Y == 0:
        m = _vint(X, p)
    else:
        m = min(_vint(X, p), _vint(Y, p))
    X //= p**m
    Y //= p**m
    shift += m
    if Y % p == 0:
        return shift  # X is then a p-adic unit
    # the conjugate factor is integral, so the valuation is at most v_p(norm)
    cap = _vint(X * X - P.field.d * Y * Y, p) + 1
    k = 4
    while True:
        k = min(k, cap)
        r = sqrt_mod_prime_power(P.field.d, p, k + 1 if p == 2 else k, P.root)
        modulus = p**k
        v = _vint((X + Y * r) % modulus or modulus, p)
        if v < k:
            return shift + v
        if k == cap:
            raise AssertionError("Hensel lifting failed to isolate the valuation")
        k *= 2


def primes_above(F: QuadField, p: int) -> list[PrimeIdealQF]:
    return splitting_type(F, p)


def support_primes(x: QFElem) -> list[int]:
    """Rational primes below every prime of K where ``x`` may have nonzero valuation."""
    X, Y, D = x.integer_form()
    n = X * X - x.field.d * Y * Y
    if n == 0:
        raise DomainError("support of zero")
    ps = set(factorize(n)) | set(factorize(D))
    return sorted(ps)


def factor_element(x: QFElem) -> list[tuple[PrimeIdealQF, int]]:
    """Prime ideal factorization of the nonzero element ``x``."""
    out = []
    for p in support_primes(x):
        for P in splitting_type(x.field, p):
            v = ord_prime(P, x)
            if v:
                out.append((P, v))
    return out


def is_s_unit(x: QFElem, S) -> bool:
    """True iff ``x`` is a unit at every prime outside ``S``."""
    if not x:
        return False
    S = set(S)
    return all(P in S for P, _ in factor_element(x))


def _cf_floor(P: int, Q: int, D: int, s: int) -> int:
    # floor((P + sqrt D)/Q) for non-square D, with s = isqrt(D)
    if Q > 0:
        return (P + s) // Q
    return -((P + s) // (-Q)) - 1


def fundamental_unit(F: QuadField, cap: int = FUNDAMENTAL_UNIT_CAP) -> QFElem:
    """The fundamental unit eps > 1 of O_K, by continued fractions.

    Expands ``omega = sqrt(d)`` (or ``(1+sqrt d)/2`` when d = 1 mod 4) and
    returns the first convergent h/k for which ``h - k*conj(omega)`` has
    norm +-1.
    """
    d = F.d
    s = isqrt(d)
    if d % 4 == 1:
        P, Q = 1, 2
        omega_bar = F.elem(Fraction(1, 2), Fraction(-1, 2))
    else:
        P, Q = 0, 1
        omega_bar = F.elem(0, -1)
    # convergent numerators/denominators: (h1, k1) newest, (h0, k0) previous
    h1, h0 = 1, 0
    k1, k0 = 0, 1
    for _ in range(cap):
        a = _cf_floor(P, Q, d, s)
        h1, h0 = a * h1 + h0, h1
        k1, k0 = a * k1 + k0, k1
        cand = h1 - k1 * omega_bar
        if k1 > 0 and abs(cand.norm()) == 1:
            return cand
        P = a * Q - P
        Q = (d - P * P) // Q
    raise ResourceError(f"fundamental unit not found within {cap} continued-fraction steps")
