"""Legendre curves, j-invariant valuations and the Frey curve.

Curves are kept in the form y^2 = (x - e1)(x - e2)(x - e3) with roots in K.
Conductor data at primes above 2 is only ever reported as an interval, since
no local algorithm at 2 is implemented.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from .arith import factorize, is_prime
from .errors import DomainError, InvalidArgument
from .quadfield import (
    PrimeIdealQF,
    QFElem,
    ord_prime,
    splitting_type,
    support_primes,
)
from .sunit import S3Orbit, s3_orbit


@dataclass(frozen=True)
class EllipticCurveQF:
    e1: QFElem
    e2: QFElem
    e3: QFElem

    def __post_init__(self):
        if self.e1 == self.e2 or self.e1 == self.e3 or self.e2 == self.e3:
            raise DomainError("roots of the 2-torsion model must be pairwise distinct")
        if self.c4**3 - self.c6**2 != 1728 * self.disc:
            raise AssertionError("Weierstrass identity 1728*disc = c4^3 - c6^2 failed")

    @property
    def roots(self) -> tuple[QFElem, QFElem, QFElem]:
        return (self.e1, self.e2, self.e3)

    @property
    def a_invariants(self) -> tuple[QFElem, QFElem, QFElem]:
        e1, e2, e3 = self.roots
        return (-(e1 + e2 + e3), e1 * e2 + e1 * e3 + e2 * e3, -(e1 * e2 * e3))

    @property
    def c4(self) -> QFElem:
        a2, a4, _ = self.a_invariants
        b2, b4 = 4 * a2, 2 * a4
        return b2 * b2 - 24 * b4

    @property
    def c6(self) -> QFElem:
        a2, a4, a6 = self.a_invariants
        b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
        return -(b2**3) + 36 * b2 * b4 - 216 * b6

    @property
    def disc(self) -> QFElem:
        a2, a4, a6 = self.a_invariants
        b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
        b8 = 4 * a2 * a6 - a4 * a4
        return -(b2 * b2) * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self) -> QFElem:
        return self.c4**3 / self.disc


def j_of_lambda(lam: QFElem) -> QFElem:
    if lam == 0 or lam == 1:
        raise DomainError(f"j(lambda) undefined at lambda = {lam}")
    j = 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (1 - lam) ** 2)
    lm = lam * (1 - lam)
    if j != 256 * (1 - lm) ** 3 / (lm * lm):
        raise AssertionError("the two expressions for j(lambda) disagree")
    return j


def cross_ratio(a1: QFElem, a2: QFElem, a3: QFElem) -> QFElem:
    if a1 == a2 or a1 == a3 or a2 == a3:
        raise DomainError("cross ratio needs three distinct points")
    return (a3 - a1) / (a2 - a1)


def phi_map(curve: EllipticCurveQF) -> S3Orbit:
    """Orbit of ((a3-a1)/(a2-a1), (a2-a3)/(a2-a1)), identified by its lambda values."""
    a1, a2, a3 = curve.roots
    lam = cross_ratio(a1, a2, a3)
    if (a2 - a3) / (a2 - a1) != 1 - lam:
        raise AssertionError("cross-ratio pair does not sum to 1")
    return s3_orbit(lam)


def phi_inverse(lam: QFElem) -> EllipticCurveQF:
    """The Legendre curve y^2 = x(x - 1)(x - lam)."""
    F = lam.field
    if lam == 0 or lam == 1:
        raise DomainError(f"no Legendre curve for lambda = {lam}")
    return EllipticCurveQF(F.elem(0), F.elem(1), lam)


def pgr_outside_S(j: QFElem, S: Sequence[PrimeIdealQF]) -> bool:
    """True iff ``ord_P(j) >= 0`` at every prime P outside S.

    Writing ``j = (X + Y sqrt d)/D`` with integers X, Y, D, poles can only
    occur at primes dividing D, so only D is factored.
    """
    if j == 0:
        return True
    excluded = set(S)
    _, _, D = j.integer_form()
    if D == 1:
        return True
    for p in factorize(D):
        for P in splitting_type(j.field, p):
            if P not in excluded and ord_prime(P, j) < 0:
                return False
    return True


@dataclass(frozen=True)
class JValuation:
    cond_i: bool
    cond_ii: bool
    ord_j: int
    t: int


def jval_conditions(lam: QFElem, mu: QFElem, P: PrimeIdealQF) -> JValuation:
    """The two valuation conditions at P | 2 and the valuation of j they predict.

    ``cond_i``: max(|ord lam|, |ord mu|) <= 4 ord(2);
    ``cond_ii``: ord(lam*mu) = ord(2) mod 3.
    The equivalences with ``ord_j >= 0`` and ``3 | ord_j`` are asserted.
    """
    if P.p != 2:
        raise InvalidArgument(f"{P} does not lie above 2")
    if lam + mu != 1:
        raise InvalidArgument("lambda + mu must equal 1")
    e2 = P.e  # ord_P(2)
    m, n = ord_prime(P, lam), ord_prime(P, mu)
    t = max(abs(m), abs(n))
    ord_j = ord_prime(P, j_of_lambda(lam))
    cond_i = t <= 4 * e2
    cond_ii = (m + n - e2) % 3 == 0
    if t > 0 and ord_j != 8 * e2 - 2 * t:
        raise AssertionError(f"ord_P(j) = {ord_j} but 8*ord_P(2) - 2t = {8 * e2 - 2 * t}")
    if t == 0 and ord_j < 8 * e2:
        raise AssertionError(f"ord_P(j) = {ord_j} below 8*ord_P(2) with t = 0")
    if cond_i != (ord_j >= 0) or cond_ii != (ord_j % 3 == 0):
        raise AssertionError(f"j-valuation equivalences violated at {P} for lambda = {lam}")
    return JValuation(cond_i, cond_ii, ord_j, t)


# -- Frey curve ----------------------------------------------------------------


@dataclass(frozen=True)
class FreyData:
    A: QFElem
    B: QFElem
    C: QFElem
    a: QFElem
    b: QFElem
    c: QFElem
    p: int
    curve: EllipticCurveQF


def frey_invariants(A, B, C, a, b, c, p: int) -> FreyData:
    """Frey curve Y^2 = X(X - A a^p)(X + B b^p) of a solution of A a^p + B b^p + C c^p = 0."""
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise InvalidArgument(f"exponent p = {p} must be an odd prime")
    if A * a**p + B * b**p + C * c**p != 0:
        raise InvalidArgument("(a, b, c) does not solve A a^p + B b^p + C c^p = 0")
    if a * b * c == 0:
        raise InvalidArgument("trivial solution (abc = 0) has no Frey curve")
    if A * B * C == 0:
        raise InvalidArgument("coefficients must be nonzero")
    F = A.field
    curve = EllipticCurveQF(F.elem(0), A * a**p, -(B * b**p))
    expected = 16 * (A * B * C) ** 2 * (a * b * c) ** (2 * p)
    if curve.disc != expected:
        raise AssertionError("Frey discriminant differs from 16 (ABC)^2 (abc)^(2p)")
    return FreyData(A, B, C, a, b, c, p, curve)


@dataclass(frozen=True)
class ContentIdeal:
    factorization: tuple  # ((PrimeIdealQF, exponent), ...)

    def exponent(self, P: PrimeIdealQF) -> int:
        return dict(self.factorization).get(P, 0)

    @property
    def is_trivial(self) -> bool:
        return not self.factorization


def content_ideal(a: QFElem, b: QFElem, c: QFElem,
                  prime_universe: Optional[Iterable[PrimeIdealQF]] = None) -> ContentIdeal:
    """The ideal aO_K + bO_K + cO_K, as exponents min(ord a, ord b, ord c).

    Zero coordinates are skipped in the minimum. Primes in ``prime_universe``
    are evaluated in addition to those dividing the gcd of the norms.
    """
    coords = [x for x in (a, b, c) if x]
    if not coords:
        raise DomainError("content ideal of (0, 0, 0)")
    if not all(x.is_integral() for x in coords):
        raise InvalidArgument("content ideal needs integral coordinates")
    g = 0
    for x in coords:
        g = gcd(g, int(x.norm()))
    F = coords[0].field
    primes = set(prime_universe or ())
    if g > 1:
        for p in factorize(g):
            primes.update(splitting_type(F, p))
    out = []
    for P in sorted(primes):
        e = min(ord_prime(P, x) for x in coords)
        if e > 0:
            out.append((P, e))
    return ContentIdeal(tuple(out))


GOOD = "good"
MULTIPLICATIVE = "multiplicative"


def reduction_type(frey: FreyData, P: PrimeIdealQF, S: Sequence[PrimeIdealQF],
                   content: Optional[ContentIdeal] = None) -> str:
    """Reduction of the Frey model at an odd prime outside S and the content."""
    if P.p == 2:
        raise InvalidArgument(f"{P} lies above 2")
    if P in set(S):
        raise InvalidArgument(f"{P} belongs to S")
    if content is None:
        content = content_ideal(frey.a, frey.b, frey.c)
    if content.exponent(P):
        raise InvalidArgument(f"{P} divides the content ideal")
    vd = ord_prime(P, frey.curve.disc)
    if vd == 0:
        return GOOD
    if ord_prime(P, frey.curve.c4) != 0:
        raise AssertionError(f"model not minimal multiplicative at {P}")
    if vd % frey.p:
        raise AssertionError(f"p = {frey.p} does not divide ord(disc) = {vd} at {P}")
    return MULTIPLICATIVE


@dataclass(frozen=True)
class ConductorEntry:
    prime: PrimeIdealQF
    ord_disc: int
    kind: str  # "multiplicative", "good", "even", "bad-in-S"
    exponent_lo: int
    exponent_hi: int
    exact: bool
    in_M_p: bool
    level_lowered_hi: int
    minimality: str

    def as_dict(self) -> dict:
        return {
            "prime": self.prime.as_dict(),
            "ord_disc": self.ord_disc,
            "kind": self.kind,
            "conductor_exponent": (
                self.exponent_lo if self.exact else [self.exponent_lo, self.exponent_hi]
            ),
            "exact": self.exact,
            "in_M_p": self.in_M_p,
            "level_lowered_exponent_max": self.level_lowered_hi,
            "minimality": self.minimality,
        }


def conductor_report(frey: FreyData, S: Sequence[PrimeIdealQF]) -> list[ConductorEntry]:
    """Conductor exponent data at every prime of S and every prime of bad reduction.

    Odd multiplicative primes outside S and the content get the exact exponent
    1 and are part of M_p; odd primes in S or the content get the interval
    [0, 2]; primes above 2 get [0, 2 + 6 ord_P(2)] and are marked bounded only.
    """
    F = frey.A.field
    S = sorted(set(S) | set(splitting_type(F, 2)))
    content = content_ideal(frey.a, frey.b, frey.c)
    primes = set(S)
    for p in support_primes(frey.curve.disc):
        primes.update(splitting_type(F, p))
    out = []
    for P in sorted(primes):
        vd = ord_prime(P, frey.curve.disc)
        if P.p == 2:
            hi = 2 + 6 * P.e
            out.append(ConductorEntry(P, vd, "even", 0, hi, False, False, hi, "not determined"))
        elif P in S or content.exponent(P):
            out.append(ConductorEntry(P, vd, "bad-in-S", 0, 2, False, False, 2, "not determined"))
        else:
            kind = reduction_type(frey, P, S, content)
            if kind == MULTIPLICATIVE:
                out.append(ConductorEntry(P, vd, kind, 1, 1, True, True, 0, "minimal"))
            elif vd:
                raise AssertionError(f"unexpected reduction at {P}")
    return out
