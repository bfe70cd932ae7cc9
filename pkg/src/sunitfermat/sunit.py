"""Solutions of the S-unit equation lambda + mu = 1 over real quadratic fields.

Two independent solvers are provided for S made of inert primes:

* :func:`enumerate_bruteforce` walks the box of S-units
  ``+-eps^k * prod p_i^{a_i}`` and tests whether ``1 - lambda`` is an S-unit;
* :func:`enumerate_param` (for S = {2, q}, both inert) searches the integer
  parametrisation ``(eta1, eta2, r1, s1, s2, v)`` of non-rational solutions,
  and :func:`rational_solutions` classifies the rational ones.

Both report results as canonical orbit representatives under the S3 action
on lambda combined with Galois conjugation.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .arith import is_prime, is_squarefree, kronecker, perfect_square_root, strip_primes
from .errors import DomainError, InvalidArgument, UnsupportedConfiguration
from .quadfield import (
    INERT,
    PrimeIdealQF,
    QFElem,
    QuadField,
    fundamental_unit,
    is_s_unit,
    make_field,
    ord_prime,
    splitting_type,
)

UP_TO_BOUNDS = "up-to-bounds"
CERTIFIED = "certified"


@dataclass(frozen=True)
class SearchBounds:
    unit_exp_max: int = 25
    two_exp_max: int = 25
    q_exp_max: int = 25
    r1_max: int = 40
    s_max: int = 12

    def __post_init__(self):
        for name, value in self.as_dict().items():
            if not isinstance(value, int) or value < 0:
                raise InvalidArgument(f"search bound {name} must be a nonnegative integer")

    def as_dict(self) -> dict[str, int]:
        return {
            "unit_exp_max": self.unit_exp_max,
            "two_exp_max": self.two_exp_max,
            "q_exp_max": self.q_exp_max,
            "r1_max": self.r1_max,
            "s_max": self.s_max,
        }


DEFAULT_BOUNDS = SearchBounds()


# -- S3 action -----------------------------------------------------------------

S3_MAPS = (
    lambda t: t,
    lambda t: 1 / t,
    lambda t: 1 - t,
    lambda t: 1 / (1 - t),
    lambda t: t / (t - 1),
    lambda t: (t - 1) / t,
)


def _check_lambda(lam: QFElem) -> None:
    if lam == 0 or lam == 1:
        raise DomainError(f"lambda = {lam} is excluded (must avoid 0 and 1)")


@dataclass(frozen=True)
class S3Orbit:
    elements: frozenset

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements, key=QFElem.sort_key))

    def __contains__(self, lam) -> bool:
        return lam in self.elements

    @property
    def representative(self) -> QFElem:
        return min(self.elements, key=QFElem.sort_key)

    def pairs(self) -> list[tuple[QFElem, QFElem]]:
        return [(lam, 1 - lam) for lam in self]


def s3_orbit(lam: QFElem) -> S3Orbit:
    _check_lambda(lam)
    return S3Orbit(frozenset(f(lam) for f in S3_MAPS))


def canonical_lambda(lam: QFElem) -> QFElem:
    """Minimal element of the orbit of ``lam`` under S3 x {1, conjugation}."""
    _check_lambda(lam)
    images = [f(lam) for f in S3_MAPS]
    images += [t.conj() for t in images]
    return min(images, key=QFElem.sort_key)


# -- solutions -----------------------------------------------------------------


@dataclass(frozen=True)
class SUnitSolution:
    lam: QFElem
    mu: QFElem
    canonical_id: tuple

    @classmethod
    def from_lambda(cls, lam: QFElem, S: Optional[Iterable[PrimeIdealQF]] = None) -> "SUnitSolution":
        """Build ``(lam, 1 - lam)``, checking S-unit membership when ``S`` is given."""
        _check_lambda(lam)
        mu = 1 - lam
        if S is not None:
            S = list(S)
            if not (is_s_unit(lam, S) and is_s_unit(mu, S)):
                raise InvalidArgument(f"({lam}, {mu}) is not a solution in S-units")
        c = canonical_lambda(lam)
        return cls(lam, mu, (c.x, c.y))

    @property
    def sort_key(self) -> tuple:
        x, y = self.canonical_id
        return (abs(x.numerator), x.denominator, abs(y.numerator), y.denominator, x < 0, y < 0)

    def __str__(self) -> str:
        return f"({self.lam}, {self.mu})"


def canonicalize(sol: SUnitSolution) -> SUnitSolution:
    c = canonical_lambda(sol.lam)
    return SUnitSolution(c, 1 - c, sol.canonical_id)


IRRELEVANT_LAMBDAS = frozenset({Fraction(1, 2), Fraction(2), Fraction(-1)})


def is_irrelevant(sol: SUnitSolution) -> bool:
    return sol.lam.y == 0 and sol.lam.x in IRRELEVANT_LAMBDAS


def irrelevant_orbit(F: QuadField) -> S3Orbit:
    return s3_orbit(F.elem(2))


def canonical_set(solutions: Iterable[SUnitSolution]) -> list[SUnitSolution]:
    """Canonicalize, deduplicate and sort."""
    seen = {}
    for sol in solutions:
        seen.setdefault(sol.canonical_id, canonicalize(sol))
    return sorted(seen.values(), key=lambda s: s.sort_key)


# -- generators and the brute-force solver --------------------------------------


def _require_inert(S: Sequence[PrimeIdealQF]) -> None:
    for P in S:
        if P.split_type != INERT:
            raise UnsupportedConfiguration(
                f"prime {P} above {P.p} is {P.split_type}; S-unit generators for "
                "non-inert primes require principality machinery"
            )


def sunit_group_generators(F: QuadField, S: Sequence[PrimeIdealQF]) -> list[QFElem]:
    """Generators ``-1, eps, p_1, ..., p_m`` of the S-unit group for inert S."""
    _require_inert(S)
    gens = [F.elem(-1), fundamental_unit(F)]
    gens += [F.elem(P.p) for P in sorted(set(S))]
    return gens


@dataclass(frozen=True)
class SearchResult:
    solutions: tuple
    completeness: str
    candidates: int
    bounds: SearchBounds


def _exponent_bounds(S: Sequence[PrimeIdealQF], bounds: SearchBounds) -> list[tuple[int, int]]:
    return [(P.p, bounds.two_exp_max if P.p == 2 else bounds.q_exp_max) for P in S]


def _grid(prime_bounds: list[tuple[int, int]]):
    """Precompute, for every exponent vector, the integer data of the norm test.

    With ``u = U/W`` (coprime), ``lambda = s*eps^k*u`` and ``n = N(eps^k)``,
    ``N(1 - lambda) * W^2 = W^2 - s*Tr(eps^k)*U*W + n*U^2``.
    """
    primes = [p for p, _ in prime_bounds]
    ranges = [range(-m, m + 1) for _, m in prime_bounds]
    plus, minus = [], []
    for exps in itertools.product(*ranges):
        U = W = 1
        zero = []
        for p, e in zip(primes, exps):
            if e > 0:
                U *= p**e
            elif e < 0:
                W *= p ** (-e)
            else:
                zero.append(p)
        zero = tuple(zero)
        UW, U2, W2 = U * W, U * U, W * W
        plus.append((W2 + U2, UW, zero, exps))
        minus.append((W2 - U2, UW, zero, exps))
    return primes, plus, minus


def _scan(args):
    """Scan unit exponents ``ks``; return hits as ``(k, sign, exps)``."""
    ks, traces, norm_sign, plus, minus = args
    hits = []
    for k in ks:
        t = traces[k]
        rows = plus if norm_sign**k > 0 else minus  # n = N(eps)^k is +-1
        for s in (1, -1):
            T = s * t
            for c, uw, zero, exps in rows:
                M = c - T * uw
                if M == 1 or M == -1:
                    hits.append((k, s, exps))
                elif zero and M and strip_primes(M, zero) == 1:
                    # a nonzero exponent forces ord(mu) there, so only the
                    # primes at exponent zero can divide M
                    hits.append((k, s, exps))
    return hits


def enumerate_bruteforce(
    F: QuadField,
    S: Sequence[PrimeIdealQF],
    bounds: SearchBounds = DEFAULT_BOUNDS,
    workers: int = 1,
) -> SearchResult:
    """All solutions with ``lambda = +-eps^k * prod p^a`` inside the bounds box.

    The box can be split across ``workers`` processes; the merged result is a
    set and so does not depend on the partition.
    """
    S = sorted(set(S))
    gens = sunit_group_generators(F, S)
    eps = gens[1]
    K = bounds.unit_exp_max
    eps_pows = {k: eps**k for k in range(-K, K + 1)}
    traces = {k: int(v.trace()) for k, v in eps_pows.items()}
    norm_sign = int(eps.norm())
    prime_bounds = _exponent_bounds(S, bounds)
    primes, plus, minus = _grid(prime_bounds)
    ks = list(range(-K, K + 1))
    if workers > 1 and len(ks) > 1:
        chunks = [ks[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(_scan, [(c, traces, norm_sign, plus, minus) for c in chunks])
            hits = [h for part in parts for h in part]
    else:
        hits = _scan((ks, traces, norm_sign, plus, minus))
    sols = []
    for k, s, exps in hits:
        lam = eps_pows[k] * s
        for p, e in zip(primes, exps):
            lam = lam * Fraction(p) ** e
        sols.append(SUnitSolution.from_lambda(lam, S))
    return SearchResult(
        tuple(canonical_set(sols)), UP_TO_BOUNDS, len(ks) * 2 * len(plus), bounds
    )


# -- the {2, q} setting --------------------------------------------------------


def inert_setting_checks(d: int, q: int) -> list[tuple[str, bool, str]]:
    """Conditions making 2 and q inert in Q(sqrt d) with d, q = 5 mod 8."""
    sqf = d >= 1 and is_squarefree(d)
    qp = q >= 2 and is_prime(q)
    checks = [
        ("d squarefree", sqf, f"d = {d}"),
        ("d = 5 mod 8", d % 8 == 5, f"d mod 8 = {d % 8}"),
        ("q prime", qp, f"q = {q}"),
        ("q = 5 mod 8", q % 8 == 5, f"q mod 8 = {q % 8}"),
    ]
    if qp:
        kr = kronecker(d, q)
        checks.append(("kronecker(d, q) = -1", kr == -1, f"kronecker({d}, {q}) = {kr}"))
    else:
        checks.append(("kronecker(d, q) = -1", False, "q is not prime"))
    return checks


def pair_hypotheses(d: int, q: int) -> list[tuple[str, bool, str]]:
    """The five hypotheses on (d, q) under which the {2, q} classification is proved."""
    sqf = d >= 1 and is_squarefree(d)
    qp = q >= 2 and is_prime(q)
    checks = [
        ("d >= 13 and squarefree", d >= 13 and sqf,
         f"d = {d}" + ("" if sqf else " is not squarefree")),
        ("d = 5 mod 8", d % 8 == 5, f"d mod 8 = {d % 8}"),
        ("q >= 29 and prime", q >= 29 and qp, f"q = {q}" + ("" if qp else " is not prime")),
        ("q = 5 mod 8", q % 8 == 5, f"q mod 8 = {q % 8}"),
    ]
    if qp:
        kr = kronecker(d, q)
        checks.append(("kronecker(d, q) = -1", kr == -1, f"kronecker({d}, {q}) = {kr}"))
    else:
        checks.append(("kronecker(d, q) = -1", False, "q is not prime"))
    return checks


def _require(checks, what: str) -> None:
    failed = [f"{name} ({detail})" for name, ok, detail in checks if not ok]
    if failed:
        raise InvalidArgument(f"{what}: failed " + "; ".join(failed))


def two_q_primes(F: QuadField, q: int) -> list[PrimeIdealQF]:
    return splitting_type(F, 2) + splitting_type(F, q)


@dataclass(frozen=True)
class ParamSolution:
    eta1: int
    eta2: int
    r1: int
    s1: int
    s2: int
    v: int

    def trace(self, q: int) -> int:
        return self.eta1 * 4**self.r1 * q ** (2 * self.s1) - self.eta2 * q ** (2 * self.s2) + 1

    def lam(self, F: QuadField, q: int) -> QFElem:
        return F.elem(Fraction(self.trace(q), 2), Fraction(self.v, 2))

    def mu(self, F: QuadField, q: int) -> QFElem:
        return F.elem(Fraction(2 - self.trace(q), 2), Fraction(-self.v, 2))

    def to_solution(self, F: QuadField, q: int) -> SUnitSolution:
        lam, mu = self.lam(F, q), self.mu(F, q)
        if lam + mu != 1 or not (lam.is_integral() and mu.is_integral()):
            raise AssertionError(f"{self} does not reconstruct an integral solution")
        return SUnitSolution.from_lambda(lam, two_q_primes(F, q))


def enumerate_param(d: int, q: int, bounds: SearchBounds = DEFAULT_BOUNDS) -> list[ParamSolution]:
    """Search the integer parametrisation of non-rational integral solutions.

    For ``eta1, eta2 = +-1``, ``r1 <= r1_max`` and ``s1, s2 <= s_max`` with
    ``s1*s2 = 0`` one needs ``X^2 - eta1*2^(2r1+2)*q^(2s1) = d*v^2`` where
    ``X = eta1*2^(2r1)*q^(2s1) - eta2*q^(2s2) + 1``; both signs of ``v`` are
    returned since they give conjugate solutions.
    """
    _require(inert_setting_checks(d, q), "parametrised solver needs 2 and q inert")
    F = make_field(d)
    out = []
    s_pairs = [(s1, 0) for s1 in range(bounds.s_max + 1)] + [
        (0, s2) for s2 in range(1, bounds.s_max + 1)
    ]
    for eta1, eta2 in itertools.product((1, -1), repeat=2):
        for r1 in range(bounds.r1_max + 1):
            for s1, s2 in s_pairs:
                lam_norm = eta1 * 4**r1 * q ** (2 * s1)
                mu_norm = eta2 * q ** (2 * s2)
                X = lam_norm - mu_norm + 1
                rhs = X * X - 4 * lam_norm
                if rhs <= 0 or rhs % d:
                    continue
                v = perfect_square_root(rhs // d)
                if v is None:
                    continue
                Y = 2 - X
                if Y * Y - d * v * v != 4 * mu_norm:
                    raise AssertionError("second norm identity failed")
                for sv in (v, -v):
                    sol = ParamSolution(eta1, eta2, r1, s1, s2, sv)
                    sol.to_solution(F, q)
                    out.append(sol)
    return out


def integral_representative(sol: SUnitSolution, S: Sequence[PrimeIdealQF]) -> SUnitSolution:
    """An S3-translate of ``sol`` with both coordinates in O_K (|S| = 2)."""
    S = list(S)
    if len(S) != 2:
        raise UnsupportedConfiguration(f"integral translate needs |S| = 2, got {len(S)}")
    lam = sol.lam
    vals = [ord_prime(P, lam) for P in S]
    if vals[0] != 0 and vals[1] != 0:
        new = lam / (lam - 1)
    else:
        other = vals[1] if vals[0] == 0 else vals[0]
        new = lam if other >= 0 else 1 / lam
    out = SUnitSolution(new, 1 - new, sol.canonical_id)
    if not (out.lam.is_integral() and out.mu.is_integral()):
        raise AssertionError(f"{sol} has no integral translate; is it an S-unit solution?")
    return out


def rational_integral_solutions(q: int, bounds: SearchBounds = DEFAULT_BOUNDS) -> list[tuple[int, int]]:
    """Integer pairs ``lambda + mu = 1`` with both ``+-2^r q^s``.

    Returns ``(lambda, mu)`` with ``r <= r1_max`` and ``s <= s_max`` on the
    lambda side; the mu side is checked by stripping 2 and q.
    """
    found = []
    for r in range(bounds.r1_max + 1):
        for s in range(bounds.s_max + 1):
            for sign in (1, -1):
                lam = sign * 2**r * q**s
                mu = 1 - lam
                if mu == 0 or strip_primes(mu, (2, q)) != 1:
                    continue
                r2 = (abs(mu) & -abs(mu)).bit_length() - 1
                s2 = 0
                m = abs(mu) >> r2
                while m % q == 0:
                    m //= q
                    s2 += 1
                # adding to 1 forces disjoint supports
                if min(r, r2) or min(s, s2):
                    raise AssertionError(f"support overlap in {lam} + {mu} = 1")
                found.append((lam, mu))
    return found


def rational_solutions(d: int, q: int, bounds: SearchBounds = DEFAULT_BOUNDS) -> S3Orbit:
    """The S3-orbit of all rational solutions for S = {2, q}.

    Every rational solution has an integral translate, so closing the integer
    solutions of ``+-2^r q^s + +-2^r' q^s' = 1`` under S3 yields all of them.
    """
    _require(pair_hypotheses(d, q), "rational classification hypotheses")
    F = make_field(d)
    elements = set()
    for lam, _ in rational_integral_solutions(q, bounds):
        elements |= s3_orbit(F.elem(lam)).elements
    orbit = S3Orbit(frozenset(elements))
    if len({canonical_lambda(t) for t in orbit.elements}) != 1:
        raise AssertionError(f"rational solutions for q = {q} span more than one orbit")
    return orbit
