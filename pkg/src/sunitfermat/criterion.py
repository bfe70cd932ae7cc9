"""Assemble the asymptotic Fermat criterion for odd coefficients A, B, C.

The criterion asks that every solution (lambda, mu) of the S-unit equation
be witnessed by some prime above 2, either in U (condition A) or in V
(condition B). Verdicts derived from bounded searches carry an explicit
completeness qualifier.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .arith import factorize, primality_is_deterministic
from .errors import InvalidArgument
from .legendre_frey import jval_conditions
from .quadfield import PrimeIdealQF, QFElem, QuadField, make_field, ord_prime, splitting_type
from .sunit import (
    CERTIFIED,
    DEFAULT_BOUNDS,
    UP_TO_BOUNDS,
    SearchBounds,
    SUnitSolution,
    canonical_set,
    enumerate_bruteforce,
    enumerate_param,
    inert_setting_checks,
    irrelevant_orbit,
    is_irrelevant,
    pair_hypotheses,
    rational_integral_solutions,
    rational_solutions,
)

ES_ODD_DEGREE = "odd-degree"
ES_U_NONEMPTY = "U-nonempty"
ES_CONJECTURE = "conjecture-assumed"
ES_FAILS = "fails"

HOLDS = "holds"
FAILS_WITH_WITNESS = "fails-with-witness"
INCONCLUSIVE_BOUNDS = "inconclusive-bounds"
ES_UNMET = "es-unmet"

NOTE_CONDITION_A_UNAVAILABLE = (
    "condition (A) cannot hold here: U is empty because 2 is inert with residue "
    "degree 2; the irrelevant solutions are witnessed by condition (B) instead"
)


@dataclass(frozen=True)
class PrimeSets:
    R: tuple
    S: tuple
    T: tuple
    U: tuple
    V: tuple

    def as_dict(self) -> dict:
        return {name: [P.as_dict() for P in getattr(self, name)] for name in "RSTUV"}


def _prime_divisors_of(x: QFElem) -> list[PrimeIdealQF]:
    out = []
    for p in factorize(int(x.norm())):
        out += [P for P in splitting_type(x.field, p) if ord_prime(P, x) > 0]
    return out


def _check_coefficients(A, B, C) -> None:
    for name, x in zip("ABC", (A, B, C)):
        if not x:
            raise InvalidArgument(f"coefficient {name} is zero")
        if not x.is_integral():
            raise InvalidArgument(f"coefficient {name} = {x} is not integral")


def compute_prime_sets(F: QuadField, A: QFElem, B: QFElem, C: QFElem) -> PrimeSets:
    _check_coefficients(A, B, C)
    R = sorted(set(_prime_divisors_of(A * B * C)))
    T = sorted(splitting_type(F, 2))
    S = sorted(set(R) | set(T))
    U = [P for P in T if P.f == 1]
    V = [P for P in T if P.e % 3 != 0]  # ord_P(2) = e(P/2)
    return PrimeSets(tuple(R), tuple(S), tuple(T), tuple(U), tuple(V))


def is_odd_triple(F: QuadField, A: QFElem, B: QFElem, C: QFElem) -> bool:
    prod = A * B * C
    return all(ord_prime(P, prod) == 0 for P in splitting_type(F, 2))


def _bound_ok(sol: SUnitSolution, P: PrimeIdealQF) -> bool:
    return max(abs(ord_prime(P, sol.lam)), abs(ord_prime(P, sol.mu))) <= 4 * P.e


def _congruence_ok(sol: SUnitSolution, P: PrimeIdealQF) -> bool:
    return (ord_prime(P, sol.lam * sol.mu) - P.e) % 3 == 0


def condition_A(sol: SUnitSolution, sets: PrimeSets) -> Optional[PrimeIdealQF]:
    return next((P for P in sets.U if _bound_ok(sol, P)), None)


def condition_B(sol: SUnitSolution, sets: PrimeSets) -> Optional[PrimeIdealQF]:
    return next((P for P in sets.V if _bound_ok(sol, P) and _congruence_ok(sol, P)), None)


def es_status(F: QuadField, sets: PrimeSets, conjecture_flag: bool) -> str:
    degree = 2
    if degree % 2 == 1:
        return ES_ODD_DEGREE
    if sets.U:
        return ES_U_NONEMPTY
    if conjecture_flag:
        return ES_CONJECTURE
    return ES_FAILS


def not1_check(A, B, C) -> bool:
    """True iff no sign choice makes +-A +-B +-C vanish."""
    return all(
        sa * A + sb * B + sc * C != 0 for sa, sb, sc in itertools.product((1, -1), repeat=3)
    )


@dataclass(frozen=True)
class ConditionOutcome:
    solution: SUnitSolution
    condA_witness: Optional[PrimeIdealQF]
    condB_witness: Optional[PrimeIdealQF]

    def __post_init__(self):
        sol = self.solution
        if self.condA_witness is not None:
            P = self.condA_witness
            if P.f != 1 or not _bound_ok(sol, P):
                raise AssertionError(f"{P} is not a valid condition (A) witness for {sol}")
        if self.condB_witness is not None:
            P = self.condB_witness
            if P.e % 3 == 0 or not (_bound_ok(sol, P) and _congruence_ok(sol, P)):
                raise AssertionError(f"{P} is not a valid condition (B) witness for {sol}")

    @property
    def witnessed(self) -> bool:
        return self.condA_witness is not None or self.condB_witness is not None


@dataclass
class CriterionReport:
    field: QuadField
    coefficients: tuple
    sets: PrimeSets
    es_status: str
    conjecture_flag: bool
    outcomes: list
    verdict: str
    completeness: str
    bounds: SearchBounds
    notes: list = field(default_factory=list)
    solver_agreement: Optional[bool] = None


def _evaluate(sol: SUnitSolution, sets: PrimeSets) -> ConditionOutcome:
    for P in sets.T:
        jval_conditions(sol.lam, sol.mu, P)  # asserts the j-valuation equivalences
    return ConditionOutcome(sol, condition_A(sol, sets), condition_B(sol, sets))


def _certifiable_pair(F: QuadField, sets: PrimeSets) -> Optional[int]:
    """The odd prime q when S = {2, q} and (d, q) satisfy the pair hypotheses."""
    odd = sorted({P.p for P in sets.S if P.p != 2})
    if len(odd) != 1:
        return None
    q = odd[0]
    if all(ok for _, ok, _ in pair_hypotheses(F.d, q)):
        return q
    return None


def criterion_run(
    F: QuadField,
    A: QFElem,
    B: QFElem,
    C: QFElem,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    conjecture_flag: bool = False,
    workers: int = 1,
) -> CriterionReport:
    """Evaluate the criterion for the coefficients (A, B, C) over F."""
    _check_coefficients(A, B, C)
    if not is_odd_triple(F, A, B, C):
        raise InvalidArgument("coefficients are not odd: some prime above 2 divides ABC")
    sets = compute_prime_sets(F, A, B, C)
    status = es_status(F, sets, conjecture_flag)
    brute = enumerate_bruteforce(F, sets.S, bounds, workers=workers)
    solutions = list(brute.solutions)
    notes = []
    agreement = None

    odd = sorted({P.p for P in sets.S if P.p != 2})
    if len(odd) == 1 and all(ok for _, ok, _ in inert_setting_checks(F.d, odd[0])):
        q = odd[0]
        other = [ps.to_solution(F, q) for ps in enumerate_param(F.d, q, bounds)]
        if _certifiable_pair(F, sets) is not None:
            rational = list(rational_solutions(F.d, q, bounds))
        else:
            rational = [F.elem(lam) for lam, _ in rational_integral_solutions(q, bounds)]
        other += [SUnitSolution.from_lambda(t, sets.S) for t in rational]
        other_ids = {s.canonical_id for s in canonical_set(other)}
        agreement = other_ids == {s.canonical_id for s in solutions}
        if not agreement:
            solutions = canonical_set(solutions + other)
            notes.append("brute-force and parametrised solvers disagree within their bounds")

    outcomes = [_evaluate(sol, sets) for sol in solutions]
    all_witnessed = all(o.witnessed for o in outcomes)
    if all_witnessed and not not1_check(A, B, C):
        raise AssertionError("all solutions witnessed but (+-1, +-1, +-1) solves the equation")

    if not all_witnessed:
        verdict = FAILS_WITH_WITNESS
        for o in outcomes:
            if not o.witnessed:
                notes.append(f"solution {o.solution} has no witness in U or V")
    elif agreement is False:
        verdict = INCONCLUSIVE_BOUNDS
    elif status == ES_FAILS:
        verdict = ES_UNMET
        notes.append("(ES) unmet: degree is even, U is empty and the conjecture flag is off")
    else:
        verdict = HOLDS

    completeness = UP_TO_BOUNDS
    if _certifiable_pair(F, sets) is not None and agreement:
        completeness = CERTIFIED
    if not sets.U and any(
        is_irrelevant(o.solution) and o.condB_witness is not None for o in outcomes
    ):
        notes.append(NOTE_CONDITION_A_UNAVAILABLE)

    return CriterionReport(
        F, (A, B, C), sets, status, conjecture_flag, outcomes, verdict, completeness,
        bounds, notes, agreement,
    )


# -- the (d, q) certifier --------------------------------------------------------

CERTIFIED_HOLDS = "certified-holds"
REJECTED = "rejected"
CERT_FAILS = "fails"


@dataclass
class Certificate:
    d: int
    q: int
    status: str
    hypotheses: list
    primality: str = "deterministic"
    relevant_solutions: list = field(default_factory=list)
    param_candidates_found: Optional[int] = None
    rational_orbit: list = field(default_factory=list)
    report: Optional[CriterionReport] = None
    conditional_on: Optional[str] = None
    notes: list = field(default_factory=list)

    @property
    def failed_hypotheses(self) -> list:
        return [(name, detail) for name, ok, detail in self.hypotheses if not ok]


def theorem2_certify(d: int, q: int, bounds: SearchBounds = DEFAULT_BOUNDS,
                     workers: int = 1) -> Certificate:
    """Check the pair hypotheses on (d, q) and run the criterion for (1, 1, -q)."""
    hyps = pair_hypotheses(d, q)
    primality = "deterministic" if primality_is_deterministic(max(d, q)) else "probabilistic"
    cert = Certificate(d, q, REJECTED, hyps, primality)
    if not all(ok for _, ok, _ in hyps):
        cert.notes += [f"hypothesis failed: {name} ({detail})" for name, detail in cert.failed_hypotheses]
        return cert
    F = make_field(d)
    param = enumerate_param(d, q, bounds)
    cert.param_candidates_found = len(param)
    orbit = rational_solutions(d, q, bounds)
    cert.rational_orbit = [str(lam) for lam in orbit]
    rep = criterion_run(F, F.elem(1), F.elem(1), F.elem(-q), bounds, conjecture_flag=True, workers=workers)
    cert.report = rep
    cert.relevant_solutions = [str(o.solution) for o in rep.outcomes if not is_irrelevant(o.solution)]
    cert.conditional_on = "Conjecture 1 (Eichler-Shimura) for K"
    ok = (
        not param
        and orbit == irrelevant_orbit(F)
        and not cert.relevant_solutions
        and rep.verdict == HOLDS
        and rep.completeness == CERTIFIED
    )
    cert.status = CERTIFIED_HOLDS if ok else CERT_FAILS
    cert.notes = list(rep.notes)
    return cert
