import pytest

from sunitfermat.criterion import (
    CERTIFIED_HOLDS,
    ES_CONJECTURE,
    ES_FAILS,
    ES_U_NONEMPTY,
    ES_UNMET,
    FAILS_WITH_WITNESS,
    HOLDS,
    NOTE_CONDITION_A_UNAVAILABLE,
    REJECTED,
    compute_prime_sets,
    condition_A,
    condition_B,
    criterion_run,
    es_status,
    is_odd_triple,
    not1_check,
    theorem2_certify,
)
from sunitfermat.errors import InvalidArgument, UnsupportedConfiguration
from sunitfermat.quadfield import make_field
from sunitfermat.sunit import SearchBounds, SUnitSolution, two_q_primes

SMALL = SearchBounds(unit_exp_max=6, two_exp_max=6, q_exp_max=4, r1_max=12, s_max=4)


def test_prime_sets_13_37(K13):
    E = K13.elem
    sets = compute_prime_sets(K13, E(1), E(1), E(-37))
    assert [P.p for P in sets.R] == [37]
    assert [P.p for P in sets.S] == [2, 37]
    assert [P.p for P in sets.T] == [2]
    assert sets.U == ()
    assert [P.p for P in sets.V] == [2]


def test_prime_sets_split_two():
    F = make_field(17)
    sets = compute_prime_sets(F, F.elem(1), F.elem(1), F.elem(-3))
    assert len(sets.T) == 2 and len(sets.U) == 2
    assert es_status(F, sets, False) == ES_U_NONEMPTY


def test_es_status_inert(K13):
    sets = compute_prime_sets(K13, K13.elem(1), K13.elem(1), K13.elem(-37))
    assert es_status(K13, sets, False) == ES_FAILS
    assert es_status(K13, sets, True) == ES_CONJECTURE


def test_odd_triple(K13):
    E = K13.elem
    assert is_odd_triple(K13, E(1), E(3), E(-37))
    assert not is_odd_triple(K13, E(2), E(1), E(-37))
    with pytest.raises(InvalidArgument, match="odd"):
        criterion_run(K13, E(2), E(1), E(-37), SMALL)


def test_not1():
    assert not not1_check(1, 1, 2)
    assert not1_check(1, 1, -37)


def test_conditions_on_irrelevant(K13):
    E = K13.elem
    sets = compute_prime_sets(K13, E(1), E(1), E(-37))
    S = two_q_primes(K13, 37)
    sol = SUnitSolution.from_lambda(E(-1), S)
    assert condition_A(sol, sets) is None
    assert condition_B(sol, sets).p == 2
    # 1/32 + 31/32 is not an S-unit solution but the bound check is still local
    far = SUnitSolution.from_lambda(E(64))
    assert condition_B(far, sets) is None


def test_criterion_13_37_without_es(K13):
    E = K13.elem
    rep = criterion_run(K13, E(1), E(1), E(-37), SMALL)
    assert rep.verdict == ES_UNMET
    assert rep.solver_agreement is True
    assert rep.completeness == "certified"
    assert NOTE_CONDITION_A_UNAVAILABLE in rep.notes


def test_criterion_13_37_with_es(K13):
    E = K13.elem
    rep = criterion_run(K13, E(1), E(1), E(-37), SMALL, conjecture_flag=True)
    assert rep.verdict == HOLDS
    assert [o.solution.canonical_id for o in rep.outcomes] == [(-1, 0)]
    assert rep.outcomes[0].condB_witness.label() == "2O_K"


def test_criterion_fails_with_witness():
    # over Q(sqrt 5) with S = {2, 13} there are relevant solutions that (B) misses
    F = make_field(5)
    E = F.elem
    rep = criterion_run(F, E(1), E(1), E(-13), SMALL, conjecture_flag=True)
    assert rep.verdict == FAILS_WITH_WITNESS
    assert rep.completeness == "up-to-bounds"
    assert any(not o.witnessed for o in rep.outcomes)
    assert any("no witness" in n for n in rep.notes)


def test_criterion_rejects_split_s():
    F = make_field(17)
    with pytest.raises(UnsupportedConfiguration):
        criterion_run(F, F.elem(1), F.elem(1), F.elem(-3), SMALL)


def test_criterion_rejects_nonintegral(K13):
    from fractions import Fraction
    with pytest.raises(InvalidArgument):
        criterion_run(K13, K13.elem(Fraction(1, 3)), K13.elem(1), K13.elem(-37), SMALL)


def test_theorem2_certify_13_37():
    cert = theorem2_certify(13, 37)
    assert cert.status == CERTIFIED_HOLDS
    assert all(ok for _, ok, _ in cert.hypotheses) and len(cert.hypotheses) == 5
    assert cert.relevant_solutions == []
    assert cert.param_candidates_found == 0
    assert "Conjecture 1" in cert.conditional_on
    assert NOTE_CONDITION_A_UNAVAILABLE in cert.notes
    assert cert.primality == "deterministic"


def test_theorem2_certify_rejects():
    cert = theorem2_certify(13, 29)
    assert cert.status == REJECTED
    assert [n for n, _ in cert.failed_hypotheses] == ["kronecker(d, q) = -1"]
    assert cert.report is None
