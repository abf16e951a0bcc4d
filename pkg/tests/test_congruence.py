import pytest

from qclab.arith import HypothesisError, TruncationError
from qclab.congruence import (
    RegistryGrid,
    classify_opt3_mod4,
    find_claim,
    quadratic_nonresidues,
    run_claims,
    singlemod_family_parameters,
    singlemod_family_residue,
    theorem_registry,
    thm_mf1_index,
    verify_ap_congruence,
    verify_claim,
    verify_identity,
    verify_residue_structure,
    verify_thm_mf1,
)
from qclab.optk import opt_series
from qclab.series import eta_quotient_series, euler_product, one, shift
from qclab.special import eta_term


def test_verify_ap_congruence():
    s = opt_series(3, 5000)
    assert verify_ap_congruence(s, 3, 1, 6, 500).passed
    assert verify_ap_congruence(s, 24, 23, 144, 200).passed
    rep = verify_ap_congruence(s, 1, 0, 2, 10)
    assert rep.status == "counterexample" and rep.counterexample == (0, 1)
    n, v = rep.counterexample
    assert s[n] % 2 == v


def test_verify_refuses_short_series():
    with pytest.raises(TruncationError):
        verify_ap_congruence(opt_series(3, 100), 3, 2, 18, 500)
    with pytest.raises(ValueError):
        verify_ap_congruence(opt_series(3, 100, 6), 3, 2, 18, 10)


def test_registry_contents():
    reg = theorem_registry()
    triples = {(c.k, c.m, c.t, c.modulus) for c in reg if c.kind == "theorem"}
    assert (3, 3, 2, 9) in triples
    assert (2, 4, 3, 16) in triples
    for i in range(1, 6):
        for r in (1, 3, 5):
            assert (2**i * r, 8, 4, 2 ** (2 * i + 3)) in triples
    ids = [c.id for c in reg]
    assert len(ids) == len(set(ids))
    assert find_claim("opt3:3n+2:mod18").modulus == 18
    with pytest.raises(KeyError):
        find_claim("nonexistent")


def test_theorem_claims_pass():
    claims = [c for c in theorem_registry() if c.kind == "theorem"]
    reports = run_claims(claims, 300)
    assert [r.claim_id for r in reports] == [c.id for c in claims]
    assert all(r.passed for r in reports), [r.claim_id for r in reports if not r.passed]


def test_parallel_run_matches_serial():
    claims = [c for c in theorem_registry() if c.kind == "theorem"][:40]
    assert run_claims(claims, 100, jobs=1) == run_claims(claims, 100, jobs=2)


def test_uncorrected_conjecture_line_fails_at_i1():
    rep = verify_claim(find_claim("even-classes-8n+4-uncorrected[i=1,r=1]:8n+4:mod64"), 100)
    assert rep.counterexample == (0, 32)


def test_empty_grid():
    g = RegistryGrid(conj_i_max=0, conj_multipliers=())
    assert not [c for c in theorem_registry(g) if c.kind == "conjecture"]


def test_identities():
    T = 400
    lhs = eta_quotient_series({1: -2}, T)
    rhs = eta_term({8: 5, 2: -5, 16: -2}, T) + eta_term({4: 2, 16: 2, 2: -5, 8: -1}, T, 2, 1)
    assert verify_identity(lhs, rhs)
    assert verify_identity(euler_product(1, 50), euler_product(1, 50))
    key = eta_quotient_series({2: 24, 1: -16, 4: -8}, T) - shift(eta_quotient_series({4: 8, 1: -8}, T), 1) * 16
    assert verify_identity(key, one(T))


def test_quadratic_nonresidues():
    assert quadratic_nonresidues(5) == {2, 3}
    assert quadratic_nonresidues(7) == {3, 5, 6}
    for p in (11, 13, 17, 19):
        assert len(quadratic_nonresidues(p)) == (p - 1) // 2


def test_singlemod_family():
    assert singlemod_family_residue(5, 2, 1) == 14
    with pytest.raises(HypothesisError):
        singlemod_family_residue(5, 3, 0)
    with pytest.raises(HypothesisError):
        singlemod_family_residue(5, 1, 0)
    for p in (5, 7, 11, 13, 17):
        for r, A, R in singlemod_family_parameters(p):
            assert R % 3 == 2 and 0 <= R < 3 * p


def test_classify_opt3_mod4():
    assert classify_opt3_mod4(2) == 2 and classify_opt3_mod4(14) == 0
    s = opt_series(3, 5001, 4)
    assert all(s[n] == classify_opt3_mod4(n) for n in range(1, 5001))


def test_residue_structure_as_stated_has_counterexample():
    # 2 is twice a square but OPT_2(2) = 8 = 0 mod 8
    rep = verify_residue_structure(1, 1, 2000)
    assert rep.counterexample == (2, 0)
    assert opt_series(2, 9, 8)[8] == 0


@pytest.mark.parametrize("m,r", [(1, 1), (1, 3), (2, 1), (3, 1)])
def test_residue_structure_odd_squares(m, r):
    assert verify_residue_structure(m, r, 2000, variant="odd_square").passed


def test_eigenform_index_as_stated_has_counterexample():
    assert thm_mf1_index((3,), 1, 0) == 34
    rep = verify_thm_mf1((3,), 1, 300)
    assert rep.counterexample == (0, 4)


@pytest.mark.parametrize("primes,j", [((3,), 1), ((3,), 2), ((3,), 4), ((3, 5), 1), ((3, 5), 2), ((5,), 1)])
def test_eigenform_index_corrected(primes, j):
    assert verify_thm_mf1(primes, j, 100, corrected=True).passed


def test_eigenform_hypotheses():
    with pytest.raises(HypothesisError):
        verify_thm_mf1((3,), 3, 10)
    with pytest.raises(HypothesisError):
        verify_thm_mf1((17,), 1, 10)
