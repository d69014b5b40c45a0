import numpy as np
import pytest

from finq.dynamics import (
    PRINTED_TABLE,
    QT_TYPE_PAIRS,
    commutator_table,
    defining_rep_so31,
    dynamical_constraint,
    induced_tensor,
    jacobi_constraint_chain,
    make_ledger,
    physical_generators,
    random_ledger,
    singular_ledger,
    singular_limit_deviation,
    so31_bracket,
    so31_tensor,
    time_spectrum_profile,
    unit_ledger,
)
from finq.errors import NumericalError, ValidationError
from finq.lie import jacobi_residual, killing_report
from finq.operators import commutator


def test_ledger_examples():
    assert unit_ledger().hbar == 1.0
    ok = make_ledger(1, 1, 2, 2, 1, 1)
    assert ok.hbar == 2.0
    with pytest.raises(ValidationError, match="residual"):
        make_ledger(1, 1, 1, 2, 1, 1)
    with pytest.raises(ValidationError):
        make_ledger(1, 1, 1, 1, 1, 0)


def test_jacobi_chain_examples():
    assert jacobi_constraint_chain(unit_ledger()).relative_residual == 0.0
    chain = jacobi_constraint_chain(make_ledger(1, 1, 2, 2, 1, 1))
    assert chain.hbar == 2.0 and chain.rhs == 4.0


def test_jacobi_chain_random():
    rng = np.random.default_rng(11)
    for _ in range(50):
        assert jacobi_constraint_chain(random_ledger(rng)).relative_residual < 1e-12


def test_defining_rep_typical_cases():
    L = defining_rep_so31()
    assert np.all(commutator(L["13"], L["13"]) == 0)
    assert np.all(commutator(L["24"], L["13"]) == 0)
    assert np.allclose(commutator(L["12"], L["23"]), L["13"])
    c = commutator(L["13"], L["14"])
    assert np.allclose(c, L["34"] * c[2, 3] / L["34"][2, 3])


def test_bracket_formula_matches_matrices():
    L = defining_rep_so31()
    for a in L:
        for b in L:
            expected = sum((v * L[k] for k, v in so31_bracket(a, b).items()), np.zeros((4, 4)))
            assert np.allclose(commutator(L[a], L[b]), expected)


def test_so31_killing_rank_six():
    rep = killing_report(so31_tensor())
    assert rep.rank == 6
    assert rep.signature == (3, 3, 0)


def test_unit_ledger_table():
    table = commutator_table(physical_generators(unit_ledger()), unit_ledger())
    assert set(table.zero_pairs) == {("E", "q"), ("b", "r"), ("p", "t")}
    assert table.max_residual < 1e-13
    assert abs(table.normalization) == pytest.approx(1.0)
    assert len(table.rows) == 15


def test_rows_cover_all_pairs():
    pairs = {frozenset(r[:2]) for r in PRINTED_TABLE}
    assert len(pairs) == 15


def test_table_pattern_random_ledgers():
    rng = np.random.default_rng(5)
    norms = set()
    for _ in range(10):
        ledger = random_ledger(rng)
        table = commutator_table(physical_generators(ledger), ledger)
        ratios = [abs(r.ratio) for r in table.rows if r.target is not None]
        assert np.allclose(ratios, abs(table.normalization), rtol=1e-10)
        norms.add(round(table.normalization, 12))
    assert len(norms) == 1


def test_sign_mismatches_are_listed():
    table = commutator_table(physical_generators(unit_ledger()), unit_ledger())
    mismatched = {r.pair for r in table.rows if not r.sign_match}
    assert mismatched == set(table.sign_mismatches)


def test_table_rejects_non_closing_set():
    m = physical_generators(unit_ledger())
    m = dict(m)
    m["b"] = np.diag([1.0, 2.0, 3.0, 4.0])
    with pytest.raises(NumericalError):
        commutator_table(m, unit_ledger())


def test_induced_tensor_jacobi():
    t, res = induced_tensor(physical_generators(random_ledger(np.random.default_rng(1))))
    assert res < 1e-12
    assert jacobi_residual(t) <= 1e-12


def test_singular_sequence_linear_in_delta():
    pts = singular_limit_deviation([singular_ledger(d) for d in (1.0, 0.5, 0.25)])
    for a, b in zip(pts, pts[1:]):
        for v, w in QT_TYPE_PAIRS:
            key = f"{v},{w}"
            if a.deviations[key]:
                assert b.deviations[key] / a.deviations[key] == pytest.approx(0.5)
    assert all(p.deviations["q,E"] == 0 for p in pts)
    assert all(p.tE_defect < 1e-12 for p in pts)


def test_dynamical_constraint_examples():
    full = dynamical_constraint(1, 1, 1)
    assert full.operator.shape == (4, 4)
    assert dynamical_constraint(1, 1, 0).probe_norm == 0.0
    L = defining_rep_so31()
    probe = dynamical_constraint(1, 0, 1).probe
    assert np.allclose(probe, commutator(L["24"] @ L["24"], L["14"]))
    with pytest.raises(ValidationError):
        dynamical_constraint(-1, 1, 1)


def test_time_profile_zero_operator():
    prof = time_spectrum_profile(np.zeros((3, 3)))
    assert prof.eigenvalues.tolist() == [0.0] and prof.multiplicities.tolist() == [3]


def test_time_profile_antihermitian():
    prof = time_spectrum_profile(defining_rep_so31()["23"])
    assert prof.character == "imaginary"
    assert prof.multiplicities.sum() == 4


def test_time_profile_defective():
    with pytest.raises(NumericalError):
        time_spectrum_profile(np.array([[1.0, 1.0], [0.0, 1.0]]))
