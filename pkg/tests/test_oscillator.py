import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finq.errors import ValidationError
from finq.operators import hermitian_eigensystem
from finq.oscillator import (
    OscillatorModel,
    OscillatorParams,
    QuantumConstants,
    Regime,
    classify_regime,
    compare_perturbative,
    derive_constants,
    hard_spectrum_pt,
    hard_zero_point_limit,
    medium_levels,
    medium_spectrum,
    oscillator_hamiltonian,
    partition_function,
    soft_spectrum_pt,
    spacing_deviation_profile,
    uncertainty_report,
    variational_ground_bound,
)
from finq.su2 import build_angular_momentum


def test_quantum_constants_derived():
    qc = derive_constants(2.0, 5, ratio=4.0)
    assert qc.Qr == pytest.approx(0.2)
    assert qc.l == 5
    assert qc.Q * qc.Qp / qc.Qr == pytest.approx(qc.hbar)


def test_quantum_constants_reject_non_half_integer():
    with pytest.raises(ValidationError):
        QuantumConstants(1.0, 0.3, 0.3)


def test_params_roundtrip():
    qc = derive_constants(1.0, 4)
    params = OscillatorParams.from_kappa2(qc, 2.5, mass=3.0)
    assert params.kappa2(qc) == pytest.approx(2.5)


@pytest.mark.parametrize("l", [0.5, 1, 3.5, 10])
def test_medium_closed_form_matches_exact(l):
    rep = build_angular_momentum(l)
    exact = hermitian_eigensystem(oscillator_hamiltonian(rep, 1.3, 1.0)).eigenvalues
    closed = np.sort([medium_spectrum(n, l, 1.3) for n in range(rep.dim)])
    assert np.allclose(exact, closed, rtol=1e-12, atol=1e-12)


def test_medium_ground_energy_half_kl():
    assert medium_spectrum(0, 10, 1.0) == 5.0
    assert medium_spectrum(10, 10, 1.0) == pytest.approx(55.0)


def test_medium_level_index_validation():
    with pytest.raises(ValidationError):
        medium_spectrum(21, 10, 1.0)


def test_medium_levels_multiplicities():
    s = medium_levels(3, 1.0)
    assert s.multiplicities.tolist() == [2, 2, 2, 1]
    assert s.dim == 7
    s = medium_levels(2.5, 1.0)
    assert s.multiplicities.tolist() == [2, 2, 2]


def test_single_regime_examples():
    assert classify_regime(0.01, 10).regime is Regime.SOFT
    assert classify_regime(1.0, 10).regime is Regime.MEDIUM
    assert classify_regime(100.0, 10).regime is Regime.HARD
    assert str(classify_regime(0.1, 10)) == "Medium"


def test_soft_pt_m_zero_value():
    assert soft_spectrum_pt(0, 20, 1.0, 1e-3) == pytest.approx(0.25 * 1e-3 * 420)


def test_soft_pt_guards():
    with pytest.raises(ValidationError):
        soft_spectrum_pt(0, 2, 1.0, 2.0)
    with pytest.warns(RuntimeWarning):
        soft_spectrum_pt(0, 2, 1.0, 0.5)


def test_hard_pt_is_mapped_soft_pt():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert hard_spectrum_pt(3, 20, 1e-3, 1e3) == pytest.approx(soft_spectrum_pt(3, 20, 1.0, 1e-3))
    with pytest.raises(ValidationError):
        hard_spectrum_pt(0, 2, 1.0, 0.5)


def test_hard_zero_point_limit_approached():
    l = 6
    exact = np.linalg.eigvalsh(oscillator_hamiltonian(build_angular_momentum(l), 1.0 / 1e6, 1e6))[0]
    assert exact == pytest.approx(hard_zero_point_limit(l, 1e-6), rel=1e-4)


def test_soft_comparison_small_error():
    cmp = compare_perturbative(20, 1.0, 1e-3)
    assert cmp.relative_error < 1e-4
    # the m = +-1 doublet splits at first order, which raw pairing cannot absorb
    assert cmp.raw_max_abs_error > cmp.max_abs_error


def test_comparison_rejects_unknown_regime():
    with pytest.raises(ValidationError):
        compare_perturbative(2, 1.0, 1e-3, regime="medium")


def test_variational_bound_equality_at_medium():
    l = 7
    e0 = np.linalg.eigvalsh(oscillator_hamiltonian(build_angular_momentum(l), 1.0, 1.0))[0]
    assert e0 == pytest.approx(variational_ground_bound(l, 1.0, 1.0), abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(
    st.integers(min_value=1, max_value=40).map(lambda k: k / 2),
    st.floats(min_value=0.1, max_value=10.0),
)
def test_variational_bound_holds(l, kappa2):
    e0 = np.linalg.eigvalsh(oscillator_hamiltonian(build_angular_momentum(l), 1.0, kappa2))[0]
    assert e0 <= variational_ground_bound(l, 1.0, kappa2) + 1e-10


def test_uncertainty_extremal_state():
    model = OscillatorModel.from_kappa2(10, 1.0)
    rep = uncertainty_report(model.rep, model.qc, model.rep.basis_state(10))
    assert rep.ratio == pytest.approx(1.0, abs=1e-12)
    assert rep.product >= rep.bound - 1e-15


def test_uncertainty_rejects_mismatched_l():
    model = OscillatorModel.from_kappa2(10, 1.0)
    other = build_angular_momentum(3)
    with pytest.raises(ValidationError):
        uncertainty_report(other, model.qc, other.basis_state(3))


def test_model_K_and_kappa():
    model = OscillatorModel.from_kappa2(8, 0.5, K=2.0)
    assert model.K == pytest.approx(2.0)
    assert model.kappa2 == pytest.approx(0.5)
    assert model.hbar_omega == pytest.approx(math.sqrt(0.5) * 2.0 * 8)
    assert model.regime().regime is Regime.MEDIUM


def test_spacing_profile_closed_form():
    prof = spacing_deviation_profile(100, 0.01, 5)
    assert prof.shape == (5, 3)
    assert np.allclose(prof[:, 1], 0.01 * (100 - np.arange(5)) * 1.0 - 0.005, rtol=1e-12)


def test_partition_function_two_level():
    from finq.operators import Spectrum

    s = Spectrum.from_levels([0.0, 1.0], [1, 1])
    th = partition_function(s, 2.0)
    assert th.Z == pytest.approx(1 + math.exp(-2))
    assert th.mean_energy == pytest.approx(math.exp(-2) / (1 + math.exp(-2)))


def test_partition_function_large_beta_stable():
    th = partition_function(medium_levels(50, 0.02), 1e4)
    assert math.isfinite(th.log_z)
    assert th.mean_energy == pytest.approx(0.5)


def test_medium_thermal_close_to_canonical():
    l, hw, beta = 50, 1.0, 1.0
    th = partition_function(medium_levels(l, hw / l), beta)
    canonical = hw * (0.5 + 1.0 / math.expm1(beta * hw))
    assert th.mean_energy == pytest.approx(canonical, rel=0.02)


@pytest.mark.parametrize("l,K", [(1, 1.0), (12.5, 0.3), (200, 2.0)])
def test_K_l_equals_hbar_omega_at_medium(l, K):
    model = OscillatorModel.from_kappa2(l, 1.0, K=K)
    assert model.hbar_omega == pytest.approx(model.K * model.l, rel=1e-12)
