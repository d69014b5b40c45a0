import numpy as np
import pytest

from finq.clifford import (
    anticommutation_residual,
    build_clifford,
    casimir_residual,
    clifford_from_signature,
    commutant_dimension,
    dynamical_rep,
    generator_digest,
    hermiticity_residual,
    so31_killing_rank,
    stationary_rep,
)
from finq.dynamics import time_spectrum_profile
from finq.errors import ResourceError, ValidationError
from finq.operators import commutator
from finq.oscillator import derive_constants


def test_base_case():
    cl = build_clifford(2, 0)
    assert cl.dim == 2
    assert np.allclose(cl[0] @ cl[1] + cl[1] @ cl[0], 0)
    assert hermiticity_residual(cl) == 0


@pytest.mark.parametrize("p,q,dim", [(2, 0, 2), (3, 1, 4), (6, 2, 16), (4, 4, 16)])
def test_anticommutation_exact(p, q, dim):
    cl = build_clifford(p, q)
    assert cl.dim == dim
    assert anticommutation_residual(cl) == 0.0
    assert hermiticity_residual(cl) == 0.0


def test_first_generator_of_31_squares_to_minus_one():
    cl = build_clifford(3, 1)
    assert np.array_equal(cl[0] @ cl[0], -np.eye(4))


def test_odd_total_rejected():
    with pytest.raises(ValidationError):
        build_clifford(3, 0)


def test_size_cap():
    with pytest.raises(ResourceError):
        build_clifford(14, 0)
    assert build_clifford(14, 0, allow_large=True).dim == 128


def test_explicit_signature():
    cl = clifford_from_signature((1, -1))
    assert np.array_equal(cl[1] @ cl[1], -np.eye(2))


def test_digest_stable():
    assert generator_digest(build_clifford(3, 1)) == generator_digest(build_clifford(3, 1))
    assert generator_digest(build_clifford(3, 1)) != generator_digest(build_clifford(4, 0))


def test_stationary_identity():
    qc = derive_constants(1.0, 2, ratio=3.0)
    st = stationary_rep(2, qc)
    assert st.residuals["qp_identity"] == 0.0
    assert np.array_equal(commutator(st.q, st.p), 2 * qc.Q * qc.Qp * st.r / qc.Qr)
    eff = st.effective_constants
    assert eff["hbar"] == pytest.approx(2 * qc.hbar)
    assert eff["hbar1"] == pytest.approx(2 * qc.hbar1)
    assert eff["hbar2"] == pytest.approx(2 * qc.hbar2)
    assert st.residuals["anti_hermitian"] == 0.0
    assert st.residuals["jacobi"] < 1e-14


def test_stationary_needs_even_n():
    with pytest.raises(ValidationError):
        stationary_rep(3, derive_constants(1.0, 1))


@pytest.mark.parametrize("N", [1, 2])
def test_dynamical_closure(N):
    rep = dynamical_rep(N)
    assert rep.normalization == pytest.approx(2.0)
    for key in ("spinor_so31", "algebra_so31", "spinor_closure", "algebra_closure"):
        assert rep.residuals[key] <= 1e-12
    assert rep.residuals["cross_replica"] == 0.0
    assert casimir_residual(rep.spinor) <= 1e-12
    assert so31_killing_rank(rep) == 6


def test_dynamical_disjoint_pairs_commute():
    rep = dynamical_rep(2, with_algebra=False)
    assert np.all(commutator(rep.spinor["12"], rep.spinor["34"]) == 0)


def test_commutant_grows_with_replicas():
    assert commutant_dimension(dynamical_rep(1, with_algebra=False).spinor) == 2
    assert commutant_dimension(dynamical_rep(2, with_algebra=False).spinor) > 2


def test_time_profile_n1():
    prof = time_spectrum_profile(dynamical_rep(1).algebra["13"])
    assert prof.multiplicities.tolist() == [4, 8, 4]
    assert np.allclose(prof.eigenvalues, [-2, 0, 2])


def test_time_profile_n2_peaks_at_zero():
    prof = time_spectrum_profile(dynamical_rep(2).algebra["13"])
    m = prof.multiplicities
    assert m.sum() == 256
    centre = int(np.argmax(m))
    assert prof.eigenvalues[centre] == 0.0
    assert np.all(np.diff(m[: centre + 1]) > 0) and np.all(np.diff(m[centre:]) < 0)


def test_algebra_cap():
    with pytest.raises(ResourceError):
        dynamical_rep(3)
