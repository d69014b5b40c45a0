from fractions import Fraction

import numpy as np
import pytest

from finq.errors import ResourceError, ValidationError
from finq.operators import hermitian_eigensystem
from finq.su2 import build_angular_momentum, half_integer, rep_report


def test_spin_half_is_half_pauli():
    rep = build_angular_momentum(0.5)
    assert np.allclose(rep.L1, 0.5 * np.array([[0, 1], [1, 0]]))
    assert np.allclose(rep.L2, 0.5 * np.array([[0, -1j], [1j, 0]]))
    assert np.allclose(rep.L3, 0.5 * np.diag([1, -1]))


def test_spin_one_casimir():
    rep = build_angular_momentum(1)
    assert np.allclose(rep.casimir, 2 * np.eye(3))


def test_ladder_entry_three_halves():
    rep = build_angular_momentum(Fraction(3, 2))
    assert rep.Lplus[0, 1] ** 2 == pytest.approx(3.0)


def test_spin_zero_is_trivial():
    rep = build_angular_momentum(0)
    assert rep.dim == 1
    assert np.all(rep.L1 == 0)


@pytest.mark.parametrize("bad", [0.3, -1, 1.25, float("nan")])
def test_invalid_l(bad):
    with pytest.raises(ValidationError):
        half_integer(bad)


def test_dimension_cap():
    with pytest.raises(ResourceError):
        build_angular_momentum(10, max_dimension=11)


@pytest.mark.parametrize("l", [0.5, 1, 2.5, 7])
def test_l3_eigenvalues_and_hermiticity(l):
    rep = build_angular_momentum(l)
    for m in rep.components():
        assert np.allclose(m, m.conj().T)
    spec = hermitian_eigensystem(rep.L3)
    assert np.allclose(spec.eigenvalues, np.arange(-l, l + 1))
    assert np.allclose(rep.m_values, np.arange(l, -l - 1, -1))


def test_l1_l2_spectra_match_l3():
    rep = build_angular_momentum(3)
    for m in (rep.L1, rep.L2):
        assert np.allclose(np.linalg.eigvalsh(m), np.arange(-3, 4), atol=1e-12)


def test_basis_state():
    rep = build_angular_momentum(2)
    v = rep.basis_state(1)
    assert np.allclose(rep.L3 @ v, v)
    with pytest.raises(ValidationError):
        rep.basis_state(3)


def test_raising_operator_action():
    rep = build_angular_momentum(2)
    v = rep.basis_state(0)
    up = rep.Lplus @ v
    assert np.allclose(up, np.sqrt(6) * rep.basis_state(1))


@pytest.mark.parametrize("l", [0.5, 1, 5, 12.5, 40])
def test_rep_report_small(l):
    r = rep_report(build_angular_momentum(l))
    assert r.commutator <= 1e-12 * (1 + l)
    assert r.casimir <= 1e-12 * max(1, l * (l + 1))
