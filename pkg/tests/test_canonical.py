import numpy as np
import pytest

from finq.canonical import (
    CanonicalOscillator,
    canonical_level,
    canonical_levels,
    compare_spectra,
    truncated_canonical_ops,
)
from finq.errors import ValidationError
from finq.operators import commutator
from finq.oscillator import medium_levels


def test_ground_level():
    osc = CanonicalOscillator(1.0, 1.0, 1.0)
    assert canonical_level(0, osc) == 0.5
    assert canonical_levels(3, CanonicalOscillator.with_quantum(2.0)).tolist() == [1.0, 3.0, 5.0]


def test_invalid_level():
    with pytest.raises(ValidationError):
        canonical_level(-1, CanonicalOscillator(1.0, 1.0, 1.0))


def test_truncated_ccr_and_hamiltonian():
    osc = CanonicalOscillator(1.0, 2.0, 3.0)
    q, p, h = truncated_canonical_ops(8, osc)
    c = commutator(q, p)
    assert np.allclose(c[:-1, :-1], 1j * np.eye(7))
    assert c[-1, -1] == pytest.approx(-7j)
    built = p @ p / (2 * osc.mass) + 0.5 * osc.spring * q @ q
    assert np.allclose(built[:-1, :-1], h[:-1, :-1])


def test_comparison_converges_with_l():
    osc = CanonicalOscillator.with_quantum(1.0)
    devs = [compare_spectra(medium_levels(l, 1.0 / l), osc, 10).max for l in (100, 1000, 10000)]
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-3


def test_comparison_count_checked():
    with pytest.raises(ValidationError):
        compare_spectra(medium_levels(2, 1.0), CanonicalOscillator.with_quantum(1.0), 10)
