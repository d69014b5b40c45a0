"""The canonical (infinite-dimensional) oscillator used as the singular-limit reference."""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class CanonicalOscillator:
    hbar: float
    mass: float
    spring: float

    def __post_init__(self):
        for name in ("hbar", "mass", "spring"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValidationError(f"{name} must be positive, got {v!r}")

    @property
    def omega(self):
        return math.sqrt(self.spring / self.mass)

    @property
    def hbar_omega(self):
        return self.hbar * self.omega

    @classmethod
    def with_quantum(cls, hbar_omega, hbar=1.0, mass=1.0):
        """Oscillator whose level spacing is ``hbar_omega``."""
        omega = hbar_omega / hbar
        return cls(hbar, mass, mass * omega * omega)


def canonical_level(n, osc):
    """``hbar omega (n + 1/2)``."""
    if int(n) != n or n < 0:
        raise ValidationError(f"level index must be a non-negative integer, got {n}")
    return osc.hbar_omega * (n + 0.5)


def canonical_levels(count, osc):
    return osc.hbar_omega * (np.arange(count) + 0.5)


def truncated_canonical_ops(dim, osc):
    """Position, momentum and Hamiltonian in the lowest ``dim`` number states.

    ``[q, p] = i hbar`` holds except in the last diagonal entry, where the
    truncation leaves ``-i hbar (dim - 1)``.
    """
    if int(dim) != dim or dim < 2:
        raise ValidationError(f"dim must be an integer >= 2, got {dim}")
    dim = int(dim)
    a = np.diag(np.sqrt(np.arange(1, dim)), 1).astype(np.complex128)
    ad = a.conj().T
    x0 = math.sqrt(osc.hbar / (2 * osc.mass * osc.omega))
    p0 = math.sqrt(osc.hbar * osc.mass * osc.omega / 2)
    q = x0 * (a + ad)
    p = 1j * p0 * (ad - a)
    h = np.diag(osc.hbar_omega * (np.arange(dim) + 0.5)).astype(np.complex128)
    return q, p, h


@dataclass(frozen=True)
class SpectrumComparison:
    n: np.ndarray
    finite: np.ndarray
    canonical: np.ndarray
    rel_dev: np.ndarray

    @property
    def max(self):
        return float(self.rel_dev.max())

    @property
    def mean(self):
        return float(self.rel_dev.mean())

    def rows(self):
        return list(zip(self.n.tolist(), self.finite.tolist(), self.canonical.tolist(), self.rel_dev.tolist()))


def compare_spectra(finite, osc, count):
    """Pair the lowest ``count`` distinct finite levels with ``hbar omega (n + 1/2)``.

    Degenerate finite levels are counted once. ``rel_dev`` is
    ``|E_finite - E_canonical| / E_canonical``.
    """
    levels = np.asarray(finite.levels, dtype=float)
    if int(count) != count or not 1 <= count <= levels.size:
        raise ValidationError(f"count must be in 1..{levels.size}, got {count}")
    count = int(count)
    fin = levels[:count]
    can = canonical_levels(count, osc)
    return SpectrumComparison(np.arange(count), fin, can, np.abs(fin - can) / can)
