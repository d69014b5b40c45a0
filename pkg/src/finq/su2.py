"""Spin-l angular-momentum matrices in the L3 eigenbasis (m = l, l-1, ..., -l)."""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._limits import check_dim, max_dim
from .errors import ValidationError
from .operators import commutator, max_abs

SU2_DIM_CAP = 20001


def half_integer(l, name="l"):
    """Validate that ``2*l`` is a non-negative integer and return ``l`` as a float."""
    if isinstance(l, Fraction):
        two_l = 2 * l
        if two_l.denominator != 1:
            raise ValidationError(f"{name}={l} is not a half-integer")
        two_l = int(two_l)
    else:
        x = float(l)
        if not np.isfinite(x):
            raise ValidationError(f"{name}={l!r} is not a half-integer")
        two_l = int(round(2 * x))
        if abs(2 * x - two_l) > 1e-9:
            raise ValidationError(f"{name}={l!r} is not a half-integer")
    if two_l < 0:
        raise ValidationError(f"{name} must be non-negative, got {l}")
    return two_l / 2


@dataclass(frozen=True)
class AngularMomentumRep:
    l: float
    L1: np.ndarray
    L2: np.ndarray
    L3: np.ndarray

    @property
    def dim(self):
        return self.L3.shape[0]

    @property
    def m_values(self):
        return np.real(np.diag(self.L3)).copy()

    @property
    def Lplus(self):
        return self.L1 + 1j * self.L2

    @property
    def Lminus(self):
        return self.L1 - 1j * self.L2

    @property
    def casimir(self):
        return self.L1 @ self.L1 + self.L2 @ self.L2 + self.L3 @ self.L3

    def components(self):
        return (self.L1, self.L2, self.L3)

    def basis_state(self, m):
        """Unit vector ``|L3 = m>``."""
        idx = int(round(self.l - m))
        if abs((self.l - m) - idx) > 1e-9 or not 0 <= idx < self.dim:
            raise ValidationError(f"m={m} is not a valid L3 eigenvalue for l={self.l}")
        v = np.zeros(self.dim, dtype=np.complex128)
        v[idx] = 1.0
        return v


def ladder_coefficients(l):
    """``sqrt(l(l+1) - m(m+1))`` for m = l-1, ..., -l (the superdiagonal of L+)."""
    m = l - np.arange(1, int(round(2 * l)) + 1)
    return np.sqrt(l * (l + 1) - m * (m + 1))


def build_angular_momentum(l, max_dimension=None):
    """Build the (2l+1)-dimensional Hermitian L1, L2, L3 with [L1, L2] = i L3.

    L+ carries ``sqrt(l(l+1) - m(m+1))`` on the superdiagonal so that
    ``L+[0, 1]`` raises m = l-1 to m = l. The dimension cap defaults to 20001
    and can be overridden with ``max_dimension`` or ``FINQ_MAX_DIM``.
    """
    l = half_integer(l)
    dim = int(round(2 * l)) + 1
    cap = max_dimension if max_dimension is not None else max_dim(SU2_DIM_CAP)
    check_dim(dim, cap, "angular momentum")
    m = l - np.arange(dim)
    lp = np.zeros((dim, dim))
    if dim > 1:
        lp[np.arange(dim - 1), np.arange(1, dim)] = ladder_coefficients(l)
    L1 = (0.5 * (lp + lp.T)).astype(np.complex128)
    L2 = -0.5j * (lp - lp.T)
    L3 = np.diag(m).astype(np.complex128)
    return AngularMomentumRep(l, L1, L2, L3)


@dataclass(frozen=True)
class RepResidual:
    commutator: float
    casimir: float
    casimir_offdiag: float


def rep_report(rep):
    """Max-norm residuals of ``[Li, Lj] = i eps_ijk Lk`` and of the Casimir."""
    L1, L2, L3 = rep.components()
    comm = max(
        max_abs(commutator(L1, L2) - 1j * L3),
        max_abs(commutator(L2, L3) - 1j * L1),
        max_abs(commutator(L3, L1) - 1j * L2),
    )
    c = rep.casimir
    target = rep.l * (rep.l + 1)
    cas = max_abs(c - target * np.eye(rep.dim))
    off = max_abs(c - np.diag(np.diag(c)))
    return RepResidual(comm, cas, off)
