"""Dense complex-matrix substrate.

Everything else in the package computes through these helpers: commutators,
Hermitian eigensystems with deterministic ordering, expectation values.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._limits import check_dim, max_dim
from .errors import ShapeError, ValidationError

#: Eigensolves above this dimension need ``allow_large=True``.
EIGEN_DIM_CAP = 2048
#: Hard ceiling reachable with ``allow_large=True`` (Clifford N=3 algebra).
EIGEN_DIM_CAP_LARGE = 4096

HERMITIAN_RTOL = 1e-10
NORM_TOL = 1e-10
# component magnitudes below this fraction of the largest are treated as zero
# when choosing the phase-fixing entry
_PHASE_ZERO = 1e-10
_LEX_DECIMALS = 10


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite square complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} has non-finite entries")
    return m


def commutator(a, b):
    """Return ``a @ b - b @ a``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeError(f"commutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def anticommutator(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeError(f"anticommutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b + b @ a


def max_abs(a):
    """Max-norm of an array (0.0 for empty input)."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_defect(h):
    """``max|h - h^dagger|`` relative to ``max|h|`` (0 for the zero matrix)."""
    h = np.asarray(h)
    scale = max_abs(h)
    if scale == 0.0:
        return 0.0
    return max_abs(h - h.conj().T) / scale


def is_hermitian(h, rtol=HERMITIAN_RTOL):
    return hermiticity_defect(h) <= rtol


def fix_phase(v):
    """Rotate ``v`` so that its first non-negligible component is real positive."""
    v = np.asarray(v, dtype=np.complex128)
    mags = np.abs(v)
    top = mags.max() if v.size else 0.0
    if top == 0.0:
        return v.copy()
    idx = int(np.argmax(mags > _PHASE_ZERO * top))
    return v * (np.conj(v[idx]) / mags[idx])


def _lex_key(v):
    r = np.round(v.real, _LEX_DECIMALS) + 0.0
    i = np.round(v.imag, _LEX_DECIMALS) + 0.0
    return tuple(np.column_stack([r, i]).ravel().tolist())


def group_levels(values, tol):
    """Group an ascending array into runs whose spread from the run start is <= tol.

    Returns ``(levels, multiplicities, labels)`` where ``labels[i]`` is the group of
    ``values[i]`` and each level is the mean of its group.
    """
    values = np.asarray(values, dtype=float)
    labels = np.empty(values.size, dtype=int)
    starts = []
    g = -1
    for i, x in enumerate(values):
        if g < 0 or x - values[starts[-1]] > tol:
            g += 1
            starts.append(i)
        labels[i] = g
    counts = np.bincount(labels, minlength=g + 1) if values.size else np.zeros(0, int)
    levels = np.array([values[labels == k].mean() for k in range(g + 1)])
    return levels, counts.astype(int), labels


def default_degeneracy_tol(eigenvalues):
    scale = max_abs(eigenvalues)
    return 1e-8 * scale


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues with grouped degeneracies.

    ``eigenvectors`` is ``None`` when the spectrum came from a closed form.
    """

    eigenvalues: np.ndarray
    levels: np.ndarray
    multiplicities: np.ndarray
    labels: np.ndarray
    degeneracy_tol: float
    eigenvectors: Optional[np.ndarray] = None

    @property
    def dim(self):
        return int(self.eigenvalues.size)

    def level_multiplicity(self, index):
        """Multiplicity of the distinct level containing eigenvalue ``index``."""
        return int(self.multiplicities[self.labels[index]])

    @classmethod
    def from_values(cls, values, degeneracy_tol=None):
        """Build an eigenvector-free spectrum from (possibly repeated) values."""
        vals = np.sort(np.asarray(values, dtype=float))
        tol = default_degeneracy_tol(vals) if degeneracy_tol is None else float(degeneracy_tol)
        levels, mult, labels = group_levels(vals, tol)
        return cls(vals, levels, mult, labels, tol, None)

    @classmethod
    def from_levels(cls, levels, multiplicities, degeneracy_tol=0.0):
        levels = np.asarray(levels, dtype=float)
        mult = np.asarray(multiplicities, dtype=int)
        if levels.shape != mult.shape or np.any(mult < 1):
            raise ValidationError("levels and positive multiplicities must align")
        order = np.argsort(levels, kind="stable")
        levels, mult = levels[order], mult[order]
        vals = np.repeat(levels, mult)
        labels = np.repeat(np.arange(levels.size), mult)
        return cls(vals, levels, mult, labels, float(degeneracy_tol), None)


def hermitian_eigensystem(h, degeneracy_tol=None, allow_large=False):
    """Exact dense diagonalization of a Hermitian matrix.

    Eigenvalues come out ascending. Each eigenvector is phase-fixed (first
    non-negligible component real positive); exactly tied eigenvalues are
    ordered lexicographically by their eigenvector entries, so repeated calls
    give identical output.

    ``degeneracy_tol`` defaults to ``1e-8 * max|eigenvalue|``.
    """
    m = as_matrix(h, "hamiltonian")
    cap = max_dim(EIGEN_DIM_CAP_LARGE if allow_large else EIGEN_DIM_CAP)
    check_dim(m.shape[0], cap, "eigensolve")
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_RTOL:
        raise ValidationError(f"matrix is not Hermitian (relative defect {defect:.3e})")
    m = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(m)
    v = np.column_stack([fix_phase(v[:, k]) for k in range(v.shape[1])]) if w.size else v
    order = np.asarray(sorted(range(w.size), key=lambda k: (w[k], _lex_key(v[:, k]))), dtype=int)
    w, v = w[order], v[:, order]
    tol = default_degeneracy_tol(w) if degeneracy_tol is None else float(degeneracy_tol)
    levels, mult, labels = group_levels(w, tol)
    return Spectrum(w, levels, mult, labels, tol, v)


def normalize(state):
    psi = np.asarray(state, dtype=np.complex128)
    return psi / np.linalg.norm(psi)


def expectation_and_variance(op, state):
    """Return ``(<op>, <op^2> - <op>^2)`` for a normalized state.

    The variance is evaluated as ``||(op - <op>) psi||^2`` which is
    non-negative by construction.
    """
    a = as_matrix(op, "operator")
    psi = np.asarray(state, dtype=np.complex128).ravel()
    if psi.size != a.shape[0]:
        raise ShapeError(f"state has length {psi.size}, operator dimension {a.shape[0]}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValidationError(f"state is not normalized (norm {norm!r})")
    a_psi = a @ psi
    mean = np.vdot(psi, a_psi)
    scale = max(1.0, max_abs(a))
    if abs(mean.imag) > 1e-10 * scale:
        raise ValidationError(f"expectation has imaginary part {mean.imag:.3e}; operator not Hermitian?")
    mu = float(mean.real)
    resid = a_psi - mu * psi
    var = float(np.vdot(resid, resid).real)
    return mu, max(var, 0.0)


def reconstruction_error(spectrum, h):
    """``||V diag(w) V^dagger - h||_F / ||h||_F`` for a spectrum with eigenvectors."""
    v = spectrum.eigenvectors
    rec = (v * spectrum.eigenvalues) @ v.conj().T
    h = np.asarray(h)
    denom = np.linalg.norm(h)
    return float(np.linalg.norm(rec - h) / (denom if denom else 1.0))
