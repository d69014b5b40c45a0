"""Structure tensors, the Jacobi law, Killing forms and algebra contractions.

A structure tensor stores ``c[k, i, j]`` with ``[e_i, e_j] = sum_k c[k, i, j] e_k``.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NumericalError, ShapeError, ValidationError
from .operators import commutator


@dataclass(frozen=True)
class StructureTensor:
    c: np.ndarray
    labels: tuple

    def __post_init__(self):
        c = np.asarray(self.c)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise ShapeError(f"structure tensor must be (d, d, d), got {c.shape}")
        if len(self.labels) != c.shape[0]:
            raise ShapeError("one label per basis element required")
        # antisymmetrize exactly
        if np.iscomplexobj(c) and np.max(np.abs(c.imag), initial=0.0) == 0.0:
            c = c.real
        c = 0.5 * (c - np.swapaxes(c, 1, 2))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self):
        return self.c.shape[0]

    @classmethod
    def from_brackets(cls, labels, brackets):
        """Build from ``{(a, b): {target: coeff, ...}}`` keyed by labels.

        Each bracket is entered once; ``[b, a]`` follows by antisymmetry.
        """
        labels = tuple(labels)
        index = {name: i for i, name in enumerate(labels)}
        d = len(labels)
        c = np.zeros((d, d, d))
        for (a, b), image in brackets.items():
            i, j = index[a], index[b]
            if i == j:
                raise ValidationError(f"[{a}, {a}] is zero by antisymmetry")
            for target, coeff in image.items():
                k = index[target]
                c[k, i, j] += coeff
                c[k, j, i] -= coeff
        return cls(c, labels)

    def bracket(self, x, y):
        """Bracket of two coordinate vectors."""
        return np.einsum("kij,i,j->k", self.c, x, y)

    def adjoint(self, i):
        """Matrix of ``ad e_i``: column b holds the coordinates of ``[e_i, e_b]``."""
        return self.c[:, i, :]

    def rescaled(self, scales):
        """Tensor in the basis ``e'_i = s_i e_i``: ``c'^k_ij = s_i s_j / s_k c^k_ij``."""
        s = np.asarray(scales, dtype=float)
        if s.shape != (self.dim,) or np.any(s == 0):
            raise ValidationError("need one non-zero scale per basis element")
        c = self.c * s[None, :, None] * s[None, None, :] / s[:, None, None]
        return StructureTensor(c, self.labels)


def jacobi_residual(t):
    """``max |sum_a c^a_ij c^m_ak + c^a_jk c^m_ai + c^a_ki c^m_aj|`` over i, j, k, m."""
    c = t.c
    term = np.einsum("aij,mak->mijk", c, c)
    total = term + np.transpose(term, (0, 2, 3, 1)) + np.transpose(term, (0, 3, 1, 2))
    return float(np.max(np.abs(total), initial=0.0))


def killing_matrix(t):
    """``B_ij = sum_{a,b} c^a_ib c^b_ja = tr(ad e_i ad e_j)``."""
    return np.einsum("aib,bja->ij", t.c, t.c)


@dataclass(frozen=True)
class KillingReport:
    B: np.ndarray
    singular_values: np.ndarray
    rank: int
    signature: tuple  # (positive, negative, zero)
    semisimple: bool


def killing_report(t, rank_rtol=1e-10):
    """Killing form, its rank and signature, and the Cartan semisimplicity verdict."""
    scale = max(1.0, float(np.max(np.abs(t.c), initial=0.0)) ** 2)
    res = jacobi_residual(t)
    if res > 1e-10 * scale:
        raise ValidationError(f"structure tensor violates the Jacobi law (residual {res:.3e})")
    B = killing_matrix(t)
    if np.iscomplexobj(B) and np.max(np.abs(B.imag), initial=0.0) <= 1e-12 * max(1.0, np.max(np.abs(B))):
        B = B.real
    sv = np.linalg.svd(B, compute_uv=False)
    top = float(sv.max()) if sv.size else 0.0
    tol = rank_rtol * top
    rank = int(np.sum(sv > tol)) if top > 0 else 0
    if np.iscomplexobj(B):
        signature = (0, 0, t.dim - rank)
    else:
        ev = np.linalg.eigvalsh(0.5 * (B + B.T))
        signature = (int(np.sum(ev > tol)), int(np.sum(ev < -tol)), int(np.sum(np.abs(ev) <= tol))) if top > 0 else (0, 0, t.dim)
    return KillingReport(B, sv, rank, signature, rank == t.dim)


def so3_tensor(scale=1.0):
    """``[e_i, e_j] = scale * eps_ijk e_k``."""
    return StructureTensor.from_brackets(
        ("e1", "e2", "e3"),
        {("e1", "e2"): {"e3": scale}, ("e2", "e3"): {"e1": scale}, ("e3", "e1"): {"e2": scale}},
    )


def heisenberg_tensor(hbar=1.0):
    """Three-dimensional Heisenberg algebra: only ``[q, p] = hbar z``."""
    return StructureTensor.from_brackets(("q", "p", "z"), {("q", "p"): {"z": hbar}})


def flexed_oscillator_algebra(hbar, hbar1, hbar2, eps):
    """The oscillator algebra on (q, p, r) with its non-canonical brackets scaled by eps.

    ``[q, p] = hbar r``, ``[r, q] = eps hbar1 p``, ``[p, r] = eps hbar2 q``.
    eps = 1 is so(3) (for positive constants); eps = 0 is the Heisenberg algebra.
    """
    for name, v in (("hbar", hbar), ("hbar1", hbar1), ("hbar2", hbar2)):
        if not v > 0:
            raise ValidationError(f"{name} must be positive")
    if not 0.0 <= eps <= 1.0:
        raise ValidationError(f"eps must lie in [0, 1], got {eps}")
    return StructureTensor.from_brackets(
        ("q", "p", "r"),
        {
            ("q", "p"): {"r": hbar},
            ("r", "q"): {"p": eps * hbar1},
            ("p", "r"): {"q": eps * hbar2},
        },
    )


def flexed_by_rescaling(hbar, hbar1, hbar2, eps):
    """Same endpoint family via the basis change ``q, p -> sqrt(eps) q, p``, ``r -> eps r``.

    Only defined for eps > 0; equals :func:`flexed_oscillator_algebra` there.
    """
    if not 0.0 < eps <= 1.0:
        raise ValidationError(f"rescaling needs 0 < eps <= 1, got {eps}")
    base = flexed_oscillator_algebra(hbar, hbar1, hbar2, 1.0)
    root = np.sqrt(eps)
    return base.rescaled([root, root, eps])


def contraction_distance(a, b):
    """Max-norm of the coefficient difference. Basis dependent."""
    if a.dim != b.dim or a.labels != b.labels:
        raise ShapeError("tensors must share dimension and basis labels")
    return float(np.max(np.abs(a.c - b.c), initial=0.0))


def decompose(matrix, generators):
    """Least-squares coordinates of ``matrix`` in the span of ``generators``.

    Returns ``(coefficients, residual)`` where the residual is the max-norm of
    the part orthogonal to the span.
    """
    g = np.asarray(generators)
    A = g.reshape(g.shape[0], -1).T
    y = np.asarray(matrix).reshape(-1)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return coef, float(np.max(np.abs(resid), initial=0.0))


def structure_from_matrices(generators, labels=None):
    """Structure tensor induced by commutators of matrices, plus the closure residual."""
    g = np.asarray(generators)
    d = g.shape[0]
    labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(d))
    A = g.reshape(d, -1).T
    pinv = np.linalg.pinv(A)
    c = np.zeros((d, d, d), dtype=np.complex128)
    worst = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            y = commutator(g[i], g[j]).reshape(-1)
            coef = pinv @ y
            worst = max(worst, float(np.max(np.abs(y - A @ coef), initial=0.0)))
            c[:, i, j] = coef
            c[:, j, i] = -coef
    if np.max(np.abs(c.imag), initial=0.0) <= 1e-12 * max(1.0, np.max(np.abs(c), initial=0.0)):
        c = c.real
    return StructureTensor(c, labels), worst


@dataclass(frozen=True)
class LieBasisRep:
    """Matrix generators of a Lie algebra with named physical combinations."""

    generators: np.ndarray
    labels: tuple
    mapped: dict = field(default_factory=dict)
    metric: Optional[np.ndarray] = None
    extra: dict = field(default_factory=dict)

    def closure(self):
        """``(structure tensor, closure residual)`` of the generator span."""
        return structure_from_matrices(self.generators, self.labels)

    def __getitem__(self, label):
        if label in self.mapped:
            return self.mapped[label]
        return self.generators[self.labels.index(label)]


def matrix_unit(n, a, b):
    e = np.zeros((n, n), dtype=np.complex128)
    e[a, b] = 1.0
    return e


def a_line_rep(n):
    """gl(n+1) matrix units with ``q^mu = E[mu, 0]``, ``p_mu = E[0, mu]``, ``r = E[0, 0]``.

    ``mapped`` also holds the Hermitian pair ``qh^mu = (E[mu,0] + E[0,mu]) / 2`` and
    ``ph_mu = i (E[mu,0] - E[0,mu]) / 2``. ``extra["traceless"]`` is an sl(n+1)
    basis (off-diagonal units and ``E[k,k] - E[k+1,k+1]``).
    """
    if int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n}")
    n = int(n)
    size = n + 1
    gens, labels = [], []
    for a in range(size):
        for b in range(size):
            gens.append(matrix_unit(size, a, b))
            labels.append(f"L{a}{b}" if size <= 10 else f"L{a},{b}")
    mapped = {"r": matrix_unit(size, 0, 0)}
    for mu in range(1, size):
        up, down = matrix_unit(size, mu, 0), matrix_unit(size, 0, mu)
        mapped[f"q{mu}"] = up
        mapped[f"p{mu}"] = down
        mapped[f"qh{mu}"] = 0.5 * (up + down)
        mapped[f"ph{mu}"] = 0.5j * (up - down)
    traceless, tl_labels = [], []
    for a in range(size):
        for b in range(size):
            if a != b:
                traceless.append(matrix_unit(size, a, b))
                tl_labels.append(f"E{a},{b}")
    for k in range(n):
        traceless.append(matrix_unit(size, k, k) - matrix_unit(size, k + 1, k + 1))
        tl_labels.append(f"H{k}")
    extra = {"traceless": np.array(traceless), "traceless_labels": tuple(tl_labels)}
    return LieBasisRep(np.array(gens), tuple(labels), mapped, None, extra)


def so_generator(size, a, b, metric=None):
    """``o^{ab}``: ``e_ab - e_ba`` (Euclidean) or metric-weighted ``delta^x_a g_by - delta^x_b g_ay``.

    Indices are 1-based.
    """
    g = np.eye(size) if metric is None else np.asarray(metric, dtype=float)
    m = np.zeros((size, size), dtype=np.complex128)
    m[a - 1, :] += g[b - 1, :]
    m[b - 1, :] -= g[a - 1, :]
    return m


def d_line_rep(n, Q=1.0, P=1.0, R=1.0):
    """so(n+2) generators with ``q^mu = Q o^{mu,n+1}``, ``p^mu = P o^{mu,n+2}``, ``r = R o^{n+1,n+2}``.

    ``[q^mu, p^nu] = -delta^{mu nu} (Q P / R) r``; that coefficient is stored in
    ``extra["qp_coefficient"]``.
    """
    if int(n) != n or n < 2 or n % 2:
        raise ValidationError(f"the D line needs even n >= 2, got {n}")
    n = int(n)
    size = n + 2
    gens, labels = [], []
    for a in range(1, size + 1):
        for b in range(a + 1, size + 1):
            gens.append(so_generator(size, a, b))
            labels.append(f"o{a},{b}")
    mapped = {"r": R * so_generator(size, n + 1, n + 2)}
    for mu in range(1, n + 1):
        mapped[f"q{mu}"] = Q * so_generator(size, mu, n + 1)
        mapped[f"p{mu}"] = P * so_generator(size, mu, n + 2)
    extra = {"qp_coefficient": -Q * P / R}
    return LieBasisRep(np.array(gens), tuple(labels), mapped, np.eye(size), extra)


def require_closure(rep, atol):
    tensor, resid = rep.closure()
    if resid > atol:
        raise NumericalError(f"generators do not close (residual {resid:.3e})")
    return tensor
