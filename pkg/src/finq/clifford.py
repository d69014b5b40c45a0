"""Clifford generators by a fixed Kronecker recursion, and the oscillator representations built on them.

Recursion (normative, bit-exact). For ``total = 2k`` generators and pair
``j = 0 .. k-1``::

    gamma[2j]   = Z (x) ... (x) Z (x) X (x) I (x) ... (x) I
    gamma[2j+1] = Z (x) ... (x) Z (x) Y (x) I (x) ... (x) I

with ``j`` leading copies of ``Z = diag(1, -1)``, Pauli ``X``, ``Y`` and
``k - j - 1`` trailing 2x2 identities, all as complex128 with ``numpy.kron``
folded left to right. Afterwards every generator whose signature entry is -1
is multiplied by ``1j``. ``build_clifford(p, q)`` places the ``q`` negative
entries first, so ``(3, 1)`` yields the metric ``diag(-1, +1, +1, +1)``.
"""
import hashlib
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations

import numpy as np

from ._limits import check_dim, max_dim
from .dynamics import PAIRS, METRIC, so31_tensor
from .errors import ValidationError
from .lie import jacobi_residual, killing_report, structure_from_matrices
from .operators import anticommutator, commutator, max_abs

_I2 = np.eye(2, dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)

MAX_GENERATORS = 12
MAX_GENERATORS_LARGE = 16
#: Commutation action on the full matrix algebra: default ceiling on its dimension.
ALGEBRA_DIM_CAP = 256
ALGEBRA_DIM_CAP_LARGE = 4096


@dataclass(frozen=True)
class CliffordRep:
    signature: tuple
    generators: tuple

    @property
    def p_pos(self):
        return sum(1 for s in self.signature if s > 0)

    @property
    def q_neg(self):
        return sum(1 for s in self.signature if s < 0)

    @property
    def total(self):
        return len(self.signature)

    @property
    def dim(self):
        return self.generators[0].shape[0]

    def eta(self):
        return np.diag(np.asarray(self.signature, dtype=float))

    def __getitem__(self, a):
        return self.generators[a]


def _kron_chain(factors):
    return reduce(np.kron, factors)


def _check_total(total, allow_large):
    if total <= 0 or total % 2:
        raise ValidationError(f"number of generators must be positive and even, got {total}")
    cap = MAX_GENERATORS_LARGE if allow_large else MAX_GENERATORS
    check_dim(2 ** (total // 2), max_dim(2 ** (cap // 2)), "Clifford spinor space")


def clifford_from_signature(signature, allow_large=False):
    """Generators for an explicit signature tuple of +1/-1 entries."""
    sig = tuple(int(s) for s in signature)
    if any(s not in (1, -1) for s in sig):
        raise ValidationError("signature entries must be +1 or -1")
    _check_total(len(sig), allow_large)
    k = len(sig) // 2
    gens = []
    for j in range(k):
        head = [_Z] * j
        tail = [_I2] * (k - j - 1)
        gens.append(_kron_chain(head + [_X] + tail))
        gens.append(_kron_chain(head + [_Y] + tail))
    gens = [1j * g if s < 0 else g for g, s in zip(gens, sig)]
    for g in gens:
        g.setflags(write=False)
    return CliffordRep(sig, tuple(gens))


def build_clifford(p_pos, q_neg, allow_large=False):
    """Cl(p, q) with the ``q`` negative-signature generators first."""
    if p_pos < 0 or q_neg < 0:
        raise ValidationError("signature counts must be non-negative")
    return clifford_from_signature((-1,) * q_neg + (1,) * p_pos, allow_large)


def anticommutation_residual(rep):
    """``max |{g_a, g_b} - 2 eta_ab I|`` over all ordered pairs."""
    eye = np.eye(rep.dim)
    worst = 0.0
    for a, ga in enumerate(rep.generators):
        for b in range(a, rep.total):
            target = 2.0 * rep.signature[a] * eye if a == b else 0.0
            worst = max(worst, max_abs(anticommutator(ga, rep.generators[b]) - target))
    return worst


def hermiticity_residual(rep):
    """Positive entries must be Hermitian and negative ones anti-Hermitian."""
    return max(max_abs(g - s * g.conj().T) for g, s in zip(rep.generators, rep.signature))


def generator_digest(rep):
    """sha256 over the generators serialized as little-endian complex128, in order."""
    h = hashlib.sha256()
    for g in rep.generators:
        # adding 0.0 turns -0.0 into +0.0 so the digest tracks values only
        h.update(np.ascontiguousarray(g + 0.0, dtype="<c16").tobytes())
    return h.hexdigest()


# ---------------------------------------------------------------- stationary


@dataclass(frozen=True)
class StationaryRep:
    q: np.ndarray
    p: np.ndarray
    r: np.ndarray
    clifford: CliffordRep
    N: int
    effective_constants: dict
    residuals: dict = field(default_factory=dict)


def _replica_bivector_sum(rep, a, b, n_replicas, width):
    """``sum_n gamma_a(n) gamma_b(n)`` with replica ``n`` occupying slots ``width*n ..``."""
    return sum(rep[width * n + a] @ rep[width * n + b] for n in range(n_replicas))


def _coefficient(target, value):
    t = target.ravel()
    return complex(np.vdot(t, value.ravel()) / np.vdot(t, t))


def stationary_rep(N, qc, allow_large=False):
    """Regularized coordinate, momentum and action on 3N positive generators.

    Replica ``n`` owns generators ``3n, 3n+1, 3n+2`` (labelled 1, 2, 3).
    ``q = Q sum gamma_31``, ``p = Q' sum gamma_23``, ``r = Qr sum gamma_12``.
    All three are anti-Hermitian. The effective constants are the measured
    coefficients in ``[q, p] = h r``, ``[r, q] = h' p``, ``[p, r] = h'' q``.
    """
    if int(N) != N or N < 2 or N % 2:
        raise ValidationError(f"N must be a positive even integer, got {N}")
    N = int(N)
    cl = build_clifford(3 * N, 0, allow_large=allow_large)
    g31 = _replica_bivector_sum(cl, 2, 0, N, 3)
    g23 = _replica_bivector_sum(cl, 1, 2, N, 3)
    g12 = _replica_bivector_sum(cl, 0, 1, N, 3)
    q, p, r = qc.Q * g31, qc.Qp * g23, qc.Qr * g12
    qp, rq, pr = commutator(q, p), commutator(r, q), commutator(p, r)
    eff = {
        "hbar": _coefficient(r, qp).real,
        "hbar1": _coefficient(p, rq).real,
        "hbar2": _coefficient(q, pr).real,
    }
    tensor, closure = structure_from_matrices([q, p, r], ("q", "p", "r"))
    residuals = {
        "qp_identity": max_abs(commutator(g31, g23) - 2.0 * g12),
        "qp_relation": max_abs(qp - eff["hbar"] * r),
        "rq_relation": max_abs(rq - eff["hbar1"] * p),
        "pr_relation": max_abs(pr - eff["hbar2"] * q),
        "anti_hermitian": max(max_abs(m + m.conj().T) for m in (q, p, r)),
        "closure": closure,
        "jacobi": jacobi_residual(tensor),
        "cross_replica": _cross_replica_residual(cl, N, 3),
    }
    return StationaryRep(q, p, r, cl, N, eff, residuals)


def _cross_replica_residual(cl, n_replicas, width):
    """``max |[gamma_ab(m), gamma_cd(n)]|`` over distinct replicas m != n."""
    worst = 0.0
    pairs = list(combinations(range(width), 2))
    for m, n in combinations(range(n_replicas), 2):
        for a, b in pairs:
            x = cl[width * m + a] @ cl[width * m + b]
            for c, d in pairs:
                y = cl[width * n + c] @ cl[width * n + d]
                worst = max(worst, max_abs(commutator(x, y)))
    return worst


# ---------------------------------------------------------------- dynamical


@dataclass(frozen=True)
class DynamicalRep:
    N: int
    clifford: CliffordRep
    spinor: dict
    normalization: float
    residuals: dict
    algebra: dict = None

    @property
    def spinor_dim(self):
        return self.clifford.dim

    @property
    def algebra_dim(self):
        return self.clifford.dim ** 2


def commutation_action(m):
    """Matrix of ``X -> [m, X]`` on row-major vectorized X."""
    m = np.asarray(m)
    eye = np.eye(m.shape[0], dtype=m.dtype)
    return np.kron(m, eye) - np.kron(eye, m.T)


def dynamical_rep(N, with_algebra=True, allow_large=False):
    """Six ``Gamma_{mu nu} = sum_n gamma_mu(n) gamma_nu(n)`` on Cl(3N, N).

    Replica ``n`` occupies generators ``4n .. 4n+3`` with signature
    ``(-, +, +, +)``. The spinor realization is returned as ``spinor`` keyed
    by index pair ("12" .. "34"); with ``with_algebra`` the commutation action
    on the ``dim**2`` matrix algebra is returned as ``algebra``.
    ``normalization`` is the single constant ``c`` in
    ``tensor(Gamma) = c * tensor(defining so(3,1))``.
    """
    if int(N) != N or N < 1:
        raise ValidationError(f"N must be a positive integer, got {N}")
    N = int(N)
    cl = clifford_from_signature((-1, 1, 1, 1) * N, allow_large=allow_large)
    spinor = {}
    for ij in PAIRS:
        a, b = int(ij[0]) - 1, int(ij[1]) - 1
        spinor[ij] = _replica_bivector_sum(cl, a, b, N, 4)
    norm, res = _so31_check(spinor)
    residuals = {"spinor_" + k: v for k, v in res.items()}
    residuals["anticommutation"] = anticommutation_residual(cl)
    residuals["cross_replica"] = _cross_replica_residual(cl, N, 4)
    algebra = None
    if with_algebra:
        adim = cl.dim ** 2
        cap = max_dim(ALGEBRA_DIM_CAP_LARGE if allow_large else ALGEBRA_DIM_CAP)
        check_dim(adim, cap, "Clifford matrix algebra")
        algebra = {ij: commutation_action(g) for ij, g in spinor.items()}
        a_norm, a_res = _so31_check(algebra)
        residuals.update({"algebra_" + k: v for k, v in a_res.items()})
        residuals["normalization_agreement"] = abs(a_norm - norm)
    return DynamicalRep(N, cl, spinor, norm, residuals, algebra)


def _so31_check(gens):
    """Measure c with ``[G_a, G_b] = c * sum f_ab^k G_k`` and the worst deviation."""
    ref = so31_tensor().c
    mats = [gens[ij] for ij in PAIRS]
    tensor, closure = structure_from_matrices(mats, PAIRS)
    # c is read off the first non-zero entry of the defining tensor
    k, i, j = np.argwhere(ref != 0)[0]
    c = float(tensor.c[k, i, j] / ref[k, i, j])
    worst = 0.0
    for a, b in combinations(range(6), 2):
        expected = sum(c * ref[k_, a, b] * mats[k_] for k_ in range(6))
        worst = max(worst, max_abs(commutator(mats[a], mats[b]) - expected))
    return c, {"closure": closure, "so31": worst, "tensor": float(np.max(np.abs(tensor.c - c * ref)))}


def casimir(gens, metric=METRIC):
    """``sum_{a<b} g_aa g_bb G_ab^2``; commutes with every generator of an so(3,1) rep."""
    total = 0
    for ij in PAIRS:
        a, b = int(ij[0]) - 1, int(ij[1]) - 1
        total = total + metric[a, a] * metric[b, b] * (gens[ij] @ gens[ij])
    return total


def casimir_residual(gens):
    c = casimir(gens)
    return max(max_abs(commutator(c, g)) for g in gens.values())


def commutant_dimension(gens, rtol=1e-10):
    """Dimension of the space of matrices commuting with every generator (diagnostic)."""
    stack = np.vstack([commutation_action(g) for g in gens.values()])
    s = np.linalg.svd(stack, compute_uv=False)
    n = stack.shape[1]
    if s.size == 0 or s[0] == 0:
        return n
    return int(n - np.sum(s > rtol * s[0]))


def so31_killing_rank(rep):
    """Killing rank of the structure tensor induced by the spinor Gammas."""
    tensor, _ = structure_from_matrices([rep.spinor[ij] for ij in PAIRS], PAIRS)
    return killing_report(tensor).rank
