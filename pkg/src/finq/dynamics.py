"""Six-generator so(3,1) dynamics: ledger of quantum units, commutator table, limits.

Index pairs follow ``b ~ L12, q ~ L23, p ~ L24, t ~ L13, E ~ L14, r ~ L34``
with signs ``b = -Qb L12, q = +Qq L23, p = +Qp L24, t = -Qt L13,
E = -QE L14, r = +Qr L34``. The metric is ``diag(-1, +1, +1, +1)``.

The bracket of the defining representation carries no factor 1/2:
``[L_ij, L_kl] = g_jk L_il - g_ik L_jl - g_jl L_ik + g_il L_jk``. Overall
factors are collected into one measured normalization constant.
"""
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import NumericalError, ValidationError
from .lie import StructureTensor, decompose, so_generator, structure_from_matrices
from .operators import as_matrix, commutator, group_levels

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])
PAIRS = ("12", "13", "14", "23", "24", "34")
SIX = ("b", "q", "p", "t", "E", "r")
CONVENTION = {
    "b": ("12", -1.0),
    "q": ("23", +1.0),
    "p": ("24", +1.0),
    "t": ("13", -1.0),
    "E": ("14", -1.0),
    "r": ("34", +1.0),
}
LEDGER_RTOL = 1e-9


@dataclass(frozen=True)
class ConstantLedger:
    """Quantum units of b, q, p, t, E, r.

    Construction enforces ``Qt Qr^2 = QE Qq Qp`` to ``1e-9`` relative.
    """

    Qb: float
    Qq: float
    Qp: float
    Qt: float
    QE: float
    Qr: float

    def __post_init__(self):
        for name in ("Qb", "Qq", "Qp", "Qt", "QE", "Qr"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValidationError(f"{name} must be positive, got {v!r}")
        res = self.constraint_residual
        if res > LEDGER_RTOL:
            raise ValidationError(
                f"ledger violates Qt*Qr^2 = QE*Qq*Qp (relative residual {res:.3e})"
            )

    @property
    def constraint_residual(self):
        lhs = self.Qt * self.Qr ** 2
        rhs = self.QE * self.Qq * self.Qp
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs))

    def unit(self, name):
        return getattr(self, "Q" + name)

    def as_tuple(self):
        return (self.Qb, self.Qq, self.Qp, self.Qt, self.QE, self.Qr)

    @property
    def hbar(self):
        """``Qq Qp / Qr`` (the [q, p] structure constant)."""
        return self.Qq * self.Qp / self.Qr

    @property
    def hbar_agreement_residual(self):
        """Relative gap between the two derived values of hbar (reported, not enforced)."""
        a, b = self.hbar, self.hbar_tE
        return abs(a - b) / max(a, b)

    @property
    def hbar_tE(self):
        """``Qt QE / Qr`` (the [t, E] structure constant)."""
        return self.Qt * self.QE / self.Qr

    def hbar_vw(self, v, w, u):
        """Structure-constant pattern ``Q_v Q_w / Q_u``."""
        return self.unit(v) * self.unit(w) / self.unit(u)

    @property
    def hbar_ratios(self):
        """``Q_v Q_w / Q_u`` for every non-vanishing bracket, keyed ``"v,w->u"``."""
        out = {}
        for v, w in combinations(SIX, 2):
            u = bracket_target(v, w)
            if u is not None:
                out[f"{v},{w}->{u}"] = self.hbar_vw(v, w, u)
        return out


def make_ledger(Qb, Qq, Qp, Qt, QE, Qr):
    return ConstantLedger(Qb, Qq, Qp, Qt, QE, Qr)


def unit_ledger():
    return ConstantLedger(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)


def random_ledger(rng, low=0.2, high=5.0):
    """Draw Qb, Qq, Qp, QE, Qr log-uniformly and solve the constraint for Qt."""
    qb, qq, qp, qe, qr = np.exp(rng.uniform(math.log(low), math.log(high), size=5))
    return ConstantLedger(qb, qq, qp, qe * qq * qp / qr ** 2, qe, qr)


def defining_rep_so31():
    """``(L_ij)^a_b = delta^a_i g_jb - delta^a_j g_ib`` as 4x4 real matrices keyed "12".."34"."""
    return {ij: so_generator(4, int(ij[0]), int(ij[1]), METRIC) for ij in PAIRS}


def so31_bracket(ij, kl, metric=METRIC):
    """Coordinates of ``[L_ij, L_kl]`` from the index formula, as ``{pair: coeff}``."""
    i, j = int(ij[0]) - 1, int(ij[1]) - 1
    k, l = int(kl[0]) - 1, int(kl[1]) - 1
    g = metric
    out = {}

    def add(a, b, coeff):
        if coeff == 0 or a == b:
            return
        key, sign = (f"{a + 1}{b + 1}", 1.0) if a < b else (f"{b + 1}{a + 1}", -1.0)
        out[key] = out.get(key, 0.0) + sign * coeff

    add(i, l, g[j, k])
    add(j, l, -g[i, k])
    add(i, k, -g[j, l])
    add(j, k, g[i, l])
    return {k_: v for k_, v in out.items() if v != 0}


def so31_tensor():
    """Structure tensor of the defining bracket on the basis L12, L13, L14, L23, L24, L34."""
    idx = {p: n for n, p in enumerate(PAIRS)}
    c = np.zeros((6, 6, 6))
    for a, b in combinations(PAIRS, 2):
        for target, coeff in so31_bracket(a, b).items():
            c[idx[target], idx[a], idx[b]] = coeff
            c[idx[target], idx[b], idx[a]] = -coeff
    return StructureTensor(c, tuple("L" + p for p in PAIRS))


def physical_generators(ledger, rep=None, scale=1.0):
    """Map the six L_ij of ``rep`` (default: defining 4x4) to ``b, q, p, t, E, r``.

    ``scale`` multiplies every generator (e.g. 1/2 for a half-normalized convention).
    """
    rep = defining_rep_so31() if rep is None else rep
    return {name: scale * sign * ledger.unit(name) * np.asarray(rep[pair]) for name, (pair, sign) in CONVENTION.items()}


def _pair_of(name):
    return {int(c) for c in CONVENTION[name][0]}


def bracket_target(v, w):
    """Generator name that ``[v, w]`` is proportional to, or None when they commute."""
    a, b = _pair_of(v), _pair_of(w)
    shared = a & b
    if len(shared) != 1:
        return None
    rest = (a | b) - shared
    for name in SIX:
        if _pair_of(name) == rest:
            return name
    return None


# Rows of the reference table as printed: (v, w, sign, target, (num1, num2, den)).
# A zero row has sign 0 and target None.
PRINTED_TABLE = (
    ("q", "p", +1, "r", ("q", "p", "r")),
    ("r", "q", +1, "p", ("r", "q", "p")),
    ("p", "r", +1, "q", ("p", "r", "q")),
    ("t", "E", +1, "r", ("t", "E", "r")),
    ("r", "t", +1, "E", ("r", "q", "E")),
    ("q", "t", -1, "b", ("q", "t", "b")),
    ("E", "r", +1, "t", ("p", "r", "t")),
    ("E", "q", 0, None, None),
    ("E", "p", +1, "b", ("E", "p", "b")),
    ("b", "E", +1, "p", ("b", "E", "p")),
    ("b", "p", -1, "E", ("b", "p", "E")),
    ("b", "q", -1, "t", ("b", "q", "t")),
    ("b", "t", +1, "q", ("E", "p", "q")),
    ("b", "r", 0, None, None),
    ("p", "t", 0, None, None),
)


@dataclass(frozen=True)
class TableRow:
    pair: tuple
    target: object
    coeff_measured: float
    coeff_expected_pattern: float
    ratio: float
    printed_sign: int
    sign_match: object
    printed_pattern_match: object
    residual: float

    def as_dict(self):
        return {
            "pair": list(self.pair),
            "target": self.target,
            "coeff_measured": self.coeff_measured,
            "coeff_expected_pattern": self.coeff_expected_pattern,
            "ratio": self.ratio,
            "printed_sign": self.printed_sign,
            "sign_match": self.sign_match,
            "printed_pattern_match": self.printed_pattern_match,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class CommutatorTable:
    rows: tuple
    normalization: float
    max_residual: float
    zero_pairs: tuple
    sign_mismatches: tuple = field(default=())

    def as_dict(self):
        return {
            "normalization": self.normalization,
            "max_residual": self.max_residual,
            "zero_pairs": [list(p) for p in self.zero_pairs],
            "sign_mismatches": [list(p) for p in self.sign_mismatches],
            "rows": [r.as_dict() for r in self.rows],
        }


def commutator_table(mapped, ledger, closure_rtol=1e-10, zero_rtol=1e-12):
    """Decompose all 15 brackets of the mapped generators in their own span.

    The normalization constant is the measured ``coefficient / (Q_v Q_w / Q_u)``
    of the ``[q, p]`` row divided by the printed sign of that row; every other
    row's sign is then compared against ``normalization * printed sign``.
    """
    gens = np.array([np.asarray(mapped[name]) for name in SIX])
    scale = max(float(np.max(np.abs(g))) for g in gens) ** 2
    raw = []
    for v, w, psign, ptarget, psym in PRINTED_TABLE:
        comm = commutator(mapped[v], mapped[w])
        coef, resid = decompose(comm, gens)
        if resid > closure_rtol * scale:
            raise NumericalError(f"[{v}, {w}] leaves the span (residual {resid:.3e})")
        big = np.abs(coef) > zero_rtol * scale
        if not big.any():
            raw.append((v, w, None, 0.0, 0.0, psign, ptarget, psym, resid))
            continue
        if big.sum() != 1:
            raise NumericalError(f"[{v}, {w}] is not proportional to a single generator: {coef}")
        k = int(np.argmax(np.abs(coef)))
        measured = float(coef[k].real)
        target = SIX[k]
        pattern = ledger.hbar_vw(v, w, target)
        raw.append((v, w, target, measured, pattern, psign, ptarget, psym, resid))
    ref = next(r for r in raw if r[0] == "q" and r[1] == "p")
    norm = (ref[3] / ref[4]) / ref[5]
    rows, zeros, mismatches = [], [], []
    for v, w, target, measured, pattern, psign, ptarget, psym, resid in raw:
        if target is None:
            zeros.append((v, w))
            sign_match = psign == 0
            pmatch = psym is None
            ratio = 0.0
        else:
            ratio = measured / pattern
            sign_match = bool(psign != 0 and np.sign(ratio) == np.sign(norm) * psign and ptarget == target)
            pmatch = psym is not None and sorted(psym[:2]) == sorted((v, w)) and psym[2] == target
        if not sign_match:
            mismatches.append((v, w))
        rows.append(TableRow((v, w), target, measured, pattern, ratio, psign, sign_match, pmatch, resid))
    return CommutatorTable(tuple(rows), float(norm), max(r.residual for r in rows), tuple(zeros), tuple(mismatches))


def induced_tensor(mapped):
    """Structure tensor of the six mapped generators and its closure residual."""
    return structure_from_matrices([mapped[n] for n in SIX], SIX)


@dataclass(frozen=True)
class JacobiChain:
    hbar: float
    hbar_pb: float
    hbar_qt: float
    lhs: float
    rhs: float
    relative_residual: float


def jacobi_constraint_chain(ledger):
    """Check ``hbar^2 = hbar_pb * hbar_qt`` from ledger ratios."""
    hbar = ledger.hbar
    hbar_pb = ledger.Qp * ledger.Qb / ledger.QE
    hbar_qt = ledger.Qq * ledger.Qt / ledger.Qb
    lhs, rhs = hbar * hbar, hbar_pb * hbar_qt
    return JacobiChain(hbar, hbar_pb, hbar_qt, lhs, rhs, abs(lhs - rhs) / max(abs(lhs), abs(rhs)))


# Brackets that vanish in the singular (canonical) table: everything involving
# the boost b, plus q-t, q-E, p-t and p-E.
QT_TYPE_PAIRS = (("q", "t"), ("q", "E"), ("p", "t"), ("p", "E"))
SINGULAR_ZERO_PAIRS = QT_TYPE_PAIRS + tuple(("b", x) for x in ("q", "p", "t", "E", "r"))


def singular_ledger(delta, hbar=1.0):
    """One-parameter ledger family approaching the singular table as ``delta -> 0``.

    ``Qb = 1``, ``Qq = QE = Qr = delta``, ``Qp = Qt = hbar``. For every delta
    the constraint holds and ``Qq Qp / Qr = Qt QE / Qr = hbar``, while the
    structure constants of the [q, t]-type brackets are ``hbar * delta``.
    """
    if not delta > 0:
        raise ValidationError("delta must be positive")
    return ConstantLedger(1.0, delta, hbar, hbar, delta, delta)


@dataclass(frozen=True)
class SingularPoint:
    ledger: ConstantLedger
    deviations: dict
    tE_defect: float

    def qt_type_max(self):
        return max(self.deviations[f"{v},{w}"] for v, w in QT_TYPE_PAIRS)


def _coefficient_on(m, v, w, u):
    """Coefficient of generator ``u`` in ``[v, w]`` (least squares on one matrix)."""
    comm = commutator(m[v], m[w])
    target = np.asarray(m[u])
    return float(np.real(np.vdot(target.ravel(), comm.ravel())) / np.real(np.vdot(target.ravel(), target.ravel())))


def singular_limit_deviation(ledgers, rep=None):
    """Structure constants of the brackets that vanish in the singular table.

    Each deviation is ``|hbar_vw| / hbar``: the measured coefficient of
    ``[v, w]`` on its target generator divided by the measured ``[q, p]``
    coefficient on ``r``. Norm ratios such as ``||[q, t]|| / (||q|| ||t||)``
    cannot be used since they do not depend on the ledger at all. Commuting
    pairs report 0. ``tE_defect`` is ``| |hbar_tE| - hbar | / hbar`` with both
    sides measured.
    """
    rep = defining_rep_so31() if rep is None else rep
    out = []
    for ledger in ledgers:
        m = physical_generators(ledger, rep)
        hbar = abs(_coefficient_on(m, "q", "p", "r"))
        dev = {}
        for v, w in SINGULAR_ZERO_PAIRS:
            u = bracket_target(v, w)
            dev[f"{v},{w}"] = 0.0 if u is None else abs(_coefficient_on(m, v, w, u)) / hbar
        tE = abs(_coefficient_on(m, "t", "E", "r"))
        out.append(SingularPoint(ledger, dev, abs(tE - hbar) / hbar))
    return out


@dataclass(frozen=True)
class ConstraintOperator:
    operator: np.ndarray
    probe: np.ndarray
    probe_norm: float


def dynamical_constraint(A, B, C, rep=None):
    """``E - H = A L14 - B L23^2 - C L24^2`` and the probe ``[C L24^2, A L14 - B L23^2]``.

    The probe norm is reported as measured; nothing is asserted about it.
    """
    for name, v in (("A", A), ("B", B), ("C", C)):
        if v < 0:
            raise ValidationError(f"{name} must be non-negative")
    rep = defining_rep_so31() if rep is None else rep
    L14, L23, L24 = (np.asarray(rep[k]) for k in ("14", "23", "24"))
    unperturbed = A * L14 - B * (L23 @ L23)
    perturbation = C * (L24 @ L24)
    probe = commutator(perturbation, unperturbed)
    return ConstraintOperator(unperturbed - perturbation, probe, float(np.linalg.norm(probe)))


@dataclass(frozen=True)
class TimeProfile:
    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    character: str

    def as_dict(self):
        return {
            "character": self.character,
            "eigenvalues": self.eigenvalues.tolist(),
            "multiplicities": self.multiplicities.tolist(),
        }


def time_spectrum_profile(t_operator, degeneracy_tol=None, cond_limit=1e8):
    """Distinct eigenvalues of a time operator with their multiplicities.

    Hermitian input gives ``character="real"``; anti-Hermitian input reports the
    imaginary parts (``"imaginary"``). Anything else goes through a general
    eigensolve and must have a well-conditioned eigenbasis.
    """
    t = as_matrix(t_operator, "time operator")
    scale = float(np.max(np.abs(t))) if t.size else 0.0
    if scale == 0.0:
        return TimeProfile(np.zeros(1), np.array([t.shape[0]]), "real")
    if np.max(np.abs(t - t.conj().T)) <= 1e-12 * scale:
        values, character = np.linalg.eigvalsh(0.5 * (t + t.conj().T)), "real"
    elif np.max(np.abs(t + t.conj().T)) <= 1e-12 * scale:
        h = -0.5j * (t - t.conj().T)
        values, character = np.linalg.eigvalsh(h), "imaginary"
    else:
        w, v = np.linalg.eig(t)
        if np.linalg.cond(v) > cond_limit:
            raise NumericalError("time operator is not diagonalizable within tolerance")
        if np.max(np.abs(w.imag)) <= 1e-10 * scale:
            values, character = np.sort(w.real), "real"
        elif np.max(np.abs(w.real)) <= 1e-10 * scale:
            values, character = np.sort(w.imag), "imaginary"
        else:
            raise NumericalError("time operator has genuinely complex eigenvalues")
    tol = 1e-8 * float(np.max(np.abs(values))) if degeneracy_tol is None else degeneracy_tol
    levels, mult, _ = group_levels(values, tol)
    levels = np.where(np.abs(levels) <= tol, 0.0, levels)
    return TimeProfile(levels, mult, character)
