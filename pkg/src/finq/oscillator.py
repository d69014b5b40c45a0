"""Finite linear harmonic oscillator built on a spin-l representation.

Position and momentum are ``q = Q L1`` and ``p = Qp L2`` with the regulator
``r ~ L3``; the Hamiltonian is ``H = (K/2)(L2^2 + kappa2 L1^2)``.

The soft regime (kappa2 -> 0) is dominated by the kinetic term ``(K/2) L2^2``
and is analysed in the L2 eigenbasis. Labelling the kinetic term with L1
instead gives the same spectrum, since a quarter turn about L3 swaps
``L1^2`` and ``L2^2``.
"""
import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .operators import Spectrum, expectation_and_variance, group_levels, hermitian_eigensystem
from .su2 import build_angular_momentum, half_integer


def _positive(name, value):
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ValidationError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class QuantumConstants:
    """The three quantum constants and their derived quanta.

    ``hbar1`` and ``hbar2`` are the extra constants of the flexed algebra.
    ``Q``, ``Qp`` and ``Qr`` are the position, momentum and action quanta,
    and ``l = 1/Qr`` must make ``2l+1`` an integer.
    """

    hbar: float
    hbar1: float
    hbar2: float

    def __post_init__(self):
        for name in ("hbar", "hbar1", "hbar2"):
            _positive(name, getattr(self, name))
        two_l = 2.0 / self.Qr
        if abs(two_l - round(two_l)) > 1e-9 * max(1.0, two_l):
            raise ValidationError(f"1/sqrt(hbar1*hbar2) = {1 / self.Qr!r} is not a half-integer")

    @property
    def Q(self):
        return math.sqrt(self.hbar * self.hbar1)

    @property
    def Qp(self):
        return math.sqrt(self.hbar * self.hbar2)

    @property
    def Qr(self):
        return math.sqrt(self.hbar1 * self.hbar2)

    @property
    def l(self):
        return round(2.0 / self.Qr) / 2


def derive_constants(hbar, l, ratio=1.0):
    """Solve ``hbar1*hbar2 = 1/l^2`` and ``hbar1/hbar2 = ratio``."""
    hbar = _positive("hbar", hbar)
    ratio = _positive("ratio", ratio)
    l = half_integer(l)
    if l <= 0:
        raise ValidationError("l must be positive")
    root = math.sqrt(ratio)
    return QuantumConstants(hbar, root / l, 1.0 / (l * root))


@dataclass(frozen=True)
class OscillatorParams:
    mass: float
    spring: float

    def __post_init__(self):
        _positive("mass", self.mass)
        _positive("spring", self.spring)

    @property
    def omega(self):
        return math.sqrt(self.spring / self.mass)

    def K(self, qc):
        """Energy scale ``Qp^2 / mass``."""
        return qc.Qp ** 2 / self.mass

    def kappa2(self, qc):
        """Dimensionless stiffness ``hbar1 * mass * spring / hbar2``."""
        return qc.hbar1 * self.mass * self.spring / qc.hbar2

    @classmethod
    def from_kappa2(cls, qc, kappa2, mass=1.0):
        """Choose the spring constant that realises ``kappa2`` at the given mass."""
        kappa2 = _positive("kappa2", kappa2)
        mass = _positive("mass", mass)
        return cls(mass, kappa2 * qc.hbar2 / (qc.hbar1 * mass))


def oscillator_hamiltonian(rep, K, kappa2):
    """``(K/2)(L2^2 + kappa2 L1^2)`` on an angular-momentum representation."""
    L1, L2 = rep.L1, rep.L2
    h = 0.5 * K * (L2 @ L2 + kappa2 * (L1 @ L1))
    return 0.5 * (h + h.conj().T)


def build_hamiltonian(rep, qc, params):
    if abs(rep.l - qc.l) > 1e-9:
        raise ValidationError(f"representation has l={rep.l}, constants give l={qc.l}")
    return oscillator_hamiltonian(rep, params.K(qc), params.kappa2(qc))


def _check_level(n, l):
    if int(n) != n or not 0 <= n <= round(2 * l):
        raise ValidationError(f"level n={n} outside 0..{2 * l:g}")
    return int(n)


def _check_m(m, l):
    if abs(m) > l + 1e-12 or abs((l - m) - round(l - m)) > 1e-9:
        raise ValidationError(f"m={m} is not a valid projection for l={l}")


def medium_spectrum(n, l, K):
    """Closed-form level ``E_n = (K/2)(l(l+1) - (n-l)^2)`` of the kappa=1 oscillator."""
    l = half_integer(l)
    n = _check_level(n, l)
    return 0.5 * K * (l * (l + 1) - (n - l) ** 2)


def medium_levels(l, K):
    """Distinct kappa=1 levels n=0..floor(l) with their multiplicities (2, or 1 at m=0)."""
    l = half_integer(l)
    ns = np.arange(int(math.floor(l)) + 1)
    energies = 0.5 * K * (l * (l + 1) - (ns - l) ** 2)
    mult = np.where(ns == l, 1, 2)
    return Spectrum.from_levels(energies, mult)


def soft_spectrum_pt(m, l, K, kappa2):
    """First-order estimate ``(K/2) m^2 + (K/4) kappa2 (l(l+1) - m^2)`` for a soft oscillator."""
    l = half_integer(l)
    _check_m(m, l)
    if kappa2 < 0 or kappa2 > 1:
        raise ValidationError(f"soft perturbation theory needs 0 <= kappa2 <= 1, got {kappa2}")
    if kappa2 > 0.1:
        warnings.warn(f"kappa2={kappa2} is large for soft perturbation theory", RuntimeWarning, stacklevel=2)
    return 0.5 * K * m * m + 0.25 * K * kappa2 * (l * (l + 1) - m * m)


def hard_spectrum_pt(m, l, K, kappa2):
    """Hard-oscillator estimate via ``kappa -> 1/kappa``, ``K -> K kappa2`` in the soft formula."""
    if not kappa2 >= 1:
        raise ValidationError(f"hard perturbation theory needs kappa2 >= 1, got {kappa2}")
    if kappa2 < 10:
        warnings.warn(f"kappa2={kappa2} is small for hard perturbation theory", RuntimeWarning, stacklevel=2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return soft_spectrum_pt(m, l, K * kappa2, 1.0 / kappa2)


def hard_zero_point_limit(l, K):
    """``kappa2 -> infinity`` limit of the hard ground energy, ``(K/4) l(l+1)``."""
    l = half_integer(l)
    return 0.25 * K * l * (l + 1)


def variational_ground_bound(l, K, kappa2):
    """``<l, +-l| H |l, +-l> = (K l / 4)(1 + kappa2)``, an upper bound on the ground energy."""
    l = half_integer(l)
    _positive("K", K)
    _positive("kappa2", kappa2)
    return 0.25 * K * l * (1.0 + kappa2)


class Regime(str, enum.Enum):
    SOFT = "Soft"
    MEDIUM = "Medium"
    HARD = "Hard"


@dataclass(frozen=True)
class RegimeLabel:
    regime: Regime
    soft_threshold: float
    hard_threshold: float

    def __str__(self):
        return self.regime.value


def classify_regime(kappa2, l):
    """Soft if kappa2 < 1/l, Hard if kappa2 > l, Medium otherwise."""
    kappa2 = _positive("kappa2", kappa2)
    l = _positive("l", half_integer(l))
    lo, hi = 1.0 / l, l
    if kappa2 < lo:
        label = Regime.SOFT
    elif kappa2 > hi:
        label = Regime.HARD
    else:
        label = Regime.MEDIUM
    return RegimeLabel(label, lo, hi)


@dataclass(frozen=True)
class UncertaintyReport:
    dq2: float
    dp2: float
    product: float
    mean_l3: float
    bound: float
    bound_extremal: float
    ratio: float

    def as_dict(self):
        return {
            "dq2": self.dq2,
            "dp2": self.dp2,
            "product": self.product,
            "mean_l3": self.mean_l3,
            "bound": self.bound,
            "bound_extremal": self.bound_extremal,
            "ratio": self.ratio,
        }


def uncertainty_report(rep, qc, state):
    """Position/momentum uncertainty product of ``state`` against the Heisenberg value.

    ``bound`` uses the state's own ``<L3>``: ``(hbar^2/4) <L3/l>^2``, which the
    product can never undercut. ``bound_extremal`` is ``hbar^2/4`` (``<L3> = l``)
    and ``ratio`` is ``product / (hbar^2/4)``.
    """
    if abs(rep.l - qc.l) > 1e-9:
        raise ValidationError(f"representation has l={rep.l}, constants give l={qc.l}")
    _, var1 = expectation_and_variance(rep.L1, state)
    _, var2 = expectation_and_variance(rep.L2, state)
    mean3, _ = expectation_and_variance(rep.L3, state)
    dq2 = qc.Q ** 2 * var1
    dp2 = qc.Qp ** 2 * var2
    heis = 0.25 * qc.hbar ** 2
    return UncertaintyReport(
        dq2=dq2,
        dp2=dp2,
        product=dq2 * dp2,
        mean_l3=mean3,
        bound=heis * (mean3 / rep.l) ** 2,
        bound_extremal=heis,
        ratio=dq2 * dp2 / heis,
    )


def spacing_deviation_profile(l, K, n_max):
    """Level spacings ``E_{n+1} - E_n`` for n < n_max and their deviation from ``K l``.

    Returns an ``(n_max, 3)`` array of ``(n, spacing, |spacing - K l| / (K l))``.
    """
    l = half_integer(l)
    if int(n_max) != n_max or not 0 <= n_max <= round(2 * l):
        raise ValidationError(f"n_max={n_max} outside 0..{2 * l:g}")
    n = np.arange(int(n_max))
    e = 0.5 * K * (l * (l + 1) - (n - l) ** 2)
    e1 = 0.5 * K * (l * (l + 1) - (n + 1 - l) ** 2)
    spacing = e1 - e
    dev = np.abs(spacing - K * l) / (K * l)
    return np.column_stack([n, spacing, dev])


@dataclass(frozen=True)
class Thermal:
    Z: float
    log_z: float
    mean_energy: float
    heat_capacity: float


def partition_function(spectrum, beta):
    """Canonical ensemble averages with k_B = 1.

    Accepts a :class:`Spectrum` (levels weighted by multiplicity). Exponents
    are shifted by the lowest level so large ``beta`` cannot overflow.
    """
    beta = _positive("beta", beta)
    levels = np.asarray(spectrum.levels, dtype=float)
    mult = np.asarray(spectrum.multiplicities, dtype=float)
    e0 = levels.min()
    w = mult * np.exp(-beta * (levels - e0))
    s = w.sum()
    p = w / s
    mean = float(p @ levels)
    var = float(p @ (levels - mean) ** 2)
    log_z = float(math.log(s) - beta * e0)
    return Thermal(math.exp(log_z) if log_z < 700 else math.inf, log_z, mean, beta * beta * var)


@dataclass(frozen=True)
class OscillatorModel:
    """A fully specified finite oscillator: representation, constants, parameters."""

    qc: QuantumConstants
    params: OscillatorParams
    rep: object = field(repr=False)

    @classmethod
    def from_kappa2(cls, l, kappa2, K=None, hbar=1.0, mass=1.0):
        """Build with ``ratio = hbar1/hbar2`` chosen so that ``Qp^2/mass == K``.

        With ``K`` omitted, ``hbar1 = hbar2 = 1/l``.
        """
        l = half_integer(l)
        if K is None:
            qc = derive_constants(hbar, l, 1.0)
        else:
            # K = hbar*hbar2/mass and hbar2 = 1/(l sqrt(ratio))
            hbar2 = _positive("K", K) * mass / hbar
            ratio = (1.0 / (l * hbar2)) ** 2
            qc = derive_constants(hbar, l, ratio)
        params = OscillatorParams.from_kappa2(qc, kappa2, mass)
        return cls(qc, params, build_angular_momentum(l))

    @property
    def l(self):
        return self.rep.l

    @property
    def K(self):
        return self.params.K(self.qc)

    @property
    def kappa2(self):
        return self.params.kappa2(self.qc)

    @property
    def hbar_omega(self):
        return self.qc.hbar * self.params.omega

    def hamiltonian(self):
        return build_hamiltonian(self.rep, self.qc, self.params)

    def spectrum(self, degeneracy_tol=None):
        return hermitian_eigensystem(self.hamiltonian(), degeneracy_tol)

    def regime(self):
        return classify_regime(self.kappa2, self.l)


@dataclass(frozen=True)
class PerturbativeComparison:
    """Exact spectrum against a first-order estimate.

    The estimate is degenerate in ``+-m``; exact levels are paired with it by
    averaging each degenerate group (the first-order energy of a degenerate
    pair is the mean of the split levels). ``raw_max_abs_error`` compares the
    sorted lists one by one and so also carries any first-order splitting.
    """

    pt_levels: np.ndarray
    exact_centroids: np.ndarray
    abs_errors: np.ndarray
    max_abs_error: float
    relative_error: float
    raw_max_abs_error: float
    max_splitting: float
    per_level_relative: np.ndarray


def compare_perturbative(l, K, kappa2, regime="soft"):
    """Diagonalize ``H`` and compare with the soft or hard first-order formula.

    ``relative_error`` is ``max_abs_error / max|E_exact|``.
    """
    l = half_integer(l)
    rep = build_angular_momentum(l)
    exact = np.linalg.eigvalsh(oscillator_hamiltonian(rep, K, kappa2))
    ms = l - np.arange(rep.dim)
    if regime == "soft":
        pt = np.array([soft_spectrum_pt(m, l, K, kappa2) for m in ms])
    elif regime == "hard":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            pt = np.array([hard_spectrum_pt(m, l, K, kappa2) for m in ms])
    else:
        raise ValidationError(f"regime must be 'soft' or 'hard', got {regime!r}")
    pt = np.sort(pt)
    # the +-m pairs of the estimate are exactly equal; group on a tiny tolerance
    levels, _, labels = _groups(pt)
    centroids = np.array([exact[labels == g].mean() for g in range(levels.size)])
    spread = np.array([np.ptp(exact[labels == g]) for g in range(levels.size)])
    err = np.abs(centroids - levels)
    top = float(np.max(np.abs(exact)))
    return PerturbativeComparison(
        pt_levels=levels,
        exact_centroids=centroids,
        abs_errors=err,
        max_abs_error=float(err.max()),
        relative_error=float(err.max() / top),
        raw_max_abs_error=float(np.max(np.abs(exact - pt))),
        max_splitting=float(spread.max()),
        per_level_relative=err / np.abs(centroids),
    )


def _groups(sorted_values):
    scale = float(np.max(np.abs(sorted_values))) or 1.0
    return group_levels(sorted_values, 1e-12 * scale)
