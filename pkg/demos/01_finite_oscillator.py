"""A finite oscillator on a spin-l representation, and how it approaches the canonical one.

Run: python3 demos/01_finite_oscillator.py
"""
from finq import CanonicalOscillator, OscillatorModel, classify_regime, compare_spectra
from finq.oscillator import medium_levels

# The Hamiltonian H = (K/2)(L2^2 + kappa2 L1^2) lives on 2l+1 states.
model = OscillatorModel.from_kappa2(l=10, kappa2=1.0, K=1.0)
spec = model.spectrum()
print(f"l = {model.l:g}, K = {model.K:g}, kappa2 = {model.kappa2:g}, regime = {model.regime()}")
print("lowest levels and multiplicities:")
for e, m in list(zip(spec.levels, spec.multiplicities))[:5]:
    print(f"  E = {e:8.4f}  x{m}")
print(f"ground energy K l / 2 = {model.K * model.l / 2:g}; top level (K/2) l(l+1) = {spec.eigenvalues[-1]:g}")

# Regimes are set by kappa2 against 1/l and l.
for k2 in (1e-3, 0.5, 50.0):
    print(f"kappa2 = {k2:g} at l = 10 -> {classify_regime(k2, 10)}")

# With K = hbar*omega / l the low levels crowd toward hbar*omega (n + 1/2).
osc = CanonicalOscillator.with_quantum(1.0)
print("\nl       max rel deviation of the lowest 10 levels")
for l in (10, 100, 1000, 10000):
    cmp = compare_spectra(medium_levels(l, 1.0 / l), osc, 10)
    print(f"{l:<7d} {cmp.max:.3e}")
