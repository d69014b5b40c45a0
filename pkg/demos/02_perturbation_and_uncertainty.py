"""Soft and hard oscillators: first-order estimates and the uncertainty product.

Run: python3 demos/02_perturbation_and_uncertainty.py
"""
from finq import OscillatorModel, compare_perturbative, uncertainty_report

l = 20
print("soft oscillator, K = 1")
for k2 in (1e-3, 5e-4):
    c = compare_perturbative(l, 1.0, k2, "soft")
    print(f"  kappa2 = {k2:g}: relative error {c.relative_error:.3e}, "
          f"largest first-order doublet splitting {c.max_splitting:.3e}")

print("hard mirror (K -> K kappa2, kappa2 -> 1/kappa2) gives the same numbers")
for k2 in (1e-3, 5e-4):
    c = compare_perturbative(l, k2, 1.0 / k2, "hard")
    print(f"  kappa2 = {1 / k2:g}: relative error {c.relative_error:.3e}")

print("\nuncertainty product relative to hbar^2/4")
for label, K, k2 in (("medium", 1.0, 1.0), ("soft", 1.0, 1e-3), ("hard", 1e-3, 1e3)):
    model = OscillatorModel.from_kappa2(l, k2, K=K)
    ground = model.spectrum().eigenvectors[:, 0]
    rep = uncertainty_report(model.rep, model.qc, ground)
    print(f"  {label:6s} ground state: ratio {rep.ratio:.4f}")
top = OscillatorModel.from_kappa2(l, 1.0)
print(f"  |L3 = l> state:      ratio {uncertainty_report(top.rep, top.qc, top.rep.basis_state(l)).ratio:.4f}")
