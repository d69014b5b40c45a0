"""Flexing the Heisenberg algebra into a semisimple one, watched through the Killing form.

Run: python3 demos/03_flexion_and_killing.py
"""
from finq import flexed_oscillator_algebra, jacobi_residual, killing_report
from finq.lie import a_line_rep, contraction_distance, d_line_rep, flexed_by_rescaling

flat = flexed_oscillator_algebra(1.0, 1.0, 1.0, 0.0)
print("eps      rank  singular values              distance to flat")
for eps in (1.0, 0.1, 1e-3, 0.0):
    t = flexed_oscillator_algebra(1.0, 1.0, 1.0, eps)
    rep = killing_report(t)
    sv = ", ".join(f"{s:.1e}" for s in rep.singular_values)
    print(f"{eps:<8g} {rep.rank:<5d} [{sv}]  {contraction_distance(t, flat):.1e}")

t = flexed_oscillator_algebra(1.0, 0.5, 2.0, 0.01)
print(f"\nJacobi residual of a flexed algebra: {jacobi_residual(t):.1e}")
print(f"rescaling so(3) reproduces it to {contraction_distance(t, flexed_by_rescaling(1.0, 0.5, 2.0, 0.01)):.1e}")

print("\nrepresentation lines")
for n in (1, 2, 3):
    print(f"  A line gl({n + 1}): closure residual {a_line_rep(n).closure()[1]:.1e}")
for n in (2, 4):
    rep = d_line_rep(n)
    print(f"  D line so({n + 2}): closure residual {rep.closure()[1]:.1e}, "
          f"[q1, p1] = {rep.extra['qp_coefficient']:g} r")
