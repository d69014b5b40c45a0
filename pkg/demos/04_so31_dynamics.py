"""The six dynamical generators inside so(3,1) and their commutator table.

Run: python3 demos/04_so31_dynamics.py
"""
from finq import commutator_table, make_ledger, physical_generators, singular_ledger, singular_limit_deviation
from finq.dynamics import dynamical_constraint, jacobi_constraint_chain

ledger = make_ledger(Qb=1.0, Qq=1.0, Qp=2.0, Qt=2.0, QE=1.0, Qr=1.0)
table = commutator_table(physical_generators(ledger), ledger)
print(f"global normalization c = {table.normalization:g}")
print("pair    target  measured  Q_v Q_w / Q_u  sign as printed")
for row in table.rows:
    target = row.target or "0"
    print(f"[{row.pair[0]},{row.pair[1]}]   {target:6s}  {row.coeff_measured:8.3f}  "
          f"{row.coeff_expected_pattern:13.3f}  {row.sign_match}")
print(f"vanishing brackets: {table.zero_pairs}")

chain = jacobi_constraint_chain(ledger)
print(f"\nhbar^2 = {chain.lhs:g}, hbar_pb * hbar_qt = {chain.rhs:g}")

print("\napproach to the singular table ([q,t]-type structure constants / hbar)")
for p in singular_limit_deviation([singular_ledger(d) for d in (1.0, 0.1, 0.01, 0.001)]):
    print(f"  delta = {p.ledger.Qq:g}: [q,t] {p.deviations['q,t']:.1e}, [p,E] {p.deviations['p,E']:.1e}, "
          f"[t,E] defect {p.tE_defect:.1e}")

probe = dynamical_constraint(1.0, 1.0, 1.0)
print(f"\nE - H constraint: commutant probe norm {probe.probe_norm:.4f} (reported, not assumed zero)")
