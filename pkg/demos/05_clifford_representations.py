"""Clifford-algebra realizations: stationary (q, p, r) and the dynamical so(3,1).

Run: python3 demos/05_clifford_representations.py
"""
from finq import build_clifford, dynamical_rep, generator_digest, stationary_rep
from finq.clifford import anticommutation_residual, commutant_dimension
from finq.dynamics import time_spectrum_profile
from finq.oscillator import derive_constants

for p, q in ((2, 0), (3, 1), (6, 2)):
    cl = build_clifford(p, q)
    print(f"Cl({p},{q}): {cl.total} generators of size {cl.dim}, "
          f"signature {cl.signature}, anticommutation residual {anticommutation_residual(cl)}")
print(f"Cl(3,1) digest {generator_digest(build_clifford(3, 1))[:16]}...")

qc = derive_constants(hbar=1.0, l=2, ratio=1.0)
st = stationary_rep(2, qc)
print(f"\nstationary N=2: effective constants {st.effective_constants} (twice hbar, hbar', hbar'')")

for N in (1, 2):
    rep = dynamical_rep(N)
    prof = time_spectrum_profile(rep.algebra["13"])
    pairs = ", ".join(f"{e:g}:{m}" for e, m in zip(prof.eigenvalues, prof.multiplicities))
    print(f"\ndynamical N={N}: spinor dim {rep.spinor_dim}, algebra dim {rep.algebra_dim}, c = {rep.normalization:g}")
    print(f"  commutant dimension on spinors {commutant_dimension(rep.spinor)}")
    print(f"  time generator spectrum (eigenvalue:multiplicity) {pairs}")
