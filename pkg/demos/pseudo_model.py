"""The SU(1,1) cousin of the Jaynes-Cummings model.

Swapping the atomic ladder for an SU(1,1) one makes the Hamiltonian
pseudo-Hermitian, H^dag = J H J. Its "radius" S(N) = sqrt(theta^2 - N) is real
only on a finite stretch of Fock space. The model therefore lives on
F_n + F_{n+1}, where n is fixed by the detuning.
"""

import numpy as np

from ncfock import pseudo
from ncfock.fock import reference_exponential

for theta in (1.5, 2.2, 3.1, 9.5):
    m = pseudo.PseudoModel(theta)
    J, V = pseudo.signature(m), pseudo.v_operator(m)
    print(f"theta = {theta}: admissible level n = {m.level}, blocks {m.dims}")
    print(f"  V^dag J V - J          : {np.abs((V.dag @ J @ V - J).dense).max():.1e}")
    print(f"  factorization residual : {pseudo.pseudo_factorization(m):.1e}")
    E = pseudo.evolution_closed_pseudo(m, 5.0)
    ref = reference_exponential(pseudo.h_pjc(m), 5.0, hermitian=False)
    print(f"  closed-form evolution  : {np.abs(E.dense - ref.dense).max():.1e}")
    print(f"  pseudo-unitarity of E  : {np.abs((E.dag @ J @ E - J).dense).max():.1e}")

print("\nBelow theta = 1 there is no admissible subspace:")
try:
    pseudo.admissible_level(0.9)
except Exception as exc:  # noqa: BLE001
    print(f"  {type(exc).__name__}: {exc}")
