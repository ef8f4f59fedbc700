"""Non-commutative Veronese maps and spin representations.

Classically, the degree-n Veronese map sends a point of the sphere to the
spin-n/2 coherent state. Here the entries become ordered products of Fock
operators. The first column of the operator-valued spin-1 matrix is the
degree-2 Veronese column.
"""

import numpy as np

from ncfock import classical, jc
from ncfock import representations as rep
from ncfock import veronese as ver
from ncfock.fock import FockSpace, band_residual, identity

M = 64
m = jc.DetunedModel(1.0, FockSpace(M))
one = identity(m.space)
for n in range(1, 5):
    A = ver.veronese_column(m, n).as_block()
    P = ver.veronese_projector(m, n)
    print(f"n = {n}: isometry {band_residual(A.dag @ A, one, n + 1):.1e}, "
          f"idempotence {band_residual(P @ P, P, n + 2):.1e}")

P1 = rep.nc_phi_one(m)
col = ver.veronese_column(m, 2)
print("\nspin-1 operator matrix, first column vs Veronese column:",
      f"{max(np.abs(P1.block(i, 0) - col[i].matrix).max() for i in range(3)):.1e}")

rng = np.random.default_rng(0)
A = classical.group_exponential(rng.normal(size=3), "su2")
print("\nClassical spin-3/2 matrix vs closed form:",
      f"{np.abs(rep.spin_rep_su2(1.5, A) - rep.spin_closed_form(1.5, A)).max():.1e}")
print("1/2 x 1/2 = 1 + 0 decomposition residual:", f"{rep.tensor_decomposition_su2(A, 2):.1e}")

print("\nThe operator version of that decomposition fails, and the failure is not a")
print("truncation artifact:")
for cutoff in (32, 64):
    r = rep.nc_tensor_obstruction(jc.DetunedModel(1.0, FockSpace(cutoff)))
    print(f"  M = {cutoff}: obstruction residual {r:.5f}")

B = classical.group_exponential([0.3, -0.2, 0.4], "su11")
column = rep.su11_rep(2, B)[:, 0]
print(f"\nSU(1,1), j = 2: first column has norm^2 - 1 = {np.vdot(column, column).real - 1:.1e}"
      f" at cutoff {len(column)}")
