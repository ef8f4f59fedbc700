"""Where the Jaynes-Cummings charts break down.

The classical spin-in-a-field Hamiltonian has two diagonalizing charts. Each
one fails on half of the z-axis, and the two are glued together by a phase.
The operator-valued (Jaynes-Cummings) version keeps the same two charts, but
the failure set shrinks to a single state: the lower component of |0>.
"""

import numpy as np

from ncfock import classical, jc
from ncfock.classical import BerryPoint, Chart
from ncfock.errors import DiracString
from ncfock.fock import FockSpace, band_residual, reference_exponential

print("Classical charts along the z-axis")
for z in (-1.0, 1.0):
    for chart in Chart:
        try:
            classical.berry_diagonalizer(BerryPoint(0, 0, z), chart)
            status = "defined"
        except DiracString:
            status = "Dirac string"
        print(f"  z = {z:+.0f}, chart {chart.value}: {status}")

space = FockSpace(64)
print("\nJC charts: singular Fock states of each normalizer")
for theta in (-1.5, 1.5):
    m = jc.DetunedModel(theta, space)
    print(f"  theta = {theta:+}: chart I {jc.singular_set(m, Chart.I)}, "
          f"chart II {jc.singular_set(m, Chart.II)}")

theta = 1.0
m = jc.DetunedModel(theta, space)
U, D, H = jc.u_chart(m, Chart.I), jc.chart_eigenvalues(m, Chart.I), jc.h_jc(m)
print(f"\nAt theta = {theta}, chart I diagonalizes H_JC away from the cutoff:")
print(f"  |U D U^dag - H| on band 2 = {band_residual(U @ D @ U.dag, H, 2):.2e}")

print("\nClosed-form evolution against a brute-force exponential (band 2):")
for gt in (0.1, 1.0, 5.0, 20.0):
    E = jc.evolution_closed(m, gt)
    print(f"  gt = {gt:5}: {band_residual(E, reference_exponential(H, gt), 2):.2e}")

# Rabi oscillation of the excited atom in the vacuum
print("\nExcited atom, empty field:")
psi0 = np.zeros(2 * space.dim)
psi0[0] = 1.0
for gt in np.linspace(0, np.pi, 5):
    psi = jc.evolution_closed(m, gt).dense @ psi0
    print(f"  gt = {gt:.3f}: P(up) = {np.sum(np.abs(psi[:space.dim]) ** 2):.4f}")
