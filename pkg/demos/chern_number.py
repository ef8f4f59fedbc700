"""The pulled-back Veronese bundle has Chern number n.

Pulling the tautological line bundle of CP^n back along the degree-n Veronese
map multiplies the connection by n. The curvature integral over the plane
then returns the degree.
"""

from ncfock import chern
from ncfock.quadrature import QuadratureConfig

z = 0.6 - 0.8j
for n in (1, 2, 3):
    ratio = chern.pullback_connection_coefficient(z, n) / chern.connection_coefficient(z)
    print(f"n = {n}: connection ratio at z = {z} is {ratio.real:.12f}")

for transform in ("rational", "tangent"):
    cfg = QuadratureConfig(radial_transform=transform)
    values = [chern.chern_number(n, cfg) for n in (1, 2, 3, 5, 8)]
    print(f"{transform:>8} radial map:", "  ".join(f"{v:.12f}" for v in values))
