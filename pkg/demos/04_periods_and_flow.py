"""Period coordinates, the area identity, flow and affine deformation.

Three exact facts, live:

* sqrt(-1) * wedge(u, conj u) = 4 * area   (Riemann's identity),
* the geodesic flow acts by Re + i e^{-2t} Im on every period,
* an affine deformation shifts periods by exactly its cohomology vector.

Run:  python demos/04_periods_and_flow.py
"""

import math
from fractions import Fraction

from qdlab import (
    affine_deform,
    area,
    build_cover,
    bundled_surface,
    geodesic_flow,
    homology_data,
    period_map,
    wedge,
)
from qdlab.exact import QC, QC_I
from qdlab.periods import PeriodVector

s = bundled_surface("genus2_generic")
c = build_cover(s)
h = homology_data(c)
u = period_map(c, h)
print("periods of the genus-2 surface on the anti-invariant basis:")
for z in u.coords:
    print("   ", z)

iw = QC_I * wedge(h, u, u.conjugate())
print(f"i * wedge(u, conj u) = {iw.re} (exact)   4 * area = {4 * area(s)}")

t = 0.5 * math.log(2)
ct = build_cover(geodesic_flow(s, t))
ut = period_map(ct, h)
print(f"\nafter geodesic flow with e^(-2t) = 1/2:")
for z0, z1 in zip(u.coords, ut.coords):
    print(f"   {complex(z0):.3f} -> {complex(z1):.3f}")

v = PeriodVector(tuple(QC(Fraction(1, 20), Fraction(-1, 30))
                       for _ in u.coords), h.basis_tag, "relative", "exact")
c2 = affine_deform(c, h, v)
u2 = period_map(c2, h)
print("\naffine deformation: period_map(new) - period_map(old) - v =",
      "0 (exact)" if (u2 - u - v).is_zero() else "NONZERO")
