"""Certify Delaunay triangulations with exact incircle predicates.

A sheared torus puts the long diagonal inside the circumcircle of its
neighbor, so the flip algorithm has real work to do.  Every flip records its
exact before/after incircle certificates.

Run:  python demos/02_delaunay_flips.py
"""

from fractions import Fraction

from qdlab import delaunayize, is_delaunay
from qdlab.builders import skewed_torus

for shear in (Fraction(1, 10), Fraction(7, 2), Fraction(23, 3)):
    s = skewed_torus(shear)
    ok, bad = is_delaunay(s)
    d, records = delaunayize(s)
    print(f"shear {shear}:  initially Delaunay: {ok} "
          f"(violating edges {bad})")
    for r in records:
        print(f"   flip edge {r.edge}: incircle {r.incircle_before} -> "
              f"{r.incircle_after}, violations {r.violations_before} -> "
              f"{r.violations_after}")
    print(f"   certified after {len(records)} flips: {is_delaunay(d)[0]}")

print()
print("Certificates are exact rational 3x3 determinants; cocircular quads")
print("(as in square-tiled surfaces) count as Delaunay, so the loop is")
print("deterministic and terminates.")
