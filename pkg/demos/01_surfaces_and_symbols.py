"""Build the bundled half-translation surfaces and read off their invariants.

A surface is a bag of Euclidean triangles glued edge-to-edge; every gluing
carries a sign telling whether the square-root branch of the differential
flips across it.  Cone angles, stratum symbols and areas all come out of that
data exactly.

Run:  python demos/01_surfaces_and_symbols.py
"""

from qdlab import area, bundled_names, bundled_surface, stratum_dim, symbol
from qdlab.svg import save_svg

for name in bundled_names():
    s = bundled_surface(name)
    sym = symbol(s)
    print(f"== {name}")
    print(f"   triangles: {len(s.triangles)}, genus {s.genus()}, "
          f"marked points {len(s.marked)}")
    print(f"   cone orders: {sorted(s.orders().values())}")
    print(f"   symbol {sym}, stratum dimension {stratum_dim(sym, s.genus())}")
    print(f"   area (L1 norm of the differential): {area(s)}")
    out = f"demos/out_{name}.svg"
    save_svg(s, out)
    print(f"   developed net written to {out}")
print()
print("The sign cocycle is what distinguishes the pillowcase (eps = -1, its")
print("differential is not a global square) from the L-origami (eps = +1).")
