"""The orientation double cover and its anti-invariant homology.

The square root of the differential becomes single-valued on a double cover
branched over the odd-order singularities.  Period coordinates live on the
(-1)-eigenspace of the covering involution acting on relative homology; its
rank equals the stratum dimension -- an exact integer identity checked here.

Run:  python demos/03_double_cover_homology.py
"""

from qdlab import (
    build_cover,
    bundled_names,
    bundled_surface,
    homology_data,
    stratum_dim,
    symbol,
)

for name in bundled_names():
    s = bundled_surface(name)
    c = build_cover(s)
    h = homology_data(c)
    info = c.summary()
    print(f"== {name}")
    print(f"   cover: components {info['components']}, "
          f"genus {info['genus_per_component']}, "
          f"branch points {info['branch_points']}")
    print(f"   chi(cover) = {info['euler_characteristic']} = "
          f"2*{s.euler_characteristic()} - {info['branch_points']}")
    print(f"   rank H1(cover)^-          = {h.rank_abs_minus()}")
    print(f"   rank H1(cover, Sigma)^-   = {h.rank_rel_minus()}  "
          f"(stratum dim = {stratum_dim(symbol(s), s.genus())})")
    n = h.rank_abs_minus()
    print(f"   intersection matrix J is {n}x{n}, antisymmetric, exact")
