"""Enumerate stratum symbols and their collision adjacencies.

Run:  python demos/06_strata_poset.py
"""

from qdlab import stratum_dim
from qdlab.strata import SymbolPoset, degenerates_to
from qdlab.surface import make_symbol

for g, m in ((0, 4), (1, 1), (2, 0)):
    p = SymbolPoset(g, m)
    print(f"== (g, m) = ({g}, {m}): {len(p.nodes)} symbols, "
          f"{len(p.edges)} collision edges")
    for i, sym in enumerate(p.nodes):
        print(f"   [{i}] {sym}  dim {stratum_dim(sym, g)}")
    for i, j in p.edges:
        print(f"   {i} -> {j}")
    with open(f"demos/out_strata_{g}_{m}.dot", "w") as fh:
        fh.write(p.to_dot() + "\n")

top = make_symbol(0, 0, {1: 4}, -1)
deep = make_symbol(0, 0, {4: 1}, 1)
print("\ngeneric genus-2 differentials degenerate onto the square locus in "
      "several collisions:", degenerates_to(top, deep, 2, 0))
