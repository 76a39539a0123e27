"""The distance identities: first variation, Levi form, harmonic disks,
Demailly limit.

Along a linear-period family the norm is an exact quadratic polynomial in
(lambda, conj lambda), so finite differences of arctanh(norm) can be checked
against the closed wedge formulas to many digits.

Run:  python demos/05_distance_identities.py
"""

import random
from fractions import Fraction

from qdlab import (
    FDConfig,
    build_cover,
    bundled_surface,
    demailly_ratio,
    disk_harmonicity_check,
    first_variation_check,
    homology_data,
    laplacian_check_linear,
)
from qdlab.deformation import DeformationFamily
from qdlab.exact import QC
from qdlab.levi import scenario_identity_check
from qdlab.periods import PeriodVector

rng = random.Random(0)
s = bundled_surface("pillowcase").scaled(Fraction(1, 2))   # area 1/2 < 1
c = build_cover(s)
h = homology_data(c)


def rand_dir():
    return PeriodVector(
        tuple(QC(Fraction(rng.randint(-3, 3), 12),
                 Fraction(rng.randint(-3, 3), 12)) for _ in h.rel_minus_basis),
        h.basis_tag, "relative", "exact")


fam = DeformationFamily(s, c, h, rand_dir(), rand_dir())
rep = first_variation_check(fam, FDConfig(tolerance=1e-6))
case = rep.cases[0]
print("first variation of the Teichmuller distance:")
print(f"   finite differences: {complex(*case['fd']):.12f}")
print(f"   wedge formula:      {complex(*case['formula']):.12f}")
print(f"   relative error:     {rep.max_rel_err:.2e}")

rep = laplacian_check_linear(fam, FDConfig(step=1e-3, tolerance=1e-5))
print("Laplacian along the family:")
print(f"   finite differences: {rep.cases[0]['fd']:.10f}")
print(f"   closed form:        {rep.cases[0]['closed_form']:.10f}")

rep = disk_harmonicity_check(bundled_surface("marked_torus"), 0.7,
                             cfg=FDConfig(step=1e-3, tolerance=1e-5))
print(f"log tanh distance on the Teichmuller disk: max |FD Laplacian| over "
      f"{len(rep.cases)} points = {rep.max_abs_err:.2e}")

rep = demailly_ratio(0.3, 0.7, [4, 6, 8, 10])
print("Demailly ratio along a ray (target 2*(0.7-0.3) = 0.8):")
for casev in rep.cases[:-1]:
    print(f"   t = {casev['t']:>4}: |log ratio| = {casev['log_ratio']:.10f}")

rep = scenario_identity_check(random.Random(1), count=200)
print(f"Levi-form algebra on 200 random exact scenarios: "
      f"{'all identities hold' if rep.passed else 'FAILED'}")
