"""First variation, Levi form, disk harmonicity, Demailly, Thurston pairing."""

import math
import random
from fractions import Fraction

import pytest

from qdlab.builders import bundled_surface
from qdlab.cover import build_cover
from qdlab.deformation import DeformationFamily, teich_disk_family
from qdlab.errors import InconsistentFunctional, NegativeNorm
from qdlab.exact import QC, QC_I
from qdlab.homology import homology_data, wedge
from qdlab.levi import (
    FDConfig,
    PairingScenario,
    WedgeTable,
    demailly_ratio,
    disk_harmonicity_check,
    first_variation_check,
    laplacian_check_linear,
    levi_nonneg_quantity,
    log_tanh,
    norm_of_linear_family,
    scenario_identity_check,
    thurston_pairing,
    _fd_laplacian,
)
from qdlab.periods import PeriodVector, period_map
from qdlab.surface import area


def _scaled_ctx(name="pillowcase", scale=Fraction(1, 2)):
    s = bundled_surface(name).scaled(scale)
    c = build_cover(s)
    h = homology_data(c)
    return s, c, h


def _rand_rel(h, rng, span=4, scale=Fraction(1, 12)):
    return PeriodVector(
        tuple(QC(Fraction(rng.randint(-span, span), rng.randint(1, 3)) * scale,
                 Fraction(rng.randint(-span, span), rng.randint(1, 3)) * scale)
              for _ in range(len(h.rel_minus_basis))),
        h.basis_tag, "relative", "exact")


class TestNormOfLinearFamily:
    def test_lambda_zero_is_area(self):
        s, c, h = _scaled_ctx()
        u = period_map(c, h)
        fam = DeformationFamily(s, c, h, u.zero_like(), u.zero_like())
        assert norm_of_linear_family(fam, QC(0, 0)) == area(s)

    def test_constant_when_directions_vanish(self):
        s, c, h = _scaled_ctx()
        u = period_map(c, h)
        fam = DeformationFamily(s, c, h, u.zero_like(), u.zero_like())
        a = area(s)
        for lam in (QC(Fraction(1, 3), Fraction(-2, 5)), QC(2, 1)):
            assert norm_of_linear_family(fam, lam) == a

    def test_exact_quadratic_polynomial(self):
        # value equals its degree-2 expansion built from the eight wedge
        # numbers: evaluate at rational lambdas and compare against an
        # independently assembled polynomial
        rng = random.Random(31)
        s, c, h = _scaled_ctx()
        v1 = _rand_rel(h, rng)
        v2 = _rand_rel(h, rng)
        fam = DeformationFamily(s, c, h, v1, v2)
        u = fam.u
        t = WedgeTable(h, u, v1, v2)
        i4 = QC(0, Fraction(1, 4))

        def poly(lam):
            lamb = lam.conjugate()
            coef = {"u": QC(1, 0), "v1": lam, "v2": lamb}
            tot = QC(0, 0)
            for a in ("u", "v1", "v2"):
                for b in ("u", "v1", "v2"):
                    tot = tot + coef[a] * coef[b].conjugate() * t.wc[a][b]
            return i4 * tot

        for lam in (QC(Fraction(1, 5), Fraction(1, 7)),
                    QC(Fraction(-2, 9), Fraction(3, 11))):
            got = norm_of_linear_family(fam, lam)
            want = poly(lam)
            assert want.im == 0 and got == want.re

    def test_negative_norm_raises(self):
        s, c, h = _scaled_ctx()
        u = period_map(c, h)
        fam = DeformationFamily(s, c, h, u.zero_like(), u.scale(Fraction(1, 1)))
        with pytest.raises(NegativeNorm):
            # u + lambda-bar u collapses at lambda = -1
            norm_of_linear_family(fam, QC(-1, 0))


class TestFirstVariation:
    def test_zero_directions(self):
        s, c, h = _scaled_ctx()
        u = period_map(c, h)
        fam = DeformationFamily(s, c, h, u.zero_like(), u.zero_like())
        rep = first_variation_check(fam)
        assert rep.passed
        case = rep.cases[0]
        assert abs(complex(*case["formula"])) < 1e-15
        assert abs(complex(*case["fd"])) < 1e-8

    def test_random_families_match(self):
        rng = random.Random(37)
        s, c, h = _scaled_ctx()
        cfg = FDConfig(step=1e-4, richardson_levels=1, tolerance=1e-6)
        for _ in range(8):
            fam = DeformationFamily(s, c, h, _rand_rel(h, rng), _rand_rel(h, rng))
            rep = first_variation_check(fam, cfg)
            assert rep.passed, rep.as_json()

    def test_negative_control(self):
        # v1 with nonzero v1^ubar: the reduced form must fail hard
        rng = random.Random(41)
        s, c, h = _scaled_ctx()
        cfg = FDConfig(tolerance=1e-6)
        found = False
        for _ in range(20):
            fam = DeformationFamily(s, c, h, _rand_rel(h, rng), _rand_rel(h, rng))
            rep = first_variation_check(fam, cfg)
            case = rep.cases[0]
            if abs(complex(*case["v1_wedge_ubar"])) > 1e-3:
                assert case["reduced_rel_err"] >= 10 * cfg.tolerance
                found = True
        assert found

    def test_disk_family_derivative_is_half(self):
        # the Teichmuller disk gives d_lambda = 1/2 exactly
        s = bundled_surface("marked_torus").scaled(Fraction(4, 5))
        d0 = math.atanh(float(area(s)))
        fam = teich_disk_family(s, d0)
        rep = first_variation_check(fam, FDConfig(tolerance=1e-6))
        formula = complex(*rep.cases[0]["formula"])
        assert abs(formula - 0.5) < 1e-12
        assert rep.passed


class TestLaplacian:
    def test_constant_family(self):
        s, c, h = _scaled_ctx()
        u = period_map(c, h)
        fam = DeformationFamily(s, c, h, u.zero_like(), u.zero_like())
        rep = laplacian_check_linear(fam)
        assert rep.passed
        assert abs(rep.cases[0]["closed_form"]) < 1e-15

    def test_random_families(self):
        rng = random.Random(43)
        s, c, h = _scaled_ctx()
        cfg = FDConfig(step=1e-3, richardson_levels=1, tolerance=1e-5)
        for _ in range(6):
            fam = DeformationFamily(s, c, h, _rand_rel(h, rng), _rand_rel(h, rng))
            rep = laplacian_check_linear(fam, cfg)
            assert rep.passed, rep.as_json()


class TestDiskHarmonicity:
    def test_grid(self):
        s = bundled_surface("marked_torus")
        for d0 in (0.3, 0.7):
            rep = disk_harmonicity_check(s, d0,
                                         cfg=FDConfig(step=1e-3,
                                                      richardson_levels=1,
                                                      tolerance=1e-5))
            assert rep.passed
            assert len(rep.cases) == 25

    def test_real_axis_points(self):
        s = bundled_surface("marked_torus")
        grid = [complex(x, 0) for x in (-0.15, 0.0, 0.1, 0.2)]
        rep = disk_harmonicity_check(s, 0.3, grid,
                                     FDConfig(step=1e-3, richardson_levels=1,
                                              tolerance=1e-5))
        assert rep.passed

    def test_negative_control_square(self):
        # Laplacian of (log tanh d)^2 is strictly positive at lambda = 0
        s = bundled_surface("marked_torus")
        d0 = 0.7

        def f(lam):
            from qdlab.deformation import teich_disk_point

            _, dist = teich_disk_point(s, d0, lam)
            return math.log(math.tanh(dist)) ** 2

        lap = _fd_laplacian(f, 1e-3, 1).real
        assert lap > 1e-3


class TestDemailly:
    def test_limit_value(self):
        rep = demailly_ratio(0.3, 0.7, [10.0])
        assert abs(rep.cases[0]["log_ratio"] - 0.8) < 1e-3

    def test_equal_points_zero(self):
        rep = demailly_ratio(0.5, 0.5, [4.0, 8.0])
        for case in rep.cases[:-1]:
            assert case["log_ratio"] == 0.0

    def test_monotone_gap(self):
        rep = demailly_ratio(0.3, 0.7, [4.0, 6.0, 8.0, 10.0])
        assert rep.cases[-1]["monotone"]

    def test_log_tanh_accuracy(self):
        # matches the naive formula where that is stable
        for sθ in (0.3, 1.0, 3.0):
            assert abs(log_tanh(sθ) - math.log(math.tanh(sθ))) < 1e-15
        # large argument: asymptotic -2 e^{-2s}
        s = 15.0
        assert abs(log_tanh(s) + 2 * math.exp(-2 * s)) < 1e-18


class TestThurston:
    def test_diag_zero(self):
        s = bundled_surface("pillowcase")
        c = build_cover(s)
        h = homology_data(c)
        u = period_map(c, h)
        assert thurston_pairing(h, u, u) == 0

    def test_iu_value(self):
        s = bundled_surface("pillowcase")
        c = build_cover(s)
        h = homology_data(c)
        u = period_map(c, h)
        assert thurston_pairing(h, u, u.scale(QC(0, 1))) == -Fraction(1, 2)
        assert thurston_pairing(h, u, u.scale(QC(0, -1))) == Fraction(1, 2)

    def test_incompatible_pair_detected(self):
        s = bundled_surface("genus2_generic")
        c = build_cover(s)
        h = homology_data(c)
        rng = random.Random(47)
        # generic random pairs have Re wedge(x,y) != 0 and must be rejected
        raised = 0
        for _ in range(10):
            x = PeriodVector(tuple(QC(rng.randint(-5, 5), rng.randint(-5, 5))
                                   for _ in range(h.rank_abs_minus())),
                             h.basis_tag, "absolute", "exact")
            y = PeriodVector(tuple(QC(rng.randint(-5, 5), rng.randint(-5, 5))
                                   for _ in range(h.rank_abs_minus())),
                             h.basis_tag, "absolute", "exact")
            w = wedge(h, x, y)
            try:
                thurston_pairing(h, x, y)
                assert w.re == 0
            except InconsistentFunctional:
                assert w.re != 0
                raised += 1
        assert raised > 0


class TestLeviNonneg:
    def test_family_orientation(self):
        s = bundled_surface("pillowcase")
        c = build_cover(s)
        h = homology_data(c)
        u = period_map(c, h)
        out = levi_nonneg_quantity(h, u, u, u.scale(QC(0, -1)), QC(0, 0))
        assert out["certified_family_data"]
        assert out["lhs_thurston"]["exact"] == str(Fraction(area(s), 4))

    def test_zero_inputs(self):
        s = bundled_surface("pillowcase")
        c = build_cover(s)
        h = homology_data(c)
        u = period_map(c, h)
        z = u.zero_like()
        out = levi_nonneg_quantity(h, u, z, z, QC(0, 0))
        assert out["gap"]["float"] == 0.0
        assert out["certified_family_data"]

    def test_non_family_flagged(self):
        s = bundled_surface("pillowcase")
        c = build_cover(s)
        h = homology_data(c)
        u = period_map(c, h)
        out = levi_nonneg_quantity(h, u, u, u.scale(QC(0, 1)), QC(0, 0))
        assert not out["certified_family_data"]
        assert out["note"] == "not certified as family data"


class TestScenarios:
    def test_identities_hold_exactly(self):
        rng = random.Random(53)
        rep = scenario_identity_check(rng, count=60)
        assert rep.passed, rep.cases

    def test_scenario_constraints(self):
        rng = random.Random(59)
        for _ in range(10):
            sc = PairingScenario.random(rng, fiber=True)
            assert 0 < sc.T < 1
            wuu = sc.w("u", [z.conjugate() for z in sc.vectors["u"]])
            assert QC_I * wuu == QC(4 * sc.T, 0)
            assert sc.wc("v1", "u").is_zero()
            assert sc.w("u", "v1").is_zero()
            assert sc.w("u", "v2").is_zero()
            assert sc.w("v1", "v2").is_zero()

    def test_first_variation_real_on_fiber(self):
        rng = random.Random(61)
        sc = PairingScenario.random(rng, fiber=True)
        d_lam = sc.first_variation_exact()
        # conj(d_lambda) relates to d_lambda-bar: no constraint in general,
        # but the Levi form built from it must be real
        lap = sc.laplacian_paper_formula()
        assert lap.im == 0


def test_third_differences_vanish():
    # the norm of a linear family is a real quadratic polynomial in
    # (Re lambda, Im lambda): third central differences are zero to rounding
    rng = random.Random(67)
    s, c, h = _scaled_ctx()
    fam = DeformationFamily(s, c, h, _rand_rel(h, rng), _rand_rel(h, rng))
    t = WedgeTable.from_family(fam)

    def f(x):
        return float(norm_of_linear_family(t, complex(x, 0.0)))

    hstep = 1e-2
    third = (f(2 * hstep) - 2 * f(hstep) + 2 * f(-hstep) - f(-2 * hstep)) \
        / (2 * hstep ** 3)
    assert abs(third) < 1e-9


class TestScenarioFromHomology:
    def test_fiber_identities_on_surface_data(self):
        rng = random.Random(71)
        for name in ("pillowcase", "genus2_generic"):
            s = bundled_surface(name)
            c = build_cover(s)
            h = homology_data(c)
            u = period_map(c, h)
            for _ in range(5):
                v1 = PeriodVector(
                    tuple(QC(Fraction(rng.randint(-4, 4), 3),
                             Fraction(rng.randint(-4, 4), 3))
                          for _ in range(h.rank_rel_minus())),
                    h.basis_tag, "relative", "exact")
                v2 = PeriodVector(
                    tuple(QC(Fraction(rng.randint(-4, 4), 3),
                             Fraction(rng.randint(-4, 4), 3))
                          for _ in range(h.rank_rel_minus())),
                    h.basis_tag, "relative", "exact")
                sc = PairingScenario.from_homology(h, u, v1, v2, fiber=True)
                # the projections enforce the family relations exactly
                uc = sc.vectors["u"]
                assert QC_I * sc.w(uc, [z.conjugate() for z in uc]) \
                    == QC(4 * sc.T, 0)
                assert sc.wc("v1", "u").is_zero()
                assert sc.w("u", "v1").is_zero()
                assert sc.w("u", "v2").is_zero()
                assert sc.w("v1", "v2").is_zero()
                # and the identities hold on surface-backed data
                assert sc.laplacian_fiber_general_route() == \
                    sc.laplacian_paper_formula()
                assert sc.levi_green_log_route() == \
                    sc.levi_green_paper_formula()
                assert sc.normal_vector_levi().is_zero()
                lhs, rhs = sc.thurston_topological_route()
                assert lhs == rhs

    def test_norm_positive_required(self):
        s = bundled_surface("pillowcase")
        c = build_cover(s)
        h = homology_data(c)
        u = period_map(c, h)
        z = u.zero_like()
        with pytest.raises(NegativeNorm):
            PairingScenario.from_homology(h, z, u, u)
