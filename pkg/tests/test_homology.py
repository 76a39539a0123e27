"""Exact homology: ranks, eigenspaces, wedge pairing and its cup oracle."""

import random
from fractions import Fraction

import pytest

from qdlab.builders import bundled_names, bundled_surface
from qdlab.cover import build_cover
from qdlab.errors import BasisMismatch
from qdlab.exact import QC, QC_I
from qdlab.homology import (
    cocycle_representative,
    hermitian_pairing,
    homology_data,
    wedge,
    wedge_cup_oracle,
)
from qdlab.periods import PeriodVector, period_map
from qdlab.surface import area, stratum_dim, symbol


def _ctx(name):
    s = bundled_surface(name)
    c = build_cover(s)
    return s, c, homology_data(c)


def _rand_vec(h, rng, space="absolute", span=5):
    n = len(h.abs_minus_basis if space == "absolute" else h.rel_minus_basis)
    return PeriodVector(
        tuple(QC(Fraction(rng.randint(-span, span), rng.randint(1, 3)),
                 Fraction(rng.randint(-span, span), rng.randint(1, 3)))
              for _ in range(n)),
        h.basis_tag, space, "exact")


class TestRanks:
    def test_pillowcase_rank(self):
        s, c, h = _ctx("pillowcase")
        # elliptic involution acts by -1 on H1 of the torus cover
        assert h.rank_abs_minus() == 2
        assert h.rank_rel_minus() == 2

    def test_marked_torus_rank(self):
        s, c, h = _ctx("marked_torus")
        assert h.rank_rel_minus() == 2

    def test_genus2_absolute_minus(self):
        s, c, h = _ctx("genus2_generic")
        # rank H1(cover)^- = 2*5 - 2*2
        assert h.rank_abs() == 10
        assert h.rank_abs_minus() == 6

    def test_rank_equals_stratum_dim(self):
        for name in bundled_names():
            s, c, h = _ctx(name)
            assert h.rank_rel_minus() == stratum_dim(symbol(s), s.genus())

    def test_comparison_iso_for_generic(self):
        s, c, h = _ctx("genus2_generic")
        n = h.rank_abs_minus()
        assert n == h.rank_rel_minus()
        # square matrix of full rank
        from qdlab.exact import rank

        assert rank(h.comparison) == n


class TestCocycleRepresentative:
    def test_zero_functional(self):
        _, _, h = _ctx("pillowcase")
        coc = cocycle_representative(h, [0] * h.rank_abs_minus())
        assert all(v == 0 or (hasattr(v, "is_zero") and v.is_zero())
                   for v in coc.values())

    def test_period_functional_matches_edge_cochain(self):
        s, c, h = _ctx("pillowcase")
        u = period_map(c, h)
        coc = h.cocycle_functional(list(u.coords), space="relative")
        for j, cyc in enumerate(h.rel_minus_basis):
            val = h.evaluate_cochain(coc, cyc)
            assert val == u.coords[j]
        # closed: vanishes on every triangle boundary
        for b in h._boundaries:
            assert h.evaluate_cochain(coc, b).is_zero()

    def test_random_functionals_exact(self):
        rng = random.Random(3)
        _, _, h = _ctx("genus2_generic")
        for _ in range(20):
            f = [QC(Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)))
                 for _ in range(h.rank_abs_minus())]
            coc = h.cocycle_functional(f, space="absolute")
            for j, cyc in enumerate(h.abs_minus_basis):
                assert h.evaluate_cochain(coc, cyc) == f[j]


class TestWedge:
    def test_antisymmetry_diag(self):
        rng = random.Random(5)
        for name in bundled_names():
            _, _, h = _ctx(name)
            x = _rand_vec(h, rng)
            assert wedge(h, x, x).is_zero()

    def test_area_identity(self):
        for name in bundled_names():
            s, c, h = _ctx(name)
            u = period_map(c, h)
            assert QC_I * wedge(h, u, u.conjugate()) == QC(4 * area(s), 0)

    def test_pillowcase_value(self):
        s, c, h = _ctx("pillowcase")
        u = period_map(c, h)
        assert QC_I * wedge(h, u, u.conjugate()) == QC(8, 0)

    def test_cup_oracle_random(self):
        rng = random.Random(7)
        for name in bundled_names():
            _, _, h = _ctx(name)
            for _ in range(25):
                x = _rand_vec(h, rng)
                y = _rand_vec(h, rng)
                assert wedge(h, x, y) == wedge_cup_oracle(h, x, y)

    def test_J_antisymmetric_nondegenerate(self):
        from qdlab.exact import mat_inverse

        for name in bundled_names():
            _, _, h = _ctx(name)
            n = len(h.J)
            for i in range(n):
                for j in range(n):
                    assert h.J[i][j] == -h.J[j][i]
            assert mat_inverse(h.J) is not None

    def test_relative_vectors_through_comparison(self):
        rng = random.Random(11)
        s, c, h = _ctx("genus2_generic")
        u = period_map(c, h)  # relative
        v = _rand_vec(h, rng, space="relative")
        # bilinearity across spaces after pullback
        w1 = wedge(h, u + v, u.conjugate())
        w2 = wedge(h, u, u.conjugate()) + wedge(h, v, u.conjugate())
        assert w1 == w2

    def test_basis_mismatch(self):
        _, _, h1 = _ctx("pillowcase")
        _, _, h2 = _ctx("marked_torus")
        x = PeriodVector((QC(1), QC(0)), h1.basis_tag, "absolute", "exact")
        y = PeriodVector((QC(1), QC(0)), h2.basis_tag, "absolute", "exact")
        with pytest.raises(BasisMismatch):
            wedge(h1, x, y)


class TestHermitian:
    def test_norm_is_area(self):
        for name in bundled_names():
            s, c, h = _ctx(name)
            u = period_map(c, h)
            assert hermitian_pairing(h, u, u) == QC(area(s), 0)

    def test_sesquilinearity(self):
        s, c, h = _ctx("pillowcase")
        u = period_map(c, h)
        iu = u.scale(QC(0, 1))
        assert hermitian_pairing(h, u, iu) == QC(0, -area(s))

    def test_conjugate_symmetry(self):
        rng = random.Random(13)
        _, _, h = _ctx("genus2_generic")
        for _ in range(15):
            x = _rand_vec(h, rng)
            y = _rand_vec(h, rng)
            assert hermitian_pairing(h, x, y) == \
                hermitian_pairing(h, y, x).conjugate()


def test_involution_star_squares_to_identity():
    for name in bundled_names():
        _, _, h = _ctx(name)
        n = len(h.iota_abs)
        for i in range(n):
            for j in range(n):
                s = sum(h.iota_abs[i][k] * h.iota_abs[k][j] for k in range(n))
                assert s == (1 if i == j else 0)


def test_minus_basis_chainlevel_antiinvariant():
    for name in bundled_names():
        _, _, h = _ctx(name)
        for v in h.abs_minus_basis + h.rel_minus_basis:
            iv = h.iota_chain(v)
            assert all(a == -b for a, b in zip(v, iv))
