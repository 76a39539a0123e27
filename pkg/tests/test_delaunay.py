"""Delaunay predicate and the flip algorithm."""

import random
from fractions import Fraction

import pytest

from qdlab.builders import (
    bundled_names,
    bundled_surface,
    random_deform_variant,
    random_flip_variant,
    skewed_torus,
)
from qdlab.delaunay import (
    delaunayize,
    flip_edge,
    flippable,
    incircle_certificate,
    is_delaunay,
)
from qdlab.errors import DegenerateTriangle
from qdlab.surface import area, symbol


def test_square_torus_cocircular_accepted():
    s = bundled_surface("marked_torus")
    ok, bad = is_delaunay(s)
    assert ok and bad == []
    # both diagonals: flip the diagonal and re-test
    for e in s.edges():
        if flippable(s, e) and incircle_certificate(s, e) == 0:
            s2 = flip_edge(s, e)
            assert is_delaunay(s2)[0]
            break


def test_skewed_torus_single_violation():
    s = skewed_torus()
    ok, bad = is_delaunay(s)
    assert not ok
    assert len(bad) == 1
    cert = incircle_certificate(s, bad[0])
    assert isinstance(cert, Fraction) and cert > 0


def test_skewed_torus_flips_to_delaunay():
    s = skewed_torus()
    d, recs = delaunayize(s)
    assert is_delaunay(d)[0]
    assert len(recs) == 1
    assert recs[0].incircle_before > 0 >= recs[0].incircle_after
    assert area(d) == area(s)
    assert symbol(d) == symbol(s)


def test_large_shear_terminates():
    s = skewed_torus(Fraction(23, 3))
    d, recs = delaunayize(s)
    assert is_delaunay(d)[0]
    assert recs  # several flips happen
    assert area(d) == area(s)


def test_idempotence():
    for name in bundled_names():
        s = bundled_surface(name)
        d, _ = delaunayize(s)
        d2, recs = delaunayize(d)
        assert recs == []
        assert d2.triangles == d.triangles
        assert d2.vec == d.vec


def test_flip_preserves_quad_sides():
    s = skewed_torus(Fraction(7, 2))
    e = is_delaunay(s)[1][0]
    f = s.glue[e]
    ids = [s.next_edge(e), s.prev_edge(e), s.next_edge(f), s.prev_edge(f)]
    outer = sorted(s.vec[i].abs2() for i in ids)
    s2 = flip_edge(s, e)
    # the four outer edges keep their ids; squared lengths are preserved
    outer2 = sorted(s2.vec[i].abs2() for i in ids)
    assert outer == outer2


def test_unflippable_self_glued_skipped():
    # a surface where an edge sees the same triangle on both sides cannot be
    # flipped; is_delaunay must simply skip it
    s = bundled_surface("pillowcase")
    for e in s.edges():
        if s.triangle_of(e) == s.triangle_of(s.glue[e]):
            assert not flippable(s, e)
            with pytest.raises(DegenerateTriangle):
                flip_edge(s, e)


def test_random_small_surfaces_property(seed=101):
    rng = random.Random(seed)
    for name in ("pillowcase", "genus2_generic"):
        base = bundled_surface(name)
        assert len(base.triangles) <= 20
        for _ in range(6):
            v = random_deform_variant(base, rng)
            v = random_flip_variant(v, rng, rng.randint(0, 4))
            d, recs = delaunayize(v)
            assert is_delaunay(d)[0]
            assert area(d) == area(v)
            assert symbol(d) == symbol(v)
            for r in recs:
                assert r.incircle_before > 0 >= r.incircle_after
