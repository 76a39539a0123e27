"""JSON round trips and malformed-input handling."""

import json

import pytest

from qdlab.builders import bundled_names, bundled_surface
from qdlab.errors import InputFormatError
from qdlab.io_json import (
    dump_json,
    surface_from_dict,
    surface_to_dict,
)
from qdlab.surface import area, symbol


def test_rational_round_trip_bit_exact():
    for name in bundled_names():
        s = bundled_surface(name)
        blob1 = dump_json(surface_to_dict(s))
        s2 = surface_from_dict(json.loads(blob1))
        blob2 = dump_json(surface_to_dict(s2))
        assert blob1 == blob2
        assert s2.vec == s.vec
        assert s2.marked == s.marked
        assert symbol(s2) == symbol(s)


def test_float_round_trip():
    s = bundled_surface("pillowcase").to_float()
    d = surface_to_dict(s)
    s2 = surface_from_dict(d)
    assert s2.mode == "float"
    assert abs(float(area(s2)) - 2.0) < 1e-12


def test_not_a_dict():
    with pytest.raises(InputFormatError):
        surface_from_dict([1, 2, 3])


def test_bad_mode():
    with pytest.raises(InputFormatError):
        surface_from_dict({"mode": "symbolic", "triangles": [], "edges": {},
                           "gluings": []})


def test_missing_keys():
    with pytest.raises(InputFormatError):
        surface_from_dict({"mode": "exact"})


def test_bad_rational_string():
    d = surface_to_dict(bundled_surface("marked_torus"))
    d["edges"]["0"]["re"] = "1/0"
    with pytest.raises(InputFormatError):
        surface_from_dict(d)


def test_two_edge_triangle_rejected():
    d = surface_to_dict(bundled_surface("marked_torus"))
    d["triangles"][0] = d["triangles"][0][:2]
    with pytest.raises(InputFormatError):
        surface_from_dict(d)


def test_shipped_data_files_match_builders():
    from qdlab.builders import bundled_surface_path

    for name in bundled_names():
        s = bundled_surface(name)
        shipped = json.loads(bundled_surface_path(name).read_text())
        assert shipped == json.loads(dump_json(surface_to_dict(s)))
