"""CLI end-to-end: exit codes, round trips, determinism."""

import json

from qdlab.builders import bundled_surface_path
from qdlab.cli import main


def run(args):
    return main(list(args))


def test_build_bundled(tmp_path, capsys):
    out = tmp_path / "pc.json"
    code = run(["build", str(bundled_surface_path("pillowcase")),
                "--out", str(out)])
    assert code == 0
    info = json.loads(out.read_text())
    assert info["classification"]["genus"] == 0
    assert info["classification"]["stratum_dim"] == 2
    assert info["area"] == "2"


def test_build_round_trip_bit_exact(tmp_path):
    src = bundled_surface_path("genus2_generic")
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert run(["build", str(src), "--out", str(out1)]) == 0
    surf1 = json.loads(out1.read_text())["surface"]
    mid = tmp_path / "mid.json"
    mid.write_text(json.dumps(surf1))
    assert run(["build", str(mid), "--out", str(out2)]) == 0
    assert json.loads(out2.read_text())["surface"] == surf1


def test_malformed_surface_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "mode": "exact",
        "triangles": [[0, 1, 2], [3, 4, 5]],
        "edges": {str(i): {"re": v, "im": w} for i, (v, w) in enumerate(
            [("1", "0"), ("0", "1"), ("-1", "-2"),
             ("1", "2"), ("-1", "0"), ("0", "-1")])},
        "gluings": [[0, 4, 1], [1, 5, 1], [2, 3, 1]],
        "marked": [0],
    }))
    code = run(["build", str(bad)])
    assert code == 2
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] in ("ClosureViolation", "GluingMismatch")


def test_cover_homology_periods_pipeline(tmp_path):
    cov = tmp_path / "cover.json"
    hom = tmp_path / "hom.json"
    per = tmp_path / "per.json"
    assert run(["cover", str(bundled_surface_path("pillowcase")),
                "--out", str(cov)]) == 0
    assert run(["homology", str(cov), "--out", str(hom)]) == 0
    ranks = json.loads(hom.read_text())["ranks"]
    assert ranks["H1_rel_minus"] == 2
    assert run(["periods", str(cov), str(hom), "--out", str(per)]) == 0
    pv = json.loads(per.read_text())
    assert len(pv["coords"]) == 2


def test_deform_pipeline(tmp_path):
    cov = tmp_path / "cover.json"
    hom = tmp_path / "hom.json"
    vec = tmp_path / "v.json"
    out = tmp_path / "deformed.json"
    assert run(["cover", str(bundled_surface_path("marked_torus")),
                "--out", str(cov)]) == 0
    assert run(["homology", str(cov), "--out", str(hom)]) == 0
    tag = json.loads(hom.read_text())["basis_tag"]
    vec.write_text(json.dumps({
        "basis_tag": tag, "space": "relative", "mode": "exact",
        "coords": [{"re": "1/10", "im": "0"}, {"re": "0", "im": "-1/10"}],
    }))
    assert run(["deform", str(cov), "--v", str(vec), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["summary"]["components"] == 2


def test_deform_too_large_exit_1(tmp_path, capsys):
    cov = tmp_path / "cover.json"
    per = tmp_path / "per.json"
    vec = tmp_path / "v.json"
    assert run(["cover", str(bundled_surface_path("marked_torus")),
                "--out", str(cov)]) == 0
    assert run(["periods", str(cov), "--out", str(per)]) == 0
    pv = json.loads(per.read_text())
    # v = -u collapses every triangle
    for c in pv["coords"]:
        c["re"] = str(-_frac(c["re"]))
        c["im"] = str(-_frac(c["im"]))
    vec.write_text(json.dumps(pv))
    capsys.readouterr()
    assert run(["deform", str(cov), "--v", str(vec)]) == 1
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "TriangleFlip"


def _frac(s):
    from fractions import Fraction

    return Fraction(s)


def test_flow_and_disk(tmp_path):
    out = tmp_path / "f.json"
    assert run(["flow", str(bundled_surface_path("marked_torus")),
                "--t", "0.5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["mode"] == "float"
    out2 = tmp_path / "d.json"
    assert run(["disk", str(bundled_surface_path("marked_torus")),
                "--d0", "0.7", "--lambda", "0.1+0.2i", "--out", str(out2)]) == 0
    assert json.loads(out2.read_text())["distance"] > 0


def test_delaunay_flips_emitted(tmp_path):
    # a skewed torus needs one flip
    from qdlab.builders import skewed_torus
    from qdlab.io_json import save_surface

    src = tmp_path / "skew.json"
    save_surface(skewed_torus(), src)
    out = tmp_path / "del.json"
    flips = tmp_path / "flips.json"
    assert run(["delaunay", str(src), "--out", str(out),
                "--emit-flips", str(flips)]) == 0
    assert json.loads(out.read_text())["certified_delaunay"]
    recs = json.loads(flips.read_text())
    assert len(recs) == 1 and recs[0]["edge"] == 2


def test_strata_dot(tmp_path):
    dot = tmp_path / "s.dot"
    out = tmp_path / "s.json"
    assert run(["strata", "--g", "0", "--m", "4", "--dot", str(dot),
                "--out", str(out)]) == 0
    assert "digraph" in dot.read_text()
    data = json.loads(out.read_text())
    assert len(data["nodes"]) == 1


def test_verify_targets(tmp_path):
    rep = tmp_path / "r.json"
    assert run(["verify", "demailly", "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["passed"]
    assert run(["verify", "first-variation", "--count", "2",
                "--report", str(rep)]) == 0
    assert run(["verify", "laplacian", "--count", "2"]) == 0


def test_verify_deterministic_report(tmp_path):
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    assert run(["verify", "first-variation", "--count", "2", "--seed", "5",
                "--report", str(r1)]) == 0
    assert run(["verify", "first-variation", "--count", "2", "--seed", "5",
                "--report", str(r2)]) == 0
    assert r1.read_text() == r2.read_text()


def test_svg_emission(tmp_path):
    svg = tmp_path / "net.svg"
    assert run(["build", str(bundled_surface_path("pillowcase")),
                "--out", str(tmp_path / "x.json"), "--emit-svg", str(svg)]) == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "</svg>" in text
