import os
import pathlib

import pytest

import equistrat

SPECS = pathlib.Path(os.environ.get("EQUISTRAT_SPEC_DIR", pathlib.Path(__file__).resolve().parents[2] / "specs"))


def spec(name):
    return str(SPECS / f"{name}.spec")


def test_lattice_indices():
    nodes = {n["name"]: n["s"] for n in equistrat.lattice(spec("d6"))["nodes"]}
    assert nodes == {"D6": 0, "Z2(k)": 1, "Z2(ks)": 1, "1": 2}


def test_lattice_dot_labels():
    assert '"Z2(s) (1)"' in equistrat.lattice_dot(spec("d2"))


def test_dimensions_from_text():
    text = "group = dihedral 6\nV = rot(1) + rot(1)\nW = rot(2)\n"
    assert equistrat.equivariant_dimension(text, 2) == 3
    counts = equistrat.generator_count(text, 4)
    assert counts["generators"] == 5


def test_basis_dump_lines():
    dump = equistrat.basis_dump(spec("d6"), 2)
    rows = [line for line in dump.splitlines() if line and not line.startswith("#")]
    assert rows and all(line.count("|") == 3 for line in rows)


def test_normalize_is_idempotent():
    once = equistrat.normalize_spec(spec("fgroup_case3"))
    assert equistrat.normalize_spec(once) == once


def test_analyze_d2():
    report = equistrat.analyze(spec("d2"), seed=3, samples=8)
    verdicts = {v["sigma"]: v["verdict"] for v in report["verdicts"]}
    assert verdicts == {"Z2(k)": "NotIncluded", "Z2(s)": "Included"}
    assert report["seed"] == 3


def test_probe_d2():
    run = equistrat.probe(spec("d2"), draws=2)
    assert len(run["draws"]) == 2


def test_errors_raise():
    with pytest.raises(equistrat.EquistratError):
        equistrat.lattice("group = dihedral 6\nV = nothing(1)\nW = rot(2)\n")
