import json

import pytest

from fixtures import k4
from unimorph import io
from unimorph.cli import main
from unimorph.instances import drawing_pair
from unimorph.morph import Morph


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.json"
    assert main(["gen", "12", str(path), "--seed", "4"]) == 0
    return path


def test_gen_morph_verify_export(pair_file, tmp_path, capsys):
    out = tmp_path / "morph.json"
    assert main(["morph", str(pair_file), str(out)]) == 0
    err = capsys.readouterr().err
    assert err.startswith("Certified:")
    m = io.load_morph(out.read_text())
    assert main(["verify", str(out), "--oracle-samples", "20"]) == 0
    report = capsys.readouterr().out
    assert "status: certified" in report.lower() and f"k: {m.steps}" in report
    assert report.count("step ") >= m.steps
    csv_path = tmp_path / "m.csv"
    assert main(["export", str(out), str(csv_path), "--format", "csv"]) == 0
    rows = csv_path.read_text().strip().splitlines()
    assert rows[0] == "index,direction,max_displacement" and len(rows) == m.steps + 1
    svg = tmp_path / "m.svg"
    assert main(["export", str(out), str(svg)]) == 0
    assert svg.read_text().count("<animate") > 0


def test_identical_drawings_zero_steps(tmp_path, capsys):
    d1, _ = drawing_pair(10, 7)
    src = tmp_path / "same.json"
    src.write_text(io.dump_pair(d1, d1))
    out = tmp_path / "m.json"
    assert main(["morph", str(src), str(out)]) == 0
    m = io.load_morph(out.read_text())
    assert m.steps == 0
    svg = tmp_path / "m.svg"
    assert main(["export", str(out), str(svg)]) == 0
    assert "<animate" not in svg.read_text()


def test_invalid_second_drawing_exit_2(tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text(io.dump_pair(k4(), k4((5, 5))))
    assert main(["morph", str(src), str(tmp_path / "o.json")]) == 2
    assert "same faces and the same outer face" in capsys.readouterr().err


def test_mirrored_second_drawing_exit_2(tmp_path, capsys):
    d = k4()
    mirrored = d.moved({v: (-p[0], p[1]) for v, p in d.coords.items()})
    src = tmp_path / "mirror.json"
    src.write_text(io.dump_pair(d, mirrored))
    assert main(["morph", str(src), str(tmp_path / "o.json")]) == 2
    assert "same faces and the same outer face" in capsys.readouterr().err


def test_parse_error_exit_1(tmp_path, capsys):
    src = tmp_path / "broken.json"
    src.write_text('{"rotation": [1,\n')
    assert main(["morph", str(src), str(tmp_path / "o.json")]) == 1
    assert "line" in capsys.readouterr().err
    assert main(["verify", str(src)]) == 1
    assert main(["export", str(src), str(tmp_path / "x.svg")]) == 1


def test_corrupted_keyframe_exit_3(tmp_path, capsys):
    m = Morph.from_drawings([k4(), k4((2, 1)), k4((1, 2))])
    obj = json.loads(io.dump_morph(m))
    obj["keyframes"][1]["c"] = ["5", "5"]
    path = tmp_path / "c.json"
    path.write_text(json.dumps(obj))
    assert main(["verify", str(path)]) == 3
    out = capsys.readouterr().out
    assert "failure at step" in out and "face" in out


def test_not_unidirectional_exit_3(tmp_path, capsys):
    a = k4()
    b = a.moved({"c": (1, 2), "z2": (5, 0)})
    path = tmp_path / "nu.json"
    path.write_text(io.dump_morph(Morph.from_drawings([a, b])))
    assert main(["verify", str(path)]) == 3
    out = capsys.readouterr().out
    assert "not unidirectional" in out and "c" in out and "z2" in out


def test_gen_rejects_tiny_n(tmp_path):
    assert main(["gen", "2", str(tmp_path / "x.json")]) == 1
