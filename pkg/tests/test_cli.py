from __future__ import annotations

import io
import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from sphcoh.cli import batch, emit_walls_svg, run
from sphcoh.mukai import MukaiVector

V = MukaiVector

EXAMPLES = [
    ("1 305 477 746", ("1240", "189")),
    ("1 1340641 1733695 2241986", ("4391850", "809223")),
    ("1 10 13 17", ("33", "6")),
    ("1 195562 59615 18173", ("213735", "0")),
    ("1 2 3 5", ("8", "1")),
    ("1 42687466 66760513 104409245", None),
]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_cohomology_human_output():
    code, out, _ = call("cohomology", "--n", "1", "--v", "305,477,746")
    assert code == 0
    assert "h0=1240 h1=189" in out


def test_cohomology_json_round_trip():
    code, out, _ = call("cohomology", "--n", "1", "--v", "1340641,1733695,2241986", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert (doc["h0"], doc["h1"]) == ("4391850", "809223")
    assert int(doc["h0"]) - int(doc["h1"]) == int(doc["chi"])
    assert doc["height"] == 3
    assert doc["weak_bn"]["holds"] is False
    assert [s["lattice"]["g"] for s in doc["trace"]] == ["23115", "63", "6"]
    assert doc["normalized"]["dualized"] is False


def test_dualized_json():
    code, out, _ = call("cohomology", "--v", "305,-477,746", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["normalized"]["dualized"] is True
    assert doc["input_cohomology"] == {"h0": "0", "h1": "189", "h2": "1240"}


def test_weakbn_json():
    code, out, _ = call("weakbn", "--n", "1", "--v", "10,13,17", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["holds"] is False and doc["y"] == "3"
    assert Fraction(doc["witnesses"][0]["ratio"]) == 3


def test_three_step_exit_code():
    code, out, _ = call("cohomology", "--n", "1", "--v", "42687466,66760513,104409245", "--json")
    doc = json.loads(out)
    assert code == 2
    assert doc["error"] == "needs-full-local-reduction"
    assert len(doc["segment"]) == 3
    code, out, _ = call("cohomology", "--v", "42687466,66760513,104409245")
    assert code == 2 and "needs-full-local-reduction" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["cohomology", "--v", "1,1,3"],
        ["cohomology", "--v", "0,1,1"],
        ["cohomology", "--v", "-5,12,-29"],
        ["cohomology", "--n", "0", "--v", "1,1,2"],
        ["cohomology"],
        ["cohomology", "--v", "1,1"],
        ["frobnicate"],
    ],
)
def test_input_errors_exit_one(argv):
    code, _, _ = call(*argv)
    assert code == 1


def test_input_error_json():
    code, out, _ = call("cohomology", "--v", "1,1,3", "--json")
    assert code == 1 and json.loads(out)["error"] == "not-spherical"


def test_height_and_walls_commands():
    code, out, _ = call("height", "--v", "305,477,746")
    assert code == 0 and out.strip() == "height=2"
    code, out, _ = call("walls", "--v", "305,477,746", "--json")
    doc = json.loads(out)
    assert code == 0 and [w["lattice"]["g"] for w in doc["walls"]] == ["155", "3", "6"]
    code, out, _ = call("walls", "--v", "42687466,66760513,104409245")
    assert code == 2 and out.rstrip().endswith("needs-full-local-reduction")


def test_svg_figures(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    emit_walls_svg(1, V(305, 477, 746), str(a))
    emit_walls_svg(1, V(305, 477, 746), str(b))
    text = a.read_text()
    assert text == b.read_text()
    assert text.count('<path class="wall"') >= 2
    assert text.count('class="bn-point"') == 1
    c = tmp_path / "c.svg"
    code, _, _ = call("cohomology", "--v", "1,1,2", "--svg", str(c))
    assert code == 0
    text = c.read_text()
    assert text.count('<path class="wall"') == 0 and 'class="bn-point"' in text


def test_svg_write_failure(tmp_path):
    code, _, err = call("cohomology", "--v", "1,1,2", "--svg", str(tmp_path / "missing" / "x.svg"))
    assert code == 1 and "cannot write" in err


def test_batch_examples(tmp_path):
    path = tmp_path / "examples.txt"
    path.write_text("\n".join(line for line, _ in EXAMPLES) + "\n")
    out = io.StringIO()
    assert batch(str(path), out, workers=4) == 0
    docs = [json.loads(x) for x in out.getvalue().splitlines()]
    assert len(docs) == 6
    for doc, (line, want) in zip(docs, EXAMPLES):
        assert doc["input"]["r"] == line.split()[1]
        if want is None:
            assert doc["error"] == "needs-full-local-reduction"
        else:
            assert (doc["h0"], doc["h1"]) == want


def test_batch_empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    code, out, _ = call("batch", str(path))
    assert code == 0 and out == ""


def test_batch_malformed_line(tmp_path):
    path = tmp_path / "mixed.txt"
    path.write_text("1 305 477 746\n1 1 1\n1 1 1 2\n")
    code, out, _ = call("batch", "--batch", str(path))
    docs = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert [d.get("error") for d in docs] == [None, "parse", None]
    assert docs[0]["h0"] == "1240" and docs[2]["h0"] == "3"


def test_trace_logging_to_stderr():
    env = dict(os.environ, SPHCOH_LOG="trace")
    proc = subprocess.run(
        [sys.executable, "-m", "sphcoh", "cohomology", "--v", "305,477,746"],
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )
    assert proc.returncode == 0
    assert "h0=1240" in proc.stdout
    assert "g=155" in proc.stderr
    quiet = subprocess.run(
        [sys.executable, "-m", "sphcoh", "cohomology", "--v", "305,477,746"],
        capture_output=True,
        text=True,
        env=dict(os.environ, SPHCOH_LOG="off"),
        check=False,
    )
    assert quiet.stderr == ""
