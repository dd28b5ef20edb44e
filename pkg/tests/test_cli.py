import io
import json

import pytest

from rhyper import hypergraph as hg
from rhyper.cli import run


def _run(argv):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    return code, buf.getvalue()


@pytest.fixture
def gamma3_file(tmp_path):
    p = tmp_path / "gamma3.json"
    p.write_text(json.dumps(hg.sample_graphs(1)["gamma3"].to_json()))
    return str(p)


def test_boundaries(gamma3_file):
    code, out = _run(["boundaries", "--input", gamma3_file])
    assert code == 0
    assert len(json.loads(out)["boundaries"]) == 2


def test_generator_single_term():
    code, out = _run(["generator", "--m", "1", "--n", "2", "--a", "0", "--d", "1"])
    assert code == 0 and len(json.loads(out)) == 1


def test_canon(gamma3_file):
    code, out = _run(["canon", "--input", gamma3_file])
    assert code == 0 and json.loads(out)["sign"] in (1, -1)


def test_compose_v(tmp_path, gamma3_file):
    g3 = json.load(open(gamma3_file))
    unit = hg.unit_term(1).to_json()
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"upper": g3, "lower": unit}))
    code, out = _run(["compose", "v", "--input", str(p)])
    assert code == 0 and len(json.loads(out)) == 1


def test_eval(tmp_path):
    g = hg.standard(2, [0, 1], [1, 0], 1).to_json()
    a = {"alpha": 1, "copy": 1}
    b = {"alpha": 1, "copy": 2}
    p = tmp_path / "e.json"
    p.write_text(json.dumps({"graph": g, "family": {"name": "darboux", "N": 1}, "words": [[a], [b]]}))
    code, out = _run(["eval", "--input", str(p)])
    assert code == 0 and json.loads(out)["arity"] == 1


def test_necklace_csv():
    code, out = _run(["necklace", "cobracket", "--N", "2", "--words", "1 2 1", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "tuple,coeff" and len(out.splitlines()) == 7


def test_necklace_direct_agrees():
    a = _run(["necklace", "bracket", "--N", "2", "--words", "1 2 2", "2 1"])
    b = _run(["necklace", "bracket", "--N", "2", "--words", "1 2 2", "2 1", "--direct"])
    assert a == b


def test_graded_op():
    code, out = _run(["graded-op", "--m", "1", "--n", "1", "--a", "1", "--words", "1:0 1:1 1:1"])
    assert code == 0 and json.loads(out)["arity"] == 1


def test_verify_exit_codes():
    assert _run(["verify", "lieb", "--N", "1", "--max-len", "3"])[0] == 0
    assert _run(["verify", "mc"])[0] == 0


def test_verify_ibl_example():
    code, out = _run(["verify", "ibl", "--N", "1", "--max-gen", "5", "--max-len", "4"])
    assert code == 0 and json.loads(out)["failures"] == []


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(["canon", "--input", str(bad)])[0] == 2
    assert _run(["boundaries", "--bogus"])[0] == 2
    assert _run(["nonsense"])[0] == 2
    assert _run(["canon"])[0] == 2
    assert _run(["necklace", "bracket", "--words", "1"])[0] == 2


def test_deterministic(tmp_path):
    outs = [_run(["verify", "functoriality", "--seed", "3", "--samples", "20"]) for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0][1])["seed"] == 3


def test_output_file(tmp_path):
    p = tmp_path / "o.json"
    assert _run(["boundaries", "--sample", "gamma1", "--output", str(p)])[0] == 0
    assert json.loads(p.read_text())["counts"] == {"V": 3, "H": 1, "B": 1, "E": 3}
