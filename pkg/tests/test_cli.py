import json
import shutil
import subprocess
from fractions import Fraction
from pathlib import Path

import pytest

from preserver_lab import Poly1, Poly2, QQi
from preserver_lab.cli import main, parse_spec, serialize_spec
from preserver_lab.domains import DISK_MAP
from preserver_lab.errors import ValidationError

SPECS = Path(__file__).resolve().parent.parent / "docs" / "specs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def decode(x):
    if isinstance(x, list):
        return complex(float(Fraction(x[0])), float(Fraction(x[1])))
    return complex(float(Fraction(x)))


def write(tmp_path, doc, name="spec.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def test_parse_examples():
    op, dom, _ = parse_spec({"representation": {"multiplier": [0, 1, 2, 3]}, "degree_bound": 3})
    assert op.operator().to_multipliers().lam == tuple(QQi(k) for k in range(4))
    _, dom, _ = parse_spec({"mobius": {"a": [0, 0.5], "b": [-0.5, 0], "c": [1, 0], "d": [0, -1]}})
    assert dom.mobius == DISK_MAP
    with pytest.raises(ValidationError) as e:
        parse_spec({"domain": {"mobius": {"a": 1, "b": 2, "c": 2, "d": 4}}})
    assert e.value.pointer == "/domain/mobius"


@pytest.mark.parametrize("doc,pointer", [
    ({"representation": {"multiplier": [1]}}, "/degree_bound"),
    ({"degree_bound": 2, "representation": {"matrix": [["1"], ["0", "1"], ["0"]]}},
     "/representation/matrix/1"),
    ({"degree_bound": 1, "representation": {"matrix": [["1", "0"], ["0", "0"]]}},
     "/representation/matrix/0/1"),
    ({"degree_bound": 1, "representation": {"multiplier": ["1", "x"]}},
     "/representation/multiplier/1"),
    ({"degree_bound": 1, "representation": {"multiplier": [1, 1]}, "domain": {"kind": "disc"}},
     "/domain/kind"),
    ({"degree_bound": 1, "representation": {"multiplier": [1, 1]}, "schema_version": 9},
     "/schema_version"),
])
def test_validation_errors_carry_pointers(tmp_path, capsys, doc, pointer):
    code, out, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 3 and out == ""
    assert json.loads(err)["pointer"] == pointer


def test_non_normalized_half_plane_hint(tmp_path, capsys):
    doc = {"degree_bound": 1, "representation": {"multiplier": [1, 1]},
           "domain": {"mobius": {"a": 1, "b": 0, "c": 1, "d": 2}}}
    code, _, err = run(capsys, "analyze", write(tmp_path, doc), "--problem", "circular")
    e = json.loads(err)
    assert code == 3 and e["pointer"] == "/domain/mobius"
    assert "normalized" in e["message"]


def test_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "analyze", p)
    assert code == 3 and json.loads(err)["error"] == "ParseError"


def test_round_trip_corpus():
    for path in sorted(SPECS.glob("*.json")):
        doc = json.loads(path.read_text())
        op, dom, _ = parse_spec(doc)
        assert serialize_spec(op, dom) == doc, path.name


def test_analyze_stab_derivative(capsys):
    code, out, _ = run(capsys, "analyze", SPECS / "ddz4.json", "--problem", "stab", "--n", 4)
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["verdict"] == "preserver" and rep["clause"] == "(b)"


def test_analyze_disk_operator_semantics(capsys):
    spec = SPECS / "disk_operator_n3.json"
    code, out, _ = run(capsys, "analyze", spec, "--problem", "circular", "--n", 3,
                       "--domain", "unit_disk")
    assert code == 0
    code, out, _ = run(capsys, "analyze", spec, "--problem", "circular", "--n", 3,
                       "--domain", "unit_disk", "--semantics", "pb2")
    assert code == 1
    wit = json.loads(out)["report"]["artifacts"]["input_witness"]
    assert wit["f"]["text"] == (Poly1.z() ** 2).format()
    assert wit["image"]["text"] == (Poly1.z() * (Poly1.z() + 2)).format()


def test_analyze_multiplier_failure(capsys):
    code, out, _ = run(capsys, "analyze", SPECS / "multiplier_101.json",
                       "--problem", "multiplier", "--N", 2)
    assert code == 1
    assert json.loads(out)["report"]["artifacts"]["failing_n"] == 2


def test_exit_code_unknown_is_two(tmp_path, capsys, monkeypatch):
    import preserver_lab.cli as cli
    from preserver_lab.preservers import PreserverReport

    monkeypatch.setattr(cli, "finitestab_classify",
                        lambda T, n, **kw: PreserverReport("stab", "unknown", "", n))
    code, _, _ = run(capsys, "analyze", SPECS / "ddz4.json", "--problem", "stab")
    assert code == 2


def test_failed_recheck_exits_four(capsys, monkeypatch):
    import preserver_lab.cli as cli
    from preserver_lab.preservers import InputWitness, PreserverReport

    z = Poly1.z()
    fake = PreserverReport("stab", "non_preserver", "", 4,
                           artifacts={"input_witness": InputWitness(z, z, None, "bogus")})
    monkeypatch.setattr(cli, "finitestab_classify", lambda T, n, **kw: fake)
    code, out, err = run(capsys, "analyze", SPECS / "ddz4.json", "--problem", "stab")
    assert code == 4 and out == ""


def test_all_problems_run(capsys):
    k = SPECS / "multiplier_k.json"
    for problem, extra, expect in [
        ("hyp", ["--n", 3], 0), ("hypC", ["--n", 3], 0), ("stab", ["--n", 3], 0),
        ("circular", ["--n", 3], 0), ("boundary", ["--n", 3], 0),
        ("sweep", ["--N", 5, "--sweep-problem", "hyp"], 0),
        ("transcendental", ["--N", 6], 0), ("multiplier", ["--N", 10], 0),
    ]:
        code, out, _ = run(capsys, "analyze", k, "--problem", problem, *extra)
        assert code == expect, problem
        assert json.loads(out)["report"]["verdict"] == "preserver"


def test_float_backend(capsys):
    code, out, _ = run(capsys, "analyze", SPECS / "ddz4.json", "--problem", "stab",
                       "--backend", "float")
    assert code == 0
    assert json.loads(out)["options"]["backend"] == "float"


def test_text_format(capsys):
    code, out, _ = run(capsys, "analyze", SPECS / "ddz4.json", "--format", "text")
    assert code == 0 and "preserver" in out


def test_determinism_and_seed_env(capsys, monkeypatch):
    args = ["analyze", SPECS / "multiplier_101.json", "--problem", "stab", "--n", 2]
    _, a, _ = run(capsys, *args, "--seed", 5)
    _, b, _ = run(capsys, *args, "--seed", 5)
    assert a == b
    monkeypatch.setenv("PRESERVER_LAB_SEED", "5")
    _, c, _ = run(capsys, *args)
    assert c == a
    assert json.loads(c)["options"]["seed"] == 5


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "analyze", SPECS / "ddz4.json", "-o", dest)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["report"]["verdict"] == "preserver"


def test_generate_kinds(capsys):
    code, out, _ = run(capsys, "generate", "--kind", "real_stable_2d", "--degree", 3,
                       "--seed", 7, "--count", 10)
    doc = json.loads(out)
    assert code == 0 and len(doc["items"]) == 10
    assert all(it["certificate_verified"] for it in doc["items"])
    _, again, _ = run(capsys, "generate", "--kind", "real_stable_2d", "--degree", 3,
                      "--seed", 7, "--count", 10)
    assert again == out

    _, out, _ = run(capsys, "generate", "--kind", "interlacing_pair", "--degree", 4, "--count", 5)
    assert all(it["g_ll_f"] for it in json.loads(out)["items"])

    for kind in ("hyperbolic_1d", "stable_1d"):
        _, out, _ = run(capsys, "generate", "--kind", kind, "--degree", 3, "--count", 5)
        assert all(it["verified"] for it in json.loads(out)["items"])

    _, out, _ = run(capsys, "generate", "--kind", "domain_rooted", "--domain", "unit_circle",
                    "--degree", 3, "--count", 5)
    for it in json.loads(out)["items"]:
        for r in it["roots"]:
            assert abs(abs(decode(r)) - 1) < 1e-12


def test_symbol_command(capsys):
    code, out, _ = run(capsys, "symbol", SPECS / "ddz4.json", "--n", 4)
    assert code == 0
    assert json.loads(out)["symbol"]["text"] == (4 * (Poly2.z() + Poly2.w()) ** 3).format()
    code, out, _ = run(capsys, "symbol", SPECS / "ddz4.json", "--n", 4, "--kind", "circ")
    assert code == 3


@pytest.mark.skipif(shutil.which("preserver-lab") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["preserver-lab", "analyze", str(SPECS / "ddz4.json")],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["report"]["verdict"] == "preserver"
