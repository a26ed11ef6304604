import json

import pytest

from laf.cli import main
from laf.data import path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_fertility(capsys, fertility_path):
    code, out, err = run(capsys, "eval", fertility_path)
    assert code == 0 and not err
    assert "status sets (relevance):" in out
    assert "  Weakened: {med_repr(cp)}" in out
    assert "  Rejected: {~med_repr(cp)}" in out
    assert "  Assured: {genetic_dis(cp), n1}" in out


def test_eval_is_byte_identical(capsys, fertility_path):
    _, a, _ = run(capsys, "eval", fertility_path)
    _, b, _ = run(capsys, "eval", fertility_path)
    assert a == b


def test_eval_json(capsys, fertility_path):
    code, out, _ = run(capsys, "eval", fertility_path, "--json")
    doc = json.loads(out)
    assert doc["labels"]["sol_rep_prob(cp)"]["relevance"]["mu_minus"] == "0.5352"
    assert doc["labels"]["sol_rep_prob(cp)"]["intuition"]["mu_minus"] == ["PL", "FCH"]
    row = next(r for r in doc["statuses"] if r["claim"] == "med_repr(cp)")
    assert row == {"claim": "med_repr(cp)", "status": {"relevance": "Weakened", "intuition": "Assured"}, "combined": "Weakened"}


def test_eval_without_rule_premises(capsys, fertility_path):
    _, out, _ = run(capsys, "eval", fertility_path, "--no-rules-as-premises", "--json")
    assert json.loads(out)["labels"]["sol_rep_prob(cp)"]["relevance"]["mu_minus"] == "0.76"


def test_eval_empty(capsys):
    code, out, err = run(capsys, "eval", path("empty.laf"))
    assert (code, out, err) == (0, "", "")


def test_eval_cyclic(capsys):
    code, out, err = run(capsys, "eval", path("cyclic.laf"))
    assert code == 2 and out == ""
    assert "a(x) -> RA(r2) -> b(x) -> RA(r1) -> a(x)" in err


def test_parse_errors_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.laf"
    f.write_text("algebra r fuzzy;\nfact p(a) labels [1.5];\nfact q(a) labels [0.5 0.2];\n")
    code, out, err = run(capsys, "eval", str(f))
    assert code == 2 and out == ""
    assert len(err.strip().splitlines()) == 2
    assert "bad.laf:2:" in err and "bad.laf:3:" in err


def test_solver_error_exit_3(capsys, tmp_path):
    f = tmp_path / "osc.laf"
    f.write_text("algebra i tags { PL }; fact a(x) labels [{PL}]; rule r: ~a(x) <- a(x) labels [{PL}];")
    code, out, err = run(capsys, "eval", str(f), "--no-rules-as-premises")
    assert code == 3 and out == ""
    assert "no fixed point" in err


def test_missing_file(capsys):
    code, out, err = run(capsys, "eval", "/nonexistent/x.laf")
    assert code == 1 and out == "" and "cannot read" in err


@pytest.mark.parametrize("argv", [[], ["eval"], ["frobnicate", "x"], ["eval", "x.laf", "--start", "middle"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_bad_tolerance(capsys, fertility_path):
    code, out, err = run(capsys, "eval", fertility_path, "--tolerance", "0")
    assert code == 1 and out == ""


def test_json_input_format(capsys, tmp_path, fertility_kb):
    from laf import kb_to_json

    f = tmp_path / "kb.txt"
    f.write_text(json.dumps(kb_to_json(fertility_kb)))
    code, out, _ = run(capsys, "eval", str(f), "--format", "json")
    assert code == 0 and "Weakened: {med_repr(cp)}" in out


def test_graph_dot(capsys, fertility_path):
    code, out, _ = run(capsys, "graph", fertility_path, "--dot")
    assert code == 0
    assert out.count("shape=diamond") == 1
    assert "μ⁺=0.56" in out


def test_graph_dot_empty(capsys):
    _, out, _ = run(capsys, "graph", path("empty.laf"), "--dot")
    assert out == "digraph laf {}\n"


def test_graph_json(capsys, fertility_path):
    _, out, _ = run(capsys, "graph", fertility_path, "--json")
    doc = json.loads(out)
    assert len(doc["nodes"]) == 14 + 5 + 1
    assert {n["kind"] for n in doc["nodes"]} == {"I", "RA", "CA"}
    assert all(set(e) == {"from", "to"} for e in doc["edges"])


def test_trace(capsys, fertility_path):
    code, out, _ = run(capsys, "trace", fertility_path, "sol_rep_prob(cp)")
    assert code == 0
    top_level = [l for l in out.splitlines() if l.startswith(("├─", "└─"))]
    assert [l.split()[1] for l in top_level] == ["RA(n1[X=cp])", "RA(n3[X=cp])"]


def test_trace_leaf(capsys, fertility_path):
    _, out, _ = run(capsys, "trace", fertility_path, "genetic_dis(cp)")
    assert len(out.strip().splitlines()) == 1


def test_trace_unknown(capsys, fertility_path):
    code, out, err = run(capsys, "trace", fertility_path, "nosuch(cp)")
    assert code != 0 and out == ""
    assert "known claims" in err


def test_color(capsys, fertility_path, monkeypatch):
    monkeypatch.setenv("LAF_COLOR", "1")
    _, out, _ = run(capsys, "eval", fertility_path)
    assert "\x1b[33mWeakened" in out
    monkeypatch.setenv("LAF_COLOR", "0")
    _, out, _ = run(capsys, "eval", fertility_path)
    assert "\x1b" not in out
