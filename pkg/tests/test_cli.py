import io
import json
import subprocess
import sys

import pytest

from ordinal_cshp.cli import run
from ordinal_cshp.cshp import decide_product, verdict_from_json
from ordinal_cshp.notation import parse


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err, inp=io.StringIO(stdin) if stdin is not None else None)
    return code, out.getvalue(), err.getvalue()


def test_product_negative_prints_witness():
    code, out, _ = call("cshp", "product", "w_1", "w_2")
    assert code == 0
    assert out.startswith("NO (Theorem A)")
    assert "λ₁ ≠ λ₂" in out


def test_eval_absorbs():
    assert call("eval", "1 + w") == (0, "w\n", "")


def test_coproduct_clause_b():
    code, out, _ = call("cshp", "coproduct", "w_1", "w_1")
    assert code == 0 and out.splitlines()[0] == "YES (clause b)"


def test_coproduct_arity_is_a_usage_error():
    code, _, err = call("cshp", "coproduct", "w_1", "w_1", "w_1")
    assert code == 2 and "exactly two" in err


@pytest.mark.parametrize(
    "argv, code",
    [
        (["eval", "w_0"], 1),
        (["eval", "w +"], 1),
        (["cshp", "ordinal", "0"], 1),
        (["homeo", "eval", "--beta", "w+1", "3"], 1),
        (["homeo", "eval", "--beta", "w", "--phi", "(1 2)", "3"], 1),
        (["finitetop", "thin", "/nonexistent/file"], 1),
        (["bogus"], 2),
        (["cshp"], 2),
        (["cmp", "w"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_parse_error_shows_caret():
    _, _, err = call("eval", "w + ?")
    assert "parse error" in err and "    ^" in err


def test_cmp_cnf_cf():
    assert call("cmp", "w", "w+1")[1] == "w < w + 1\n"
    assert call("cnf", "w^w*2 + 3")[1] == "w^(w) * 2\nw^(0) * 3\n"
    assert "cf(w_1 + w) = w" in call("cf", "w_1 + w")[1]
    data = json.loads(call("cf", "--json", "w^(w_2)")[1])
    assert data == {"value": "w_2", "kind": "Limit", "cofinality": "w_2", "regular_uncountable": True}


def test_json_verdict_round_trips():
    code, out, _ = call("cshp", "product", "--json", "w_1", "w_2")
    data = json.loads(out)
    assert code == 0 and data["has_cshp"] is False and data["rule"] == "TheoremA-negative"
    assert verdict_from_json(data) == decide_product([parse("w_1"), parse("w_2")])


def test_homeo_commands():
    code, out, _ = call("homeo", "eval", "--beta", "w", "--beta-delta", "1", "w^2+3")
    assert (code, out) == (0, "w^2 + 3 -> w^2 + w + 3\n")
    _, out, _ = call("homeo", "eval", "--inverse", "--beta", "w", "--beta-delta", "1", "w^2+w+3")
    assert out == "w^2 + w + 3 -> w^2 + 3\n"
    _, out, _ = call("homeo", "probe", "--json", "--beta", "w", "--beta-delta", "0", "--beta-gamma", "2")
    assert json.loads(out)["probe"] == "w^3 + 1"


def test_finitetop_commands(tmp_path):
    poset = tmp_path / "p.txt"
    poset.write_text("elements: a b c\nle: a c\nle: b c\nenum: c a b\n")
    assert call("finitetop", "thin", str(poset))[1] == "c\n"
    space = tmp_path / "s.txt"
    space.write_text("points: 2\npiece: 0\npiece: 1\n")
    code, out, _ = call("finitetop", "colimit", "--undirected", str(space))
    assert code == 0 and "differs" in out
    assert call("finitetop", "colimit", str(space))[0] == 1
    _, out, _ = call("finitetop", "prop21-scan", "--max-points", "2", "--max-tau", "3", "--json")
    data = json.loads(out)
    assert data["by_tau"]["2"]["counterexamples"] > 0
    assert data["by_tau"]["3"]["counterexamples"] == 0


def test_repl_bindings():
    code, out, err = call(stdin="x = w^2 + 1\neval x*2\nx + w\ncshp ordinal x\n")
    assert out.splitlines() == ["x = w^2 + 1", "w^2*2 + 1", "w^2 + w", "YES (compact)"]
    assert err == "" and code == 0


def test_repl_reports_errors_and_continues():
    code, out, err = call(stdin="w_0 = 3\ny = (\neval 2\n")
    assert out == "2\n"
    assert "cannot bind" in err and "parse error" in err


def test_deterministic_output():
    runs = {call("cshp", "ordinal", "--explain", "w_2 + w_1")[1] for _ in range(3)}
    assert len(runs) == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ordinal_cshp", "eval", "w_1 * w"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "w^(w_1 + 1)\n"
