import json
import subprocess
import sys

from meadows.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# eval


def test_eval_zero_inverse_one_totalized(capsys):
    code, out, _ = run(capsys, "eval", "--model", "rat:1", "0^~")
    assert code == 0
    assert out == "1\n"


def test_eval_with_assignment(capsys):
    code, out, _ = run(capsys, "eval", "--model", "gf:5:1", "--assign", "x=2", "x^-1")
    assert code == 0
    assert out == "3\n"


def test_eval_one_inverse(capsys):
    code, out, _ = run(capsys, "eval", "--model", "rat:0", "1^-1")
    assert code == 0
    assert out == "1\n"


def test_eval_rational_assignment(capsys):
    code, out, _ = run(capsys, "eval", "--model", "rat:0", "--assign", "x=2/3", "x^-1")
    assert code == 0
    assert out == "3/2\n"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--model", "rat:1", "--json", "0^~")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"command": "eval", "model": "rat:1", "term": "0^~", "value": "1"}


# check


def test_check_ref_fails(capsys):
    code, out, _ = run(capsys, "check", "--model", "gf:3:1", "--exhaustive",
                       "(x^-1)^-1 = x")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "FAILS"
    assert lines[1] == "witness: x = 0"


def test_check_ril_sampled(capsys):
    code, out, _ = run(capsys, "check", "--model", "rat:0", "--trials", "2000",
                       "--seed", "7", "x*(x*x^-1) = x")
    assert code == 0
    assert out.splitlines()[0] == "HOLDS_SAMPLED"
    assert "seed: 7" in out


def test_check_retotalized_model(capsys):
    code, out, _ = run(capsys, "check", "--model", "reto(gf:5:0,1)", "--exhaustive",
                       "x^~ * (x^~)^~ = 1")
    assert code == 0
    assert out.splitlines()[0] == "HOLDS_EXHAUSTIVE"


def test_check_defaults_to_exhaustive_on_finite_models(capsys):
    code, out, _ = run(capsys, "check", "--model", "gf:7:0", "x * (x * x^-1) = x")
    assert code == 0
    assert out.splitlines()[0] == "HOLDS_EXHAUSTIVE"


def test_check_json_schema(capsys):
    code, out, _ = run(capsys, "check", "--model", "gf:3:1", "--exhaustive",
                       "--json", "(x^-1)^-1 = x")
    assert code == 1
    payload = json.loads(out)
    assert payload["command"] == "check"
    assert payload["model"] == "gf:3:1"
    assert payload["verdict"] == "FAILS"
    assert payload["witness"] == {"x": "0"}
    assert payload["assignments_tested"] == 1
    assert payload["seed"] is None


def test_check_output_is_byte_deterministic(capsys):
    args = ("check", "--model", "rat:0", "--trials", "500", "--seed", "3",
            "--json", "x * y = y * x")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


# axioms


def test_axioms_list_md(capsys):
    code, out, _ = run(capsys, "axioms", "md", "--list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert lines[0].startswith("CR1:")
    assert lines[-1] == "(2.2): x * (x * x^-1) = x"


def test_axioms_check_nimd3(capsys):
    code, out, _ = run(capsys, "axioms", "nimd:3", "--check", "--model", "gf:7:3",
                       "--mode", "exhaustive")
    assert code == 0
    assert out.splitlines()[-1] == "all axioms hold"


def test_axioms_check_retotalized(capsys):
    code, out, _ = run(capsys, "axioms", "nimd1", "--check", "--model",
                       "reto(gf:3:0,1)")
    assert code == 0
    assert out.splitlines()[-1] == "all axioms hold"


def test_axioms_check_reports_failures(capsys):
    code, out, _ = run(capsys, "axioms", "md", "--check", "--model", "gf:3:1")
    assert code == 1
    assert "failing: (2.1)" in out


def test_axioms_check_needs_model(capsys):
    code, _, err = run(capsys, "axioms", "md", "--check")
    assert code == 2
    assert "error:" in err


def test_axioms_unknown_suite(capsys):
    code, _, err = run(capsys, "axioms", "florps")
    assert code == 2
    assert "unknown suite" in err


# search


def test_search_ref(capsys):
    code, out, _ = run(capsys, "search", "(x^-1)^-1 = x", "--family", "gf",
                       "--pmax", "7")
    assert code == 0
    assert out == "gf:2:1: x = 0\n"


def test_search_none(capsys):
    code, out, _ = run(capsys, "search", "x*1 = x", "--family", "gf", "--pmax", "7")
    assert code == 1
    assert out == "none\n"


def test_search_5_3(capsys):
    code, out, _ = run(capsys, "search", "x^~*(x^~)^~ = 1", "--family", "gf",
                       "--pmax", "5", "--k", "0")
    assert code == 0
    assert out == "gf:2:0: x = 0\n"


def test_search_json(capsys):
    code, out, _ = run(capsys, "search", "--json", "(x^-1)^-1 = x")
    assert code == 0
    payload = json.loads(out)
    assert payload["counterexample"] == {"model": "gf:2:1", "witness": {"x": "0"}}


# translate


def test_translate_to_md(capsys):
    code, out, _ = run(capsys, "translate", "--to", "md", "--n", "1", "x^~")
    assert code == 0
    assert out == "x^-1 + (1 - x * x^-1)\n"


def test_translate_to_nimd(capsys):
    code, out, _ = run(capsys, "translate", "--to", "nimd", "x^-1")
    assert code == 0
    assert out == "x * (x^~ * x^~)\n"


def test_translate_fixes_plain_terms(capsys):
    code, out, _ = run(capsys, "translate", "--to", "md", "--n", "1", "x + 1")
    assert code == 0
    assert out == "x + 1\n"


def test_translate_n_2(capsys):
    code, out, _ = run(capsys, "translate", "--to", "md", "--n", "2", "0^~")
    assert code == 0
    assert out == "0^-1 + ((0 + 1) + 1) * (1 - 0 * 0^-1)\n"


def test_translate_rejects_wrong_inverse(capsys):
    code, _, err = run(capsys, "translate", "--to", "md", "x^-1")
    assert code == 2
    assert "error:" in err


# exit codes


def test_exit_code_parse_error(capsys):
    code, _, err = run(capsys, "check", "--model", "gf:3:0", "x +* y = x")
    assert code == 2
    assert "error:" in err


def test_exit_code_bad_descriptor(capsys):
    code, _, err = run(capsys, "eval", "--model", "gf:4:0", "1")
    assert code == 2
    assert "prime" in err


def test_exit_code_unbound_variable(capsys):
    code, _, err = run(capsys, "eval", "--model", "gf:3:0", "x")
    assert code == 3
    assert "variable" in err


def test_exit_code_exhaustive_on_infinite_model(capsys):
    code, _, err = run(capsys, "check", "--model", "rat:0", "--exhaustive", "x = x")
    assert code == 4
    assert "finite" in err


def test_exit_code_signature_clash(capsys):
    # formula needs ^-1 but the model only interprets ^~
    code, _, err = run(capsys, "check", "--model", "reto(gf:3:0,1)", "--exhaustive",
                       "(x^-1)^-1 = x")
    assert code == 2
    assert "inverse" in err


def test_max_evals_env_override(capsys, monkeypatch):
    monkeypatch.setenv("MEADOW_MAX_EVALS", "2")
    code, _, err = run(capsys, "check", "--model", "gf:5:0", "--exhaustive",
                       "x * y = y * x")
    assert code == 4
    assert "cap" in err


# module entry point


def test_module_invocation_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "meadows.cli", "eval", "--model", "rat:1", "0^~"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "1\n"


def test_module_invocation_check_fails():
    proc = subprocess.run(
        [sys.executable, "-m", "meadows.cli", "check", "--model", "gf:2:1",
         "--exhaustive", "(x^-1)^-1 = x"],
        capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout.splitlines()[0] == "FAILS"
