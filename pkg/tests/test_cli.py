import json
import subprocess
import sys

import pytest

from milnorhomfly import corpus
from milnorhomfly.cli import EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK, main
from milnorhomfly.diagram.slices import StringLinkSlices
from milnorhomfly.diagram.text import parse_any


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    payload = json.loads(out)
    assert payload["schema"] == 1
    return code, payload


def test_homflypt_unknot(capsys):
    code, out = run(capsys, "homflypt", "builtin:unknot")
    assert code == EXIT_OK and out["value"] == "1"
    assert out["terms"] == [{"t": 0, "z": 0, "c": 1}]


def test_p0_and_derivatives(capsys):
    assert run(capsys, "p0", "builtin:trefoil")[1]["value"] == "-t^4 + 2*t^2"
    assert run(capsys, "p0-deriv", "builtin:trefoil", "--l", "2")[1]["value"] == -8
    assert run(capsys, "logp0-deriv", "builtin:trefoil", "--m", "4")[1]["value"] == -216
    assert run(capsys, "p0-deriv", "builtin:kplus 2", "--l", "3")[1]["value"] == 48


def test_milnor_and_delta(capsys):
    code, out = run(capsys, "milnor", "builtin:borromean", "--I", "123")
    assert code == EXIT_OK and out["mu"] == 1 and out["delta"] == 0 and out["mu_bar"] == 1
    assert run(capsys, "delta", "builtin:split-hopf-pair", "--I", "1324")[1]["delta"] == 1
    assert run(capsys, "milnor", "builtin:whitehead", "--I", "1,1,2,2")[1]["mu"] == 1


def test_fusion_knot(capsys):
    code, out = run(capsys, "fusion-knot", "builtin:split-hopf-pair", "--I", "1324")
    assert code == EXIT_OK and out["p0"] == "-t^4 + 2*t^2"
    assert isinstance(parse_any(out["pd"]), type(corpus.trefoil()))
    assert run(capsys, "fusion-knot", "builtin:split-hopf-pair", "--I", "1324", "--J", "132")[1]["p0"] == "1"


def test_theorem_verdicts_and_exit_codes(capsys):
    code, out = run(capsys, "verify-thm1", "builtin:split-hopf-pair", "--I", "1324", "--k", "1")
    assert code == EXIT_HYPOTHESIS and out["verdict"] == "hypothesis-violated"
    assert out["rhs_exact"] is False
    code, out = run(capsys, "verify-thm2", "builtin:borromean", "--I", "123")
    assert code == EXIT_OK and out["verdict"] == "pass" and out["rhs"] == "1"
    code, out = run(capsys, "verify-thm3", "builtin:whitehead", "--I", "1122", "--k", "3", "--jobs", "2")
    assert code == EXIT_OK and out["lhs"]["mu"] == 1
    code, out = run(capsys, "f", "builtin:split-hopf-pair", "--I", "1324")
    assert out["value"] == "1/2" and out["exact"] is False


def test_comparators(capsys):
    code, out = run(capsys, "compare-lh", "builtin:borromean", "builtin:identity 3")
    assert code == EXIT_FAIL and out["summary"] == "distinguished-by(123)"
    code, out = run(capsys, "compare-lh", "builtin:hopf+", "builtin:identity:2")
    assert code == EXIT_FAIL and out["summary"] == "linking-mismatch(1,2)"
    code, out = run(capsys, "compare-lh", "builtin:borromean", "builtin:borromean")
    assert code == EXIT_OK and out["status"] == "equal"
    code, out = run(capsys, "compare-milnor", "builtin:whitehead", "builtin:identity 2", "--max-length", "4")
    assert code == EXIT_FAIL and out["summary"] == "distinguished-by(1122)"
    code, out = run(capsys, "compare-milnor", "builtin:hopf+", "builtin:hopf+", "--max-length", "3")
    assert code == EXIT_OK and out["status"] == "indistinguishable" and "note" in out


def test_jobs_do_not_change_output(capsys):
    args = ["verify-thm1", "builtin:vJ 1234", "--I", "1234", "--k", "2"]
    serial = run(capsys, *args)
    parallel = run(capsys, *args, "--jobs", "3")
    assert serial == parallel


@pytest.mark.parametrize("argv", [
    ["homflypt", "builtin:no-such-link"],
    ["homflypt", "/nonexistent/file.txt"],
    ["milnor", "builtin:borromean", "--I", "12x"],
    ["milnor", "builtin:trefoil", "--I", "12"],
    ["milnor", "builtin:borromean", "--I", "14"],
    ["p0", "builtin:hopf+"],
    ["verify-thm2", "builtin:borromean", "--I", "121"],
    ["verify-thm1", "builtin:borromean", "--I", "123", "--k", "2", "--jobs", "0"],
    ["compare-lh", "builtin:borromean", "builtin:hopf+"],
])
def test_input_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_INPUT and out["error"]


def test_malformed_file_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("width 2\nx+ 1\nx* 1\n")
    code, out = run(capsys, "milnor", str(path), "--I", "12")
    assert code == EXIT_INPUT and "line 3" in out["error"]


def test_file_and_stdin_inputs(capsys, tmp_path, monkeypatch):
    path = tmp_path / "clasp.txt"
    path.write_text("# positive clasp\nwidth 2\nx+ 1\nx+ 1\n")
    assert run(capsys, "milnor", str(path), "--I", "12")[1]["mu"] == 1
    monkeypatch.setattr("sys.stdin", __import__("io").StringIO(path.read_text()))
    assert run(capsys, "homflypt", "-")[1]["value"] == "-t^3*z^-1 + t*z + t*z^-1"


def test_corpus_listing_and_round_trip(capsys):
    code, out = run(capsys, "corpus")
    assert code == EXIT_OK and set(corpus.CATALOG) == set(out["builtins"])
    for name in out["builtins"]:
        shown = run(capsys, "corpus", "--show", name)[1]
        original = corpus.builtin(name)
        parsed = parse_any(shown["text"])
        assert shown["kind"] == ("string-link" if isinstance(original, StringLinkSlices) else "diagram")
        if isinstance(original, StringLinkSlices):
            assert parsed == original, name
        else:
            assert parsed == original.relabeled(), name


def test_corpus_check(capsys):
    code = main(["corpus", "--check"])
    captured = capsys.readouterr()
    out = json.loads(captured.out)
    results = out["acceptance"]
    assert [c["criterion"] for c in results] == list(range(1, 12))
    failed = [c["criterion"] for c in results if not c["passed"]]
    assert code == (EXIT_FAIL if failed else EXIT_OK)
    assert captured.err.count("PASS") + captured.err.count("FAIL") == 11


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "milnorhomfly", "p0-deriv", "builtin:trefoil", "--l", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == -8
