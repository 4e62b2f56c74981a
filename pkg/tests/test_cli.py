"""Command-line interface: exit codes, payload shapes, file outputs."""

import json
import subprocess
import sys

from toricnash.cli import main
from toricnash.corpus import corpus_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def corpus_file(name: str) -> str:
    return str(corpus_path(name))


# ---------------------------------------------------------------------------
# verdict exit codes (0 / 1)

def test_hilbert_json_payload(capsys):
    code, out, _ = run(capsys, "--format", "json", "hilbert",
                       corpus_file("nash-singular-3fold-dual"))
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == "4"
    assert ["1", "1", "1"] in payload["hilbert_basis"]
    # every numeric leaf is a decimal string, never a bare JSON number
    assert all(isinstance(x, str) for v in payload["hilbert_basis"] for x in v)


def test_gstable_verdicts(capsys):
    code, out, _ = run(capsys, "--format", "json", "gstable",
                       corpus_file("an-surface-2"))
    assert code == 0 and json.loads(out)["is_g_stable"] is True
    code, out, _ = run(capsys, "--format", "json", "gstable",
                       corpus_file("cond-ii-failure"))
    assert code == 1
    payload = json.loads(out)
    assert payload["condition_i"]["holds"] is True
    assert payload["condition_ii"]["witness_element"] == ["1", "1", "1"]


def test_desing_success_and_failure(capsys):
    code, out, _ = run(capsys, "--format", "json", "desing",
                       corpus_file("an-surface-4"))
    assert code == 0
    payload = json.loads(out)
    assert payload["desingularized"] is True
    assert payload["step_count"] == "3"
    assert payload["moderate"] is True

    code, out, _ = run(capsys, "--format", "json", "desing",
                       corpus_file("cond-i-failure"))
    assert code == 1
    payload = json.loads(out)
    assert payload["desingularized"] is False
    assert payload["reason"] == "input-not-g-stable"


def test_nash_verdicts(capsys):
    code, out, _ = run(capsys, "--format", "json", "nash",
                       corpus_file("nash-singular-3fold"))
    assert code == 1  # singular blowup
    payload = json.loads(out)
    assert payload["smooth"] is False
    assert len(payload["singular_charts"]) == 3
    code, _, _ = run(capsys, "nash", corpus_file("simplex-product-2-2"))
    assert code == 0


def test_nash_compare_chars(capsys):
    code, out, _ = run(capsys, "--format", "json", "nash",
                       corpus_file("nash-singular-3fold"), "--compare-chars")
    assert code == 0
    payload = json.loads(out)
    assert payload["relevant_primes"] == ["3"]
    assert payload["equal_for_all"] is True


def test_polytope_verdicts(capsys):
    code, _, _ = run(capsys, "polytope", "smooth", corpus_file("unit-cube"))
    assert code == 0
    code, _, _ = run(capsys, "polytope", "smooth", corpus_file("rhombus"))
    assert code == 1
    code, _, _ = run(capsys, "polytope", "gflat", corpus_file("nonflat-tetrahedron"))
    assert code == 1
    code, _, _ = run(capsys, "polytope", "onestep", corpus_file("thin-triangle-5"))
    assert code == 0
    code, _, _ = run(capsys, "polytope", "verify-baryhull", corpus_file("hexagon"))
    assert code == 0


# ---------------------------------------------------------------------------
# usage errors (2)

def test_missing_file(capsys):
    code, _, err = run(capsys, "hilbert", "/nonexistent/cone.json")
    assert code == 2
    assert "error:" in err


def test_corrupt_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "hilbert", str(bad))
    assert code == 2


def test_schema_mismatch(capsys):
    code, _, err = run(capsys, "hilbert", corpus_file("unit-square"))
    assert code == 2
    assert "cone" in err


def test_unknown_gen_family(capsys):
    code, _, _ = run(capsys, "polytope", "gen", "dodecahedron")
    assert code == 2


# ---------------------------------------------------------------------------
# resource caps (3)

def test_desing_step_cap(capsys):
    code, _, err = run(capsys, "desing", corpus_file("an-surface-5"),
                       "--max-steps", "1")
    assert code == 3
    assert "exceeded" in err


def test_nash_iterate_depth_cap(capsys):
    code, out, _ = run(capsys, "--format", "json", "nash",
                       corpus_file("nash-singular-3fold"),
                       "--iterate", "--max-depth", "1")
    assert code == 3
    payload = json.loads(out)
    assert payload["depth_cap_hit"] is True
    code, out, _ = run(capsys, "--format", "json", "nash",
                       corpus_file("nash-singular-3fold"),
                       "--iterate", "--max-depth", "4")
    assert code == 0
    assert json.loads(out)["resolved"] is True


# ---------------------------------------------------------------------------
# invariant violations (4)

def test_tampered_corpus_entry_detected(capsys, tmp_path):
    original = json.loads(open(corpus_file("an-surface-3")).read())
    original["generators"][1] = ["1", "4"]
    fake = tmp_path / "an-surface-3.json"
    fake.write_text(json.dumps(original))
    code, _, err = run(capsys, "corpus", "run", str(fake))
    assert code == 4
    assert "mismatch" in err


def test_corpus_run_clean(capsys):
    code, out, _ = run(capsys, "--format", "json", "corpus", "run",
                       "an-surface-1", "hexagon")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert [r["name"] for r in payload["results"]] == ["an-surface-1", "hexagon"]


def test_corpus_list(capsys):
    code, out, _ = run(capsys, "--format", "json", "corpus", "list")
    assert code == 0
    assert "an-surface-1" in json.loads(out)["entries"]


# ---------------------------------------------------------------------------
# oracle

def test_oracle_single_cone(capsys):
    code, out, _ = run(capsys, "--format", "json", "oracle",
                       corpus_file("cond-i-failure"))
    assert code == 0
    payload = json.loads(out)
    labels = {c["label"] for c in payload["checks"]}
    assert "hilbert-vs-bounded-enumeration" in labels


def test_oracle_random_batch(capsys):
    code, out, _ = run(capsys, "--format", "json", "oracle",
                       "--random-2d", "3", "--seed", "11")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_oracle_without_work_is_usage_error(capsys):
    code, _, _ = run(capsys, "oracle")
    assert code == 2


# ---------------------------------------------------------------------------
# file outputs

def test_gen_writes_loadable_cone(capsys, tmp_path):
    out_file = tmp_path / "sp.json"
    code, _, _ = run(capsys, "polytope", "gen", "simplex-product", "2", "2",
                     "-o", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "--format", "json", "hilbert", str(out_file))
    assert code == 0
    assert json.loads(out)["count"] == "4"


def test_gen_stdout_is_canonical_json(capsys):
    code, out, _ = run(capsys, "polytope", "gen", "hexagon")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["vertices"]) == 6


def test_baryhull_svg_output(capsys, tmp_path):
    svg = tmp_path / "fig.svg"
    code, out, _ = run(capsys, "--format", "json", "polytope", "baryhull",
                       corpus_file("hexagon"), "--svg", str(svg))
    assert code == 0
    assert json.loads(out)["simplex_count"] == "32"
    text = svg.read_text()
    assert text.startswith("<svg")
    assert "<polygon" in text


def test_svg_rejects_non_planar_input(capsys, tmp_path):
    code, _, _ = run(capsys, "polytope", "baryhull", corpus_file("unit-cube"),
                     "--svg", str(tmp_path / "no.svg"))
    assert code == 2


# ---------------------------------------------------------------------------
# determinism and the installed entry point

def test_repeated_runs_are_byte_identical(capsys):
    _, out1, _ = run(capsys, "--format", "json", "corpus", "run", "unit-square")
    _, out2, _ = run(capsys, "--format", "json", "corpus", "run", "unit-square")
    assert out1 == out2


def test_module_invocation_works():
    proc = subprocess.run(
        [sys.executable, "-m", "toricnash.cli", "corpus", "list"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert "hexagon" in proc.stdout
