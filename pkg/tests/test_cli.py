import json
import math

import pytest

from siegeltheta import DomainError, theta1, theta1_reduced, EvalConfig
from siegeltheta.cli import main, parse_complex


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --------------------------------------------------------------------------
# complex literal parsing
# --------------------------------------------------------------------------

@pytest.mark.parametrize(
    "text,expected",
    [
        ("i", 1j),
        ("2i", 2j),
        ("-i", -1j),
        ("0.5", 0.5 + 0j),
        ("0.5-0.25i", 0.5 - 0.25j),
        ("1+i", 1 + 1j),
        ("1e-3i", 1e-3j),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "1 + i", "abc", "0.5- 0.25i", "nan"])
def test_parse_complex_rejects(text):
    with pytest.raises(DomainError):
        parse_complex(text)


# --------------------------------------------------------------------------
# eval
# --------------------------------------------------------------------------

def test_eval_zero(capsys):
    code, out, _ = run_cli(capsys, "eval", "theta1", "--z", "0", "--tau", "i")
    assert code == 0
    assert out.split()[0] == "0+0i"


def test_eval_value_round_trips(capsys):
    code, out, _ = run_cli(capsys, "eval", "theta1", "--z", "0.5", "--tau", "i")
    assert code == 0
    token, terms_token = out.split()
    assert terms_token.startswith("terms=")
    parsed = parse_complex(token)
    value = theta1(0.5, 1j)
    # printed with 15 significant digits: re-parse within one unit in the
    # last printed place, per component
    for got, want in ((parsed.real, value.real), (parsed.imag, value.imag)):
        unit = 10.0 ** (math.floor(math.log10(abs(want))) - 14) if want else 1e-15
        assert abs(got - want) <= unit


def test_eval_reduce_matches_direct(capsys):
    code, plain, _ = run_cli(capsys, "eval", "theta1", "--z", "0.3", "--tau", "0.02i")
    assert code == 0
    code, reduced, _ = run_cli(
        capsys, "eval", "theta1", "--z", "0.3", "--tau", "0.02i", "--reduce"
    )
    assert code == 0
    v1 = parse_complex(plain.split()[0])
    v2 = parse_complex(reduced.split()[0])
    assert abs(v1 - v2) < 1e-10
    terms_plain = int(plain.split()[1].split("=")[1])
    terms_reduced = int(reduced.split()[1].split("=")[1])
    assert terms_reduced < terms_plain


def test_eval_lower_half_plane_exits_2(capsys):
    code, _, err = run_cli(capsys, "eval", "theta1", "--z", "0.5", "--tau=-i")
    assert code == 2
    assert "upper half-plane" in err


def test_eval_nonconvergence_exits_3(capsys):
    code, _, err = run_cli(
        capsys, "eval", "theta1", "--z", "0.3", "--tau", "0.0001i",
        "--max-terms", "100",
    )
    assert code == 3
    assert "error" in err


def test_eval_reduce_requires_theta1(capsys):
    code, _, err = run_cli(
        capsys, "eval", "theta3", "--z", "0.1", "--tau", "i", "--reduce"
    )
    assert code == 2


def test_eval_theta4_matches_library(capsys):
    from siegeltheta import theta4

    code, out, _ = run_cli(capsys, "eval", "theta4", "--z", "0.2", "--tau", "2i")
    assert code == 0
    assert abs(parse_complex(out.split()[0]) - theta4(0.2, 2j)) < 1e-14


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def test_verify_theorem_count_and_pass(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "theorem", "--count", "5", "--tol", "1e-9"
    )
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 5
    assert all(r["passed"] for r in records)
    assert all(r["tolerance"] == 1e-9 for r in records)


def test_verify_lemma2_residue_theorem_record(capsys):
    code, out, _ = run_cli(capsys, "verify", "lemma2", "--n", "3")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    names = {r["check_name"] for r in records}
    assert "lemma2_residue_theorem_contour" in names
    contour = next(r for r in records if r["check_name"] == "lemma2_residue_theorem_contour")
    assert contour["residual"] < 1e-8
    assert contour["parameters"]["n"] == 3


def test_verify_reports_follow_schema(capsys):
    _, out, _ = run_cli(capsys, "verify", "lemma3")
    for line in out.splitlines():
        record = json.loads(line)
        assert set(record) == {
            "check_name", "parameters", "residual", "tolerance",
            "passed", "terms_or_nodes", "wall_ms",
        }
        assert record["passed"] == (record["residual"] <= record["tolerance"])


def test_verify_all_is_byte_deterministic(capsys):
    code1, first, _ = run_cli(capsys, "verify", "all", "--seed", "42")
    code2, second, _ = run_cli(capsys, "verify", "all", "--seed", "42")
    assert code1 == code2 == 0
    assert first == second


def test_verify_threaded_output_matches_serial(capsys, monkeypatch):
    _, serial, _ = run_cli(capsys, "verify", "eq2", "--count", "6")
    monkeypatch.setenv("SIEGELTHETA_THREADS", "3")
    _, threaded, _ = run_cli(capsys, "verify", "eq2", "--count", "6")
    assert serial == threaded


def test_verify_bad_thread_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("SIEGELTHETA_THREADS", "zero")
    code, _, err = run_cli(capsys, "verify", "lemma3")
    assert code == 2
    assert "SIEGELTHETA_THREADS" in err


def test_verify_failing_tolerance_exits_1(capsys):
    code, out, _ = run_cli(capsys, "verify", "lemma3", "--tol", "1e-30")
    assert code == 1
    assert any(not json.loads(line)["passed"] for line in out.splitlines())


def test_verify_unknown_suite_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "nosuch"])
    assert info.value.code == 2


# --------------------------------------------------------------------------
# sweep
# --------------------------------------------------------------------------

def test_sweep_edge_limit_monotone(tmp_path, capsys):
    out_file = tmp_path / "edges.csv"
    code, _, _ = run_cli(
        capsys, "sweep", "edge_limit", "--start", "2", "--stop", "20",
        "--out", str(out_file),
    )
    assert code == 0
    lines = out_file.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,edge,t,a,b,y,residual"
    residuals = [float(line.split(",")[-1]) for line in lines[1:]]
    assert len(residuals) == 19
    assert all(a > b for a, b in zip(residuals, residuals[1:]))


def test_sweep_reduction_gain(tmp_path, capsys):
    out_file = tmp_path / "gain.csv"
    code, _, _ = run_cli(
        capsys, "sweep", "reduction_gain", "--out", str(out_file)
    )
    assert code == 0
    lines = out_file.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    gain_col = header.index("gain")
    assert all(float(line.split(",")[gain_col]) >= 1.0 for line in lines[1:])


def test_sweep_json_format(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "lambert_tail", "--steps", "3", "--format", "json"
    )
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 3
    assert all(row["residual"] < 1e-10 for row in rows)


def test_sweep_empty_range_writes_header_only(tmp_path, capsys):
    out_file = tmp_path / "empty.csv"
    code, _, _ = run_cli(
        capsys, "sweep", "edge_limit", "--start", "5", "--stop", "3",
        "--out", str(out_file),
    )
    assert code == 0
    assert out_file.read_text(encoding="utf-8") == "n,edge,t,a,b,y,residual\n"


def test_sweep_unwritable_path_exits_4(capsys):
    code, _, err = run_cli(
        capsys, "sweep", "edge_limit", "--start", "2", "--stop", "3",
        "--out", "/nonexistent/dir/output.csv",
    )
    assert code == 4
    assert "cannot write" in err
