"""CLI surface: subcommands, exit codes, formats, determinism, config files."""

import json

import pytest

from monopole_spectra import cli


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_csv_row_count(capsys):
    code, out, _ = run(
        ["spectrum", "--geometry", "flat", "--potential", "coulomb", "--k", "1", "--j", "2",
         "--alpha", "1", "--mass", "1", "--n", "0..3", "--format", "csv"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("channel,")
    assert len(lines) == 1 + 12  # 3 branches x 4 n


def test_spectrum_admissibility_flags(capsys):
    args = ["spectrum", "--geometry", "lobachevsky", "--potential", "coulomb", "--no-monopole",
            "--j", "0", "--alpha", "10", "--mass", "1", "--n", "0..5",
            "--channel", "parity-odd", "--format", "csv"]
    code, out, _ = run(args, capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 3  # only n = 0..2 admissible
    code, out, _ = run(args + ["--include-inadmissible"], capsys)
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 6
    assert all(",false," in row for row in rows[3:])


def test_spectrum_empty_range(capsys):
    code, out, _ = run(
        ["spectrum", "--k", "1", "--j", "2", "--alpha", "1", "--n", "1..0", "--format", "csv"],
        capsys,
    )
    assert code == 0
    assert out.strip().splitlines() == ["channel,j2,n,E,admissible,derivation,reason"]


def test_spectrum_byte_identical(capsys):
    argv = ["spectrum", "--k", "1", "--j", "2", "--alpha", "1", "--n", "0..2", "--format", "json"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2
    records = json.loads(out1)
    assert {"channel", "j2", "n", "E", "derivation", "admissible", "reason", "formula",
            "scenario"} <= set(records[0])


def test_spectrum_bad_config_exit_2(capsys):
    code, _, err = run(["spectrum", "--k", "0.3", "--j", "1", "--alpha", "1"], capsys)
    assert code == 2 and "half-integer" in err


def test_roots_includes_both_derivations(capsys):
    code, out, _ = run(["roots", "--k", "1", "--j", "2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["cubic"]["p_from_matrix"] == payload["cubic"]["p_closed_form"] == pytest.approx(-67 / 12, abs=1e-10)
    assert payload["cubic"]["q_from_matrix"] == pytest.approx(-56 / 27, abs=1e-10)
    assert payload["eigen_residual"] <= 1e-10
    assert len(payload["roots"]) == 3


def test_roots_parity_pair_for_no_monopole(capsys):
    code, out, _ = run(["roots", "--k", "0", "--j", "1"], capsys)
    assert code == 0
    assert json.loads(out)["parity_pair"] == ["2", "-1"]


def test_roots_min_j_notice(capsys):
    code, out, _ = run(["roots", "--k", "1", "--j", "0"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert "notice" in payload and "roots" not in payload


def test_validate_single_suite(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(["validate", "--suite", "roots", "--report", str(report)], capsys)
    assert code == 0
    assert "[PASS] 1-roots" in out and "[PASS] 2-parity" in out
    payload = json.loads(report.read_text())
    assert payload["results"]["passed"] is True


def test_validate_unknown_suite_exit_2(capsys):
    code, _, _ = run(["validate", "--suite", "nonsense"], capsys)
    assert code == 2


def test_wavefunction_peculiar_profile(capsys, tmp_path):
    out_file = tmp_path / "wf.csv"
    code, _, _ = run(
        ["wavefunction", "--geometry", "flat", "--potential", "none", "--k", "1", "--j", "0",
         "--energy", "-0.5", "--grid", "0.001:20:2000", "--output", str(out_file)],
        capsys,
    )
    assert code == 0
    lines = out_file.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["nodes"] == 0 and "e^(-" in header["closed_form"]
    assert lines[1] == "r,u"
    assert len(lines) == 2 + 2000  # grid spec honored exactly
    first = lines[2].split(",")
    assert float(first[0]) == pytest.approx(0.001, abs=1e-12)


def test_wavefunction_nodeless_ground_state(capsys, tmp_path):
    out_file = tmp_path / "wf.csv"
    code, _, _ = run(
        ["wavefunction", "--geometry", "lobachevsky", "--potential", "oscillator", "--k", "1",
         "--j", "0", "--k-osc", "100", "--n", "0", "--grid", "0.001:12:4000",
         "--output", str(out_file)],
        capsys,
    )
    assert code == 0
    header = json.loads(out_file.read_text().splitlines()[0])
    assert header["nodes"] == 0
    assert header["ode_residual"] <= 1e-7


def test_wavefunction_inadmissible_exit_1(capsys):
    code, _, err = run(
        ["wavefunction", "--geometry", "lobachevsky", "--potential", "coulomb", "--no-monopole",
         "--j", "0", "--alpha", "10", "--n", "5", "--channel", "parity-odd"],
        capsys,
    )
    assert code == 1 and "inadmissible" in err


def test_config_file_defaults_and_flag_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("geometry = flat\npotential = coulomb\nk = 1\nj = 2\nalpha = 1\nn = 0..1\nformat = csv\n")
    code, out, _ = run(["spectrum", "--config", str(cfg)], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 6  # 3 branches x 2 n
    code, out, _ = run(["spectrum", "--config", str(cfg), "--n", "0..3"], capsys)
    assert len(out.strip().splitlines()) == 1 + 12  # flag wins over file


def test_config_round_trip_byte_identical():
    text = "geometry = flat\nk = 1/2\nn = 0..3\n"
    parsed = cli.parse_config_text(text)
    assert cli.serialize_config(parsed) == text
    assert cli.parse_config_text(cli.serialize_config(parsed)) == parsed


def test_threads_env_gives_same_output(capsys, monkeypatch):
    argv = ["spectrum", "--k", "1", "--j", "2", "--alpha", "1", "--n", "0..3", "--format", "csv"]
    _, seq, _ = run(argv, capsys)
    monkeypatch.setenv(cli.THREADS_ENV, "4")
    _, par, _ = run(argv, capsys)
    assert seq == par
