import json

import pytest

from chiral_vacuum import acceptance
from chiral_vacuum.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_rows(text):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


def header_lines(text):
    return [line for line in text.splitlines() if line.startswith("#")]


def test_cavity_defaults_reproduce_headline_estimate(capsys):
    code, out, _ = run_cli(["cavity"], capsys)
    assert code == 0
    total_line = next(l for l in header_lines(out) if "london_total_T0_meV" in l)
    total = float(total_line.split("=")[1])
    assert total == pytest.approx(-0.06, rel=0.10)
    assert len(data_rows(out)) == 10


def test_selectivity_row_count(capsys):
    code, out, _ = run_cli(
        ["selectivity", "--sweep.delta_e_mev", "-100:5:100",
         "--thermal.temperatures", "200,300,400"], capsys)
    assert code == 0
    assert len(data_rows(out)) == 123  # 41 shifts x 3 temperatures


def test_output_deterministic(tmp_path):
    path = tmp_path / "out.csv"
    blobs = []
    for _ in range(2):
        code = main(["selectivity", "--sweep.delta_e_mev", "-20:10:20",
                     "--output.path", str(path)])
        assert code == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]


def test_every_column_declares_a_unit(capsys):
    for args in (["cavity"], ["selectivity", "--sweep.delta_e_mev", "0,5"],
                 ["debye"], ["tst", "--sweep.delta_e_mev", "0,5"]):
        _, out, _ = run_cli(args, capsys)
        cols = [l for l in header_lines(out) if l.startswith("# column")]
        assert cols
        assert all("[" in c and "]" in c for c in cols)


def test_header_echoes_full_config(capsys):
    _, out, _ = run_cli(["selectivity"], capsys)
    echo = [l for l in header_lines(out) if l.startswith("# config:")]
    keys = {l.split(":", 1)[1].split("=")[0].strip() for l in echo}
    assert {"sweep.delta_e_mev", "thermal.temperatures",
            "output.format", "output.path"} <= keys


def test_json_mirror(tmp_path):
    path = tmp_path / "out.json"
    code = main(["selectivity", "--sweep.delta_e_mev", "-10:10:10",
                 "--thermal.temperatures", "300",
                 "--output.format", "json", "--output.path", str(path)])
    assert code == 0
    payload = json.loads(path.read_text())
    assert payload["command"] == "selectivity"
    assert [c["name"] for c in payload["columns"]] == \
        ["delta_e_meV", "temperature_K", "p_chi"]
    assert len(payload["rows"]) == 3
    assert payload["config"]["thermal.temperatures"] == "300"


def test_unknown_key_exits_2(capsys):
    code, _, err = run_cli(["cavity", "--material.kappa", "0.4"], capsys)
    assert code == 2
    assert "material.kappa" in err


def test_invariant_violation_exits_2(capsys):
    code, _, err = run_cli(["pasteur", "--material.kappa", "1.5"], capsys)
    assert code == 2
    assert "Pasteur" in err or "pasteur" in err


def test_unparseable_value_exits_2(capsys):
    code, _, err = run_cli(["selectivity", "--thermal.temperatures", "cold"], capsys)
    assert code == 2


def test_partial_quadrature_failure_exits_1_with_error_column(capsys):
    code, out, _ = run_cli(
        ["pasteur", "--material.kappa", "0.4", "--sweep.z_list", "0.001,0.5",
         "--quad.rel_tol", "1e-13", "--quad.abs_tol", "1e-30",
         "--quad.max_subdivisions", "10"], capsys)
    assert code == 1
    cols = [l for l in header_lines(out) if l.startswith("# column")]
    assert any("error_flag" in c for c in cols)
    rows = data_rows(out)
    assert any(row.endswith(",1") for row in rows)


def test_pasteur_sweep_output_shape(capsys):
    code, out, _ = run_cli(
        ["pasteur", "--material.kappa", "0.4", "--sweep.z_min", "0.2",
         "--sweep.z_max", "1.0", "--sweep.z_points", "5"], capsys)
    assert code == 0
    rows = data_rows(out)
    assert len(rows) == 5
    first = [float(v) for v in rows[0].split(",")]
    assert len(first) == 5
    assert first[0] == 0.2
    notes = [l for l in header_lines(out) if l.startswith("# note:")]
    assert any("energy_unit_meV" in n for n in notes)
    assert any("length_unit_nm" in n for n in notes)


def test_debye_scales_with_n(capsys):
    code, out, _ = run_cli(["debye", "--sweep.n_list", "1,10"], capsys)
    assert code == 0
    rows = [r.split(",") for r in data_rows(out)]
    assert len(rows) == 2
    per1, per10 = float(rows[0][1]), float(rows[1][1])
    assert per10 == pytest.approx(10.0 * per1, rel=1e-12)
    tot1, tot10 = float(rows[0][3]), float(rows[1][3])
    assert tot10 == pytest.approx(100.0 * tot1, rel=1e-12)  # N^2 overall


def test_tst_adds_activation_columns(capsys):
    code, out, _ = run_cli(
        ["tst", "--sweep.delta_e_mev", "53", "--thermal.temperatures", "300"],
        capsys)
    assert code == 0
    cols = [l.split(":")[1].split("[")[0].strip() for l in header_lines(out)
            if l.startswith("# column")]
    assert cols == ["delta_e_meV", "temperature_K", "p_chi",
                    "e_a_eV", "delta_omega_eV", "p_chi_tst"]
    row = data_rows(out)[0].split(",")
    assert float(row[3]) == pytest.approx(1.0 - 0.05, rel=1e-12)  # barrier - w/2


def test_help_exits_zero(capsys):
    code, out, _ = run_cli(["--help"], capsys)
    assert code == 0
    assert "pasteur" in out and "verify" in out


def test_no_arguments_exits_2(capsys):
    code, out, _ = run_cli([], capsys)
    assert code == 2


def test_verify_plumbing_all_pass(monkeypatch, capsys):
    fake = [acceptance.CriterionResult(1, "alpha", True, "ok"),
            acceptance.CriterionResult(2, "beta", True, "ok")]
    monkeypatch.setattr(acceptance, "run_all", lambda: fake)
    code, out, _ = run_cli(["verify"], capsys)
    assert code == 0
    assert "PASS  1. alpha" in out
    assert "PASS  2. beta" in out


def test_verify_plumbing_failure_exits_1(monkeypatch, capsys):
    fake = [acceptance.CriterionResult(1, "alpha", True, "ok"),
            acceptance.CriterionResult(2, "beta", False, "off by 7")]
    monkeypatch.setattr(acceptance, "run_all", lambda: fake)
    code, out, _ = run_cli(["verify"], capsys)
    assert code == 1
    assert "FAIL  2. beta" in out
