import json
import math

import pytest

from portbt.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def parse_csv(text):
    lines = text.strip().split("\n")
    meta = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    header = body[0].split(",")
    rows = [l.split(",") for l in body[1:]]
    return meta, header, rows


class TestFidelityCommand:
    def test_basic_table(self, capsys):
        code, out = run_cli(capsys, "fidelity", "--d", "2", "--N", "1..20")
        assert code == 0
        meta, header, rows = parse_csv(out)
        assert len(rows) == 20
        assert header[:4] == ["d", "N", "F_std", "F_std_asym"]
        first = dict(zip(header, rows[0]))
        assert float(first["F_std"]) == pytest.approx(0.25)

    def test_asymptote_column(self, capsys):
        code, out = run_cli(capsys, "fidelity", "--d", "3", "--N", "100")
        _, header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["F_std_asym"]) == pytest.approx(0.98)

    def test_optimal_flag(self, capsys):
        code, out = run_cli(capsys, "fidelity", "--d", "2", "--N", "2", "--optimal")
        _, header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["F_star_spectral"]) == pytest.approx(0.5, abs=1e-9)

    def test_appendix_b_column(self, capsys):
        code, out = run_cli(capsys, "fidelity", "--d", "2", "--N", "7", "--appendix-b")
        _, header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert int(row["N_effective"]) == 4

    def test_provenance_header(self, capsys):
        _, out = run_cli(capsys, "fidelity", "--d", "2", "--N", "1..3")
        meta, _, _ = parse_csv(out)
        assert any("provenance" in m for m in meta)
        assert all(m.startswith("#") for m in meta)

    def test_byte_stable(self, capsys):
        _, a = run_cli(capsys, "fidelity", "--d", "2..3", "--N", "1..10", "--seed", "5")
        _, b = run_cli(capsys, "fidelity", "--d", "2..3", "--N", "1..10", "--seed", "5")
        assert a == b

    def test_threads_do_not_change_bytes(self, capsys, monkeypatch):
        _, serial = run_cli(capsys, "bounds", "--d", "2..4", "--N", "1..15")
        monkeypatch.setenv("PBT_THREADS", "4")
        _, threaded = run_cli(capsys, "bounds", "--d", "2..4", "--N", "1..15")
        assert serial == threaded

    def test_json_format(self, capsys):
        code, out = run_cli(capsys, "fidelity", "--d", "2", "--N", "1..3",
                            "--format", "json")
        payload = json.loads(out)
        assert payload["columns"][:2] == ["d", "N"]
        assert len(payload["rows"]) == 3

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "fid.csv"
        code, _ = run_cli(capsys, "fidelity", "--d", "2", "--N", "1..3",
                          "--out", str(path))
        assert code == 0
        assert path.read_text().startswith("#")


class TestProbCommand:
    def test_hand_values(self, capsys):
        _, out = run_cli(capsys, "prob", "--d", "2", "--N", "2..3")
        _, header, rows = parse_csv(out)
        r2 = dict(zip(header, rows[0]))
        r3 = dict(zip(header, rows[1]))
        assert float(r2["p_epr"]) == pytest.approx(1 / 3, abs=1e-12)
        assert float(r3["p_star"]) == pytest.approx(0.5)

    def test_user_constant(self, capsys):
        _, out = run_cli(capsys, "prob", "--d", "3", "--N", "500", "--cd", "1.90414")
        _, header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["p_epr_asym"]) == pytest.approx(0.85237, abs=5e-5)

    def test_exact_constant_for_qubits(self, capsys):
        _, out = run_cli(capsys, "prob", "--d", "2", "--N", "2")
        _, header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["c_d"]) == pytest.approx(2 / math.sqrt(math.pi), rel=1e-10)


class TestBoundsCommand:
    def test_hand_values(self, capsys):
        _, out = run_cli(capsys, "bounds", "--d", "2", "--N", "10")
        _, header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["converse_piecewise"]) == pytest.approx(0.998125)
        assert float(row["ishizaka_converse_asym"]) == pytest.approx(0.9975)
        assert float(row["diamond_error_from_F"]) == pytest.approx(3 / 800)

    def test_small_port_branch(self, capsys):
        _, out = run_cli(capsys, "bounds", "--d", "4", "--N", "8")
        _, header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert float(row["converse_piecewise"]) == pytest.approx(math.sqrt(8) / 4)


class TestVerifyCommand:
    def test_quick_passes(self, capsys):
        code, out = run_cli(capsys, "verify", "--quick")
        assert code == 0
        assert "PASS" in out and "FAIL" not in out
        summary = json.loads(out[out.index("{"):])
        assert summary["passed"] is True

    def test_rmt_check(self, capsys):
        code, out = run_cli(capsys, "verify", "--rmt", "--seed", "7",
                            "--samples", "20000")
        assert code == 0

    def test_failure_exit_code(self, capsys, monkeypatch):
        import portbt.cli as cli

        monkeypatch.setattr(cli.oracle, "pgm_fidelity", lambda d, n: 0.0)
        code, out = run_cli(capsys, "verify", "--quick")
        assert code == 1
        assert "FAIL" in out


class TestUsageErrors:
    def test_bad_range(self, capsys):
        assert main(["fidelity", "--d", "2", "--N", "0..10"]) == 2

    def test_reversed_range(self, capsys):
        assert main(["fidelity", "--d", "2", "--N", "9..3"]) == 2

    def test_unparseable(self, capsys):
        assert main(["fidelity", "--d", "2", "--N", "x"]) == 2

    def test_oversized_grid(self, capsys):
        assert main(["fidelity", "--d", "8", "--N", "500"]) == 2

    def test_argparse_usage_exit(self):
        with pytest.raises(SystemExit) as info:
            main(["fidelity", "--format", "yaml"])
        assert info.value.code == 2
