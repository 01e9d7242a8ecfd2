import csv
import json

import pytest

from timefringe.cli import main
from timefringe.errors import ConfigError, IoError
from timefringe.scenario import Scenario, parse_scenario, scenario_from_dict


class TestScenarioSchema:
    def test_defaults_round_trip(self):
        sc = Scenario()
        again = scenario_from_dict(json.loads(sc.to_json()))
        assert again == sc
        assert again.to_json() == sc.to_json()

    def test_partial_sections_filled_with_defaults(self):
        sc = scenario_from_dict({"packet": {"gate_spacing": 24.0}})
        assert sc.packet["gate_spacing"] == 24.0
        assert sc.packet["gate_width"] == 0.5
        assert sc.theory == "stueckelberg"

    def test_unknown_key_suggests_nearest(self):
        with pytest.raises(ConfigError, match="gate_spacing"):
            scenario_from_dict({"packet": {"gate_spcing": 24.0}})

    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="unknown key"):
            scenario_from_dict({"theroy": "floquet"})

    def test_bad_values_name_the_field(self):
        with pytest.raises(ConfigError, match="packet.momentum"):
            scenario_from_dict({"packet": {"momentum": -0.2}})
        with pytest.raises(ConfigError, match="photon_count"):
            scenario_from_dict({"setup": {"photon_count": 1.5}})
        with pytest.raises(ConfigError, match="threshold_fraction"):
            scenario_from_dict({"analysis": {"threshold_fraction": 0.0}})
        with pytest.raises(ConfigError, match="grid.n_x"):
            scenario_from_dict({"grid": {"n_x": 1}})
        with pytest.raises(ConfigError, match="theory"):
            scenario_from_dict({"theory": "bohmian"})

    def test_two_gate_config_mapping(self):
        sc = scenario_from_dict({"packet": {"gate_spacing": 24.0},
                                 "sim": {"flight_distance": 4.0},
                                 "engine": "quadrature"})
        cfg = sc.two_gate_config()
        assert cfg.gate_spacing == 24.0
        assert cfg.flight_distance == 4.0
        assert cfg.engine == "quadrature"

    def test_parse_scenario_io(self, tmp_path):
        with pytest.raises(IoError):
            parse_scenario(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ConfigError):
            parse_scenario(bad)


class TestCliEstimate:
    def test_writes_outputs(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["estimate", "--out", str(out)]) == 0
        assert (out / "estimate.csv").exists()
        report = json.loads((out / "report.json").read_text())
        assert report["command"] == "estimate"
        assert report["covariant"]["epsilon_T_product"] == pytest.approx(
            6.5233e-30, rel=1e-3)
        stdout = capsys.readouterr().out
        assert "covariant eps*T" in stdout
        assert "crude" in stdout


class TestCliSimulate:
    def test_covariant_run(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["simulate", "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["fringes"] is not None
        assert report["fringes"]["relative_error"] < 0.10
        assert report["interference_visibility"] >= 0.5
        svg = (out / "trace.svg").read_text()
        assert "scenario-sha256:" + report["scenario_hash"] in svg
        with open(out / "trace.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) > 100
        assert rows[0][0].startswith("t ")

    def test_control_run_expects_no_fringes(self, tmp_path):
        out = tmp_path / "out"
        code = main(["simulate", "--theory", "schrodinger_control",
                     "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["interference_visibility"] == 0.0
        assert report["no_fringes_expected"] is True

    def test_missing_fringes_fails_for_covariant(self, tmp_path):
        sc = tmp_path / "sc.json"
        sc.write_text(json.dumps({"packet": {"gate_spacing": 0.0}}))
        code = main(["simulate", "--scenario", str(sc),
                     "--out", str(tmp_path / "out")])
        assert code == 4

    def test_bad_scenario_is_config_error(self, tmp_path):
        sc = tmp_path / "sc.json"
        sc.write_text(json.dumps({"packet": {"momentum": -1.0}}))
        assert main(["simulate", "--scenario", str(sc),
                     "--out", str(tmp_path / "out")]) == 2

    def test_missing_scenario_is_io_error(self, tmp_path):
        assert main(["simulate", "--scenario", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path / "out")]) == 5


class TestCliScan:
    def test_scan_csv_deterministic_across_workers(self, tmp_path):
        outputs = []
        for workers, name in [(1, "a"), (3, "b")]:
            out = tmp_path / name
            assert main(["scan", "--param", "gate_spacing",
                         "--values", "12,18,24",
                         "--workers", str(workers), "--out", str(out)]) == 0
            outputs.append((out / "scan.csv").read_bytes())
        assert outputs[0] == outputs[1]

    def test_flight_distance_scan(self, tmp_path):
        out = tmp_path / "out"
        assert main(["scan", "--param", "flight_distance",
                     "--values", "2,4", "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert [r["param"] for r in report["rows"]] == [2.0, 4.0]
        # spacing T grows linearly with L at fixed epsilon
        r0, r1 = report["rows"]
        assert r1["spacing_T"] == pytest.approx(2 * r0["spacing_T"], rel=0.05)

    def test_bad_values_rejected(self, tmp_path):
        assert main(["scan", "--param", "gate_spacing", "--values", "12,abc",
                     "--out", str(tmp_path / "out")]) == 2
        assert main(["scan", "--param", "gate_spacing", "--values", "12",
                     "--out", str(tmp_path / "out")]) == 2


class TestCliFringes:
    def test_reanalyzes_written_trace(self, tmp_path, capsys):
        sim_out = tmp_path / "sim"
        assert main(["simulate", "--out", str(sim_out)]) == 0
        sim_report = json.loads((sim_out / "report.json").read_text())
        fr_out = tmp_path / "fr"
        assert main(["fringes", "--trace", str(sim_out / "trace.csv"),
                     "--out", str(fr_out)]) == 0
        report = json.loads((fr_out / "report.json").read_text())
        assert report["spacing_T"] == pytest.approx(
            sim_report["fringes"]["spacing_T"], rel=1e-9)
        assert (fr_out / "fringes.svg").exists()

    def test_missing_trace_is_io_error(self, tmp_path):
        assert main(["fringes", "--trace", str(tmp_path / "nope.csv"),
                     "--out", str(tmp_path / "out")]) == 5
