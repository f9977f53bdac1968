import json

import pytest

from smartmining.cli import main

SMART_CONFIG = {
    "coin": {"tau": 600.0, "epsilon": 0.0},
    "reward": "calibrated",
    "miners": [
        {"id": "attacker", "m": 20.0, "fc": 0.03, "vc": 0.0085},
        {"id": "rest", "m": 80.0, "fc": 0.0, "vc": 0.01},
    ],
    "schedules": [{"miner_id": "attacker", "powers": [0.0, 20.0]}],
}

HONEST_CONFIG = {
    "coin": {"tau": 600.0, "epsilon": 0.0},
    "reward": "calibrated",
    "miners": [
        {"id": "a", "m": 50.0, "fc": 0.1, "vc": 0.008},
        {"id": "b", "m": 30.0, "fc": 0.0, "vc": 0.01},
        {"id": "c", "m": 20.0, "fc": 0.05, "vc": 0.0075},
    ],
}


def _write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def _read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestSimulate:
    def test_honest_trace(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, HONEST_CONFIG)
        out = tmp_path / "out"
        assert main(["simulate", cfg, "--epochs", "10", "--out", str(out)]) == 0
        header, rows = _read_csv(out / "trace.csv")
        assert header[:4] == ["k", "H", "t", "rph"]
        assert header[4:8] == ["a_mhat", "a_R", "a_C", "a_P"]
        assert len(rows) == 10
        for row in rows:
            assert float(row[2]) == 600.0
        summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
        assert summary["epochs"] == 10
        assert set(summary["utilities"]) == {"a", "b", "c"}

    def test_smart_trace_alternates_workload(self, tmp_path):
        cfg = _write_config(tmp_path, SMART_CONFIG)
        out = tmp_path / "out"
        assert main(["simulate", cfg, "--epochs", "6", "--out", str(out)]) == 0
        _, rows = _read_csv(out / "trace.csv")
        workloads = [float(r[1]) for r in rows]
        assert workloads == [60000.0, 48000.0, 60000.0, 48000.0, 60000.0, 48000.0]

    def test_csv_roundtrips_to_exact_doubles(self, tmp_path):
        from smartmining import run
        from smartmining.cli import _load_scenario

        cfg = _write_config(tmp_path, SMART_CONFIG)
        out = tmp_path / "out"
        main(["simulate", cfg, "--epochs", "5", "--out", str(out)])
        coin, miners, schedules = _load_scenario(cfg)
        trace = run(coin, miners, schedules, 5)
        _, rows = _read_csv(out / "trace.csv")
        for rec, row in zip(trace.records, rows):
            assert float(row[1]) == rec.H
            assert float(row[2]) == rec.t
            assert float(row[3]) == rec.rph
            for i, s in enumerate(rec.per_miner):
                base = 4 + 4 * i
                assert float(row[base + 0]) == s.active_power
                assert float(row[base + 1]) == s.revenue_rate
                assert float(row[base + 2]) == s.cost_rate
                assert float(row[base + 3]) == s.profit_rate

    def test_duplicate_miner_id_exits_2(self, tmp_path, capsys):
        doc = json.loads(json.dumps(HONEST_CONFIG))
        doc["miners"].append(dict(doc["miners"][0]))
        cfg = _write_config(tmp_path, doc)
        assert main(["simulate", cfg, "--epochs", "5", "--out", str(tmp_path / "out")]) == 2
        errors = json.loads(capsys.readouterr().err)
        assert any("duplicate miner id" in e for e in errors)

    def test_stalled_epoch_exits_3_with_index(self, tmp_path, capsys):
        doc = json.loads(json.dumps(HONEST_CONFIG))
        doc["schedules"] = [{"miner_id": mid, "powers": [0.0]} for mid in ("a", "b", "c")]
        cfg = _write_config(tmp_path, doc)
        assert main(["simulate", cfg, "--epochs", "5", "--out", str(tmp_path / "out")]) == 3
        err = json.loads(capsys.readouterr().err)
        assert err["error"] == "stalled epoch"
        assert err["epoch"] == 1

    def test_bad_epoch_count_exits_2(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, HONEST_CONFIG)
        assert main(["simulate", cfg, "--epochs", "0", "--out", str(tmp_path / "out")]) == 2
        capsys.readouterr()

    def test_unreadable_config_exits_2(self, tmp_path, capsys):
        assert main(["simulate", str(tmp_path / "missing.json"), "--epochs", "5",
                     "--out", str(tmp_path / "out")]) == 2
        capsys.readouterr()


class TestAnalyze:
    def test_reference_report(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, SMART_CONFIG)
        assert main(["analyze", cfg, "--miner", "attacker"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["x"] == pytest.approx(0.2, rel=1e-15)
        assert report["y"] == pytest.approx(0.15, rel=1e-12)
        assert report["dominance"] is True
        assert report["smart_roi"] == pytest.approx(0.0125 / 2.05, rel=1e-9)
        assert report["epoch_table"]["t_lre"] == 750.0
        # lower root of x*(1 - x) = 0.15: (1 - sqrt(0.4)) / 2
        assert report["min_power_for_profit"] == pytest.approx(0.18377223398316206, abs=1e-12)

    def test_infeasible_min_power_rendered_null(self, tmp_path, capsys):
        doc = json.loads(json.dumps(SMART_CONFIG))
        doc["miners"][0] = {"id": "attacker", "m": 20.0, "fc": 0.06, "vc": 0.007}  # y = 0.3
        cfg = _write_config(tmp_path, doc)
        assert main(["analyze", cfg, "--miner", "attacker"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["y"] == pytest.approx(0.3, rel=1e-12)
        assert report["min_power_for_profit"] is None
        assert report["min_power_reason"] == "no power share suffices"

    def test_unknown_miner_exits_2(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, SMART_CONFIG)
        assert main(["analyze", cfg, "--miner", "ghost"]) == 2
        errors = json.loads(capsys.readouterr().err)
        assert any("unknown miner" in e for e in errors)


class TestOptimize:
    def test_no_fixed_costs_idles_everything(self, tmp_path, capsys):
        doc = json.loads(json.dumps(SMART_CONFIG))
        doc["miners"][0] = {"id": "attacker", "m": 20.0, "fc": 0.0, "vc": 0.01}
        cfg = _write_config(tmp_path, doc)
        assert main(["optimize", cfg, "--miner", "attacker"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["delta_fraction"] == pytest.approx(1.0, abs=1e-6)
        assert report["utility"] > 0
        assert report["schedule"]["powers"][1] == 20.0

    def test_dominated_scenario_stays_honest(self, tmp_path, capsys):
        doc = json.loads(json.dumps(SMART_CONFIG))
        doc["miners"][0] = {"id": "attacker", "m": 20.0, "fc": 0.18, "vc": 0.001}  # y = 0.9
        cfg = _write_config(tmp_path, doc)
        assert main(["optimize", cfg, "--miner", "attacker"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["delta"] == 0.0
        assert abs(report["utility"]) <= 1e-12

    def test_output_byte_identical_across_runs(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, SMART_CONFIG)
        assert main(["optimize", cfg, "--miner", "attacker"]) == 0
        first = capsys.readouterr().out
        assert main(["optimize", cfg, "--miner", "attacker"]) == 0
        assert capsys.readouterr().out == first


class TestSweep:
    def test_sign_pattern_matches_dominance(self, tmp_path):
        from smartmining import dominance

        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--mode", "smart", "--nx", "10", "--ny", "10",
                     "--out", str(out)]) == 0
        header, rows = _read_csv(out)
        assert header == ["x", "y", "roi"]
        assert len(rows) == 100
        for row in rows:
            x, y, r = (float(v) for v in row)
            if abs(x * (1 - x) - y) > 1e-12:
                assert (r > 0) == dominance(x, y)

    def test_values_roundtrip_to_exact_doubles(self, tmp_path):
        from smartmining import sweep
        from smartmining.analytic import MODE_SMART

        out = tmp_path / "sweep.csv"
        main(["sweep", "--mode", "smart", "--nx", "7", "--ny", "5", "--out", str(out)])
        xs = [(j + 0.5) / 7 for j in range(7)]
        ys = [(i + 0.5) / 5 for i in range(5)]
        matrix = sweep(xs, ys, MODE_SMART)
        _, rows = _read_csv(out)
        for idx, row in enumerate(rows):
            i, j = divmod(idx, 7)
            assert float(row[0]) == xs[j]
            assert float(row[1]) == ys[i]
            assert float(row[2]) == matrix[i, j]

    def test_row_order_y_major_ascending(self, tmp_path):
        out = tmp_path / "sweep.csv"
        main(["sweep", "--mode", "smart", "--nx", "3", "--ny", "2", "--out", str(out)])
        _, rows = _read_csv(out)
        coords = [(float(r[0]), float(r[1])) for r in rows]
        assert coords == [(1 / 6, 0.25), (0.5, 0.25), (5 / 6, 0.25),
                          (1 / 6, 0.75), (0.5, 0.75), (5 / 6, 0.75)]

    def test_smarter_mode_dominates_smart(self, tmp_path):
        smart_out = tmp_path / "smart.csv"
        smarter_out = tmp_path / "smarter.csv"
        main(["sweep", "--mode", "smart", "--nx", "6", "--ny", "6", "--out", str(smart_out)])
        main(["sweep", "--mode", "smarter", "--nx", "6", "--ny", "6", "--out", str(smarter_out)])
        _, smart_rows = _read_csv(smart_out)
        _, smarter_rows = _read_csv(smarter_out)
        for a, b in zip(smart_rows, smarter_rows):
            assert float(b[2]) >= float(a[2])

    def test_single_cell_axis_exits_2(self, tmp_path, capsys):
        assert main(["sweep", "--mode", "smart", "--nx", "1", "--ny", "10",
                     "--out", str(tmp_path / "s.csv")]) == 2
        capsys.readouterr()

    def test_unwritable_output_exits_4(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        target = blocker / "sweep.csv"  # parent is a regular file
        assert main(["sweep", "--mode", "smart", "--nx", "4", "--ny", "4",
                     "--out", str(target)]) == 4
        capsys.readouterr()


class TestSecurityCommand:
    def test_smart_deviator_report(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, SMART_CONFIG)
        assert main(["security", cfg]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["attack_threshold"] == 0.4
        assert report["idle_fraction"] == pytest.approx(0.2, rel=1e-15)
        assert report["per_miner_gain"]["rest"] > 0

    def test_honest_report(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, HONEST_CONFIG)
        assert main(["security", cfg]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["attack_threshold"] == 0.5
        assert report["idle_fraction"] == 0.0

    def test_entrant_block(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, SMART_CONFIG)
        assert main(["security", cfg, "--entrant", "10"]) == 0
        report = json.loads(capsys.readouterr().out)
        block = report["entry_effect"]
        assert block["rph_lre_ratio"] == pytest.approx(100.0 / 110.0, rel=1e-12)
        assert block["lre_active_before"] == block["lre_active_after"] == 80.0

    def test_entrant_requires_single_schedule(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, HONEST_CONFIG)
        assert main(["security", cfg, "--entrant", "10"]) == 2
        capsys.readouterr()

    def test_clamped_coin_rejected_with_exit_2(self, tmp_path, capsys):
        # steady-state reports need an unclamped retarget
        doc = json.loads(json.dumps(SMART_CONFIG))
        doc["coin"]["clamp"] = 1.1
        cfg = _write_config(tmp_path, doc)
        assert main(["security", cfg]) == 2
        errors = json.loads(capsys.readouterr().err)
        assert any("unclamped" in e for e in errors)


class TestClampedSimulation:
    def test_simulate_supports_clamped_retarget(self, tmp_path):
        doc = json.loads(json.dumps(SMART_CONFIG))
        doc["coin"]["clamp"] = 1.1
        cfg = _write_config(tmp_path, doc)
        out = tmp_path / "out"
        assert main(["simulate", cfg, "--epochs", "12", "--out", str(out)]) == 0
        _, rows = _read_csv(out / "trace.csv")
        workloads = [float(r[1]) for r in rows]
        for prev, cur in zip(workloads, workloads[1:]):
            assert 1 / 1.1 - 1e-12 <= cur / prev <= 1.1 + 1e-12
