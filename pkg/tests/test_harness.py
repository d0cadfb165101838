from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from harness.config import ExperimentConfig, ExperimentConfigError, UnderpoweredError
from harness.graphs import run_convergence_suite, run_law_convergence, run_roundtrip_suite, run_suite
from harness.nodes import default_viewpoint_grid, reversed_trace
from harness.report import CSV_FIELDS, Report, ReportRow, emit_report, load_report, trend_verdict
from main import EXIT_MISMATCH, EXIT_OK, main


def semicircle_config(**kw) -> ExperimentConfig:
    base = {
        "suite": "convergence",
        "name": "semicircle",
        "family": {"family": "perturbed_semicircle", "samples_per_unit": 16},
        "j_range": [1, 2],
        "reference_j": 6,
        "viewpoints": [(0.0, 0.5), (0.5, 2.0)],
        "metrics": ["d_cap_r", "hausdorff"],
    }
    base.update(kw)
    return ExperimentConfig.model_validate(base)


def test_trend_verdicts():
    assert trend_verdict([1.0, 0.5, 0.3, 0.2, 0.1]) == ("CONVERGING", 0.1)
    assert trend_verdict([1.0, 0.9, 0.95, 0.9, 0.9])[0] == "STALLED"
    assert trend_verdict([1.0, 0.9, 0.8, 0.7, 0.6])[0] == "STALLED"
    assert trend_verdict([1.0, None, 0.2])[0] == "ERROR"
    assert trend_verdict([0.4, 0.3]) == ("STALLED", 0.3)


def test_config_validation():
    with pytest.raises(ValidationError):
        ExperimentConfig(suite="convergence")
    with pytest.raises(ValidationError):
        semicircle_config(viewpoints=[(0.0, 0.0)])
    with pytest.raises(ValidationError):
        semicircle_config(viewpoints=[(0.0, 0.5), (0.0, 0.5)])
    with pytest.raises(ValidationError):
        semicircle_config(j_range=[2, 1])


def test_ladder_member_gets_default_height():
    cfg = ExperimentConfig(family={"family": "ladder"})
    assert cfg.member(3).height is not None
    assert cfg.member(3).j == 3


def test_empty_report_csv_has_header_only(tmp_path):
    path = emit_report(Report(suite="convergence"), "csv", tmp_path / "r.csv")
    rows = list(csv.reader(path.open()))
    assert rows == [CSV_FIELDS]


def test_report_json_round_trip(tmp_path):
    r = Report(suite="roundtrip", rows=[ReportRow(j=1, metric="trace_error", value=0.5)], meta={"k": 1})
    back = load_report(emit_report(r, "json", tmp_path / "r.json"))
    assert back == r


def test_svg_report(tmp_path):
    r = Report(suite="convergence", rows=[ReportRow(j=j, x=(0.0, 1.0), metric="d_cap_r", value=2.0 ** -j)
                                          for j in (1, 2, 3)])
    path = emit_report(r, "svg", tmp_path / "r.svg")
    assert path.read_text().lstrip().startswith("<?xml")


def test_viewpoint_grid_avoids_curves(semicircle):
    pts = default_viewpoint_grid([semicircle], size=6, seed=1)
    assert len(pts) == 6 == len(set(pts))
    assert all(im > 0 for _, im in pts)


def test_convergence_suite_fills_every_cell():
    report = run_convergence_suite(semicircle_config())
    triples = [(r.j, r.x, r.metric) for r in report.rows]
    assert len(triples) == 2 * 2 * 2 == len(set(triples))
    assert all(r.error is None for r in report.rows)
    assert report.meta["mismatches"] == []
    assert "runtime_s" in report.meta


def test_convergence_suite_rejects_viewpoint_on_curve():
    with pytest.raises(ExperimentConfigError):
        run_suite(semicircle_config(viewpoints=[(0.0, 1.0)]))


def test_expected_verdicts_are_compared():
    report = run_convergence_suite(semicircle_config(expected={"hausdorff": "CONVERGING"}))
    # two indices are fewer than the trend window
    assert report.meta["mismatches"]


def test_roundtrip_suite_zero_driving():
    cfg = ExperimentConfig(suite="roundtrip", driving="zero", n_values=[250, 500, 1000], n_ref=2000)
    report = run_roundtrip_suite(cfg)
    assert report.series("trace_error")[-1] <= 1e-3
    assert report.series("roundtrip_error")[-1] <= 5e-2
    assert set(report.meta["exponents"]) == {"trace_error", "roundtrip_error", "driving_error"}


def test_law_suite_refuses_small_samples():
    with pytest.raises(UnderpoweredError):
        run_law_convergence(ExperimentConfig(suite="law", m=10))


def test_reversed_trace_starts_on_real_line(vertical_slit):
    back = reversed_trace(vertical_slit(1.0, 50))
    assert back.points[0].imag == 0.0
    assert back.points[1].real == pytest.approx(0.0)


@pytest.mark.slow
def test_law_self_comparison():
    cfg = ExperimentConfig(suite="law", comparison="self", kappa=2.0, m=60, trace_steps=100, T=0.3,
                           viewpoints=[(0.3, 0.8)], times=[0.02, 0.05])
    report = run_law_convergence(cfg)
    assert len(report.rows) == 2
    assert all(0.0 <= r.value <= 1.0 for r in report.rows)


def test_cli_converge_writes_reports(tmp_path):
    cfg = semicircle_config(out=str(tmp_path))
    path = tmp_path / "cfg.json"
    path.write_text(cfg.model_dump_json())
    assert main(["converge", str(path)]) == EXIT_OK
    data = json.loads((tmp_path / "semicircle.json").read_text())
    assert data["suite"] == "convergence"
    assert (tmp_path / "semicircle.csv").exists()


def test_cli_reports_verdict_mismatch(tmp_path):
    cfg = semicircle_config(out=str(tmp_path), expected={"d_cap_r": "CONVERGING"})
    path = tmp_path / "cfg.json"
    path.write_text(cfg.model_dump_json())
    assert main(["converge", str(path)]) == EXIT_MISMATCH


def test_cli_errors_exit_one(tmp_path):
    assert main(["converge", str(tmp_path / "missing.json")]) == 1


def test_cli_example_and_metric(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["example", "--family", "perturbed_semicircle", "--j", "1", "--out", str(a)]) == EXIT_OK
    assert main(["example", "--family", "perturbed_semicircle", "--j", "3", "--out", str(b)]) == EXIT_OK
    out = tmp_path / "m.json"
    assert main(["metric", str(a), str(b), "--metric", "hausdorff", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["value"] > 0


EXPERIMENTS = Path(__file__).resolve().parents[1] / "experiments"


def shipped(name: str) -> ExperimentConfig:
    return ExperimentConfig.load(EXPERIMENTS / f"{name}.json")


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ladder", "hooks", "three_segment", "semicircle", "dyadic_loops"])
def test_shipped_suites_reach_expected_verdicts(name):
    report = run_suite(shipped(name))
    assert [r.error for r in report.rows if r.error] == []
    assert report.meta["mismatches"] == []


@pytest.mark.slow
def test_figure_eight_suite_measures_the_forward_backward_gap():
    report = run_suite(shipped("figure_eight"))
    assert [r.error for r in report.rows if r.error] == []
    assert report.meta["forward_backward_gap"] > 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("name, tolerance", [("law_radial", 0.1), ("law_reversal", 0.12)])
def test_shipped_law_suites_stay_within_ks_tolerance(name, tolerance):
    report = run_suite(shipped(name))
    assert report.meta["mismatches"] == []
    assert report.meta["max_ks"] <= tolerance
