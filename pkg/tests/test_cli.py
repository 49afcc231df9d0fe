import subprocess
import sys

from mondrian_sieve.cli import main
from mondrian_sieve.report import ScanReport


def _run(capsys, argv: list[str]) -> tuple[int, str]:
    code = main(argv)
    return code, capsys.readouterr().out


def test_rough_count_example_row(capsys):
    code, out = _run(capsys, ["rough-count", "--x", "10", "--z", "2"])
    assert code == 0
    report = ScanReport.from_csv(out)
    assert report.columns[:3] == ["x", "z", "exact"]
    assert report.rows[0][:3] == (10, 2.0, 5)


def test_rough_count_cutoff_mode(capsys):
    code, out = _run(capsys, ["rough-count", "--x", "100", "--cutoff-gseps"])
    assert code == 0
    report = ScanReport.from_csv(out)
    (row,) = report.rows
    assert row[0] == 100 and isinstance(row[2], int)


def test_criterion_scan_direct_equals_dual(capsys):
    code, out = _run(capsys, ["criterion-scan", "3", "100", "--set", "direct", "--set", "dual"])
    assert code == 0
    report = ScanReport.from_csv(out)
    counts = {row[0]: row[3] for row in report.rows}
    assert counts["direct"] == counts["dual"] == 34


def test_criterion_scan_all_sets_nested(capsys):
    code, out = _run(capsys, ["criterion-scan", "3", "2000", "--set", "all"])
    assert code == 0
    report = ScanReport.from_csv(out)
    counts = {row[0]: row[3] for row in report.rows}
    assert counts["g-eps-cutoff"] <= counts["tau2-on-n"] == counts["tau2-global"]
    assert counts["tau2-global"] <= counts["tau2-relaxed"] <= counts["dual"]
    assert counts["dual"] == counts["direct"]


def test_verify_perfect_upto(capsys):
    code, out = _run(capsys, ["verify-perfect", "--upto", "10"])
    assert code == 0
    report = ScanReport.from_csv(out)
    assert report.metadata["criterion_true"] == report.metadata["confirmed_absent"]
    assert not report.has_indeterminate


def test_verify_perfect_budget_exit_code(capsys):
    code, out = _run(capsys, ["verify-perfect", "12", "--budget-nodes", "2"])
    assert code == 2
    report = ScanReport.from_csv(out)
    assert report.rows[0][2] == "indeterminate"


def test_refined_command(capsys):
    code, out = _run(capsys, ["refined", "--x", "100"])
    assert code == 0
    report = ScanReport.from_csv(out)
    assert report.rows[0] == (1, 3, 23)
    assert report.metadata["total"] == "23"


def test_lower_bound_table(capsys):
    code, out = _run(capsys, ["lower-bound-table", "--x", "10000"])
    assert code == 0
    report = ScanReport.from_csv(out)
    (row,) = report.rows
    x, _, bound, rough_exact, criterion_count, floor, status = row
    assert status == "ok"
    assert criterion_count >= rough_exact - floor
    assert rough_exact > bound  # envelope permits at this scale


def test_out_file_and_formats(tmp_path, capsys):
    out_file = tmp_path / "report.csv"
    code = main(["rough-count", "--x", "10", "--z", "2", "--out", str(out_file)])
    assert code == 0
    assert capsys.readouterr().out == ""
    parsed = ScanReport.from_csv(out_file.read_text())
    assert parsed.rows[0][2] == 5

    code, out = _run(capsys, ["rough-count", "--x", "10", "--z", "2", "--format", "json"])
    assert code == 0
    assert ScanReport.from_json(out).rows[0][2] == 5


def test_stdout_determinism(capsys):
    argv = ["criterion-scan", "3", "500", "--set", "all"]
    _, first = _run(capsys, argv)
    _, second = _run(capsys, argv)
    assert first == second


def test_worker_rows_match_serial(capsys):
    _, serial = _run(capsys, ["criterion-scan", "3", "1500", "--workers", "1"])
    _, sharded = _run(capsys, ["criterion-scan", "3", "1500", "--workers", "2"])
    assert ScanReport.from_csv(serial).rows == ScanReport.from_csv(sharded).rows

    _, one = _run(capsys, ["rough-count", "--x", "100", "--x", "10000", "--z", "7"])
    _, two = _run(capsys, ["rough-count", "--x", "100", "--x", "10000", "--z", "7",
                           "--workers", "2"])
    assert ScanReport.from_csv(one).rows == ScanReport.from_csv(two).rows

    _, v1 = _run(capsys, ["verify-perfect", "--upto", "10"])
    _, v2 = _run(capsys, ["verify-perfect", "--upto", "10", "--workers", "2"])
    assert ScanReport.from_csv(v1).rows == ScanReport.from_csv(v2).rows


def test_plot_rendering(tmp_path):
    plot = tmp_path / "fig.png"
    out = tmp_path / "rows.csv"
    code = main(["rough-count", "--x", "10", "--x", "100", "--x", "1000",
                 "--z", "5", "--out", str(out), "--plot", str(plot)])
    assert code == 0
    assert plot.stat().st_size > 0
    assert out.exists()

    second = tmp_path / "fig2.png"
    main(["rough-count", "--x", "10", "--x", "100", "--x", "1000",
          "--z", "5", "--out", str(out), "--plot", str(second)])
    assert plot.read_bytes() == second.read_bytes()


def test_plot_every_command(tmp_path):
    runs = [
        (["criterion-scan", "3", "50"], "scan.png"),
        (["refined", "--x", "100"], "refined.png"),
        (["verify-perfect", "--upto", "6"], "verify.png"),
        (["lower-bound-table", "--x", "10000"], "bound.svg"),
    ]
    for argv, name in runs:
        target = tmp_path / name
        assert main(argv + ["--out", str(tmp_path / "r.csv"), "--plot", str(target)]) == 0
        assert target.stat().st_size > 0


def test_vector_figures_deterministic(tmp_path):
    for ext in ("svg", "pdf"):
        blobs = []
        for i in (1, 2):
            target = tmp_path / f"fig{i}.{ext}"
            assert main(["refined", "--x", "1000",
                         "--out", str(tmp_path / "r.csv"), "--plot", str(target)]) == 0
            blobs.append(target.read_bytes())
        assert blobs[0] == blobs[1]


def test_usage_errors_exit_one():
    result = subprocess.run(
        [sys.executable, "-m", "mondrian_sieve", "rough-count", "--x", "10"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 1
    assert result.stderr


def test_domain_errors_exit_one(capsys):
    code = main(["rough-count", "--x", "0", "--z", "2"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_verify_single_n(capsys):
    code, out = _run(capsys, ["verify-perfect", "12"])
    assert code == 0
    report = ScanReport.from_csv(out)
    assert report.rows[0] == (12, False, "exhausted", report.rows[0][3])


def test_rough_count_rows_sorted_by_x(capsys):
    code, out = _run(capsys, ["rough-count", "--x", "100", "--x", "10", "--z", "2"])
    assert code == 0
    report = ScanReport.from_csv(out)
    assert [row[0] for row in report.rows] == [10, 100]
