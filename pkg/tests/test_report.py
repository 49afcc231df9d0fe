import pytest

from mondrian_sieve.report import ScanReport


def _sample() -> ScanReport:
    return ScanReport(
        command="rough-count",
        parameters={"x": "10", "z": "2.0"},
        columns=["x", "z", "exact", "estimate", "ratio", "status"],
        rows=[
            (10, 2.0, 5, 5.0, 1.0, "ok"),
            (100, 2.0, 50, 50.0, 1.0, "ok"),
        ],
        metadata={"version": "0.1.0", "epsilon": "0.1"},
    )


def test_csv_round_trip_exact():
    report = _sample()
    text = report.to_csv()
    parsed = ScanReport.from_csv(text)
    assert parsed == report
    assert parsed.to_csv() == text


def test_json_round_trip_exact():
    report = _sample()
    assert ScanReport.from_json(report.to_json()) == report


def test_cell_types_survive():
    report = ScanReport(
        command="verify-perfect",
        parameters={},
        columns=["n", "criterion", "status", "ratio"],
        rows=[(12, False, "skipped", 0.25), (3, True, "exhausted", 1.0)],
        metadata={},
    )
    parsed = ScanReport.from_csv(report.to_csv())
    assert parsed.rows == report.rows
    assert isinstance(parsed.rows[0][1], bool)
    assert isinstance(parsed.rows[0][3], float)
    assert isinstance(parsed.rows[0][0], int)


def test_serialization_is_deterministic():
    assert _sample().to_csv() == _sample().to_csv()
    assert _sample().to_json() == _sample().to_json()


def test_has_indeterminate():
    report = _sample()
    assert not report.has_indeterminate
    report.rows.append((1000, 2.0, "indeterminate", "", "", "indeterminate"))
    assert report.has_indeterminate


def test_from_csv_rejects_foreign_text():
    with pytest.raises(ValueError):
        ScanReport.from_csv("x,y\n1,2\n")
    with pytest.raises(ValueError):
        ScanReport.from_csv("# mondrian-sieve report\n# bogus line\nx\n1\n")


def test_render_dispatch():
    report = _sample()
    assert report.render("csv") == report.to_csv()
    assert report.render("json") == report.to_json()
    with pytest.raises(ValueError):
        report.render("xml")
