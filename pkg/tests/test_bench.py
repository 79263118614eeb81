import logging

import pytest

from sociophys import (ContractError, read_bench_csv, run_bench,
                       write_bench_csv)
from sociophys.bench import CSV_COLUMNS


def test_bench_rows_carry_family_parameters():
    rows = run_bench(2, seed=0)
    assert [(r.n, r.k_s, r.k_p) for r in rows] == [(7, 2, 4), (9, 3, 5)]
    for row in rows:
        assert row.bound == 3.75
        assert 1.0 <= row.ratio <= row.bound + 1e-9
        assert row.oracle_value >= row.approx_value > 0
        assert row.oracle_seconds > 0 and row.approx_seconds > 0


def test_bench_csv_round_trip(tmp_path):
    rows = run_bench(2, seed=1)
    path = tmp_path / "bench.csv"
    write_bench_csv(rows, path, seed=1)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == ",".join(CSV_COLUMNS)
    assert read_bench_csv(path) == rows


def test_bench_rejects_unknown_family():
    with pytest.raises(ContractError, match="unknown bench family"):
        run_bench(1, family="petersen")


def test_bench_skips_rows_past_the_search_limit(caplog):
    with caplog.at_level(logging.WARNING, logger="sociophys.bench"):
        rows = run_bench(2, seed=0, limit=1000)
    assert [(r.n, r.k_s, r.k_p) for r in rows] == [(7, 2, 4)]  # row 1 needs 10584
    assert any("skipped" in rec.message for rec in caplog.records)


def test_bench_forced_past_the_limit():
    rows = run_bench(1, seed=0, limit=1, force=True)
    assert len(rows) == 1
