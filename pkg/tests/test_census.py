"""Census enumeration, aggregation, determinism, and file outputs."""

import json

import pytest

import brieskorn as bk
from brieskorn.census import CSV_HEADER, CensusSpec
from brieskorn.certificates import RuleId, Status, certificate_from_dict
from brieskorn.errors import InputError


class TestSpec:
    def test_validation(self):
        with pytest.raises(InputError):
            CensusSpec(length=2, max_exponent=5)
        with pytest.raises(InputError):
            CensusSpec(length=3, max_exponent=5, min_exponent=0)
        with pytest.raises(InputError):
            CensusSpec(length=3, max_exponent=2, min_exponent=5)


class TestEnumeration:
    def test_row_count_matches_closed_form(self):
        for spec in (
            CensusSpec(length=3, max_exponent=6),
            CensusSpec(length=4, max_exponent=4),
            CensusSpec(length=5, max_exponent=3, min_exponent=2),
        ):
            universe = list(bk.enumerate_universe(spec))
            assert len(universe) == bk.universe_size(spec)
            assert universe == sorted(universe)
            assert all(t == tuple(sorted(t)) for t in universe)

    def test_single_value_universe(self):
        spec = CensusSpec(length=4, max_exponent=1)
        assert list(bk.enumerate_universe(spec)) == [(1, 1, 1, 1)]


class TestRows:
    def test_small_universe_rows(self):
        result = bk.run_census(CensusSpec(length=4, max_exponent=4))
        rows = {row.exponents: row for row in result.rows}
        assert len(rows) == bk.universe_size(result.spec) == 35
        assert rows[(2, 3, 3, 4)].status is Status.UNKNOWN
        assert rows[(2, 3, 3, 4)].certificate_id == ""
        assert rows[(3, 3, 3, 3)].status is Status.RIGID
        assert rows[(2, 2, 3, 4)].status is Status.NON_RIGID
        assert rows[(2, 2, 3, 4)].rule is RuleId.NOT_IN_TN
        assert rows[(1, 1, 1, 1)].reciprocal_sum == 4

    def test_equal_exponent_slices(self):
        for a in (4, 5, 6, 7):
            spec = CensusSpec(length=4, max_exponent=a, min_exponent=a)
            rows = bk.run_census(spec).rows
            assert len(rows) == 1
            assert rows[0].status is Status.RIGID
            assert rows[0].rule is RuleId.EQUAL_EXPONENTS

    def test_exponent_one_universe_is_non_rigid(self):
        rows = bk.run_census(CensusSpec(length=4, max_exponent=1)).rows
        assert all(row.status is Status.NON_RIGID for row in rows)

    def test_summary_counts_are_consistent(self):
        result = bk.run_census(CensusSpec(length=3, max_exponent=8))
        counts = dict(result.summary.status_counts)
        assert sum(counts.values()) == result.summary.row_count == len(result.rows)
        assert counts[Status.UNKNOWN] == 0  # three-entry tuples are totally decided
        rendered = result.summary.render()
        assert "rows: " in rendered and "status counts:" in rendered


class TestCsv:
    def test_header_and_shape(self):
        result = bk.run_census(CensusSpec(length=3, max_exponent=3))
        lines = result.csv_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + len(result.rows)
        first = lines[1].split(";")
        assert len(first) == 7
        assert first[0] == "1,1,1"
        assert first[1] == "NON_RIGID"

    def test_exact_rationals_in_csv(self):
        result = bk.run_census(CensusSpec(length=3, max_exponent=3, min_exponent=2))
        by_tuple = {row.exponents: row for row in result.rows}
        assert str(by_tuple[(2, 3, 3)].reciprocal_sum) == "7/6"
        assert "7/6" in result.csv_text()


class TestDeterminismAndFiles:
    def test_worker_counts_agree_byte_for_byte(self):
        spec = CensusSpec(length=4, max_exponent=6)
        serial = bk.run_census(spec, workers=1)
        parallel = bk.run_census(spec, workers=3)
        assert serial.csv_text() == parallel.csv_text()
        assert serial.certificates_json() == parallel.certificates_json()
        assert serial.summary.render() == parallel.summary.render()

    def test_files_written_and_sidecar_replays(self, tmp_path):
        result = bk.run_census(CensusSpec(length=4, max_exponent=4))
        paths = bk.write_census_files(result, tmp_path / "out")
        assert paths["csv"].read_text(encoding="utf-8") == result.csv_text()
        assert "rows: 35" in paths["summary"].read_text(encoding="utf-8")
        sidecar = json.loads(paths["certificates"].read_text(encoding="utf-8"))
        assert sidecar  # decided rows produce certificates
        for key, payload in sidecar.items():
            certificate = certificate_from_dict(payload)
            assert bk.certificate_id(certificate) == key
            assert bk.replay(certificate)
        ids_in_rows = {row.certificate_id for row in result.rows if row.certificate_id}
        assert ids_in_rows == set(sidecar)
