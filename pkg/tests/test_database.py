import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octavics.database import (
    PipelineCounts,
    build_database,
    count_enumerated,
    enumerate_tuples,
    enumeration_count,
    read_csv,
    read_jsonl,
    syzygy_candidates,
)
from octavics.errors import HashMismatchError, InputError, MathDomainError
from octavics.wps import WeightedPoint, height, normalized_absolute_minimal

HEIGHT_ONE_REFERENCE = {
    (-1, -1, 0, 1, 0, 0, 0), (-1, 0, 0, 1, 0, 0, 0), (-1, 1, 0, 0, 0, 0, 0),
    (-1, 1, 0, 1, 0, 0, 0), (0, -1, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1, 0),
    (0, 1, 0, 1, 0, 0, 0), (1, -1, 0, 1, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 1, 0, 0, 0), (1, 1, 0, 0, 0, 0, 0), (1, 1, 0, 1, 0, 0, 0),
}


@pytest.fixture(scope="module")
def db1(relations):
    return build_database(1, relations)


def test_height_one_counts(db1):
    assert db1.counts.as_tuple() == (2186, 34, 24, 24, 12)


def test_height_one_table(db1):
    assert db1.tuples() == HEIGHT_ONE_REFERENCE
    assert all(r.source_count == 2 for r in db1.records)


def test_scan_matches_exact_evaluation(relations, db1):
    # oracle: evaluate F in exact arithmetic on every tuple of the box
    F = relations.syzygy
    exact = sorted(t for t in enumerate_tuples(1) if F.evaluate_scaled(t) == 0)
    assert exact == db1.syzygy_set


def test_records_are_normalized_and_sorted(db1):
    keys = []
    for r in db1.records:
        p = WeightedPoint(r.tuple)
        assert normalized_absolute_minimal(p) == p
        assert r.height.same_as(height(p))
        assert r.disc != 0
        keys.append(r.height)
    assert all(a <= b for a, b in zip(keys, keys[1:]))


def test_enumeration_counts():
    assert enumeration_count(1) == 3**7 - 1
    assert enumeration_count("3/2") == 237092624
    assert count_enumerated(1) == 2186
    assert sum(1 for _ in enumerate_tuples(1)) == 2186


@settings(max_examples=10)
@given(st.integers(1, 9))
def test_partitions_cover_the_box(parts):
    whole = list(enumerate_tuples(1))
    pieces = [t for k in range(parts) for t in enumerate_tuples(1, k, parts)]
    assert pieces == whole


def test_enumeration_order_and_zero():
    ts = list(enumerate_tuples(1))
    assert ts[0] == (-1,) * 7 and ts[1] == (-1,) * 6 + (0,)
    assert (0,) * 7 not in ts


def test_workers_do_not_change_output(relations, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    build_database(1, relations, workers=1, out=a)
    build_database(1, relations, workers=2, out=b)
    assert a.read_bytes() == b.read_bytes()


def test_jsonl_round_trip(relations, db1, tmp_path):
    out = tmp_path / "h1.jsonl"
    build_database(1, relations, out=out)
    meta, records = read_jsonl(out)
    assert meta["relation_hash"] == relations.hash
    assert meta["counts"] == db1.counts.to_dict()
    assert meta["h"] == "1/1"
    assert [r.tuple for r in records] == [r.tuple for r in db1.records]
    assert records == db1.records


def test_csv_output(relations, db1, tmp_path):
    out = tmp_path / "h1.csv"
    build_database("1.0", relations, out=out, fmt="csv")
    meta, rows = read_csv(out)
    assert meta["version"] and meta["relation_hash"] == relations.hash
    assert rows == [r.tuple for r in db1.records]
    assert out.read_text().splitlines()[1] == "J2,J3,J4,J5,J6,J7,J8,height,disc"


def test_bad_format(relations, tmp_path):
    with pytest.raises(InputError):
        build_database(1, relations, out=tmp_path / "x", fmt="xml")


def test_hash_mismatch(relations):
    with pytest.raises(HashMismatchError):
        build_database(1, relations, expected_hash="0" * 64)


def test_height_below_one(relations):
    with pytest.raises(MathDomainError):
        build_database("1/2", relations)


def test_pipeline_counts_monotone():
    with pytest.raises(ValueError):
        PipelineCounts(10, 11, 3, 3, 1)


def test_candidates_visit_every_tuple(relations):
    B, visited = syzygy_candidates(1, relations, workers=1)
    assert visited == 2186 and len(B) == 34
