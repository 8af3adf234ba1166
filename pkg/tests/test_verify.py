import json

from charvar.gl import zero_dimension_triples
from charvar.verify import (
    VerificationReport,
    configurations,
    expected_quad_equality,
    gl_floor_table,
    verify_column_propositions,
    verify_gl_bound,
    verify_nn_reduction,
    verify_quad_bound,
    width_triples,
    zero_dimension_widths,
)
from oracles import brute_column_dims, partitions_ascending


def test_width_triples():
    for r in range(3, 30):
        want = {(a, b, r - a - b) for a in range(1, r) for b in range(1, r) if a >= b >= r - a - b >= 1}
        got = list(width_triples(r))
        assert set(got) == want and len(got) == len(want)


def test_gl_sweep_small():
    report = verify_gl_bound(30)
    assert report.passed
    assert report.summary["min_positive_even_delta"]["12"] == 2
    assert [w["rank"] for w in report.witnesses] == [12, 18, 24, 30]
    w = report.witnesses[0]
    assert w["widths"] == [6, 4, 2]
    assert w["columns"] == [[6, 6], [4, 4, 4], [2, 2, 2, 2, 2, 1, 1]]


def test_gl_configurations_against_enumeration():
    for r in range(3, 13):
        want = set()
        for t in width_triples(r):
            cols = [{r * q - sum(x * x for x in p) for p in partitions_ascending(r, q)} for q in t]
            want |= {(a + b + c, t) for a in cols[0] for b in cols[1] for c in cols[2] if a + b + c <= 6}
        got = {(d, t) for d, t, _ in configurations(r, None, 6)}
        assert got == want


def test_quad_configurations_against_enumeration():
    for r in range(3, 11):
        for eps in (1, -1):
            want = set()
            for t in width_triples(r):
                cols = [set().union(*(brute_column_dims(r, q, p, eps) for p in partitions_ascending(r, q))) for q in t]
                want |= {(a + b + c, t) for a in cols[0] for b in cols[1] for c in cols[2] if a + b + c <= 4}
            got = {(d, t) for d, t, _ in configurations(r, eps, 4)}
            assert got == want


def test_gl_floor_table():
    for r in range(1, 16):
        table = gl_floor_table(r)
        for q in range(1, r + 1):
            dims = sorted(r * q - sum(x * x for x in p) for p in partitions_ascending(r, q))
            assert table[q] == (dims[0], dims.count(dims[0]))


def test_zero_dimension_widths_by_enumeration():
    for r in range(3, 25):
        assert zero_dimension_widths(r) == zero_dimension_triples(r)


def test_quad_sweep_rank_48_and_60():
    report = verify_quad_bound(48, 48)
    assert report.passed
    assert report.summary["min_qualifying_delta"] == {"48:-1": 4, "48:+1": 4}
    assert len(report.witnesses) == 4
    assert sorted(w["epsilon"] for w in report.witnesses) == [-1, -1, 1, 1]
    for w in report.witnesses:
        assert w["column_dims"] == [-24, 0, 28]
    report = verify_quad_bound(60, 60)
    assert report.passed and {w["delta"] for w in report.witnesses} == {8}
    assert len(expected_quad_equality(60, 1)) == 2


def test_quad_sweep_without_equality():
    report = verify_quad_bound(49, 53)
    assert report.passed and report.witnesses == []


def test_quad_small_ranks():
    assert verify_quad_bound(3, 10).passed


def test_pruning_is_sound():
    pruned = verify_quad_bound(3, 30, prune=True).to_dict(timing=False)
    full = verify_quad_bound(3, 30, prune=False).to_dict(timing=False)
    pruned["summary"].pop("pruned")
    full["summary"].pop("pruned")
    assert pruned == full


def test_nn_reduction():
    report = verify_nn_reduction(48, 54)
    assert report.passed
    positive = verify_nn_reduction(48, 54, scope="positive")
    assert positive.passed
    at48 = [w for w in positive.witnesses if w["rank"] == 48]
    assert at48 and all(w["n"] == [2, 3] and w["c"] == [0, 0] for w in at48)
    assert not [w for w in positive.witnesses if w["rank"] == 50]


def test_column_propositions():
    report = verify_column_propositions(14)
    assert report.passed
    assert set(report.summary.values()) == {"pass"}


def test_reports_independent_of_worker_count():
    one = verify_quad_bound(48, 50, jobs=1).to_json(timing=False)
    two = verify_quad_bound(48, 50, jobs=2).to_json(timing=False)
    assert one == two
    one = verify_gl_bound(24, jobs=1).to_json(timing=False)
    two = verify_gl_bound(24, jobs=2).to_json(timing=False)
    assert one == two


def test_report_schema():
    report = verify_gl_bound(12)
    data = json.loads(report.to_json())
    for key in ("theorem", "range", "epsilon", "status", "witnesses", "violations", "elapsed_ms"):
        assert key in data
    assert "elapsed_ms" not in json.loads(report.to_json(timing=False))
    failing = VerificationReport("x", (1, 1), [], violations=[{"a": 1}])
    assert failing.finish(0.0).status == "fail"
