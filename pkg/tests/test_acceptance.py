"""One test per acceptance criterion.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line (shown with ``-rA``
or ``-s``) and then asserts every check it made.
"""

import json
import os
import random
import time

from charvar.cli import main
from charvar.convolution import default_kernel, distinguished_part, katz_reduce, mc_delta, mc_step
from charvar.documents import load_document, parse_document
from charvar.errors import ConvolutionError
from charvar.gl import gl_column_dimension, gl_dimension, zero_dimension_triples
from charvar.partitions import Partition, bounded_tuples, dominates
from charvar.quadratic import (
    QuadColumn,
    QuadConfiguration,
    box_dimension,
    column_dimensions,
    min_column_dimension,
    min_quad_column,
    possible_linear_corrections,
    quad_dimension,
    to_non_overlapping,
    total_linear_correction,
    typed,
)
from charvar.verify import expected_gl_equality, verify_nn_reduction, verify_quad_bound, zero_dimension_widths
from conftest import DOCS
from oracles import brute_corrections, multiset_corrections

CPUS = os.cpu_count() or 1


def verdict(number, title, checks):
    failed = [name for name, ok in checks if not ok]
    status = "FAIL" if failed else "PASS"
    detail = f" (failed: {'; '.join(failed)})" if failed else ""
    print(f"[{status}] criterion {number}: {title}{detail}")
    assert not failed, failed


def best_time(fn, repeat=5):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def test_criterion_01_gl_worked_example():
    raw = json.loads((DOCS / "gl_rank10.json").read_text())
    delta = gl_dimension(parse_document(raw))
    elapsed = best_time(lambda: gl_dimension(parse_document(raw)))
    verdict(1, "rank-10 GL example has delta 4", [
        (f"delta {delta} == 4", delta == 4),
        (f"runtime {elapsed * 1e3:.3f} ms < 1 ms", elapsed < 1e-3),
    ])


def test_criterion_02_gl_bound_sweep(tmp_path, capsys):
    out = tmp_path / "gl.json"
    start = time.perf_counter()
    code = main(["verify", "gl", "--max-r", "120", "--jobs", str(CPUS), "--format", "json", "--out", str(out)])
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    report = json.loads(out.read_text())
    witnesses = {}
    for w in report["witnesses"]:
        witnesses.setdefault(w["rank"], []).append(w)
    ranks = list(range(12, 121, 6))
    shapes_ok = all(
        len(witnesses.get(r, [])) == 1
        and witnesses[r][0]["delta"] == r // 3 - 2
        and {(tuple(witnesses[r][0]["widths"]), tuple(map(tuple, witnesses[r][0]["columns"])))} == expected_gl_equality(r)
        for r in ranks
    )
    verdict(2, "verify gl --max-r 120", [
        (f"exit code {code} == 0", code == 0),
        (f"{len(report['violations'])} violations", not report["violations"]),
        ("one equality witness per 6 | r in 12..120 with delta r/3 - 2", shapes_ok and sorted(witnesses) == ranks),
        ("column floors cross-checked for r <= 40",
         report["summary"]["floor_cross_check_max_r"] == 40 and report["summary"]["floor_mismatches"] == 0),
        (f"runtime {elapsed:.1f} s < 60 s", elapsed < 60),
    ])


def test_criterion_03_zero_dimension_triples():
    start = time.perf_counter()
    found = zero_dimension_triples(12)
    enumerated = zero_dimension_widths(12)
    elapsed = time.perf_counter() - start
    want = {(4, 4, 4), (6, 3, 3), (6, 4, 2)}
    verdict(3, "delta 0 at r = 12 exactly on the divisor triples", [
        (f"closed form {sorted(found)}", found == want),
        (f"enumeration {sorted(enumerated)}", enumerated == want),
        (f"runtime {elapsed:.3f} s < 1 s", elapsed < 1),
    ])


def _quad(rank, eps, *cols):
    return QuadConfiguration(rank, eps, tuple(QuadColumn(q, typed(s)) for q, s in cols))


MINCASES = [
    _quad(48, -1, (24, "24e 24f"), (16, "16e 16e 16e"), (8, "8e 8e 8e 8e 8e 6e 2e")),
    _quad(48, 1, (24, "24e 24e"), (16, "16e 16e 16e"), (8, "8e 8e 8e 8e 8e 6f 2e")),
    _quad(48, -1, (24, "24e 24f"), (16, "16e 16e 16e"), (8, "8e 8e 8e 8e 8e 5f 3e")),
    _quad(48, 1, (24, "24e 24e"), (16, "16e 16e 16e"), (8, "8e 8e 8e 8e 8e 5e 3e")),
]


def test_criterion_04_quadratic_worked_examples():
    mixed = load_document(DOCS / "quad_rank10_mixed.json")
    all_e = load_document(DOCS / "quad_rank10_all_e.json")
    ls = {total_linear_correction(mixed), total_linear_correction(all_e)}
    checks = [(f"l values {sorted(ls)} == [-8, 8]", ls == {-8, 8})]
    for name, cfg in (("mixed typing", mixed), ("all-e typing", all_e)):
        deltas = {eps: quad_dimension(QuadConfiguration(10, eps, cfg.columns)) for eps in (1, -1)}
        checks.append((f"{name}: delta per epsilon {deltas} in {{-4, 4}}", set(deltas.values()) <= {-4, 4}))
    for i, cfg in enumerate(MINCASES):
        dims = column_dimensions(cfg)
        delta = quad_dimension(cfg)
        elapsed = best_time(lambda: (column_dimensions(cfg), quad_dimension(cfg)))
        checks.append((f"r = 48 typing {i + 1}: dims {dims}, delta {delta}", dims == (-24, 0, 28) and delta == 4))
        checks.append((f"r = 48 typing {i + 1}: runtime {elapsed * 1e3:.3f} ms < 1 ms", elapsed < 1e-3))
    verdict(4, "quadratic worked examples", checks)


def test_criterion_05_quadratic_bound_sweep(capsys):
    start = time.perf_counter()
    report = verify_quad_bound(48, 66, jobs=CPUS)
    elapsed = time.perf_counter() - start
    minima = report.summary["min_qualifying_delta"]
    by_rank = {}
    for w in report.witnesses:
        by_rank.setdefault(w["rank"], []).append(w)
    listed = {
        (cfg.epsilon, tuple(tuple(str(p) for p in c.parts) for c in cfg.columns)) for cfg in MINCASES
    }
    at48 = {(w["epsilon"], tuple(map(tuple, w["columns"]))) for w in by_rank.get(48, [])}
    two_per_eps = all(
        sorted(w["epsilon"] for w in by_rank[r]) == [-1, -1, 1, 1] for r in by_rank
    )
    verdict(5, "verify quad --range 48 66", [
        (f"{len(report.violations)} violations", report.passed),
        (f"min qualifying delta at 48: {minima['48:-1']}, {minima['48:+1']}", minima["48:-1"] == minima["48:+1"] == 4),
        (f"min qualifying delta at 60: {minima['60:-1']}, {minima['60:+1']}", minima["60:-1"] == minima["60:+1"] == 8),
        (f"equality only at r in {sorted(by_rank)}", sorted(by_rank) == [48, 60]),
        ("two witnesses per epsilon", two_per_eps),
        ("r = 48 witnesses are the four listed typings", at48 == listed),
        (f"runtime {elapsed:.1f} s < 600 s at {CPUS} jobs", elapsed < 600),
    ])


def test_criterion_06_reduction_predicate():
    report = verify_nn_reduction(48, 66, jobs=CPUS)
    positive = verify_nn_reduction(48, 66, jobs=CPUS, scope="positive")
    verdict(6, "verify nn --range 48 66", [
        (f"{len(report.violations)} violations over every configuration", report.passed),
        (f"{len(positive.violations)} violations over delta > 0", positive.passed),
    ])


def test_criterion_07_column_calculus():
    start = time.perf_counter()
    closed_ok = bound_ok = True
    for r in range(1, 13):
        for q in range(1, r + 1):
            for p in bounded_tuples(r, q):
                brute = brute_corrections(q, p)
                closed_ok &= possible_linear_corrections(q, p) == brute
                bound_ok &= all(abs(l) <= q for l in brute)
    min_ok = neg_ok = True
    for r in range(1, 21):
        for q in range(1, r + 1):
            floors = {}
            for p in bounded_tuples(r, q):
                beta = r * q - sum(x * x for x in p)
                floors[p] = {eps: min(beta - eps * l for l in multiset_corrections(q, p)) for eps in (1, -1)}
            low = min(min(v.values()) for v in floors.values())
            winners = {p for p, v in floors.items() if min(v.values()) == low}
            value, mins = min_quad_column(r, q)
            min_ok &= (value, {m.parts for m in mins}) == (low, winners)
            for eps in (1, -1):
                negative = {p: v[eps] for p, v in floors.items() if v[eps] < 0}
                want = {(q,) * (r // q): -q} if r % q == 0 and (r // q) % 2 == 0 else {}
                neg_ok &= negative == want
    ties = {(12, 5): {(5, 5, 2), (5, 5, 1, 1)}, (18, 5): {(5, 5, 5, 3), (5, 5, 4, 4)}}
    ties_ok = all({m.parts for m in min_quad_column(r, q)[1]} == want for (r, q), want in ties.items())
    elapsed = time.perf_counter() - start
    verdict(7, "column calculus against brute force", [
        ("closed-form corrections equal all 2^n typings, r <= 12", closed_ok),
        ("minimal quadratic columns and minimisers, r <= 20", min_ok),
        ("both tie families present", ties_ok),
        ("negative columns only at (q,...,q) with r/q even, value -q, r <= 20", neg_ok),
        ("|l| <= q for every typing, r <= 12", bound_ok),
        (f"runtime {elapsed:.1f} s < 30 s", elapsed < 30),
    ])


def test_criterion_08_dominance_monotonicity():
    start = time.perf_counter()
    gl_ok = quad_ok = True
    pairs = 0
    for r in range(1, 13):
        for q in range(1, r + 1):
            parts = list(bounded_tuples(r, q))
            floors = {p: {eps: min_column_dimension(q, p, eps) for eps in (1, -1)} for p in parts}
            for a in parts:
                for b in parts:
                    if a == b or not dominates(Partition(a), Partition(b)):
                        continue
                    pairs += 1
                    gl_ok &= gl_column_dimension(r, q, a) < gl_column_dimension(r, q, b)
                    quad_ok &= all(floors[a][eps] <= floors[b][eps] for eps in (1, -1))
    elapsed = time.perf_counter() - start
    verdict(8, f"dominance monotonicity over {pairs} comparable pairs", [
        ("GL column dimension strictly decreases up the order", gl_ok),
        ("minimal quadratic column dimension does not increase up the order", quad_ok),
        (f"runtime {elapsed:.1f} s < 30 s", elapsed < 30),
    ])


def test_criterion_09_overlap_transform():
    cfg = load_document(DOCS / "quad_rank20_overlapping.json")
    out = to_non_overlapping(cfg)
    before = (box_dimension(cfg), total_linear_correction(cfg))
    after = (box_dimension(out), total_linear_correction(out))
    shapes = [[str(p) for p in c.parts] for c in out.columns]
    want = [["7e", "4e", "4e", "2e"], ["7e", "6e", "4e"], ["3e", "3f", "3f", "3m", "3m", "2e"]]
    verdict(9, "overlap transform", [
        (f"rank {out.rank} == 17", out.rank == 17),
        ("columns match the rank-17 drawing", shapes == want),
        (f"(beta, l) preserved: {before} -> {after}", before == after),
        (f"(beta, l) {before} == (52, 2)", before == (52, 2) and after == (52, 2)),
    ])


def _expected_multiplicities(point, alpha, delta):
    hit = distinguished_part(point, alpha)
    out = []
    for b, block in enumerate(point):
        if hit is not None and b == hit[0]:
            out.append(block.dual_parts[0] + delta)
            out.append(sum(block.dual_parts.parts[1:]))
        else:
            out.append(block.multiplicity)
    if hit is None:
        out.append(delta)
    return sorted(m for m in out if m)


def test_criterion_10_middle_convolution():
    from oracles import random_kernel, random_tuple

    start = time.perf_counter()
    hyper = load_document(DOCS / "hypergeometric.json")
    final, trace = katz_reduce(hyper)
    fixed = load_document(DOCS / "defect_zero.json")
    tops = sorted((max(b.dual_parts[0] for b in pt) for pt in fixed.points), reverse=True)
    kept, kept_trace = katz_reduce(fixed)
    stepped = mc_step(fixed, default_kernel(fixed))
    same_sizes = [sorted(b.multiplicity for b in pt) for pt in stepped.points] == [
        sorted(b.multiplicity for b in pt) for pt in fixed.points
    ]
    rng = random.Random(2024)
    done = bad = 0
    while done < 10_000:
        tup = random_tuple(rng)
        k = random_kernel(rng, tup)
        try:
            new = mc_step(tup, k)
        except ConvolutionError:
            continue
        delta = mc_delta(tup, k)
        for point, alpha, out in zip(tup.points, k.alpha, new.points):
            got = sorted(b.multiplicity for b in out)
            if got != _expected_multiplicities(point, alpha, delta) or sum(got) != tup.rank + delta:
                bad += 1
        done += 1
    elapsed = time.perf_counter() - start
    verdict(10, "middle convolution", [
        (f"hypergeometric ranks {hyper.rank} -> {final.rank} in {len(trace)} step", final.rank == 1 and len(trace) == 1),
        (f"tops {tops}, r = {fixed.rank} is a fixed point", tops == [5, 3, 2] and kept == fixed and not kept_trace),
        ("one step with the default kernel keeps the multiplicities", stepped.rank == 10 and same_sizes),
        (f"{bad} conservation failures over {done} random steps", bad == 0),
        (f"runtime {elapsed:.1f} s < 10 s", elapsed < 10),
    ])
