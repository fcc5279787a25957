"""Acceptance suite: the fifteen headline claims, at zero tolerance.

Sweep domain: all (s, n, r) with 2 <= r <= 8, 2 <= n <= 6, 0 < s < n
(105 triples). Every test prints a single PASS/FAIL line; run with
``pytest -rA tests/test_acceptance.py`` to see all of them. Contexts are
shared through the conftest cache, so the whole suite stays well under the
two-minute budget on one core.
"""

from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

from conftest import get_ctx

from cychilb import quiver as quiver_mod
from cychilb import toric
from cychilb.group import validate
from cychilb.mckay import b_divisor, h0_support, h_minus_n_support
from cychilb.report import build_report
from cychilb.verify import run_verify

SWEEP = [
    (s, n, r)
    for r in range(2, 9)
    for n in range(2, 7)
    for s in range(1, n)
]

F = Fraction

GAMMAS_235 = {
    frozenset({(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (4, 0, 0)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 4, 0)}),
    frozenset({(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3), (0, 0, 4)}),
    frozenset({(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (0, 0, 1)}),
    frozenset({(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 0, 1), (0, 0, 2)}),
    frozenset({(0, 0, 0), (1, 0, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 0, 1)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 0, 1), (0, 0, 2)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3)}),
}


def _verdict(name: str, failures: list) -> None:
    status = "FAIL" if failures else "PASS"
    print(f"[acceptance] {name}: {status} ({len(SWEEP)} sweep triples)")
    assert not failures, f"{name}: first failures: {failures[:5]}"


def test_criterion_01_fixed_point_count_and_search_oracle():
    failures = []
    for s, n, r in SWEEP:
        ctx = get_ctx(s, n, r)
        formula = s * (n - s) * (r - 2) + n
        if len(ctx.fixed_points) != formula:
            failures.append((s, n, r, "enumeration count"))
            continue
        enumerated = {g.key() for g in ctx.companion_graphs}
        searched = {g.key() for g in ctx.searched_graphs}
        if enumerated != searched or len(searched) != formula:
            failures.append((s, n, r, "search oracle"))
    _verdict("criterion 01 fixed-point count = s(n-s)(r-2)+n = search count", failures)


def test_criterion_02_example_235_gamma_lists_and_erratum():
    failures = []
    ctx = get_ctx(2, 3, 5)
    if len(ctx.fixed_points) != 9:
        failures.append("count != 9")
    if {g.key() for g in ctx.companion_graphs} != GAMMAS_235:
        failures.append("gamma lists differ from the frozen nine")
    by_label = {p.label.render(): p for p in ctx.fixed_points}
    gens = set(by_label["interior(i=1,j=1,t=4)"].generators)
    if gens != {(4, 0, 0), (0, 1, 0), (0, 0, 2), (1, 0, 1)}:
        failures.append("interior(1,1,4) generators off the mixed form")
    cert = run_verify(2, 3, 5)
    flagged = {
        e["id"]: e["applies_to_triple"] for e in cert["errata"]
    }
    if flagged.get("fixed-ideal-mixed-generator") is not True:
        failures.append("generator deviation not flagged in the certificate")
    print(f"[acceptance] criterion 02 (2,3,5) nine gamma lists + flagged deviation:"
          f" {'FAIL' if failures else 'PASS'}")
    assert not failures, failures


def test_criterion_03_tangent_dimension_equals_n():
    failures = []
    for s, n, r in SWEEP:
        ctx = get_ctx(s, n, r)
        if any(d != n for d in ctx.tangent_dimensions):
            failures.append((s, n, r))
    _verdict("criterion 03 tangent dimension = n at every fixed point", failures)


def test_criterion_04_fan_smooth_counts_and_volume():
    failures = []
    for s, n, r in SWEEP:
        ctx = get_ctx(s, n, r)
        g = ctx.g
        cones = ctx.fan.maximal_cones
        if len(cones) != len(ctx.fixed_points):
            failures.append((s, n, r, "cone count"))
            continue
        if any(abs(toric.cone_det(c)) != F(1, r) for c in cones):
            failures.append((s, n, r, "determinant"))
            continue
        if not all(toric.cone_is_smooth(g, c) for c in cones):
            failures.append((s, n, r, "smoothness"))
            continue
        if toric.covering_volume(ctx.fan) != 1:
            failures.append((s, n, r, "volume"))
            continue
        if len(ctx.matching) != len(cones):
            failures.append((s, n, r, "matching"))
    _verdict("criterion 04 smooth cones |det|=1/r, counts, volume additivity", failures)


def test_criterion_05_discrepancy_multiset():
    failures = []
    for s, n, r in SWEEP:
        ctx = get_ctx(s, n, r)
        values = sorted(ctx.discrepancies)
        formula = sorted(
            F(n - s) + F(j * (2 * s - n), r) - 1 for j in range(1, r)
        )
        if values != formula:
            failures.append((s, n, r, "multiset"))
            continue
        all_zero = all(v == 0 for v in values)
        if all_zero != ((s, n) == (1, 2)):
            failures.append((s, n, r, "crepancy criterion"))
            continue
        if n >= 3 and not all(v > 0 for v in values):
            failures.append((s, n, r, "positivity"))
    _verdict("criterion 05 discrepancies = n-s+j(2s-n)/r-1; zero iff (1,2)", failures)


def test_criterion_06_singularity_flags():
    failures = []
    for s, n, r in SWEEP:
        sing = get_ctx(s, n, r).singularity
        if not sing.canonical:
            failures.append((s, n, r, "canonical"))
        elif sing.terminal != (n > 2):
            failures.append((s, n, r, "terminal"))
        elif sing.gorenstein != ((2 * s - n) % r == 0):
            failures.append((s, n, r, "gorenstein"))
    _verdict("criterion 06 terminal iff n>2; gorenstein iff r | 2s-n", failures)


def test_criterion_07_m_table_closed_form_and_printed_deviation():
    failures = []
    for s, n, r in SWEEP:
        table = get_ctx(s, n, r).m_table  # construction re-derives each cell
        for k in range(r):
            for t in range(1, r):
                expected = (
                    F(0) if k == 0 else F(min(t * k, (r - t) * (r - k)), r)
                )
                if table.entry(k, t) != expected:
                    failures.append((s, n, r, k, t))
    printed = [
        [F(0), F(0), F(0), F(0)],
        [F(1, 5), F(2, 5), F(3, 5), F(1, 5)],  # printed value at (1, 4)
        [F(2, 5), F(4, 5), F(6, 5), F(3, 5)],
        [F(3, 5), F(6, 5), F(4, 5), F(2, 5)],
        [F(4, 5), F(3, 5), F(2, 5), F(1, 5)],
    ]
    table = get_ctx(2, 6, 5).m_table
    mismatch = [
        (k, t)
        for k in range(5)
        for t in range(1, 5)
        if table.entry(k, t) != printed[k][t - 1]
    ]
    if mismatch != [(1, 4)]:
        failures.append(("printed-table mismatch set", mismatch))
    if get_ctx(2, 6, 5).m_table.entry(1, 4) != F(4, 5):
        failures.append(("(chi_1,E_4)", "computed value not 4/5"))
    cert = run_verify(2, 6, 5)
    flagged = {e["id"]: e["applies_to_triple"] for e in cert["errata"]}
    if flagged.get("m-table-cell-chi1-E4") is not True:
        failures.append(("erratum", "not flagged in the certificate"))
    _verdict("criterion 07 m-table matches closed form; printed cell reported", failures)


def test_criterion_08_m_table_symmetry():
    failures = []
    for s, n, r in SWEEP:
        table = get_ctx(s, n, r).m_table
        for k in range(1, r):
            for ell in range(1, r):
                if table.entry(k, ell) != table.entry(r - ell, r - k):
                    failures.append((s, n, r, k, ell))
    _verdict("criterion 08 m[k][l] = m[r-l][r-k] for k,l >= 1", failures)


def test_criterion_09_b_divisors_effective_integral():
    failures = []
    for s, n, r in SWEEP:
        g = get_ctx(s, n, r).g
        for a in range(r):
            for i in range(1, n + 1):
                d = b_divisor(g, a, i)
                if d.z_part() != {f"Z_{i}": F(1)}:
                    failures.append((s, n, r, a, i, "z-part"))
                    continue
                e_values = {
                    v for key, v in d.coeffs if key.startswith("E_")
                }
                if not e_values <= {F(0), F(1)}:
                    failures.append((s, n, r, a, i, "coefficients"))
    _verdict("criterion 09 B divisors: Z-part Z_i, E-coefficients in {0,1}", failures)


def test_criterion_10_cohomology_supports():
    failures = []
    for s, n, r in SWEEP:
        g = get_ctx(s, n, r).g
        for t in range(1, r):
            if h0_support(g, t) != {t}:
                failures.append((s, n, r, t, "h0"))
        special = (n - 2 * s) % r
        for t in range(r):
            support = h_minus_n_support(g, t)
            expected = set(range(1, r)) if t == special else set()
            if support != expected:
                failures.append((s, n, r, t, "h-n"))
    _verdict("criterion 10 h0 identity bijection; h^-n empty except t=n-2s", failures)


def test_criterion_11_intersection_path_and_extremal_labels():
    failures = []
    for s, n, r in SWEEP:
        ctx = get_ctx(s, n, r)
        expected = [(i, i + 1) for i in range(1, r - 1)]
        if toric.intersection_graph(ctx.g, ctx.fan) != expected:
            failures.append((s, n, r, "path"))
            continue
        labels = toric.extremal_divisor_labels(ctx.g)
        want = {}
        if s == 1:
            want["E_1"] = "projective-space"
        if n - s == 1:
            want[f"E_{r - 1}"] = "projective-space"
        if labels != want:
            failures.append((s, n, r, "labels"))
    report = build_report(get_ctx(2, 3, 5))
    if report["resolution"]["extremal_divisor_labels"] != {
        "E_4": "projective-space"
    }:
        failures.append(("report", (2, 3, 5)))
    _verdict("criterion 11 intersection path; extremal divisors labeled", failures)


def test_criterion_12_coplanarity():
    failures = []
    for s, n, r in SWEEP:
        if not toric.coplanarity_check(get_ctx(s, n, r).g):
            failures.append((s, n, r))
    _verdict("criterion 12 all interior rays satisfy the plane equations", failures)


def test_criterion_13_quiver_charts_witness_sink_patterns():
    failures = []
    for s, n, r in SWEEP:
        ctx = get_ctx(s, n, r)
        # rep_from_fixed_point raises if relations or stability fail
        try:
            reps = ctx.fixed_point_reps
        except Exception as exc:
            failures.append((s, n, r, f"rep: {exc}"))
            continue
        if len(reps) != len(ctx.fixed_points):
            failures.append((s, n, r, "chart count"))
            continue
        if not ctx.witness.all_pass:
            failures.append((s, n, r, "witness"))
    for r in range(2, 6):
        if not quiver_mod.sink_pattern_check(r):
            failures.append((r, "sink patterns"))
    _verdict("criterion 13 reps stable, witness passes, sink patterns r<=5", failures)


def test_criterion_14_block_swap_symmetry():
    failures = []
    for s, n, r in SWEEP:
        a = get_ctx(s, n, r)
        b = get_ctx(n - s, n, r)
        checks = [
            ("fixed-point count", len(a.fixed_points) == len(b.fixed_points)),
            ("cone count",
             len(a.fan.maximal_cones) == len(b.fan.maximal_cones)),
            ("discrepancy multiset",
             sorted(a.discrepancies) == sorted(b.discrepancies)),
            ("age multiset",
             sorted(a.singularity.ages) == sorted(b.singularity.ages)),
            ("canonical", a.singularity.canonical == b.singularity.canonical),
            ("terminal", a.singularity.terminal == b.singularity.terminal),
            ("gorenstein",
             a.singularity.gorenstein == b.singularity.gorenstein),
            ("intersection graph",
             toric.intersection_graph(a.g, a.fan)
             == toric.intersection_graph(b.g, b.fan)),
            ("m-table", a.m_table.entries == b.m_table.entries),
            ("correspondence", a.correspondence == b.correspondence),
            ("arrow count", len(a.quiver.arrows) == len(b.quiver.arrows)),
            ("tangent multiset",
             sorted(a.tangent_dimensions) == sorted(b.tangent_dimensions)),
            ("witness", a.witness.all_pass == b.witness.all_pass),
        ]
        for name, ok in checks:
            if not ok:
                failures.append((s, n, r, name))
    _verdict("criterion 14 outputs agree between (s,n,r) and (n-s,n,r)", failures)


def _run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "cychilb", *args],
        capture_output=True,
        text=True,
        timeout=600,
    )


def test_criterion_15_byte_determinism():
    failures = []
    report_runs = [
        _run_cli("report", "--s", "2", "--n", "3", "--r", "5") for _ in range(2)
    ]
    if any(p.returncode != 0 for p in report_runs):
        failures.append("report exit code")
    elif report_runs[0].stdout != report_runs[1].stdout:
        failures.append("report output differs between runs")
    else:
        json.loads(report_runs[0].stdout)  # well-formed
    sweep_runs = [
        _run_cli("sweep", "--max-n", "4", "--max-r", "5") for _ in range(2)
    ]
    if any(p.returncode != 0 for p in sweep_runs):
        failures.append("sweep exit code")
    elif sweep_runs[0].stdout != sweep_runs[1].stdout:
        failures.append("sweep output differs between runs")
    status = "FAIL" if failures else "PASS"
    print(f"[acceptance] criterion 15 report and sweep byte-determinism: {status}")
    assert not failures, failures
