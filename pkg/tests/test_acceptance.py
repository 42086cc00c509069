"""Acceptance gate: one labelled PASS/FAIL line per criterion.

The lines are printed outside the capture so they always reach the
terminal; each test also asserts, so a FAIL line comes with a red test.
"""

import itertools
import json
import time

from p5tensor import (
    build,
    consistency_check,
    enumerate_elements,
    list_families,
    raw_index_conflicts,
)
from p5tensor.abelian import canon, direct_sum, tensor_ab, wedge_ab
from p5tensor.cli import main as cli_main
from p5tensor.oracles import (
    QuadraticModel,
    bilinear_tensor_oracle,
    counting_vs_snf,
    gamma_relation_check,
)

PRIMES = (5, 7)
ALL_ROWS = [s.id for s in list_families()]

ABELIAN_ROWS = {"1", "13", "26", "43", "51", "66", "70"}
TRIVIAL_MULTIPLIER_ROWS = {"1", "7", "8", "9", "11,1", "12", "24", "27"}
CAPABLE_ROWS = {
    "2", "3", "10", "11,2", "17", "18", "28", "31", "34", "40", "41",
    "43", "45", "48,2", "49", "54", "59", "64", "70",
}


def report(capsys, num, label, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    line = f"[acceptance] criterion {num} ({label}): {tag}"
    if detail:
        line += f"  [{detail}]"
    with capsys.disabled():
        print(("\n" if num == 1 else "") + line)
    assert ok, line


def failed_checks(rec, names):
    by_name = {v.check: v for v in rec.verdicts}
    return [(rec.family, rec.p, n, by_name[n].detail)
            for n in names if not by_name[n].passed]


def test_criterion_1_construction(capsys):
    t0 = time.time()
    problems = []
    for p in PRIMES:
        for row in ALL_ROWS:
            P = build(row, p)
            if not consistency_check(P).ok:
                problems.append((row, p, "inconsistent"))
                continue
            if len(enumerate_elements(P)) != p**5:
                problems.append((row, p, "short enumeration"))
    for fam in ("11", "12", "48", "50"):
        for k in (1, 2):
            P = build(fam, 5, {"k": k})
            if not consistency_check(P).ok:
                problems.append((fam, 5, f"inconsistent at k={k}"))
            elif len(enumerate_elements(P)) != 5**5:
                problems.append((fam, 5, f"short enumeration at k={k}"))
    elapsed = time.time() - t0
    ok = not problems and elapsed < 60.0
    report(capsys, 1, "presentation consistency and full enumeration",
           ok, f"{2 * len(ALL_ROWS) + 8} groups, {elapsed:.1f}s"
           + (f"; first failure {problems[0]}" if problems else ""))


def test_criterion_2_structure_columns(records, capsys):
    bad = []
    for p in PRIMES:
        for row in ALL_ROWS:
            bad += failed_checks(records(row, p),
                                 ("class", "center", "derived", "ab"))
    report(capsys, 2, "structure columns (class, center, derived, "
           "abelianization)", not bad,
           "72 rows x 2 primes" + (f"; first {bad[0]}" if bad else ""))


def test_criterion_3_quadratic_functor_columns(records, capsys):
    bad = []
    for p in PRIMES:
        for row in ALL_ROWS:
            bad += failed_checks(records(row, p), ("nabla", "j2"))
    report(capsys, 3, "quadratic functor columns", not bad,
           "72 rows x 2 primes" + (f"; first {bad[0]}" if bad else ""))


def test_criterion_4_tensor_decomposition(records, capsys):
    bad = []
    for p in PRIMES:
        for row in ALL_ROWS:
            rec = records(row, p)
            bad += failed_checks(rec, ("wedge", "tensor", "wedge-order",
                                       "tensor-order-nabla",
                                       "tensor-order-j2"))
            recomposed = canon(direct_sum(rec.nabla,
                                          rec.wedge.abelian_part))
            if recomposed != rec.tensor.abelian_part or \
                    rec.wedge.e1_factor != rec.tensor.e1_factor:
                bad.append((row, p, "recomposition", recomposed))
    report(capsys, 4, "tensor decomposition and order identities", not bad,
           "5 identities per row" + (f"; first {bad[0]}" if bad else ""))


def test_criterion_5_multiplier_free_routes(records, capsys):
    bad = []
    for p in PRIMES:
        for row in TRIVIAL_MULTIPLIER_ROWS:
            rec = records(row, p)
            if rec.expected.multiplier != ():
                bad.append((row, p, "multiplier not trivial"))
            if rec.derived_type != rec.expected.wedge_parts \
                    or rec.expected.wedge_e1:
                bad.append((row, p, "wedge is not the derived type"))
        for row in ABELIAN_ROWS:
            rec = records(row, p)
            w = wedge_ab(rec.ab_type)
            if not (w == rec.expected.wedge_parts == rec.expected.multiplier):
                bad.append((row, p, "wedge_ab disagrees", w))
    report(capsys, 5, "multiplier-free and abelian wedge routes", not bad,
           f"{len(TRIVIAL_MULTIPLIER_ROWS)} + {len(ABELIAN_ROWS)} rows"
           + (f"; first {bad[0]}" if bad else ""))


def test_criterion_6_exponent_p_tensor_entries(records, capsys):
    bad = []
    seen = set()
    for p in PRIMES:
        for row in ALL_ROWS:
            rec = records(row, p)
            if rec.exponent != p:
                continue
            seen.add(row)
            if rec.tensor.e1_factor:
                continue
            if any(part != 1 for part in rec.tensor.abelian_part):
                bad.append((row, p, rec.tensor.abelian_part))
    missing = {"3", "34", "54", "59", "64"} - seen
    ok = not bad and not missing
    report(capsys, 6, "exponent-p families have elementary tensor entries",
           ok, f"rows {sorted(seen, key=lambda r: (len(r), r))}"
           + (f"; first {bad[0]}" if bad else "")
           + (f"; missing {sorted(missing)}" if missing else ""))


def test_criterion_7_center_chain_and_capability(records, capsys):
    bad = []
    for p in PRIMES:
        capable = set()
        for row in ALL_ROWS:
            rec = records(row, p)
            bad += failed_checks(rec, ("center-chain",
                                       "abelian-tensor-center",
                                       "capability"))
            if rec.capable:
                capable.add(row)
            if row in ABELIAN_ROWS and rec.expected.tensor_center != ():
                bad.append((row, p, "abelian row with nontrivial "
                            "tensor center"))
        if capable != CAPABLE_ROWS:
            bad.append((p, "capable set", sorted(capable ^ CAPABLE_ROWS)))
    report(capsys, 7, "center chain, tensor-trivial center, capability",
           not bad, f"{len(CAPABLE_ROWS)} capable rows"
           + (f"; first {bad[0]}" if bad else ""))


def test_criterion_8_raw_index_conflicts(capsys):
    expected = {
        ("multiplier", "duplicate", "12"),
        ("multiplier", "missing", "14"),
        ("multiplier", "missing", "26"),
        ("epicenter", "duplicate", "70"),
        ("epicenter", "duplicate", "10"),
        ("epicenter", "repeated-listing", "17"),
        ("epicenter", "missing", "1"),
        ("epicenter", "missing", "13"),
        ("epicenter", "missing", "19"),
        ("epicenter", "missing", "24"),
        ("epicenter", "missing", "60"),
        ("epicenter", "type-mismatch", "20"),
    }
    conflicts = raw_index_conflicts()
    got = {(c.index, c.kind, c.row) for c in conflicts}
    undocumented = [c for c in conflicts if not c.erratum]
    cli_ok = True
    for p in PRIMES:
        rc = cli_main(["verify", "--prime", str(p)])
        out = capsys.readouterr().out
        if rc != 0 or "UNDOCUMENTED" in out:
            cli_ok = False
        if out.count("documented by erratum") != len(expected):
            cli_ok = False
    ok = got == expected and not undocumented and cli_ok
    report(capsys, 8, "raw index conflict scan", ok,
           f"{len(got)} conflicts, all documented"
           + ("" if got == expected
              else f"; diff {sorted(got ^ expected)}"))


def test_criterion_9_oracle_agreement(capsys):
    t0 = time.time()
    failures = []

    types = [()]
    for n in range(1, 5):
        types.extend(tuple(sorted(c, reverse=True))
                     for c in itertools.combinations_with_replacement(
                         (3, 2, 1), n))
    pairs = 0
    for p in (3, 5, 7):
        for a in types:
            for b in types:
                if bilinear_tensor_oracle(a, b, p) != tensor_ab(a, b):
                    failures.append(("bilinear", a, b, p))
                pairs += 1

    moduli = list(range(3, 50, 2))
    models = [(m,) for m in moduli]
    models += list(itertools.combinations_with_replacement(moduli, 2))
    triples = 0
    for ms in models:
        rep = gamma_relation_check(QuadraticModel(ms), trials=10_000,
                                   seed=sum(ms))
        triples += 10_000
        if not rep.ok:
            failures.append(("gamma", ms, rep.failures[:1]))

    rep = counting_vs_snf(trials=1000, seed=2026)
    if not rep.ok:
        failures.append(("counting", rep.failures[:1]))

    elapsed = time.time() - t0
    ok = not failures and elapsed < 30.0
    report(capsys, 9, "independent oracle agreement", ok,
           f"{pairs} tensor pairs, {len(models)} quadratic models x 1e4 "
           f"triples, 1000 census draws, {elapsed:.1f}s"
           + (f"; first {failures[0]}" if failures else ""))
