"""Acceptance suite.

One test per acceptance criterion; each prints a PASS/FAIL line (run with
``pytest tests/test_acceptance.py -v -s`` to see them).  Tolerances are
exact: set equalities, exact rationals, hard wall-clock budgets.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

from agrolattice.concepts import AgroTriple, enumerate_agro_triples, oracle_enumerate
from agrolattice.conformance import run_conformance
from agrolattice.cube import (
    DataCube,
    loc_friendly,
    locs_with_pairs,
    reorient,
    slice_at,
    slice_down,
    slice_up,
)
from agrolattice.lattice import build_lattice, check_isomorphic, flatten_lattice
from agrolattice.rules import AssociationRule, confidence, filter_rules, generate_rules, support

from conftest import make_random_cube

TOY = Path(__file__).resolve().parent.parent / "src" / "agrolattice" / "data" / "toy.wide.csv"

REFERENCE_ROWS = {
    "TS_1": (("L_1",), ("J_2", "J_3", "J_4", "J_5"), ("T_2", "T_4")),
    "TS_2": (("L_2",), ("J_1", "J_2", "J_3", "J_5"), ("T_2", "T_3")),
    "TS_3": (("L_1", "L_7"), ("J_2", "J_4", "J_5"), ("T_2", "T_3")),
    "TS_4": (("L_2", "L_3"), ("J_3", "J_5", "J_6"), ("T_1",)),
}


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def _run_cli(argv, out: Path) -> float:
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "agrolattice", *map(str, argv), "--out", str(out)],
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0, proc.stderr
    return elapsed


def test_criterion_1_toy_triple_mining(tmp_path, toy_cube, toy_triples):
    out = tmp_path / "triples.txt"
    elapsed = _run_cli(["mine-triples", "--input", TOY, "--format", "wide-csv"], out)
    lines = out.read_text().splitlines()

    oracle = oracle_enumerate(toy_cube)
    from agrolattice.io import triples_to_text

    output_equals_oracle = lines == triples_to_text(oracle).splitlines()

    rows_present = all(
        AgroTriple.from_names(toy_cube.labels, *row) in toy_triples
        for row in REFERENCE_ROWS.values()
    )
    verbatim = all(
        ";".join("|".join(part) for part in row) in lines for row in REFERENCE_ROWS.values()
    )

    report = run_conformance(toy_cube)
    counts_reported = (
        report.triples["oracle_count"] == len(oracle)
        and report.triples["reference_count"] == 76
    )
    ts76 = next(r for r in report.reference_triples if r["id"] == "TS_76")
    ts76_flagged = ts76["verdict"] == "mismatch" and "L_7" in ts76["explanation"]

    ok = (
        elapsed < 1.0
        and output_equals_oracle
        and rows_present
        and verbatim
        and counts_reported
        and ts76_flagged
    )
    _report(
        1,
        ok,
        f"mine-triples {elapsed:.2f}s (<1s), {len(lines)} triples == oracle "
        f"{len(oracle)}, TS_1..TS_4 verbatim, oracle count beside reference 76, "
        f"TS_76 mismatch flagged (missing L_7)",
    )


def test_criterion_2_rule_metrics(toy_cube):
    labels = toy_cube.labels
    rule = AssociationRule(
        (labels.dimension_index("J_2"),),
        (labels.dimension_index("J_4"),),
        (labels.timestamp_index("T_3"),),
        Fraction(0),
        Fraction(0),
        -1,
    )
    sup_dim = support(toy_cube, rule, denominator="dimensions")
    sup_loc = support(toy_cube, rule, denominator="locations")
    conf = confidence(toy_cube, rule)
    ok = sup_dim == Fraction(6, 6) and sup_loc == Fraction(6, 10) and conf == Fraction(6, 8)
    _report(
        2,
        ok,
        f"support(J_2 -> J_4 at T_3): {sup_dim} == 6/6 (dimensions), {sup_loc} == 6/10 "
        f"(locations), confidence {conf} == 6/8; exact rational equality",
    )


def test_criterion_3_rule_count_reproduction(tmp_path, toy_cube, toy_triples):
    out = tmp_path / "rules.csv"
    elapsed = _run_cli(
        [
            "mine-rules", "--input", TOY, "--format", "wide-csv",
            "--min-support", "0.7", "--min-confidence", "0.8",
        ],
        out,
    )
    csv_rules = len(out.read_text().splitlines()) - 1

    oracle_triples = oracle_enumerate(toy_cube)
    counts = {}
    for denominator in ("locations", "dimensions"):
        fast = filter_rules(
            generate_rules(toy_triples, support_denominator=denominator),
            Fraction(7, 10),
            Fraction(4, 5),
        )
        authoritative = filter_rules(
            generate_rules(oracle_triples, support_denominator=denominator),
            Fraction(7, 10),
            Fraction(4, 5),
        )
        assert fast == authoritative
        counts[denominator] = len(authoritative)

    report = run_conformance(toy_cube)
    reported = {
        d: report.rules["counts"][d]["kept"] for d in ("locations", "dimensions")
    }
    ok = (
        elapsed < 1.0
        and csv_rules == counts["locations"]
        and reported == counts
        and report.rules["reference_count"] == 26
    )
    _report(
        3,
        ok,
        f"mine-rules {elapsed:.2f}s (<1s); kept at 0.7/0.8: "
        f"{counts['locations']} (locations), {counts['dimensions']} (dimensions), "
        f"reported beside reference 26; oracle-generated rules agree",
    )


def test_criterion_4_closure_laws():
    rng = random.Random(4242)
    cubes = [make_random_cube(rng, max_axis=8, density=rng.uniform(0.2, 0.7)) for _ in range(55)]
    subsets = 0
    violations = 0
    for cube in cubes:
        for _ in range(20):
            t = rng.randrange(cube.n_timestamps)
            ctx = slice_at(cube, t)
            subsets += 1
            locs = {g for g in range(cube.n_locations) if rng.random() < 0.5}
            bigger = locs | {g for g in range(cube.n_locations) if rng.random() < 0.3}
            dims = {d for d in range(cube.n_dimensions) if rng.random() < 0.5}
            closed = set(slice_down(ctx, slice_up(ctx, locs)))
            if not locs <= closed:  # extensivity
                violations += 1
            if set(slice_up(ctx, bigger)) - set(slice_up(ctx, locs)):  # antitone
                violations += 1
            if set(slice_down(ctx, slice_up(ctx, closed))) != closed:  # idempotence
                violations += 1
            galois_fwd = dims <= set(slice_up(ctx, locs))
            galois_bwd = locs <= set(slice_down(ctx, dims))
            if galois_fwd != galois_bwd:  # Galois condition on the slice
                violations += 1
            pairs = {
                (d, tt)
                for d in range(cube.n_dimensions)
                for tt in range(cube.n_timestamps)
                if rng.random() < 0.3
            }
            flat_fwd = pairs <= set(loc_friendly(cube, locs))
            flat_bwd = locs <= set(locs_with_pairs(cube, pairs))
            if flat_fwd != flat_bwd:  # Galois condition on the flattened context
                violations += 1
    ok = subsets >= 1000 and len(cubes) >= 50 and violations == 0
    _report(
        4,
        ok,
        f"closure laws on {subsets} random subsets from {len(cubes)} cubes "
        f"(axes <= 8): {violations} violations",
    )


def test_criterion_5_orientation_statements(toy_cube):
    rng = random.Random(55)
    cubes = [toy_cube] + [make_random_cube(rng, max_axis=6) for _ in range(100)]
    failures = 0
    for cube in cubes:
        first = enumerate_agro_triples(cube)
        second = enumerate_agro_triples(reorient(cube, "by_dimension"))
        if first != second:
            failures += 1
            continue
        if not check_isomorphic(build_lattice(first), build_lattice(second)):
            failures += 1
    ok = failures == 0
    _report(
        5,
        ok,
        f"identical triple sets and isomorphic lattices for both orientations "
        f"on toy + 100 random cubes: {failures} failures",
    )


def _check_lattice_soundness(lat) -> list[str]:
    problems = []
    n = lat.node_count
    above = lat._above
    for i in range(n):
        if not above[i] >> i & 1:
            problems.append("not reflexive")
        m = above[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if i != j and above[j] >> i & 1:
                problems.append("not antisymmetric")
            if above[j] & ~above[i]:
                problems.append("not transitive")
    parents = [[] for _ in range(n)]
    for child, parent in lat.hasse_edges:
        parents[child].append(parent)
    for i in range(n):
        reach = set()
        stack = list(parents[i])
        while stack:
            j = stack.pop()
            if j not in reach:
                reach.add(j)
                stack.extend(parents[j])
        strict = {j for j in range(n) if above[i] >> j & 1 and j != i}
        if reach != strict:
            problems.append("hasse reachability differs from strict order")
    return problems


def test_criterion_6_lattice_soundness(toy_cube, toy_triples):
    rng = random.Random(66)
    triple_lattices = [build_lattice(toy_triples)]
    flat_lattices = [flatten_lattice(toy_cube)]
    for _ in range(12):
        cube = make_random_cube(rng, max_axis=5)
        triple_lattices.append(build_lattice(enumerate_agro_triples(cube)))
        flat_lattices.append(flatten_lattice(cube))

    problems = []
    for lat in triple_lattices + flat_lattices:
        problems.extend(_check_lattice_soundness(lat))

    unique_bound_failures = 0
    absorption_checked = 0
    for lat in flat_lattices:
        nodes = lat.nodes
        for a in nodes:
            for b in nodes:
                up = lat.join(a, b)
                dn = lat.meet(a, b)
                if up.exact is None or dn.exact is None:
                    unique_bound_failures += 1
        if lat.node_count <= 100:
            for a in nodes:
                for b in nodes:
                    absorption_checked += 1
                    if lat.join(a, lat.meet(a, b).exact).exact != a:
                        problems.append("absorption (join over meet) fails")
                    if lat.meet(a, lat.join(a, b).exact).exact != a:
                        problems.append("absorption (meet over join) fails")

    ok = not problems and unique_bound_failures == 0 and absorption_checked > 0
    _report(
        6,
        ok,
        f"partial-order laws and Hasse reachability on {len(triple_lattices)} triple + "
        f"{len(flat_lattices)} flattened lattices; unique join/meet on every flattened "
        f"pair ({unique_bound_failures} failures); absorption on {absorption_checked} pairs",
    )


def test_criterion_7_oracle_equivalence():
    rng = random.Random(777)
    mismatches = 0
    for _ in range(200):
        cube = make_random_cube(rng, max_axis=6, density=rng.uniform(0.15, 0.75))
        if enumerate_agro_triples(cube) != oracle_enumerate(cube):
            mismatches += 1
    ok = mismatches == 0
    _report(7, ok, f"enumeration equals exhaustive oracle on 200 random cubes: {mismatches} mismatches")


def test_criterion_8_scale_smoke():
    rng = random.Random(88)
    n_loc, n_dim, n_time = 50, 20, 10
    facts = {
        (g, d, t)
        for g in range(n_loc)
        for d in range(n_dim)
        for t in range(n_time)
        if rng.random() < 0.3
    }
    from conftest import make_labels

    cube = DataCube(make_labels(n_loc, n_dim, n_time), facts)
    start = time.perf_counter()
    triples = enumerate_agro_triples(cube)
    lattice = build_lattice(triples)
    rules = filter_rules(generate_rules(triples), Fraction(7, 10), Fraction(4, 5))
    elapsed = time.perf_counter() - start
    ok = elapsed < 60.0 and len(triples) > 0 and lattice.node_count == len(triples)
    _report(
        8,
        ok,
        f"50x20x10 at 30% density: {len(triples)} triples, "
        f"{lattice.edge_count} Hasse edges, {len(rules)} rules kept in {elapsed:.1f}s (<60s)",
    )


def test_criterion_9_determinism(tmp_path):
    jobs = {
        "triples": ["mine-triples", "--input", TOY, "--format", "wide-csv"],
        "rules": [
            "mine-rules", "--input", TOY, "--format", "wide-csv",
            "--min-support", "0.7", "--min-confidence", "0.8",
        ],
        "conformance": ["conformance"],
    }
    stable = True
    for name, argv in jobs.items():
        first, second = tmp_path / f"{name}.1", tmp_path / f"{name}.2"
        _run_cli(argv, first)
        _run_cli(argv, second)
        stable = stable and first.read_bytes() == second.read_bytes()
    lat = ["build-lattice", "--input", TOY, "--format", "wide-csv"]
    _run_cli(lat, tmp_path / "lat1")
    _run_cli(lat, tmp_path / "lat2")
    for suffix in (".dot", ".json"):
        stable = stable and (
            (tmp_path / f"lat1{suffix}").read_bytes() == (tmp_path / f"lat2{suffix}").read_bytes()
        )
    _report(9, stable, "triples, DOT, JSON, rules and conformance outputs byte-identical across runs")
