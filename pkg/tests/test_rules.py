import random
from fractions import Fraction

import pytest

from agrolattice.concepts import enumerate_agro_triples
from agrolattice.cube import DataCube, build_cube
from agrolattice.errors import UndefinedConfidence
from agrolattice.rules import AssociationRule, confidence, filter_rules, generate_rules, support

from conftest import make_random_cube


def make_rule(labels, ante, cons, times):
    return AssociationRule(
        tuple(labels.dimension_index(d) for d in ante),
        tuple(labels.dimension_index(d) for d in cons),
        tuple(labels.timestamp_index(t) for t in times),
        Fraction(0),
        Fraction(0),
        -1,
    )


@pytest.fixture(scope="module")
def toy_rules(toy_triples):
    return generate_rules(toy_triples)


class TestGenerateRules:
    def test_ts1_target_j5(self, toy_cube, toy_triples):
        labels = toy_cube.labels
        rules = generate_rules(toy_triples, target_dims=[labels.dimension_index("J_5")])
        keys = {(r.antecedent, r.consequent, r.times) for r in rules}
        expected = (
            tuple(labels.dimension_index(d) for d in ("J_2", "J_3", "J_4")),
            (labels.dimension_index("J_5"),),
            (labels.timestamp_index("T_2"), labels.timestamp_index("T_4")),
        )
        assert expected in keys
        assert all(r.consequent == (labels.dimension_index("J_5"),) for r in rules)

    def test_singleton_intent_yields_no_rules(self):
        cube = build_cube((("A", "B"), ("x",), ("t1",)), [("A", "x", "t1"), ("B", "x", "t1")])
        triples = enumerate_agro_triples(cube)
        assert len(triples) == 1
        assert len(generate_rules(triples)) == 0

    def test_j2_implies_j4_at_t3_appears(self, toy_cube, toy_rules):
        labels = toy_cube.labels
        key = (
            (labels.dimension_index("J_2"),),
            (labels.dimension_index("J_4"),),
            (labels.timestamp_index("T_3"),),
        )
        assert key in {(r.antecedent, r.consequent, r.times) for r in toy_rules}

    def test_antecedent_consequent_partition_source_intent(self, toy_triples, toy_rules):
        for rule in toy_rules:
            source = toy_triples[rule.source_triple]
            assert set(rule.antecedent) & set(rule.consequent) == set()
            assert tuple(sorted(rule.antecedent + rule.consequent)) == source.intent
            assert rule.times == source.times
            assert rule.antecedent and rule.consequent

    def test_target_times_subset_gate(self, toy_cube, toy_triples):
        labels = toy_cube.labels
        t3 = labels.timestamp_index("T_3")
        rules = generate_rules(toy_triples, target_times=[t3])
        assert rules
        for r in rules:
            assert t3 in r.times

    def test_toy_rule_count(self, toy_rules):
        assert len(toy_rules) == 378

    def test_regenerating_gives_identical_ruleset(self, toy_triples, toy_rules):
        assert generate_rules(toy_triples) == toy_rules


class TestSupport:
    def test_dimensions_denominator(self, toy_cube):
        rule = make_rule(toy_cube.labels, ["J_2"], ["J_4"], ["T_3"])
        assert support(toy_cube, rule, denominator="dimensions") == Fraction(6, 6)

    def test_locations_denominator(self, toy_cube):
        rule = make_rule(toy_cube.labels, ["J_2"], ["J_4"], ["T_3"])
        assert support(toy_cube, rule, denominator="locations") == Fraction(6, 10)

    def test_unsatisfied_itemset_is_zero(self, toy_cube):
        # no location holds every dimension at T_1
        rule = make_rule(toy_cube.labels, ["J_1", "J_2", "J_3"], ["J_4", "J_5", "J_6"], ["T_1"])
        assert support(toy_cube, rule) == 0

    def test_bad_denominator(self, toy_cube):
        rule = make_rule(toy_cube.labels, ["J_2"], ["J_4"], ["T_3"])
        with pytest.raises(ValueError):
            support(toy_cube, rule, denominator="columns")


class TestConfidence:
    def test_toy_value(self, toy_cube):
        rule = make_rule(toy_cube.labels, ["J_2"], ["J_4"], ["T_3"])
        assert confidence(toy_cube, rule) == Fraction(6, 8)

    def test_implication_case_is_one(self):
        cube = build_cube(
            (("A", "B"), ("x", "y"), ("t1",)),
            [("A", "x", "t1"), ("A", "y", "t1"), ("B", "x", "t1"), ("B", "y", "t1")],
        )
        rule = make_rule(cube.labels, ["x"], ["y"], ["t1"])
        assert confidence(cube, rule) == 1

    def test_undefined_when_antecedent_unsatisfied(self):
        cube = build_cube((("A",), ("x", "y"), ("t1",)), [("A", "y", "t1")])
        rule = make_rule(cube.labels, ["x"], ["y"], ["t1"])
        with pytest.raises(UndefinedConfidence):
            confidence(cube, rule)


class TestFilterRules:
    def test_toy_counts_at_reference_thresholds(self, toy_triples):
        by_loc = filter_rules(generate_rules(toy_triples), Fraction(7, 10), Fraction(4, 5))
        assert len(by_loc) == 2
        by_dim = filter_rules(
            generate_rules(toy_triples, support_denominator="dimensions"),
            Fraction(7, 10),
            Fraction(4, 5),
        )
        assert len(by_dim) == 13

    def test_zero_thresholds_identity(self, toy_rules):
        assert filter_rules(toy_rules, Fraction(0), Fraction(0)) == toy_rules

    def test_full_support_keeps_only_universal_itemsets(self, toy_cube, toy_triples, toy_rules):
        kept = filter_rules(toy_rules, Fraction(1), Fraction(0))
        expected = [
            r
            for r in toy_rules
            if len(toy_triples[r.source_triple].extent) == toy_cube.n_locations
        ]
        assert list(kept) == expected

    def test_threshold_comparison_is_exact(self, toy_cube, toy_triples):
        # {J_2} -> {J_5} at T_1 holds for exactly 7 of 10 locations
        rules = generate_rules(toy_triples)
        at_boundary = [
            r
            for r in rules
            if r.support == Fraction(7, 10)
        ]
        assert at_boundary, "need a rule sitting exactly on the 0.7 boundary"
        kept = filter_rules(rules, Fraction(7, 10), Fraction(0))
        for r in at_boundary:
            assert r in list(kept)

    def test_threshold_range_validated(self, toy_rules):
        with pytest.raises(ValueError):
            filter_rules(toy_rules, Fraction(3, 2), Fraction(0))


class TestInvariants:
    def test_confidence_at_least_support_under_locations(self, toy_rules):
        for r in toy_rules:
            assert r.confidence >= r.support

    def test_scores_in_unit_interval(self, toy_rules):
        for r in toy_rules:
            assert 0 <= r.support <= 1
            assert 0 <= r.confidence <= 1

    def test_rule_soundness_numerator_covers_source_extent(self, toy_cube, toy_triples, toy_rules):
        for r in toy_rules:
            source = toy_triples[r.source_triple]
            holders = support(toy_cube, r, denominator="locations") * toy_cube.n_locations
            assert holders >= len(source.extent)

    def test_stored_scores_match_standalone_functions(self, toy_cube, toy_rules):
        rng = random.Random(1)
        for r in rng.sample(list(toy_rules), 40):
            assert support(toy_cube, r, denominator="locations") == r.support
            assert confidence(toy_cube, r) == r.confidence

    def test_adding_incidence_never_decreases_support_numerator(self):
        rng = random.Random(23)
        exercised = 0
        while exercised < 5:
            cube = make_random_cube(rng, max_axis=5, min_axis=2, density=0.5)
            rules = generate_rules(enumerate_agro_triples(cube))
            missing = [
                f
                for f in (
                    (g, d, t)
                    for g in range(cube.n_locations)
                    for d in range(cube.n_dimensions)
                    for t in range(cube.n_timestamps)
                )
                if f not in cube.incidence
            ]
            if not missing or not len(rules):
                continue
            exercised += 1
            grown = DataCube(cube.labels, set(cube.incidence) | {missing[0]})
            for r in rules:
                assert support(grown, r, "locations") >= support(cube, r, "locations")

    def test_canonical_order_and_dedup(self, toy_rules):
        keys = [r.key for r in toy_rules]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)
