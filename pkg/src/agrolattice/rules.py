"""Temporal association rules mined from closed triples.

Every rule splits a source triple's dimension set into a non-empty
antecedent and a singleton consequent, carries the triple's full timestamp
set, and is scored with exact rational support and confidence.  Support
counts the locations holding the whole itemset at every rule timestamp; the
denominator is the location count by default, with the dimension count
available behind a flag.  Thresholds are compared as exact rationals, never
as floats.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .concepts import TripleSet
from .cube import DataCube
from .errors import IndexOutOfBounds, UndefinedConfidence

__all__ = [
    "SUPPORT_DENOMINATORS",
    "AssociationRule",
    "RuleSet",
    "confidence",
    "filter_rules",
    "generate_rules",
    "support",
]

SUPPORT_DENOMINATORS = ("locations", "dimensions")


@dataclass(frozen=True)
class AssociationRule:
    """antecedent -> consequent over a timestamp set, with exact scores.

    The antecedent and consequent are disjoint and together equal the source
    triple's dimension set; ``source_triple`` is the index of that triple in
    the rule set's originating TripleSet.
    """

    antecedent: tuple[int, ...]
    consequent: tuple[int, ...]
    times: tuple[int, ...]
    support: Fraction
    confidence: Fraction
    source_triple: int

    @property
    def key(self) -> tuple:
        return (self.antecedent, self.consequent, self.times)

    def component_names(self, labels):
        return (
            tuple(labels.dimensions[d] for d in self.antecedent),
            tuple(labels.dimensions[d] for d in self.consequent),
            tuple(labels.timestamps[t] for t in self.times),
        )


class RuleSet:
    """Canonically ordered rules, duplicate-free on (antecedent, consequent,
    times)."""

    __slots__ = ("rules", "cube")

    def __init__(self, rules: Iterable[AssociationRule], cube: DataCube):
        by_key: dict[tuple, AssociationRule] = {}
        for r in rules:
            by_key.setdefault(r.key, r)
        self.rules: tuple[AssociationRule, ...] = tuple(
            sorted(by_key.values(), key=lambda r: r.key)
        )
        self.cube = cube

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __getitem__(self, i: int) -> AssociationRule:
        return self.rules[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RuleSet):
            return NotImplemented
        return self.rules == other.rules

    def __repr__(self) -> str:
        return f"RuleSet({len(self.rules)} rules)"


def _holder_count(cube: DataCube, dims: Iterable[int], times: Iterable[int]) -> int:
    """Number of locations incident to every dimension at every timestamp."""
    mask = (1 << cube.n_locations) - 1
    for d in dims:
        if not 0 <= d < cube.n_dimensions:
            raise IndexOutOfBounds(d, "dimension", cube.n_dimensions)
        for t in times:
            if not 0 <= t < cube.n_timestamps:
                raise IndexOutOfBounds(t, "timestamp", cube.n_timestamps)
            mask &= cube.loc_mask_at(d, t)
    return mask.bit_count()


def support(cube: DataCube, rule: AssociationRule, denominator: str = "locations") -> Fraction:
    """Exact support ratio of a rule against a cube.

    The numerator counts locations holding antecedent plus consequent at
    every rule timestamp.  ``denominator`` selects the location count
    (itemset-mining convention, default) or the dimension count.
    """
    if denominator not in SUPPORT_DENOMINATORS:
        raise ValueError(f"denominator must be one of {SUPPORT_DENOMINATORS}, got {denominator!r}")
    num = _holder_count(cube, rule.antecedent + rule.consequent, rule.times)
    den = cube.n_locations if denominator == "locations" else cube.n_dimensions
    return Fraction(num, den)


def confidence(cube: DataCube, rule: AssociationRule) -> Fraction:
    """Exact confidence: itemset holders over antecedent holders at the rule
    timestamps.  Raises UndefinedConfidence when no location satisfies the
    antecedent there."""
    ante = _holder_count(cube, rule.antecedent, rule.times)
    if ante == 0:
        raise UndefinedConfidence(
            "no location satisfies the antecedent at the rule's timestamps"
        )
    num = _holder_count(cube, rule.antecedent + rule.consequent, rule.times)
    return Fraction(num, ante)


def generate_rules(
    triples: TripleSet,
    target_dims: Iterable[int] | None = None,
    target_times: Iterable[int] | None = None,
    support_denominator: str = "locations",
) -> RuleSet:
    """Emit one rule per (triple, consequent dimension) combination.

    For each triple whose dimension set has at least two members, every
    dimension serves as the singleton consequent in turn, the remaining
    dimensions form the antecedent, and the rule carries the triple's full
    timestamp set.  ``target_dims`` restricts which dimensions may act as
    consequent; ``target_times`` keeps only triples whose timestamp set
    contains all the given timestamps.
    """
    if support_denominator not in SUPPORT_DENOMINATORS:
        raise ValueError(
            f"support_denominator must be one of {SUPPORT_DENOMINATORS}, got {support_denominator!r}"
        )
    cube = triples.cube
    wanted_dims = None if target_dims is None else set(target_dims)
    wanted_times = None if target_times is None else set(target_times)
    if wanted_dims is not None:
        for d in wanted_dims:
            if not 0 <= d < cube.n_dimensions:
                raise IndexOutOfBounds(d, "dimension", cube.n_dimensions)
    if wanted_times is not None:
        for t in wanted_times:
            if not 0 <= t < cube.n_timestamps:
                raise IndexOutOfBounds(t, "timestamp", cube.n_timestamps)
    sup_den = cube.n_locations if support_denominator == "locations" else cube.n_dimensions

    rules = []
    for idx, triple in enumerate(triples):
        if len(triple.intent) < 2:
            continue
        if wanted_times is not None and not wanted_times <= set(triple.times):
            continue
        masks = [_dim_mask_over_times(cube, d, triple.times) for d in triple.intent]
        k = len(masks)
        prefix = [0] * (k + 1)
        suffix = [0] * (k + 1)
        full = (1 << cube.n_locations) - 1
        prefix[0] = full
        for i in range(k):
            prefix[i + 1] = prefix[i] & masks[i]
        suffix[k] = full
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] & masks[i]
        itemset_holders = prefix[k].bit_count()
        for i, target in enumerate(triple.intent):
            if wanted_dims is not None and target not in wanted_dims:
                continue
            ante_holders = (prefix[i] & suffix[i + 1]).bit_count()
            antecedent = triple.intent[:i] + triple.intent[i + 1 :]
            rules.append(
                AssociationRule(
                    antecedent,
                    (target,),
                    triple.times,
                    Fraction(itemset_holders, sup_den),
                    Fraction(itemset_holders, ante_holders),
                    idx,
                )
            )
    return RuleSet(rules, cube)


def _dim_mask_over_times(cube: DataCube, dim: int, times: tuple[int, ...]) -> int:
    mask = (1 << cube.n_locations) - 1
    for t in times:
        mask &= cube.loc_mask_at(dim, t)
    return mask


def filter_rules(rules: RuleSet, min_support: Fraction, min_confidence: Fraction) -> RuleSet:
    """Keep rules meeting both minimum thresholds; order is preserved.

    Thresholds are exact rationals in [0, 1] and the comparison is exact.
    """
    min_support = Fraction(min_support)
    min_confidence = Fraction(min_confidence)
    for name, value in (("min_support", min_support), ("min_confidence", min_confidence)):
        if not 0 <= value <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    kept = [r for r in rules if r.support >= min_support and r.confidence >= min_confidence]
    return RuleSet(kept, rules.cube)
