"""Attribute-usage penalties, coverage rewards, and redundancy scoring.

Sequential covering alone tends to re-derive the same strong premise over
and over. Two counterweights steer later inductions elsewhere: a penalty
that grows with how often an attribute already appears in accepted sets,
and a reward that cancels the penalty in proportion to how much genuinely
new territory a candidate covers. Redundancy measures after the fact how
much an emitted set repeats its predecessors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .contrast import ContrastSet, cover
from .data import CoverageSet, DataSet

__all__ = [
    "PenaltyState",
    "attribute_penalty",
    "premise_penalty",
    "reward",
    "modified_quality",
    "similarity",
    "redundancy",
    "RedundancyRecord",
    "MULTIPLIER_FLOOR",
]

# Multiplier floor applied when s * pi reaches 1 and the modifier would
# otherwise vanish or flip sign.
MULTIPLIER_FLOOR = 1e-6


@dataclass
class PenaltyState:
    """Attribute usage history for one group and one minsupp level.

    ``counts[a]`` is the number of previously accepted contrast sets whose
    premise used attribute ``a`` (each set counts once per attribute;
    duplicates of earlier sets still count). ``total`` is the sum of all
    counts.
    """

    n_attributes: int
    counts: list[int] = field(default_factory=list)
    total: int = 0

    def __post_init__(self) -> None:
        if not self.counts:
            self.counts = [0] * self.n_attributes
        if len(self.counts) != self.n_attributes:
            raise ValueError("one usage count per attribute required")

    def reset(self) -> None:
        self.counts = [0] * self.n_attributes
        self.total = 0

    def update(self, attribute_indices: Iterable[int]) -> None:
        """Record one accepted contrast set by its distinct attributes."""
        for ai in set(attribute_indices):
            self.counts[ai] += 1
            self.total += 1

    def attribute_penalty(self, attr_index: int) -> float:
        if self.total == 0:
            return 0.0
        return self.counts[attr_index] / self.total

    def premise_penalty(self, attribute_indices: Iterable[int]) -> float:
        return sum(self.attribute_penalty(ai) for ai in set(attribute_indices))


def attribute_penalty(state: PenaltyState, attr_index: int) -> float:
    """Usage share of one attribute: count / total, 0 before any usage."""
    return state.attribute_penalty(attr_index)


def premise_penalty(state: PenaltyState, cs: ContrastSet | Iterable[int]) -> float:
    """Sum of attribute penalties over the distinct attributes of a premise.

    Two bounds on the same attribute count its penalty once.
    """
    if isinstance(cs, ContrastSet):
        return state.premise_penalty(cs.attribute_indices)
    return state.premise_penalty(cs)


def reward(p_new: int, p: int, s: float, pi: float, b: float) -> float:
    """Reward factor phi >= 1 for covering new positives.

    x = p_new / p is the share of covered positives that were previously
    uncovered. Up to the saturation point b the reward stays 1; beyond it
    phi climbs linearly to 1 / (1 - s*pi) at x = 1, the value that exactly
    cancels the penalty. Requires s*pi < 1 and p > 0.
    """
    if p <= 0:
        raise ValueError("reward needs p > 0")
    if not 0 < b <= 1:
        raise ValueError("saturation b must be in (0, 1]")
    if s * pi >= 1:
        raise ValueError("reward undefined for s*pi >= 1")
    x = p_new / p
    if x <= b:
        return 1.0
    return 1.0 + ((x - b) / (1.0 - b)) * (1.0 / (1.0 - s * pi) - 1.0)


def modified_quality(q: float, s: float, pi: float, phi: float) -> float:
    """Apply the diversity multiplier m = (1 - s*pi) * phi to a quality.

    m never exceeds 1, so a modified quality never beats the raw one.
    Non-negative qualities are multiplied; negative ones are divided so the
    penalty still worsens them. When s*pi >= 1 the multiplier is floored at
    MULTIPLIER_FLOOR instead of vanishing.
    """
    m = (1.0 - s * pi) * phi
    if m < MULTIPLIER_FLOOR:
        m = MULTIPLIER_FLOOR
    if q >= 0:
        return q * m
    return q / m


def _jaccard(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


def similarity(
    cs_a: ContrastSet, cs_b: ContrastSet, positives: CoverageSet, ds: DataSet
) -> float:
    """Product of two Jaccard indices: attribute sets and positive coverages."""
    attr_j = _jaccard(cs_a.attribute_indices, cs_b.attribute_indices)
    if attr_j == 0.0:
        return 0.0
    cov_a = (cover(cs_a, None, ds) & positives).to_set()
    cov_b = (cover(cs_b, None, ds) & positives).to_set()
    return attr_j * _jaccard(frozenset(cov_a), frozenset(cov_b))


@dataclass(frozen=True)
class RedundancyRecord:
    """Highest similarity of a set to any predecessor, and which one."""

    value: float
    predecessor: int | None


def redundancy(
    cs: ContrastSet,
    predecessors: Sequence[ContrastSet],
    positives: CoverageSet,
    ds: DataSet,
) -> RedundancyRecord:
    """Maximum similarity of ``cs`` to the sets emitted before it.

    The first set of a group has redundancy 0 with no predecessor.
    """
    best = 0.0
    best_i: int | None = None
    for i, prev in enumerate(predecessors):
        sim = similarity(cs, prev, positives, ds)
        if best_i is None or sim > best:
            best = sim
            best_i = i
    if best_i is None:
        return RedundancyRecord(0.0, None)
    return RedundancyRecord(best, best_i)
