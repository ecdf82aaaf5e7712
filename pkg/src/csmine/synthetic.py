"""Synthetic two-group benchmark data with known contrast structure.

The default dataset has two numeric attributes and one nominal attribute
arranged so the best contrast sets are known in advance: one red cluster
is picked out exactly by a nominal value, another by a numeric interval,
a few stray reds are reachable only by a broad covering set, and a small
blue contamination cluster sits inside the main red region. Every
attribute value is drawn from a quantized grid with exact per-value
counts, so single-condition statistics do not depend on the seed; the
seed only shuffles value pairings within clusters and the row order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Attribute, DataSet, NOMINAL, NUMERIC

__all__ = ["ClusterSpec", "SyntheticSpec", "default_spec", "generate_synthetic"]


@dataclass(frozen=True)
class ClusterSpec:
    """One cluster: a group name, a size, and exact value counts per attribute.

    ``values[attr]`` maps attribute values (floats for numeric attributes,
    domain strings for nominal ones) to the exact number of cluster members
    holding that value. Counts must sum to the cluster size for every
    attribute.
    """

    name: str
    group: str
    size: int
    values: dict[str, dict]

    def __post_init__(self) -> None:
        if self.size <= 0:
            raise ValueError(f"cluster {self.name!r} must have positive size")
        for attr, counts in self.values.items():
            total = sum(counts.values())
            if total != self.size:
                raise ValueError(
                    f"cluster {self.name!r}: counts for {attr!r} sum to {total}, "
                    f"expected {self.size}"
                )
            if any(c < 0 for c in counts.values()):
                raise ValueError(f"cluster {self.name!r}: negative count for {attr!r}")


@dataclass(frozen=True)
class SyntheticSpec:
    """Attribute declarations plus the cluster list."""

    attributes: tuple[Attribute, ...]
    groups: tuple[str, ...]
    clusters: tuple[ClusterSpec, ...]
    relation: str = "synthetic"

    def __post_init__(self) -> None:
        names = {a.name for a in self.attributes}
        for cluster in self.clusters:
            if cluster.group not in self.groups:
                raise ValueError(
                    f"cluster {cluster.name!r} uses undeclared group {cluster.group!r}"
                )
            missing = names - set(cluster.values)
            if missing:
                raise ValueError(
                    f"cluster {cluster.name!r} lacks values for {sorted(missing)}"
                )
        for attr in self.attributes:
            if attr.is_numeric:
                continue
            for cluster in self.clusters:
                bad = set(cluster.values[attr.name]) - set(attr.domain)
                if bad:
                    raise ValueError(
                        f"cluster {cluster.name!r}: values {sorted(bad)} outside "
                        f"the domain of {attr.name!r}"
                    )


def default_spec() -> SyntheticSpec:
    """Two groups, 170 red and 250 blue examples, 420 total.

    Red splits into a core block (a3 = 1, high a2), a right block (a3 = 2,
    the only examples with that value), a thin scatter below the core, and
    8 strays sharing a3 = 3 with part of the blue cloud. Six blue examples
    sit inside the core region with identical attribute values.
    """
    attributes = (
        Attribute("a1", NUMERIC),
        Attribute("a2", NUMERIC),
        Attribute("a3", NOMINAL, ("1", "2", "3", "4")),
    )
    clusters = (
        ClusterSpec(
            "red_core", "red", 73,
            {
                "a1": {1.0: 18, 1.2: 19, 1.4: 18, 1.6: 18},
                "a2": {3.8: 24, 4.4: 25, 5.0: 24},
                "a3": {"1": 73},
            },
        ),
        ClusterSpec(
            "blue_inbox", "blue", 6,
            {
                "a1": {1.2: 3, 1.4: 3},
                "a2": {4.4: 6},
                "a3": {"1": 6},
            },
        ),
        ClusterSpec(
            "red_scatter", "red", 12,
            {
                "a1": {0.8: 2, 1.0: 2, 1.2: 2, 1.4: 2, 1.6: 2, 1.8: 2},
                "a2": {2.6: 6, 3.0: 6},
                "a3": {"1": 12},
            },
        ),
        ClusterSpec(
            "red_right", "red", 77,
            {
                "a1": {2.6: 26, 3.0: 26, 3.4: 25},
                "a2": {1.0: 26, 1.4: 26, 1.8: 25},
                "a3": {"2": 77},
            },
        ),
        ClusterSpec(
            "red_stray", "red", 8,
            {
                "a1": {2.2: 4, 2.6: 4},
                "a2": {2.6: 4, 3.0: 4},
                "a3": {"3": 8},
            },
        ),
        ClusterSpec(
            "blue_cloud", "blue", 244,
            {
                "a1": {1.8: 41, 2.2: 41, 2.6: 41, 3.0: 41, 3.4: 40, 3.8: 40},
                "a2": {1.0: 35, 1.4: 35, 1.8: 35, 2.2: 35, 2.6: 35, 3.0: 35, 3.4: 34},
                "a3": {"3": 112, "4": 132},
            },
        ),
    )
    return SyntheticSpec(attributes, ("red", "blue"), clusters, relation="synthetic")


def generate_synthetic(spec: SyntheticSpec | None = None, seed: int = 0) -> DataSet:
    """Materialize a spec into a DataSet, deterministically for a given seed."""
    if spec is None:
        spec = default_spec()
    rng = np.random.default_rng(seed)
    n = sum(c.size for c in spec.clusters)
    columns = []
    for attr in spec.attributes:
        if attr.is_numeric:
            columns.append(np.empty(n, dtype=np.float64))
        else:
            columns.append(np.empty(n, dtype=np.int32))
    group_codes = np.empty(n, dtype=np.int32)
    offset = 0
    for cluster in spec.clusters:
        end = offset + cluster.size
        group_codes[offset:end] = spec.groups.index(cluster.group)
        for ai, attr in enumerate(spec.attributes):
            counts = cluster.values[attr.name]
            if attr.is_numeric:
                vals = np.repeat(
                    np.asarray(list(counts.keys()), dtype=np.float64),
                    np.asarray(list(counts.values()), dtype=np.int64),
                )
            else:
                codes = [attr.domain.index(v) for v in counts.keys()]
                vals = np.repeat(
                    np.asarray(codes, dtype=np.int32),
                    np.asarray(list(counts.values()), dtype=np.int64),
                )
            rng.shuffle(vals)
            columns[ai][offset:end] = vals
        offset = end
    perm = rng.permutation(n)
    return DataSet(
        spec.attributes,
        [col[perm] for col in columns],
        relation=spec.relation,
        task="classification",
        group_names=spec.groups,
        group_codes=group_codes[perm],
        group_attr="group",
    )
