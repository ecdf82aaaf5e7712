"""Result summaries and report serialization.

A mining run produces per-group lists of annotated contrast sets. This
module turns them into summary metrics (mean support and precision over
all sets, plus a histogram of how many own-group sets cover each example),
filters redundant sets, and reads and writes the CSV and JSON report
formats used by the command line tools.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .contrast import cover, parse_conditions, render_conditions
from .data import DataSet
from .induction import AnnotatedContrastSet, MiningParams

__all__ = [
    "ReportMetrics",
    "summarize",
    "filter_redundancy",
    "write_csv_report",
    "read_csv_report",
    "write_json_report",
    "read_json_report",
]

CSV_COLUMNS = (
    "group",
    "conditions",
    "pass",
    "minsupp_all",
    "p",
    "n",
    "p_new",
    "quality",
    "redundancy",
)


@dataclass(frozen=True)
class ReportMetrics:
    """Pooled metrics over every emitted set of a run.

    ``coverage_counts[k]`` is the number of examples covered by exactly k
    of the sets mined for the example's own group.
    """

    n_sets: int
    mean_support: float
    mean_precision: float
    coverage_counts: dict[int, int]

    def covered_by(self, k: int) -> int:
        return self.coverage_counts.get(k, 0)

    def to_dict(self) -> dict:
        return {
            "sets": self.n_sets,
            "mean_support": self.mean_support,
            "mean_precision": self.mean_precision,
            "coverage_counts": {str(k): v for k, v in sorted(self.coverage_counts.items())},
        }


def summarize(results: dict[str, list[AnnotatedContrastSet]], ds: DataSet) -> ReportMetrics:
    """Support and precision means plus the own-group coverage histogram.

    Supports and precisions come from the statistics recorded at acceptance
    (so one-vs-one sets keep their mining-universe precision); the coverage
    histogram is recomputed against ``ds``.
    """
    all_sets = [a for sets in results.values() for a in sets]
    if all_sets:
        mean_support = sum(a.support for a in all_sets) / len(all_sets)
        mean_precision = sum(a.precision for a in all_sets) / len(all_sets)
    else:
        mean_support = 0.0
        mean_precision = 0.0
    per_example = np.zeros(ds.n_examples, dtype=np.int64)
    for g, sets in results.items():
        if not sets:
            continue
        gmask = ds.group_mask(g).mask
        depth = np.zeros(ds.n_examples, dtype=np.int64)
        for a in sets:
            depth += cover(a.contrast_set, None, ds).mask
        per_example[gmask] = depth[gmask]
    counts: dict[int, int] = {}
    in_scope = np.zeros(ds.n_examples, dtype=bool)
    for g in results:
        in_scope |= ds.group_mask(g).mask
    values, freq = np.unique(per_example[in_scope], return_counts=True)
    for v, f in zip(values, freq):
        counts[int(v)] = int(f)
    return ReportMetrics(
        n_sets=len(all_sets),
        mean_support=mean_support,
        mean_precision=mean_precision,
        coverage_counts=counts,
    )


def filter_redundancy(
    results: dict[str, list[AnnotatedContrastSet]] | list[AnnotatedContrastSet],
    threshold: float,
) -> dict[str, list[AnnotatedContrastSet]] | list[AnnotatedContrastSet]:
    """Keep sets whose recorded redundancy stays below the threshold."""
    if isinstance(results, dict):
        return {g: [a for a in sets if a.redundancy < threshold] for g, sets in results.items()}
    return [a for a in results if a.redundancy < threshold]


def write_csv_report(results: dict[str, list[AnnotatedContrastSet]], ds: DataSet, out=None) -> str:
    """One row per contrast set, groups in mining order."""
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for g, sets in results.items():
        for a in sets:
            writer.writerow(
                [
                    g,
                    render_conditions(a.contrast_set, ds),
                    a.pass_index,
                    a.minsupp_all,
                    a.p,
                    a.n,
                    a.p_new,
                    a.quality,
                    a.redundancy,
                ]
            )
    text = buf.getvalue()
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_text(text, encoding="utf-8")
    return text


def read_csv_report(source, ds: DataSet) -> dict[str, list[AnnotatedContrastSet]]:
    """Rebuild annotated sets from a CSV report; needs the dataset for the
    attribute bindings and group sizes."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    reader = csv.reader(io.StringIO(text), quoting=csv.QUOTE_NONNUMERIC)
    header = next(reader, None)
    if header is None or tuple(header) != CSV_COLUMNS:
        raise ValueError("unrecognized report header")
    results: dict[str, list[AnnotatedContrastSet]] = {}
    for row in reader:
        if not row:
            continue
        g = row[0]
        cs = parse_conditions(row[1], g, ds)
        P = ds.group_mask(g).count
        N = ds.n_examples - P
        results.setdefault(g, []).append(
            AnnotatedContrastSet(
                contrast_set=cs,
                group=g,
                pass_index=int(row[2]),
                minsupp_all=float(row[3]),
                p=int(row[4]),
                n=int(row[5]),
                p_new=int(row[6]),
                P=P,
                N=N,
                quality=float(row[7]),
                redundancy=float(row[8]),
                redundancy_with=None,
            )
        )
    return results


def _params_dict(params: MiningParams) -> dict:
    return {
        "minsupps": list(params.minsupps),
        "minsupp_new": params.minsupp_new,
        "max_neg2pos": params.max_neg2pos,
        "max_passes": params.max_passes,
        "penalty_strength": params.penalty_strength,
        "reward_saturation": params.reward_saturation,
        "mode": params.mode,
        "negative_group": params.negative_group,
        "measure": params.measure,
    }


def _set_dict(a: AnnotatedContrastSet, ds: DataSet) -> dict:
    return {
        "conditions": render_conditions(a.contrast_set, ds),
        "pass": a.pass_index,
        "minsupp_all": a.minsupp_all,
        "p": a.p,
        "n": a.n,
        "p_new": a.p_new,
        "P": a.P,
        "N": a.N,
        "support": a.support,
        "precision": a.precision,
        "quality": a.quality,
        "redundancy": a.redundancy,
    }


def write_json_report(
    results: dict[str, list[AnnotatedContrastSet]],
    ds: DataSet,
    params: MiningParams,
    out=None,
    redundancy_threshold: float | None = None,
) -> str:
    """Full run report. With a redundancy threshold the listed sets are the
    filtered ones and the unfiltered metrics ride along for comparison."""
    if redundancy_threshold is not None:
        kept = filter_redundancy(results, redundancy_threshold)
        metrics = summarize(kept, ds)
        before = summarize(results, ds)
    else:
        kept = results
        metrics = summarize(results, ds)
        before = None
    doc = {
        "dataset": {
            "relation": ds.relation,
            "examples": ds.n_examples,
            "attributes": [a.name for a in ds.attributes],
            "task": ds.task,
            "groups": {g: ds.group_mask(g).count for g in results},
        },
        "params": _params_dict(params),
        "groups": {g: [_set_dict(a, ds) for a in sets] for g, sets in kept.items()},
        "metrics": metrics.to_dict(),
    }
    if redundancy_threshold is not None:
        doc["redundancy_threshold"] = redundancy_threshold
        doc["metrics_before_filter"] = before.to_dict()
    text = json.dumps(doc, indent=2) + "\n"
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_text(text, encoding="utf-8")
    return text


def read_json_report(source, ds: DataSet) -> dict[str, list[AnnotatedContrastSet]]:
    """Annotated sets from a JSON report, statistics taken at face value."""
    if hasattr(source, "read"):
        doc = json.load(source)
    elif isinstance(source, (str, Path)) and (isinstance(source, Path) or "\n" not in source):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.loads(source)
    results: dict[str, list[AnnotatedContrastSet]] = {}
    for g, sets in doc["groups"].items():
        out = []
        for s in sets:
            out.append(
                AnnotatedContrastSet(
                    contrast_set=parse_conditions(s["conditions"], g, ds),
                    group=g,
                    pass_index=int(s["pass"]),
                    minsupp_all=float(s["minsupp_all"]),
                    p=int(s["p"]),
                    n=int(s["n"]),
                    p_new=int(s["p_new"]),
                    P=int(s["P"]),
                    N=int(s["N"]),
                    quality=float(s["quality"]),
                    redundancy=float(s["redundancy"]),
                    redundancy_with=None,
                )
            )
        results[g] = out
    return results
