"""Tabular datasets with group membership, ARFF input and output.

A dataset holds the conditional attributes (the ones rules may test),
column-major, plus the bound special columns: the group identifier and,
depending on the task, a regression label or a survival time/status pair.
Group membership can come straight from a nominal column or be derived
from the label or survival time median.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "MISSING",
    "Attribute",
    "Example",
    "DataSet",
    "CoverageSet",
    "ArffError",
    "parse_arff",
    "load_arff",
    "write_arff",
    "derive_groups_regression",
    "derive_groups_survival",
]

NUMERIC = "numeric"
NOMINAL = "nominal"

TASKS = ("classification", "regression", "survival")


class _Missing:
    """Singleton marker for an absent cell value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MISSING"

    def __bool__(self) -> bool:
        return False


MISSING = _Missing()


@dataclass(frozen=True)
class Attribute:
    """A conditional attribute: a name plus either a numeric kind or a
    nominal kind with an ordered value domain."""

    name: str
    kind: str
    domain: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (NUMERIC, NOMINAL):
            raise ValueError(f"unknown attribute kind {self.kind!r}")
        if self.kind == NOMINAL:
            if not self.domain:
                raise ValueError(f"nominal attribute {self.name!r} needs a non-empty domain")
            if len(set(self.domain)) != len(self.domain):
                raise ValueError(f"nominal attribute {self.name!r} has duplicate domain values")
        elif self.domain:
            raise ValueError(f"numeric attribute {self.name!r} cannot declare a domain")

    @property
    def is_numeric(self) -> bool:
        return self.kind == NUMERIC


@dataclass(frozen=True)
class Example:
    """Row view: conditional values (float, category index, or MISSING)
    plus the bound special values."""

    values: tuple
    group: str | None = None
    label: float | None = None
    survival_time: float | None = None
    survival_status: int | None = None


class CoverageSet:
    """Immutable fixed-length bit vector over the examples of one dataset.

    Supports the set algebra the induction loop needs: intersection,
    union, difference, and popcount. Wraps a read-only numpy bool array so
    the operations stay word-parallel.
    """

    __slots__ = ("_mask", "_count")

    def __init__(self, mask: np.ndarray):
        arr = np.asarray(mask, dtype=bool)
        if arr.ndim != 1:
            raise ValueError("coverage mask must be one-dimensional")
        arr = arr.copy()
        arr.setflags(write=False)
        self._mask = arr
        self._count: int | None = None

    @classmethod
    def empty(cls, size: int) -> "CoverageSet":
        return cls(np.zeros(size, dtype=bool))

    @classmethod
    def full(cls, size: int) -> "CoverageSet":
        return cls(np.ones(size, dtype=bool))

    @classmethod
    def from_indices(cls, size: int, indices: Iterable[int]) -> "CoverageSet":
        mask = np.zeros(size, dtype=bool)
        idx = np.asarray(list(indices), dtype=np.intp)
        if idx.size:
            if idx.min() < 0 or idx.max() >= size:
                raise ValueError("coverage index out of range")
            mask[idx] = True
        return cls(mask)

    @property
    def size(self) -> int:
        return int(self._mask.size)

    @property
    def count(self) -> int:
        if self._count is None:
            self._count = int(np.count_nonzero(self._mask))
        return self._count

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def _check(self, other: "CoverageSet") -> None:
        if not isinstance(other, CoverageSet):
            raise TypeError("expected a CoverageSet")
        if other.size != self.size:
            raise ValueError(f"coverage length mismatch: {self.size} vs {other.size}")

    def __and__(self, other: "CoverageSet") -> "CoverageSet":
        self._check(other)
        return CoverageSet(self._mask & other._mask)

    def __or__(self, other: "CoverageSet") -> "CoverageSet":
        self._check(other)
        return CoverageSet(self._mask | other._mask)

    def difference(self, other: "CoverageSet") -> "CoverageSet":
        self._check(other)
        return CoverageSet(self._mask & ~other._mask)

    def __sub__(self, other: "CoverageSet") -> "CoverageSet":
        return self.difference(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoverageSet):
            return NotImplemented
        return self.size == other.size and bool(np.array_equal(self._mask, other._mask))

    __hash__ = None  # mutable-free but identity hashing would mislead

    def issubset(self, other: "CoverageSet") -> bool:
        self._check(other)
        return not bool(np.any(self._mask & ~other._mask))

    def __contains__(self, index: int) -> bool:
        return bool(self._mask[index])

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self._mask)

    def to_set(self) -> set[int]:
        return set(int(i) for i in self.indices())

    def __len__(self) -> int:
        return self.count

    def __repr__(self) -> str:
        return f"CoverageSet({self.count}/{self.size})"


class DataSet:
    """Column-major dataset: conditional attributes plus bound specials.

    Numeric columns are float64 with NaN for missing cells; nominal columns
    are int32 category indices with -1 for missing. Group membership, when
    present, is an index into ``group_names``.
    """

    def __init__(
        self,
        attributes: Sequence[Attribute],
        columns: Sequence[np.ndarray],
        *,
        relation: str = "data",
        task: str = "classification",
        group_names: Sequence[str] = (),
        group_codes: np.ndarray | None = None,
        labels: np.ndarray | None = None,
        times: np.ndarray | None = None,
        status: np.ndarray | None = None,
        group_attr: str | None = None,
        label_attr: str | None = None,
        time_attr: str | None = None,
        status_attr: str | None = None,
    ):
        if task not in TASKS:
            raise ValueError(f"unknown task {task!r}")
        names = [a.name for a in attributes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate attribute names")
        if len(columns) != len(attributes):
            raise ValueError("one column per attribute required")
        sizes = {len(c) for c in columns}
        if group_codes is not None:
            sizes.add(len(group_codes))
        if labels is not None:
            sizes.add(len(labels))
        if times is not None:
            sizes.add(len(times))
        if status is not None:
            sizes.add(len(status))
        if len(sizes) > 1:
            raise ValueError("column lengths disagree")
        self.attributes = tuple(attributes)
        self.relation = relation
        self.task = task
        self._columns = []
        for attr, col in zip(self.attributes, columns):
            if attr.is_numeric:
                arr = np.asarray(col, dtype=np.float64)
            else:
                arr = np.asarray(col, dtype=np.int32)
                if arr.size and (arr.max() >= len(attr.domain) or arr.min() < -1):
                    raise ValueError(f"category index out of range for {attr.name!r}")
            arr = arr.copy()
            arr.setflags(write=False)
            self._columns.append(arr)
        self.group_names = tuple(group_names)
        if group_codes is not None:
            gc = np.asarray(group_codes, dtype=np.int32).copy()
            if gc.size and (gc.min() < 0 or gc.max() >= max(len(self.group_names), 1)):
                raise ValueError("group code out of range")
            gc.setflags(write=False)
            self.group_codes: np.ndarray | None = gc
        else:
            self.group_codes = None
        self.labels = None if labels is None else np.asarray(labels, dtype=np.float64).copy()
        self.times = None if times is None else np.asarray(times, dtype=np.float64).copy()
        self.status = None if status is None else np.asarray(status, dtype=np.int8).copy()
        for arr in (self.labels, self.times, self.status):
            if arr is not None:
                arr.setflags(write=False)
        self.group_attr = group_attr
        self.label_attr = label_attr
        self.time_attr = time_attr
        self.status_attr = status_attr
        if self.task == "regression" and self.labels is None:
            raise ValueError("regression task requires a bound label column")
        if self.task == "survival":
            if self.times is None or self.status is None:
                raise ValueError("survival task requires bound time and status columns")
            if np.isnan(self.times).any():
                raise ValueError("survival times contain missing values")
            if (self.times < 0).any():
                raise ValueError("survival times must be non-negative")
            bad = ~np.isin(self.status, (0, 1))
            if bad.any():
                raise ValueError("survival status values must be 0 or 1")

    @property
    def n_examples(self) -> int:
        if self._columns:
            return int(len(self._columns[0]))
        if self.group_codes is not None:
            return int(len(self.group_codes))
        return 0

    @property
    def groups(self) -> tuple[str, ...]:
        return self.group_names

    def column(self, key: int | str) -> np.ndarray:
        return self._columns[self.attr_index(key)]

    def attr_index(self, key: int | str) -> int:
        if isinstance(key, int):
            return key
        for i, a in enumerate(self.attributes):
            if a.name == key:
                return i
        raise KeyError(f"no attribute named {key!r}")

    def group_of(self, i: int) -> str | None:
        if self.group_codes is None:
            return None
        return self.group_names[int(self.group_codes[i])]

    def group_mask(self, group: str) -> CoverageSet:
        if self.group_codes is None:
            raise ValueError("dataset has no group assignment")
        try:
            gi = self.group_names.index(group)
        except ValueError:
            raise KeyError(f"no group named {group!r}") from None
        return CoverageSet(self.group_codes == gi)

    def example(self, i: int) -> Example:
        values = []
        for attr, col in zip(self.attributes, self._columns):
            if attr.is_numeric:
                v = float(col[i])
                values.append(MISSING if np.isnan(v) else v)
            else:
                c = int(col[i])
                values.append(MISSING if c < 0 else c)
        return Example(
            values=tuple(values),
            group=self.group_of(i),
            label=None if self.labels is None else float(self.labels[i]),
            survival_time=None if self.times is None else float(self.times[i]),
            survival_status=None if self.status is None else int(self.status[i]),
        )

    def examples(self) -> Iterator[Example]:
        for i in range(self.n_examples):
            yield self.example(i)

    def subset(self, selector) -> "DataSet":
        """New dataset restricted to the selected rows (mask or indices).

        Observed groups are recomputed, preserving the parent order.
        """
        sel = np.asarray(selector)
        if sel.dtype == bool:
            idx = np.flatnonzero(sel)
        else:
            idx = sel.astype(np.intp)
        columns = [col[idx] for col in self._columns]
        group_names: tuple[str, ...] = ()
        group_codes = None
        if self.group_codes is not None:
            old = self.group_codes[idx]
            seen = np.unique(old)
            keep = [gi for gi in range(len(self.group_names)) if gi in seen]
            group_names = tuple(self.group_names[gi] for gi in keep)
            remap = {gi: k for k, gi in enumerate(keep)}
            group_codes = np.asarray([remap[int(g)] for g in old], dtype=np.int32)
        return DataSet(
            self.attributes,
            columns,
            relation=self.relation,
            task=self.task,
            group_names=group_names,
            group_codes=group_codes,
            labels=None if self.labels is None else self.labels[idx],
            times=None if self.times is None else self.times[idx],
            status=None if self.status is None else self.status[idx],
            group_attr=self.group_attr,
            label_attr=self.label_attr,
            time_attr=self.time_attr,
            status_attr=self.status_attr,
        )

    def with_groups(
        self, group_names: Sequence[str], group_codes: np.ndarray, group_attr: str | None = None
    ) -> "DataSet":
        return DataSet(
            self.attributes,
            self._columns,
            relation=self.relation,
            task=self.task,
            group_names=group_names,
            group_codes=group_codes,
            labels=self.labels,
            times=self.times,
            status=self.status,
            group_attr=group_attr if group_attr is not None else self.group_attr,
            label_attr=self.label_attr,
            time_attr=self.time_attr,
            status_attr=self.status_attr,
        )

    def __repr__(self) -> str:
        return (
            f"DataSet({self.relation!r}, n={self.n_examples}, "
            f"attrs={len(self.attributes)}, groups={list(self.group_names)}, task={self.task!r})"
        )


class ArffError(ValueError):
    """Malformed ARFF input; carries the 1-based source line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _split_csv(text: str, line_no: int) -> list[str]:
    """Split a comma-separated ARFF record honoring single or double quotes."""
    fields: list[str] = []
    buf: list[str] = []
    quote: str | None = None
    i = 0
    while i < len(text):
        ch = text[i]
        if quote is not None:
            if ch == quote:
                quote = None
            else:
                buf.append(ch)
        elif ch in "'\"":
            quote = ch
        elif ch == ",":
            fields.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
        i += 1
    if quote is not None:
        raise ArffError(line_no, "unterminated quote")
    fields.append("".join(buf).strip())
    return fields


def _parse_attribute_line(rest: str, line_no: int) -> Attribute:
    rest = rest.strip()
    if not rest:
        raise ArffError(line_no, "@attribute needs a name and a type")
    if rest[0] in "'\"":
        quote = rest[0]
        end = rest.find(quote, 1)
        if end < 0:
            raise ArffError(line_no, "unterminated attribute name quote")
        name = rest[1:end]
        type_part = rest[end + 1 :].strip()
    else:
        parts = rest.split(None, 1)
        if len(parts) < 2:
            raise ArffError(line_no, "@attribute needs a name and a type")
        name, type_part = parts[0], parts[1].strip()
    if not name:
        raise ArffError(line_no, "empty attribute name")
    if type_part.startswith("{"):
        if not type_part.endswith("}"):
            raise ArffError(line_no, "unterminated nominal domain")
        values = _split_csv(type_part[1:-1], line_no)
        if any(v == "" for v in values):
            raise ArffError(line_no, f"empty value in nominal domain of {name!r}")
        try:
            return Attribute(name, NOMINAL, tuple(values))
        except ValueError as exc:
            raise ArffError(line_no, str(exc)) from None
    kind = type_part.lower()
    if kind in ("numeric", "real", "integer"):
        return Attribute(name, NUMERIC)
    raise ArffError(line_no, f"unsupported attribute type {type_part!r} for {name!r}")


def parse_arff(
    source,
    *,
    group: str | None = None,
    label: str | None = None,
    time: str | None = None,
    status: str | None = None,
    task: str | None = None,
) -> DataSet:
    """Parse an ARFF character stream into a DataSet.

    Recognizes ``@relation``, ``@attribute name numeric|real|integer`` or an
    explicit nominal domain, and dense ``@data`` rows with ``?`` for missing
    cells. ``%`` lines are comments. The named columns are pulled out of the
    conditional attribute list and bound as group / label / time / status.
    Malformed input raises :class:`ArffError` with the offending line number.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    relation = "data"
    attributes: list[Attribute] = []
    rows: list[list[str]] = []
    in_data = False
    data_start_line = 0
    for line_no, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if not in_data:
            lower = line.lower()
            if lower.startswith("@relation"):
                rest = line[len("@relation") :].strip()
                if rest[:1] in "'\"" and rest[-1:] == rest[:1] and len(rest) >= 2:
                    rest = rest[1:-1]
                relation = rest or relation
            elif lower.startswith("@attribute"):
                attributes.append(_parse_attribute_line(line[len("@attribute") :], line_no))
            elif lower.startswith("@data"):
                if not attributes:
                    raise ArffError(line_no, "@data before any @attribute")
                in_data = True
                data_start_line = line_no
            else:
                raise ArffError(line_no, f"unrecognized header line {line.split()[0]!r}")
        else:
            if line.startswith("{"):
                raise ArffError(line_no, "sparse data rows are not supported")
            fields = _split_csv(line, line_no)
            if len(fields) != len(attributes):
                raise ArffError(
                    line_no,
                    f"expected {len(attributes)} values, found {len(fields)}",
                )
            rows.append(fields)
    if not in_data:
        raise ArffError(data_start_line or 1, "missing @data section")

    all_names = [a.name for a in attributes]
    if len(set(all_names)) != len(all_names):
        dupe = next(n for n in all_names if all_names.count(n) > 1)
        raise ArffError(1, f"duplicate attribute name {dupe!r}")

    special = {}
    for role, name in (("group", group), ("label", label), ("time", time), ("status", status)):
        if name is None:
            continue
        if name not in all_names:
            raise ArffError(1, f"{role} column {name!r} not declared")
        special[role] = all_names.index(name)
    if len(set(special.values())) != len(special):
        raise ArffError(1, "group/label/time/status columns must be distinct")

    if task is None:
        if time is not None or status is not None:
            task = "survival"
        elif label is not None:
            task = "regression"
        else:
            task = "classification"
    if task == "survival" and ("time" not in special or "status" not in special):
        raise ArffError(1, "survival task needs both time and status columns")
    if task == "regression" and "label" not in special:
        raise ArffError(1, "regression task needs a label column")

    special_idx = set(special.values())
    cond_attrs = [a for i, a in enumerate(attributes) if i not in special_idx]
    n = len(rows)

    def numeric_cell(raw_value: str, line_no_hint: int, col_name: str) -> float:
        if raw_value == "?":
            return float("nan")
        try:
            return float(raw_value)
        except ValueError:
            raise ArffError(
                line_no_hint, f"non-numeric value {raw_value!r} in column {col_name!r}"
            ) from None

    # Rows were collected content-only; recover their line numbers for error
    # reporting by re-walking everything past the @data marker.
    row_lines: list[int] = []
    for line_no, raw in enumerate(io.StringIO(text), start=1):
        if line_no <= data_start_line:
            continue
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        row_lines.append(line_no)

    columns: list[np.ndarray] = []
    for i, attr in enumerate(attributes):
        if i in special_idx:
            columns.append(None)  # placeholder; handled below
            continue
        if attr.is_numeric:
            col = np.empty(n, dtype=np.float64)
            for r, fields in enumerate(rows):
                col[r] = numeric_cell(fields[i], row_lines[r], attr.name)
        else:
            lookup = {v: k for k, v in enumerate(attr.domain)}
            col = np.empty(n, dtype=np.int32)
            for r, fields in enumerate(rows):
                v = fields[i]
                if v == "?":
                    col[r] = -1
                elif v in lookup:
                    col[r] = lookup[v]
                else:
                    raise ArffError(
                        row_lines[r],
                        f"value {v!r} not in declared domain of {attr.name!r}",
                    )
        columns.append(col)

    group_names: tuple[str, ...] = ()
    group_codes = None
    if "group" in special:
        gi = special["group"]
        gattr = attributes[gi]
        if gattr.is_numeric:
            raise ArffError(1, f"group column {gattr.name!r} must be nominal")
        lookup = {v: k for k, v in enumerate(gattr.domain)}
        raw_codes = np.empty(n, dtype=np.int32)
        for r, fields in enumerate(rows):
            v = fields[gi]
            if v == "?":
                raise ArffError(row_lines[r], f"missing group value in column {gattr.name!r}")
            if v not in lookup:
                raise ArffError(row_lines[r], f"value {v!r} not in declared domain of {gattr.name!r}")
            raw_codes[r] = lookup[v]
        observed = np.unique(raw_codes)
        keep = [k for k in range(len(gattr.domain)) if k in observed]
        group_names = tuple(gattr.domain[k] for k in keep)
        remap = {k: j for j, k in enumerate(keep)}
        group_codes = np.asarray([remap[int(c)] for c in raw_codes], dtype=np.int32)

    def special_numeric(role: str) -> np.ndarray | None:
        if role not in special:
            return None
        ci = special[role]
        cattr = attributes[ci]
        out = np.empty(n, dtype=np.float64)
        if cattr.is_numeric:
            for r, fields in enumerate(rows):
                out[r] = numeric_cell(fields[ci], row_lines[r], cattr.name)
        else:
            for r, fields in enumerate(rows):
                v = fields[ci]
                if v == "?":
                    out[r] = float("nan")
                else:
                    try:
                        out[r] = float(v)
                    except ValueError:
                        raise ArffError(
                            row_lines[r],
                            f"non-numeric value {v!r} in column {cattr.name!r}",
                        ) from None
        return out

    labels_arr = special_numeric("label")
    times_arr = special_numeric("time")
    status_f = special_numeric("status")
    status_arr = None
    if status_f is not None:
        if np.isnan(status_f).any():
            bad = int(np.flatnonzero(np.isnan(status_f))[0])
            raise ArffError(row_lines[bad], "missing survival status value")
        ok = np.isin(status_f, (0.0, 1.0))
        if not ok.all():
            bad = int(np.flatnonzero(~ok)[0])
            raise ArffError(row_lines[bad], "survival status must be 0 or 1")
        status_arr = status_f.astype(np.int8)
    if task == "regression" and labels_arr is not None and np.isnan(labels_arr).any():
        bad = int(np.flatnonzero(np.isnan(labels_arr))[0])
        raise ArffError(row_lines[bad], "missing label value")
    if task == "survival" and times_arr is not None and np.isnan(times_arr).any():
        bad = int(np.flatnonzero(np.isnan(times_arr))[0])
        raise ArffError(row_lines[bad], "missing survival time value")

    cond_columns = [c for i, c in enumerate(columns) if i not in special_idx]
    try:
        return DataSet(
            cond_attrs,
            cond_columns,
            relation=relation,
            task=task,
            group_names=group_names,
            group_codes=group_codes,
            labels=labels_arr,
            times=times_arr,
            status=status_arr,
            group_attr=group,
            label_attr=label,
            time_attr=time,
            status_attr=status,
        )
    except ValueError as exc:
        raise ArffError(1, str(exc)) from None


def load_arff(path, **bindings) -> DataSet:
    """Read and parse an ARFF file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_arff(fh, **bindings)


def _format_value(x: float) -> str:
    return repr(float(x))


def _quote_if_needed(value: str) -> str:
    if value == "" or any(c in value for c in ", '\"{}%\t"):
        # the reader treats either quote char as literal inside the other
        if "'" not in value:
            return f"'{value}'"
        if '"' not in value:
            return f'"{value}"'
        raise ValueError(f"cannot quote {value!r}: it mixes both quote characters")
    return value


def write_arff(ds: DataSet, out=None) -> str:
    """Serialize a dataset back to ARFF, bound columns included.

    The special columns are appended after the conditional attributes under
    their stored names, so ``parse_arff(write_arff(ds), ...)`` with the same
    bindings round-trips the dataset.
    """
    buf = io.StringIO()
    buf.write(f"@relation {_quote_if_needed(ds.relation)}\n\n")
    extra: list[tuple[str, str, tuple[str, ...] | None, np.ndarray]] = []
    if ds.group_codes is not None:
        name = ds.group_attr or "group"
        extra.append((name, NOMINAL, ds.group_names, ds.group_codes))
    if ds.labels is not None:
        extra.append((ds.label_attr or "label", NUMERIC, None, ds.labels))
    if ds.times is not None:
        extra.append((ds.time_attr or "time", NUMERIC, None, ds.times))
    if ds.status is not None:
        extra.append((ds.status_attr or "status", NUMERIC, None, ds.status))
    for attr in ds.attributes:
        if attr.is_numeric:
            buf.write(f"@attribute {_quote_if_needed(attr.name)} numeric\n")
        else:
            domain = ",".join(_quote_if_needed(v) for v in attr.domain)
            buf.write(f"@attribute {_quote_if_needed(attr.name)} {{{domain}}}\n")
    for name, kind, domain, _ in extra:
        if kind == NUMERIC:
            buf.write(f"@attribute {_quote_if_needed(name)} numeric\n")
        else:
            buf.write(
                f"@attribute {_quote_if_needed(name)} "
                f"{{{','.join(_quote_if_needed(v) for v in domain)}}}\n"
            )
    buf.write("\n@data\n")
    n = ds.n_examples
    for i in range(n):
        fields: list[str] = []
        for attr, col in zip(ds.attributes, ds._columns):
            if attr.is_numeric:
                v = col[i]
                fields.append("?" if np.isnan(v) else _format_value(v))
            else:
                c = int(col[i])
                fields.append("?" if c < 0 else _quote_if_needed(attr.domain[c]))
        for name, kind, domain, arr in extra:
            if kind == NOMINAL:
                fields.append(_quote_if_needed(domain[int(arr[i])]))
            elif arr is ds.status:
                fields.append(str(int(arr[i])))
            else:
                fields.append(_format_value(arr[i]))
        buf.write(",".join(fields) + "\n")
    text = buf.getvalue()
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_text(text, encoding="utf-8")
    return text


def _median(values: np.ndarray) -> float:
    """Median as the mean of the two central order statistics for even counts."""
    return float(np.median(values))


def derive_groups_regression(ds: DataSet, label: str | None = None) -> DataSet:
    """Split examples into groups G1 (label below the median) and G2 (at or
    above). The label stays bound as the regression target.

    ``label`` may name a conditional attribute to bind first; by default the
    already-bound label column is used.
    """
    if label is not None:
        ds = _bind_numeric(ds, label, "label")
    if ds.labels is None:
        raise ValueError("no label column bound")
    if np.isnan(ds.labels).any():
        raise ValueError("labels contain missing values")
    med = _median(ds.labels)
    below = ds.labels < med
    if not below.any() or below.all():
        raise ValueError("cannot split on the label median: one group would be empty")
    codes = np.where(below, 0, 1).astype(np.int32)
    return ds.with_groups(("G1", "G2"), codes, group_attr="group")


def derive_groups_survival(
    ds: DataSet, time: str | None = None, status: str | None = None
) -> DataSet:
    """Split survival data on the median observation time.

    G1 holds examples with an event before the median; G2 holds examples
    observed at or beyond the median (events and censored alike). Censored
    examples below the median carry no usable outcome and are dropped. The
    median is taken over all examples before any removal.
    """
    if time is not None:
        ds = _bind_numeric(ds, time, "time")
    if status is not None:
        ds = _bind_numeric(ds, status, "status")
    if ds.times is None or ds.status is None:
        raise ValueError("no time/status columns bound")
    med = _median(ds.times)
    event = ds.status == 1
    g1 = event & (ds.times < med)
    g2 = ds.times >= med
    keep = g1 | g2
    if not g1.any() or not g2.any():
        raise ValueError("cannot split on the time median: one group would be empty")
    sub = ds.subset(keep)
    codes = np.where(g1[keep], 0, 1).astype(np.int32)
    return sub.with_groups(("G1", "G2"), codes, group_attr="group")


def _bind_numeric(ds: DataSet, name: str, role: str) -> DataSet:
    """Move a conditional numeric attribute into a special-column role."""
    idx = ds.attr_index(name)
    attr = ds.attributes[idx]
    col = ds.column(idx)
    if not attr.is_numeric:
        raise ValueError(f"{role} column {name!r} must be numeric")
    attrs = [a for i, a in enumerate(ds.attributes) if i != idx]
    cols = [c for i, c in enumerate(ds._columns) if i != idx]
    kwargs = dict(
        relation=ds.relation,
        task=ds.task,
        group_names=ds.group_names,
        group_codes=ds.group_codes,
        labels=ds.labels,
        times=ds.times,
        status=ds.status,
        group_attr=ds.group_attr,
        label_attr=ds.label_attr,
        time_attr=ds.time_attr,
        status_attr=ds.status_attr,
    )
    if role == "label":
        kwargs["labels"] = col
        kwargs["label_attr"] = name
        if kwargs["task"] == "classification":
            kwargs["task"] = "regression"
    elif role == "time":
        kwargs["times"] = col
        kwargs["time_attr"] = name
    elif role == "status":
        if np.isnan(col).any() or not np.isin(col, (0.0, 1.0)).all():
            raise ValueError(f"status column {name!r} must hold only 0 and 1")
        kwargs["status"] = col.astype(np.int8)
        kwargs["status_attr"] = name
    if kwargs["times"] is not None and kwargs["status"] is not None:
        kwargs["task"] = "survival"
    return DataSet(attrs, cols, **kwargs)
