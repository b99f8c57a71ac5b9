"""Outcome sets, count tables, and probability vectors.

Probabilities built from counts are carried as exact `fractions.Fraction`
values and only materialized as floats at report boundaries.  Downstream
factorization decisions are exact non-existence claims, so the exactness of
this layer is what makes them decisive.

Entries of a probability vector may be `Fraction`/`int` (exact) or `float`;
a vector is *exact* when every entry is exact, and then its entries must sum
to one exactly.  Float vectors must sum to one within ``SUM_TOLERANCE``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import InvalidCounts, InvalidDistribution, ParseError

Value = Union[Fraction, int, float]

#: Allowed deviation of a float probability vector's sum from 1.
SUM_TOLERANCE = 1e-12


def is_exact_value(x: Value) -> bool:
    """True for entries carried exactly (Fraction or int, never bool)."""
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def display_rounded(x: Value, places: int = 2) -> str:
    """Fixed-point display string, the rounding convention used in reports."""
    return f"{float(x):.{places}f}"


@dataclass(frozen=True)
class OutcomeSet:
    """Ordered, distinct outcome labels; position j is the basis index of label j."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) < 1:
            raise InvalidDistribution("an outcome set needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidDistribution(f"duplicate outcome labels in {self.labels!r}")
        if any(not isinstance(l, str) or not l for l in self.labels):
            raise InvalidDistribution("outcome labels must be nonempty strings")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class CountTable:
    """Nonnegative integer counts per outcome, with a strictly positive total."""

    outcomes: OutcomeSet
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))
        if len(self.counts) != self.outcomes.n:
            raise InvalidCounts("one count per outcome label is required")
        for label, c in zip(self.outcomes.labels, self.counts):
            if isinstance(c, bool) or not isinstance(c, int):
                raise InvalidCounts(f"count for {label!r} must be an integer, got {c!r}")
            if c < 0:
                raise InvalidCounts(f"count for {label!r} is negative: {c}")
        if self.total < 1:
            raise InvalidCounts("total count must be at least 1")

    @property
    def total(self) -> int:
        return sum(self.counts)

    @classmethod
    def from_mapping(cls, counts: Mapping[str, int]) -> "CountTable":
        return cls(OutcomeSet(tuple(counts.keys())), tuple(counts.values()))

    def as_mapping(self) -> dict[str, int]:
        return dict(zip(self.outcomes.labels, self.counts))


@dataclass(frozen=True)
class ProbabilityVector:
    """A point of the outcome simplex: one probability per outcome label."""

    outcomes: OutcomeSet
    probs: tuple[Value, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(self.probs))
        if len(self.probs) != self.outcomes.n:
            raise InvalidDistribution("one probability per outcome label is required")
        for label, p in zip(self.outcomes.labels, self.probs):
            if not (0 <= p <= 1):
                raise InvalidDistribution(f"probability for {label!r} out of [0, 1]: {p!r}")
        total = sum(self.probs)
        if self.is_exact:
            if total != 1:
                raise InvalidDistribution(f"exact probabilities must sum to 1, got {total}")
        elif abs(total - 1) > SUM_TOLERANCE:
            raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")

    @property
    def is_exact(self) -> bool:
        return all(is_exact_value(p) for p in self.probs)

    def __len__(self) -> int:
        return self.outcomes.n

    def __getitem__(self, j: int) -> Value:
        return self.probs[j]

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(p) for p in self.probs)

    def displayed(self, places: int = 2) -> tuple[str, ...]:
        return tuple(display_rounded(p, places) for p in self.probs)


@dataclass(frozen=True)
class ContextId:
    """Opaque identifiers for (entity, state, measurement); no structure assumed."""

    entity: str
    state: str
    measurement: str

    def __post_init__(self) -> None:
        for name in ("entity", "state", "measurement"):
            if not getattr(self, name):
                raise InvalidDistribution(f"context field {name!r} must be nonempty")

    def as_dict(self) -> dict[str, str]:
        return {"entity": self.entity, "state": self.state, "measurement": self.measurement}


def probabilities_from_counts(counts: CountTable) -> ProbabilityVector:
    """Relative frequencies as exact rationals; scale-invariant in the counts."""
    total = counts.total
    return ProbabilityVector(
        counts.outcomes, tuple(Fraction(c, total) for c in counts.counts)
    )


# ---------------------------------------------------------------------------
# Counts ingestion: CSV with header `label,count`, or a JSON object
# {label: count}.  Labels are preserved verbatim; duplicates are rejected.
# ---------------------------------------------------------------------------


def parse_counts_csv(text: str) -> CountTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty counts file", line=1) from None
    if [h.strip() for h in header] != ["label", "count"]:
        raise ParseError(f"expected header 'label,count', got {','.join(header)!r}", line=1)
    labels: list[str] = []
    counts: list[int] = []
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=reader.line_num)
        label, raw = row[0], row[1].strip()
        try:
            count = int(raw)
        except ValueError:
            raise ParseError(f"count {raw!r} is not an integer", line=reader.line_num) from None
        labels.append(label)
        counts.append(count)
    if not labels:
        raise ParseError("no count rows found", line=1)
    if len(set(labels)) != len(labels):
        raise InvalidCounts("duplicate labels in counts file")
    return CountTable(OutcomeSet(tuple(labels)), tuple(counts))


def _reject_duplicate_keys(pairs: list[tuple[str, object]]) -> dict[str, object]:
    out: dict[str, object] = {}
    for key, value in pairs:
        if key in out:
            raise InvalidCounts(f"duplicate label {key!r} in JSON counts")
        out[key] = value
    return out


def parse_counts_json(text: str) -> CountTable:
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("JSON counts must be an object of the form {label: count}")
    for label, value in data.items():
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"count for {label!r} must be an integer, got {value!r}")
    return CountTable.from_mapping(data)  # type: ignore[arg-type]
