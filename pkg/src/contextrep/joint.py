"""Tensor-product joint representations and the product/entangled decision.

A joint measurement over outcome pairs (row j, column k) is carried as an
n x n' probability matrix.  The joint real vector lists the entries in
row-major order over the tensor basis (basis index j*n' + k); the joint
complex vector carries sqrt(p_jk) moduli with free phases.

Decision procedure
------------------
If the matrix factors as an outer product of *any* probability pair, it
factors through its own marginals (sum the factorization over rows/columns),
so the test checks probs == outer(row marginals, col marginals).  Tables that
fail get a witness: the 2x2 minor of maximal absolute value, a rank-1
obstruction checkable by hand.  Tables built from integer counts are decided
in exact rational arithmetic with zero tolerance; float tables get a small
default tolerance.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .errors import (
    FamilyMismatch,
    InvalidCounts,
    InvalidJointTable,
    ParseError,
    UnsupportedFamily,
)
from .hilbert import NORM_TOLERANCE, ComplexContextVector, PhaseAssignment, TWO_PI
from .probability import (
    SUM_TOLERANCE,
    OutcomeSet,
    ProbabilityVector,
    Value,
    is_exact_value,
)
from .simplex import RealContextVector

#: Default product-test tolerance for tables carried in floating point.
FLOAT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class JointTable:
    """Joint outcome probabilities for a paired measurement, optionally with counts."""

    row_outcomes: OutcomeSet
    col_outcomes: OutcomeSet
    probs: tuple[tuple[Value, ...], ...]
    counts: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(tuple(row) for row in self.probs))
        if len(self.probs) != self.row_outcomes.n:
            raise InvalidJointTable("one probability row per row outcome is required")
        for row in self.probs:
            if len(row) != self.col_outcomes.n:
                raise InvalidJointTable("rows must all have one entry per column outcome")
            for p in row:
                if not (0 <= p <= 1):
                    raise InvalidJointTable(f"joint probability {p!r} out of [0, 1]")
        total = sum(p for row in self.probs for p in row)
        if self.is_exact:
            if total != 1:
                raise InvalidJointTable(f"exact joint probabilities must sum to 1, got {total}")
        elif abs(total - 1) > SUM_TOLERANCE:
            raise InvalidJointTable(f"joint probabilities sum to {total!r}, not 1")
        if self.counts is not None:
            object.__setattr__(self, "counts", tuple(tuple(row) for row in self.counts))
            grand = sum(c for row in self.counts for c in row)
            for j, row in enumerate(self.counts):
                if len(self.counts) != self.row_outcomes.n or len(row) != self.col_outcomes.n:
                    raise InvalidJointTable("counts matrix shape must match the table")
                for k, c in enumerate(row):
                    if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                        raise InvalidJointTable(f"count at ({j}, {k}) invalid: {c!r}")
                    if self.probs[j][k] != Fraction(c, grand):
                        raise InvalidJointTable("probabilities do not derive from the counts")

    @property
    def n_rows(self) -> int:
        return self.row_outcomes.n

    @property
    def n_cols(self) -> int:
        return self.col_outcomes.n

    @property
    def is_exact(self) -> bool:
        return all(is_exact_value(p) for row in self.probs for p in row)

    def as_floats(self) -> tuple[tuple[float, ...], ...]:
        return tuple(tuple(float(p) for p in row) for row in self.probs)

    def combined_labels(self) -> tuple[str, ...]:
        """Row-major labels of the tensor basis, concatenated when unambiguous."""
        joined = tuple(
            r + c for r in self.row_outcomes.labels for c in self.col_outcomes.labels
        )
        if len(set(joined)) == len(joined):
            return joined
        return tuple(
            f"{r}|{c}" for r in self.row_outcomes.labels for c in self.col_outcomes.labels
        )

    @classmethod
    def from_counts(
        cls,
        row_outcomes: OutcomeSet,
        col_outcomes: OutcomeSet,
        counts: Sequence[Sequence[int]],
    ) -> "JointTable":
        counts = tuple(tuple(row) for row in counts)
        total = sum(c for row in counts for c in row)
        if total < 1:
            raise InvalidCounts("total joint count must be at least 1")
        probs = tuple(tuple(Fraction(c, total) for c in row) for row in counts)
        return cls(row_outcomes, col_outcomes, probs, counts)


@dataclass(frozen=True)
class Marginals:
    """Row and column sums of a joint table, each a probability vector."""

    row: ProbabilityVector
    col: ProbabilityVector


@dataclass(frozen=True)
class MinorWitness:
    """A nonvanishing 2x2 minor: rows (j, j'), columns (k, k'), and its value.

    value = probs[j][k] * probs[j'][k'] - probs[j][k'] * probs[j'][k]; any
    nonzero value certifies the table is not an outer product.
    """

    rows: tuple[int, int]
    cols: tuple[int, int]
    row_labels: tuple[str, str]
    col_labels: tuple[str, str]
    value: Value

    def to_json_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "value": float(self.value),
            "value_exact": str(self.value) if is_exact_value(self.value) else None,
        }


@dataclass(frozen=True)
class EntanglementReport:
    """Verdict of the product test with the evidence needed to audit it."""

    verdict: Literal["product", "entangled"]
    marginals: Marginals
    residual: Value
    witness: Optional[MinorWitness]
    tolerance: Value
    arithmetic: Literal["exact", "float"]

    def __post_init__(self) -> None:
        if (self.verdict == "entangled") != (self.witness is not None):
            raise InvalidJointTable("witness must be present exactly for entangled verdicts")

    def to_json_dict(self) -> dict:
        def vector_dict(p: ProbabilityVector) -> dict:
            return {
                label: {
                    "value": float(x),
                    "display": f"{float(x):.2f}",
                    "exact": str(Fraction(x)) if is_exact_value(x) else None,
                }
                for label, x in zip(p.outcomes.labels, p.probs)
            }

        return {
            "verdict": self.verdict,
            "marginals": {
                "row": vector_dict(self.marginals.row),
                "col": vector_dict(self.marginals.col),
            },
            "residual": float(self.residual),
            "residual_exact": str(self.residual) if is_exact_value(self.residual) else None,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "tolerance": float(self.tolerance),
            "arithmetic": self.arithmetic,
        }


@dataclass(frozen=True)
class JointComplexVector:
    """Amplitudes over the tensor basis, row-major; squared moduli are the table."""

    row_outcomes: OutcomeSet
    col_outcomes: OutcomeSet
    amplitudes: tuple[complex, ...]
    phases: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in self.amplitudes))
        object.__setattr__(self, "phases", tuple(float(a) % TWO_PI for a in self.phases))
        size = self.row_outcomes.n * self.col_outcomes.n
        if len(self.amplitudes) != size or len(self.phases) != size:
            raise InvalidJointTable(
                f"expected {size} amplitudes and phases over the tensor basis"
            )
        norm = sum(abs(a) ** 2 for a in self.amplitudes)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidJointTable(f"amplitudes have squared norm {norm!r}, not 1")

    def moduli(self) -> tuple[float, ...]:
        return tuple(abs(a) for a in self.amplitudes)

    def combined_labels(self) -> tuple[str, ...]:
        joined = tuple(
            r + c for r in self.row_outcomes.labels for c in self.col_outcomes.labels
        )
        if len(set(joined)) == len(joined):
            return joined
        return tuple(
            f"{r}|{c}" for r in self.row_outcomes.labels for c in self.col_outcomes.labels
        )

    def to_json_dict(self) -> dict:
        sig = lambda x: float(f"{x:.12g}")
        return {
            "row_labels": list(self.row_outcomes.labels),
            "col_labels": list(self.col_outcomes.labels),
            "basis_labels": list(self.combined_labels()),
            "amplitudes": [{"re": sig(a.real), "im": sig(a.imag)} for a in self.amplitudes],
            "moduli": [sig(m) for m in self.moduli()],
            "phases": list(self.phases),
        }


def tensor_product_real(v1: RealContextVector, v2: RealContextVector) -> JointTable:
    """Outer product of two simplex points; exactness of the inputs is preserved."""
    probs = tuple(tuple(a * b for b in v2.values) for a in v1.values)
    return JointTable(v1.outcomes, v2.outcomes, probs)


def tensor_product_complex(
    w1: ComplexContextVector, w2: ComplexContextVector
) -> JointComplexVector:
    """Tensor product of two rank-1 context vectors; phases add per basis pair."""
    if not (w1.family.is_rank_one and w2.family.is_rank_one):
        raise UnsupportedFamily("tensor products require rank-1 projector blocks")
    amplitudes = []
    phases = []
    for a in w1.amplitudes:
        for b in w2.amplitudes:
            prod = a * b
            amplitudes.append(prod)
            phases.append(cmath.phase(prod) % TWO_PI if prod != 0 else 0.0)
    return JointComplexVector(w1.outcomes, w2.outcomes, tuple(amplitudes), tuple(phases))


def build_joint_vectors(
    t: JointTable, phases: PhaseAssignment | None = None
) -> tuple[tuple[Value, ...], JointComplexVector]:
    """The joint real vector (entries over the tensor basis) and complex vector.

    Basis order is row-major: basis index j * n_cols + k holds entry (j, k).
    Default phases are zero.
    """
    size = t.n_rows * t.n_cols
    if phases is None:
        phases = PhaseAssignment.zeros(size)
    if len(phases) != size:
        raise FamilyMismatch(
            f"phase assignment covers {len(phases)} indices, tensor basis has {size}"
        )
    real = tuple(p for row in t.probs for p in row)
    amplitudes = tuple(
        math.sqrt(float(p)) * cmath.exp(1j * angle)
        for p, angle in zip(real, phases.angles)
    )
    return real, JointComplexVector(t.row_outcomes, t.col_outcomes, amplitudes, phases.angles)


def marginals(t: JointTable) -> Marginals:
    """Row and column sums; the only candidate factor pair for the product test."""
    row = tuple(sum(row) for row in t.probs)
    col = tuple(sum(t.probs[j][k] for j in range(t.n_rows)) for k in range(t.n_cols))
    return Marginals(
        ProbabilityVector(t.row_outcomes, row),
        ProbabilityVector(t.col_outcomes, col),
    )


def _max_minor(t: JointTable) -> Optional[MinorWitness]:
    """The 2x2 minor of maximal absolute value, or None when no minor is nonzero."""
    best: Optional[MinorWitness] = None
    best_abs: Value = 0
    p = t.probs
    for j in range(t.n_rows):
        for j2 in range(j + 1, t.n_rows):
            for k in range(t.n_cols):
                for k2 in range(k + 1, t.n_cols):
                    value = p[j][k] * p[j2][k2] - p[j][k2] * p[j2][k]
                    if abs(value) > best_abs:
                        best_abs = abs(value)
                        best = MinorWitness(
                            rows=(j, j2),
                            cols=(k, k2),
                            row_labels=(t.row_outcomes.labels[j], t.row_outcomes.labels[j2]),
                            col_labels=(t.col_outcomes.labels[k], t.col_outcomes.labels[k2]),
                            value=value,
                        )
    return best


def default_tolerance(t: JointTable) -> Value:
    """Zero for exact rational tables, FLOAT_TOLERANCE otherwise."""
    return Fraction(0) if t.is_exact else FLOAT_TOLERANCE


def is_product(t: JointTable, tol: Value | None = None) -> EntanglementReport:
    """Decide whether the table is an outer product of its marginals.

    The residual is max |probs[j][k] - row[j] * col[k]|.  Entangled verdicts
    carry the strongest 2x2 minor as an independently checkable witness.
    """
    if tol is None:
        tol = default_tolerance(t)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    marg = marginals(t)
    residual: Value = max(
        abs(t.probs[j][k] - marg.row.probs[j] * marg.col.probs[k])
        for j in range(t.n_rows)
        for k in range(t.n_cols)
    )
    arithmetic: Literal["exact", "float"] = "exact" if t.is_exact else "float"
    if residual <= tol:
        return EntanglementReport("product", marg, residual, None, tol, arithmetic)
    witness = _max_minor(t)
    if witness is None:
        # Rank-1 tables equal their marginal outer product, so a residual
        # beyond tolerance guarantees some nonzero minor.
        raise InvalidJointTable("residual exceeds tolerance but all minors vanish")
    return EntanglementReport("entangled", marg, residual, witness, tol, arithmetic)


def factorization_certificate(
    t: JointTable,
) -> Optional[tuple[ProbabilityVector, ProbabilityVector]]:
    """The factor pair (row marginals, col marginals) when the table is a product.

    Exact tables are decided exactly: a product iff every 2x2 minor vanishes.
    Float tables use the default float tolerance on the outer-product residual.
    A zero row or column never blocks the certificate; its marginal entry is
    simply zero.
    """
    marg = marginals(t)
    if t.is_exact:
        p = t.probs
        for j in range(t.n_rows):
            for j2 in range(j + 1, t.n_rows):
                for k in range(t.n_cols):
                    for k2 in range(k + 1, t.n_cols):
                        if p[j][k] * p[j2][k2] != p[j][k2] * p[j2][k]:
                            return None
        return marg.row, marg.col
    residual = max(
        abs(float(t.probs[j][k]) - float(marg.row.probs[j]) * float(marg.col.probs[k]))
        for j in range(t.n_rows)
        for k in range(t.n_cols)
    )
    if residual <= FLOAT_TOLERANCE:
        return marg.row, marg.col
    return None


# ---------------------------------------------------------------------------
# Joint-table ingestion: CSV with header `row_label,col_label,count`, or JSON
# {rows: [...], cols: [...], counts: [[...]]}.
# ---------------------------------------------------------------------------


def parse_joint_csv(text: str) -> JointTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty joint counts file", line=1) from None
    if [h.strip() for h in header] != ["row_label", "col_label", "count"]:
        raise ParseError(
            f"expected header 'row_label,col_label,count', got {','.join(header)!r}", line=1
        )
    rows: list[str] = []
    cols: list[str] = []
    cells: dict[tuple[str, str], int] = {}
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=reader.line_num)
        r, c, raw = row[0], row[1], row[2].strip()
        try:
            count = int(raw)
        except ValueError:
            raise ParseError(f"count {raw!r} is not an integer", line=reader.line_num) from None
        if (r, c) in cells:
            raise InvalidJointTable(f"duplicate cell ({r!r}, {c!r}) in joint counts")
        cells[(r, c)] = count
        if r not in rows:
            rows.append(r)
        if c not in cols:
            cols.append(c)
    if not cells:
        raise ParseError("no count rows found", line=1)
    missing = [(r, c) for r in rows for c in cols if (r, c) not in cells]
    if missing:
        raise InvalidJointTable(f"joint counts are not rectangular; missing cells {missing!r}")
    counts = [[cells[(r, c)] for c in cols] for r in rows]
    return JointTable.from_counts(OutcomeSet(tuple(rows)), OutcomeSet(tuple(cols)), counts)


def parse_joint_json(text: str) -> JointTable:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict) or not {"rows", "cols", "counts"} <= set(data):
        raise ParseError("JSON joint counts must be {rows: [...], cols: [...], counts: [[...]]}")
    rows, cols, counts = data["rows"], data["cols"], data["counts"]
    if not (isinstance(rows, list) and isinstance(cols, list) and isinstance(counts, list)):
        raise ParseError("rows, cols, and counts must be JSON arrays")
    if len(counts) != len(rows) or any(
        not isinstance(r, list) or len(r) != len(cols) for r in counts
    ):
        raise InvalidJointTable("counts matrix shape must be len(rows) x len(cols)")
    for row in counts:
        for c in row:
            if isinstance(c, bool) or not isinstance(c, int):
                raise ParseError(f"joint count {c!r} is not an integer")
    return JointTable.from_counts(OutcomeSet(tuple(rows)), OutcomeSet(tuple(cols)), counts)
