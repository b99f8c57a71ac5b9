"""Real-simplex representation and hidden-variable measurement dynamics.

Conventions
-----------
A measurement context with outcome probabilities (p_1, ..., p_n) is
represented by the point v = sum_j p_j h_j of the standard simplex in R^n,
where h_j is the canonical basis.  Outcome j owns the region A_j: the convex
closure of the basis vertices with h_j replaced by v.  A hidden variable
lambda in the simplex selects outcome j deterministically when it is interior
to A_j; points on a shared face leave the outcome undetermined.

Membership test
---------------
Writing lambda = t*v + sum_{k != j} c_k h_k gives t = lambda_j / v_j and
c_k = lambda_k - t*v_k, so lambda lies in A_j iff j minimizes the ratio
lambda_k / v_k (interior iff strict minimizer).  This O(n) rule replaces the
n x n linear solve; the test suite checks it against that solve directly.

For v_k = 0 the region A_k is degenerate (measure zero): the ratio is +inf
when lambda_k > 0, and when lambda_k = 0 the index only joins a boundary tie,
so a forbidden outcome is never emitted.

Region measure
--------------
Replacing vertex h_j by v scales the simplex volume by the j-th barycentric
coordinate of v, hence m(A_j) / m(simplex) = v_j exactly.  Uniform sampling
of lambda therefore reproduces the outcome probabilities, which is what
`monte_carlo_measurement` verifies empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InvalidHiddenVariable
from .probability import (
    SUM_TOLERANCE,
    ContextId,
    OutcomeSet,
    ProbabilityVector,
    Value,
    is_exact_value,
)

#: Default width for declaring two region ratios tied (a boundary hit).
BOUNDARY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RealContextVector:
    """Simplex point representing one (measurement, state) pair.

    Coordinates are the outcome probabilities themselves; exact entries are
    preserved so joint constructions downstream can stay rational.
    """

    outcomes: OutcomeSet
    values: tuple[Value, ...]
    context: ContextId

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        # Reuse the simplex validation: same invariants as a probability vector.
        ProbabilityVector(self.outcomes, self.values)

    @property
    def n(self) -> int:
        return self.outcomes.n

    @property
    def is_exact(self) -> bool:
        return all(is_exact_value(x) for x in self.values)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.values)


@dataclass(frozen=True)
class HiddenVariable:
    """A point of the outcome simplex driving one measurement realization."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(float(x) for x in self.coords))
        if not self.coords:
            raise InvalidHiddenVariable("hidden variable needs at least one coordinate")
        for x in self.coords:
            if not (0.0 <= x <= 1.0) or math.isnan(x):
                raise InvalidHiddenVariable(f"coordinate {x!r} outside [0, 1]")
        if abs(sum(self.coords) - 1.0) > SUM_TOLERANCE:
            raise InvalidHiddenVariable(f"coordinates sum to {sum(self.coords)!r}, not 1")

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Deterministic:
    """The hidden variable is interior to one region: the outcome is certain."""

    outcome: int


@dataclass(frozen=True)
class Boundary:
    """The hidden variable sits on a face shared by two or more regions."""

    tied: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tied", tuple(sorted(self.tied)))
        if len(self.tied) < 2:
            raise InvalidHiddenVariable("a boundary resolution needs at least two tied outcomes")


OutcomeResolution = Union[Deterministic, Boundary]


def build_real_context(p: ProbabilityVector, ctx: ContextId) -> RealContextVector:
    """Represent (measurement, state) by its probability point of the simplex."""
    return RealContextVector(p.outcomes, p.probs, ctx)


def classify_hidden_variable(
    v: RealContextVector,
    lam: HiddenVariable | Sequence[float],
    tol: float = BOUNDARY_TOLERANCE,
) -> OutcomeResolution:
    """Resolve which outcome region contains the hidden variable.

    Returns ``Deterministic(j)`` when j is the strict minimizer of
    lambda_k / v_k, and ``Boundary(tied)`` when the minimum is attained (within
    ``tol``) by several indices.  Indices with v_k = 0 and lambda_k = 0 join
    the tie (their degenerate region contains the point); with lambda_k > 0
    they are excluded.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if not isinstance(lam, HiddenVariable):
        lam = HiddenVariable(tuple(lam))
    if len(lam) != v.n:
        raise InvalidHiddenVariable(
            f"hidden variable has {len(lam)} coordinates, context has {v.n} outcomes"
        )
    values = v.as_floats()
    finite = [(lam.coords[k] / values[k], k) for k in range(v.n) if values[k] > 0.0]
    best = min(r for r, _ in finite)
    tied = [k for r, k in finite if r <= best + tol]
    tied += [k for k in range(v.n) if values[k] == 0.0 and lam.coords[k] == 0.0]
    if len(tied) == 1:
        return Deterministic(tied[0])
    return Boundary(tuple(tied))


def region_measure_ratio(v: RealContextVector, j: int) -> Value:
    """Lebesgue-measure fraction of outcome j's region: exactly v[j].

    Replacing vertex h_j by v scales the simplex volume by the j-th
    barycentric coordinate of v, so no integration is needed.
    """
    if not 0 <= j < v.n:
        raise IndexError(f"outcome index {j} out of range for {v.n} outcomes")
    return v.values[j]


def sample_hidden_variables(n: int, count: int, seed: int) -> np.ndarray:
    """Uniform (Lebesgue) samples on the standard simplex, one per row.

    Uses the exponential-spacings construction: normalize i.i.d. Exp(1)
    draws.  Reproducible for a fixed seed.
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    return _sample_simplex(rng, count, n)


def _sample_simplex(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    g = rng.exponential(scale=1.0, size=(count, n))
    return g / g.sum(axis=1, keepdims=True)


def _classify_batch(
    values: np.ndarray, lam: np.ndarray, tol: float
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ratio rule: (winning index per row, boundary mask per row)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(values > 0.0, lam / values, np.inf)
    # 0/0 entries (forbidden outcome, coordinate exactly zero) only ever tie.
    zero_zero = (values == 0.0) & (lam == 0.0)
    best = ratios.min(axis=1)
    ties = (ratios <= best[:, None] + tol).sum(axis=1)
    boundary = (ties > 1) | zero_zero.any(axis=1)
    return ratios.argmin(axis=1), boundary


@dataclass(frozen=True)
class MonteCarloMeasurement:
    """Empirical outcome statistics from repeated hidden-variable draws."""

    target: RealContextVector
    trials: int
    seed: int
    counts: tuple[int, ...]
    boundary_hits: int

    @property
    def frequencies(self) -> ProbabilityVector:
        det = self.trials - self.boundary_hits
        return ProbabilityVector(
            self.target.outcomes, tuple(c / det for c in self.counts)
        )

    @property
    def max_abs_deviation(self) -> float:
        freqs = self.frequencies.as_floats()
        return max(abs(f - t) for f, t in zip(freqs, self.target.as_floats()))

    def to_json_dict(self) -> dict:
        labels = self.target.outcomes.labels
        freqs = self.frequencies.as_floats()
        return {
            "context": self.target.context.as_dict(),
            "trials": self.trials,
            "seed": self.seed,
            "frequencies": dict(zip(labels, freqs)),
            "boundary_hits": self.boundary_hits,
            "target": dict(zip(labels, self.target.as_floats())),
            "max_abs_deviation": self.max_abs_deviation,
        }


def monte_carlo_measurement(
    v: RealContextVector,
    trials: int,
    seed: int,
    tol: float = BOUNDARY_TOLERANCE,
) -> MonteCarloMeasurement:
    """Simulate the measurement by classifying uniform hidden variables.

    Frequencies are taken over deterministic resolutions only; boundary hits
    (a measure-zero event, so expected count 0) are reported separately.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    values = np.array(v.as_floats())
    counts = np.zeros(v.n, dtype=np.int64)
    boundary_hits = 0
    # Chunked so huge trial counts keep a flat memory profile.
    chunk = 1 << 18
    remaining = trials
    while remaining > 0:
        size = min(chunk, remaining)
        lam = _sample_simplex(rng, size, v.n)
        winners, boundary = _classify_batch(values, lam, tol)
        counts += np.bincount(winners[~boundary], minlength=v.n)
        boundary_hits += int(boundary.sum())
        remaining -= size
    if boundary_hits == trials:
        raise InvalidHiddenVariable("every trial hit a region boundary; no frequencies")
    return MonteCarloMeasurement(
        target=v,
        trials=trials,
        seed=seed,
        counts=tuple(int(c) for c in counts),
        boundary_hits=boundary_hits,
    )
