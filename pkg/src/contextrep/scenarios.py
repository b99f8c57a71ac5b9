"""Built-in scenarios: the animal-acts survey and the vessels-of-water simulator.

Two self-contained case studies exercise the whole pipeline.  The animal-acts
dataset embeds survey counts for a paired concept test (which animal, which
act) whose joint statistics do not factor into the product of their marginals.
The vessels simulator draws water volumes for two vessels and classifies each
side as more (M) or less (L) than a threshold; separate vessels give
independent uniform volumes, connected vessels share a fixed total and are
perfectly anticorrelated when the threshold is half the capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .errors import InvalidCounts
from .joint import JointTable
from .probability import CountTable, OutcomeSet, ProbabilityVector, probabilities_from_counts

ANIMAL_OUTCOMES = OutcomeSet(("Horse", "Bear"))
ACT_OUTCOMES = OutcomeSet(("Growls", "Whinnies"))
VESSEL_OUTCOMES = OutcomeSet(("M", "L"))

_SIMULATION_CHUNK = 1 << 18


@dataclass(frozen=True)
class AnimalActsDataset:
    """Survey counts: two marginal measurements and one joint, same participant pool.

    joint_counts rows follow animal_counts order, columns follow act_counts order.
    """

    animal_counts: CountTable
    act_counts: CountTable
    joint_counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "joint_counts", tuple(tuple(row) for row in self.joint_counts)
        )
        if len(self.joint_counts) != self.animal_counts.outcomes.n or any(
            len(row) != self.act_counts.outcomes.n for row in self.joint_counts
        ):
            raise InvalidCounts("joint counts shape must match the marginal outcome sets")
        for row in self.joint_counts:
            for c in row:
                if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                    raise InvalidCounts(f"joint count {c!r} must be a nonnegative integer")
        joint_total = sum(c for row in self.joint_counts for c in row)
        if not (self.animal_counts.total == self.act_counts.total == joint_total):
            raise InvalidCounts(
                "marginal and joint experiments must poll the same number of participants"
            )

    @property
    def participants(self) -> int:
        return self.animal_counts.total


def animal_acts_dataset() -> AnimalActsDataset:
    """The embedded survey: 81 participants, three measurements."""
    return AnimalActsDataset(
        animal_counts=CountTable(ANIMAL_OUTCOMES, (43, 38)),
        act_counts=CountTable(ACT_OUTCOMES, (39, 42)),
        joint_counts=((4, 51), (21, 5)),
    )


class AnimalActsTables(NamedTuple):
    animal: ProbabilityVector
    act: ProbabilityVector
    joint: JointTable


def animal_acts_tables(dataset: AnimalActsDataset | None = None) -> AnimalActsTables:
    """Exact probability tables from the survey counts.

    Displays round to the familiar two-decimal figures: animal (0.53, 0.47),
    act (0.48, 0.52), joint (0.05, 0.63, 0.26, 0.06) row-major.
    """
    if dataset is None:
        dataset = animal_acts_dataset()
    return AnimalActsTables(
        animal=probabilities_from_counts(dataset.animal_counts),
        act=probabilities_from_counts(dataset.act_counts),
        joint=JointTable.from_counts(
            dataset.animal_counts.outcomes,
            dataset.act_counts.outcomes,
            dataset.joint_counts,
        ),
    )


VesselsMode = Literal["separate", "connected"]


@dataclass(frozen=True)
class VesselsConfig:
    """Parameters for the two-vessel experiment.

    separate: each vessel holds an independent uniform volume on [0, capacity].
    connected: the vessels share `capacity` liters; the left side collects a
    uniform volume and the right side gets the remainder.
    """

    mode: VesselsMode
    trials: int
    seed: int
    capacity: float = 20.0
    threshold: float = 10.0

    def __post_init__(self) -> None:
        if self.mode not in ("separate", "connected"):
            raise ValueError(f"mode must be 'separate' or 'connected', got {self.mode!r}")
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        object.__setattr__(self, "capacity", float(self.capacity))
        object.__setattr__(self, "threshold", float(self.threshold))
        if not (0.0 < self.threshold < self.capacity) or not math.isfinite(self.capacity):
            raise ValueError(
                f"need 0 < threshold < capacity, got threshold={self.threshold}, "
                f"capacity={self.capacity}"
            )


@dataclass(frozen=True)
class VesselsOutcomeCounts:
    """Tallies over the four joint outcomes; letters are (left, right) M-or-L."""

    mm: int
    ml: int
    lm: int
    ll: int

    def __post_init__(self) -> None:
        for name in ("mm", "ml", "lm", "ll"):
            c = getattr(self, name)
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InvalidCounts(f"{name} count must be a nonnegative integer, got {c!r}")

    @property
    def total(self) -> int:
        return self.mm + self.ml + self.lm + self.ll

    def as_mapping(self) -> dict[str, int]:
        return {"MM": self.mm, "ML": self.ml, "LM": self.lm, "LL": self.ll}


def simulate_vessels(cfg: VesselsConfig) -> VesselsOutcomeCounts:
    """Run the experiment for cfg.trials draws and tally the four outcomes.

    A side reads M when its volume strictly exceeds the threshold.  Draws that
    land exactly on the threshold (probability zero) are redrawn so every
    trial resolves to M or L.  With threshold = capacity / 2 the connected
    mode never produces MM or LL: the remainder capacity - left is computed
    exactly for volumes in the upper half (Sterbenz), so the two sides land
    strictly on opposite sides of the threshold.
    """
    rng = np.random.default_rng(cfg.seed)
    separate = cfg.mode == "separate"
    mm = ml = lm = ll = 0
    remaining = cfg.trials
    while remaining:
        size = min(remaining, _SIMULATION_CHUNK)
        remaining -= size
        left = rng.uniform(0.0, cfg.capacity, size)
        if separate:
            right = rng.uniform(0.0, cfg.capacity, size)
        else:
            right = cfg.capacity - left
        hits = (left == cfg.threshold) | (right == cfg.threshold)
        while hits.any():
            idx = np.flatnonzero(hits)
            left[idx] = rng.uniform(0.0, cfg.capacity, idx.size)
            if separate:
                right[idx] = rng.uniform(0.0, cfg.capacity, idx.size)
            else:
                right[idx] = cfg.capacity - left[idx]
            hits = np.zeros(size, dtype=bool)
            hits[idx] = (left[idx] == cfg.threshold) | (right[idx] == cfg.threshold)
        left_more = left > cfg.threshold
        right_more = right > cfg.threshold
        mm += int(np.count_nonzero(left_more & right_more))
        ml += int(np.count_nonzero(left_more & ~right_more))
        lm += int(np.count_nonzero(~left_more & right_more))
        ll += int(np.count_nonzero(~left_more & ~right_more))
    return VesselsOutcomeCounts(mm, ml, lm, ll)


def vessels_joint_table(counts: VesselsOutcomeCounts) -> JointTable:
    """Exact 2x2 table, rows = left (M, L), columns = right (M, L)."""
    return JointTable.from_counts(
        VESSEL_OUTCOMES,
        VESSEL_OUTCOMES,
        ((counts.mm, counts.ml), (counts.lm, counts.ll)),
    )
