"""Binary sequences of residue sets and their periodic autocorrelation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ZeroShift
from .residues import ResidueSet


@dataclass(frozen=True)
class BinarySequence:
    v: int
    entries: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


@dataclass(frozen=True)
class PafProfile:
    values: tuple[int, ...]
    levels: tuple[int, ...]  # distinct off-peak values, ascending
    three_level: bool
    # None unless v = 1 (mod 4), where optimality is defined
    optimal: Optional[bool]
    balanced: bool

    @property
    def level_set(self) -> set[int]:
        """All values taken, the peak included."""
        return set(self.levels) | {self.values[0]}


def to_sequence(x: ResidueSet) -> BinarySequence:
    return BinarySequence(x.v, tuple(-1 if a in x else 1 for a in range(x.v)))


def paf_values(entries) -> np.ndarray:
    a = np.asarray(entries, dtype=np.int64)
    return np.array([int(a @ np.roll(a, -s)) for s in range(len(a))], dtype=np.int64)


def paf(seq: BinarySequence) -> PafProfile:
    vals = paf_values(seq.entries)
    v = seq.v
    off = sorted(set(int(x) for x in vals[1:]))
    optimal = None
    if v % 4 == 1:
        optimal = all(x in (1, -3) for x in off)
    return PafProfile(
        values=tuple(int(x) for x in vals),
        levels=tuple(off),
        three_level=len(set(off) | {v}) == 3,
        optimal=optimal,
        balanced=abs(seq.total) == 1,
    )


def set_autocorrelation(x: ResidueSet, s: int) -> int:
    """|X ∩ (X + s)|, linked to the sequence by PAF(s) = v - 4(|X| - N)."""
    if s % x.v == 0:
        raise ZeroShift("shift must be nonzero modulo v")
    return sum(1 for a in x if (a - s) % x.v in x)
