"""Difference families over Z_v and their exact verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .errors import NonUnit, NotARepresentative, NotInvariant
from .paramsets import PropusParameterSet, validate_params
from .residues import OrbitTable, ResidueSet, SubgroupH, negate_set, orbit_table


@dataclass(frozen=True)
class BlockReps:
    """A block recorded by the minimal representatives of its orbits."""

    v: int
    reps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "reps", tuple(sorted(int(r) for r in self.reps)))


def expand_block(reps: BlockReps, t: OrbitTable) -> ResidueSet:
    if reps.v != t.v:
        raise ValueError(f"representatives are for v={reps.v}, table for v={t.v}")
    out = []
    for r in reps.reps:
        if not 0 <= r < t.v or t.rep_of[r] != r:
            raise NotARepresentative(
                f"{r} is not the smallest element of its orbit under H={list(t.subgroup)}"
            )
        out.extend(t.orbit_of(r))
    return ResidueSet(t.v, out)


def contract_block(x: ResidueSet, t: OrbitTable) -> BlockReps:
    """Inverse of :func:`expand_block`; ``x`` must be a union of whole orbits."""
    if x.v != t.v:
        raise ValueError(f"set lives in Z_{x.v}, table in Z_{t.v}")
    reps = sorted({t.rep_of[a] for a in x})
    for r in reps:
        if any(b not in x for b in t.orbit_of(r)):
            raise NotInvariant(f"{list(x)} splits the orbit {list(t.orbit_of(r))}")
    return BlockReps(t.v, tuple(reps))


@dataclass(frozen=True)
class DifferenceFamily:
    params: PropusParameterSet
    blocks: tuple[ResidueSet, ResidueSet, ResidueSet, ResidueSet]
    subgroup: Optional[SubgroupH] = None
    reps: Optional[tuple[BlockReps, BlockReps, BlockReps]] = field(default=None, compare=False)

    @property
    def v(self) -> int:
        return self.params.v

    @classmethod
    def from_reps(cls, params, table: OrbitTable, x1, x2, x4) -> DifferenceFamily:
        """Build from the three recorded blocks X1, X2 (= X3) and X4."""
        reps = tuple(BlockReps(table.v, tuple(r)) for r in (x1, x2, x4))
        b1, b2, b4 = (expand_block(r, table) for r in reps)
        return cls(params, (b1, b2, b2, b4), table.subgroup, reps)

    @classmethod
    def from_blocks(cls, params, blocks: Sequence, subgroup=None) -> DifferenceFamily:
        blocks = tuple(
            b if isinstance(b, ResidueSet) else ResidueSet(params.v, b) for b in blocks
        )
        if len(blocks) != 4:
            raise ValueError(f"expected four blocks, got {len(blocks)}")
        return cls(params, blocks, subgroup)

    def rep_lists(self) -> tuple[tuple[int, ...], ...]:
        """Representative lists of X1, X2, X4, recomputed if not stored."""
        if self.reps is not None:
            return tuple(r.reps for r in self.reps)
        if self.subgroup is None:
            raise ValueError("family has no subgroup; representatives are undefined")
        t = orbit_table(self.v, self.subgroup)
        return tuple(contract_block(self.blocks[i], t).reps for i in (0, 1, 3))


@dataclass(frozen=True)
class DifferenceCountTable:
    """``counts[d]`` is N(d) for d in [1, v); index 0 is unused and kept at 0."""

    v: int
    counts: tuple[int, ...]

    def __getitem__(self, d):
        return self.counts[d % self.v]


def block_difference_counts(x: ResidueSet) -> list[int]:
    v = x.v
    acc = [0] * v
    elems = x.elements
    for a in elems:
        for b in elems:
            acc[(a - b) % v] += 1
    acc[0] = 0
    return acc


def difference_counts(f: DifferenceFamily) -> DifferenceCountTable:
    v = f.v
    total = [0] * v
    for x in f.blocks:
        for d, c in enumerate(block_difference_counts(x)):
            total[d] += c
    return DifferenceCountTable(v, tuple(total))


def is_symmetric(x: ResidueSet) -> bool:
    return negate_set(x) == x


@dataclass
class FamilyVerdict:
    is_gs: bool
    is_propus: bool
    symmetric_blocks: list[int]
    equal_pairs: list[tuple[int, int]]
    param_violations: list[str]
    size_mismatches: list[int]
    first_bad_shift: Optional[int] = None
    bad_count: Optional[int] = None

    def details(self) -> str:
        parts = []
        if self.param_violations:
            parts.append("parameter equations fail: " + "; ".join(self.param_violations))
        if self.size_mismatches:
            parts.append(f"block sizes differ from header at X{self.size_mismatches}")
        if self.first_bad_shift is not None:
            parts.append(f"N({self.first_bad_shift}) = {self.bad_count}")
        if self.is_gs and not self.is_propus:
            parts.append("no equal pair with a symmetric block outside it")
        return ", ".join(parts) if parts else "ok"


def verify_family(f: DifferenceFamily) -> FamilyVerdict:
    """Check the difference-family and propus conditions by direct counting.

    Block indices in the verdict are 1-based, matching X1..X4.
    """
    p = f.params
    violations = validate_params(p)
    mismatches = [i + 1 for i, x in enumerate(f.blocks) if len(x) != p.k[i]]
    counts = difference_counts(f)
    bad_d = next((d for d in range(1, f.v) if counts.counts[d] != p.lam), None)
    is_gs = not violations and not mismatches and bad_d is None

    sym = [i + 1 for i, x in enumerate(f.blocks) if is_symmetric(x)]
    pairs = [
        (i + 1, j + 1)
        for i in range(4)
        for j in range(i + 1, 4)
        if f.blocks[i] == f.blocks[j]
    ]
    propus = is_gs and any(
        any(s not in pair for s in sym) for pair in pairs
    )
    return FamilyVerdict(
        is_gs=is_gs,
        is_propus=propus,
        symmetric_blocks=sym,
        equal_pairs=pairs,
        param_violations=violations,
        size_mismatches=mismatches,
        first_bad_shift=bad_d,
        bad_count=None if bad_d is None else counts.counts[bad_d],
    )


def _is_translate(y: ResidueSet, x: ResidueSet) -> bool:
    if len(x) != len(y):
        return False
    if not x.elements:
        return True
    y0 = y.elements[0]
    return any(x.translate(y0 - a) == y for a in x.elements)


def is_multiplier(f: DifferenceFamily, m: int) -> bool:
    """``m`` maps every block onto a translate of itself."""
    v = f.v
    if gcd(m, v) != 1:
        raise NonUnit(f"{m} is not a unit modulo {v}")
    return all(_is_translate(x.scale(m), x) for x in f.blocks)
