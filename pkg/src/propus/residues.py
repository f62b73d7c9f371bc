"""Arithmetic in Z_v: residue sets, the unit group, subgroups and orbits."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator

from .errors import InvalidModulus, NonUnitGenerator, SubgroupNotClosed

MAX_MODULUS = 10**6


def check_modulus(v: int) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise InvalidModulus(f"modulus must be an integer, got {v!r}")
    if v < 2 or v > MAX_MODULUS:
        raise InvalidModulus(f"modulus must lie in [2, {MAX_MODULUS}], got {v}")
    return v


@dataclass(frozen=True, order=True)
class ResidueSet:
    """A subset of Z_v, stored as sorted distinct residues in [0, v).

    The same object stands for the +-1 sequence that is -1 exactly on
    its elements.
    """

    v: int
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        check_modulus(self.v)
        object.__setattr__(
            self, "elements", tuple(sorted({int(a) % self.v for a in self.elements}))
        )

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return (a % self.v) in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.elements)

    def translate(self, g: int) -> ResidueSet:
        return ResidueSet(self.v, [a + g for a in self.elements])

    def scale(self, m: int) -> ResidueSet:
        return ResidueSet(self.v, [a * m for a in self.elements])

    def complement(self) -> ResidueSet:
        have = self._lookup
        return ResidueSet(self.v, [a for a in range(self.v) if a not in have])

    def __repr__(self) -> str:
        return f"ResidueSet(v={self.v}, {list(self.elements)})"


def negate_set(x: ResidueSet) -> ResidueSet:
    return ResidueSet(x.v, [(x.v - a) % x.v for a in x.elements])


def unit_group(v: int) -> list[int]:
    """All residues in [1, v) coprime to ``v``, ascending."""
    check_modulus(v)
    return [u for u in range(1, v) if gcd(u, v) == 1]


@dataclass(frozen=True)
class SubgroupH:
    """A subgroup of the unit group of Z_v (elements sorted ascending)."""

    v: int
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.elements == (1,)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @classmethod
    def from_elements(cls, v: int, elements: Iterable[int]) -> SubgroupH:
        """Build from an explicit element list, checking it really is a subgroup."""
        check_modulus(v)
        elems = {int(e) % v for e in elements}
        for e in elems:
            if gcd(e, v) != 1:
                raise NonUnitGenerator(f"{e} is not a unit modulo {v}")
        if 1 % v not in elems:
            raise SubgroupNotClosed(f"1 is missing from {sorted(elems)}")
        for a in elems:
            for b in elems:
                if a * b % v not in elems:
                    raise SubgroupNotClosed(
                        f"{a}*{b} = {a * b % v} (mod {v}) is not in {sorted(elems)}"
                    )
        return cls(v, tuple(sorted(elems)))


def generate_subgroup(v: int, generators: Iterable[int]) -> SubgroupH:
    """Smallest multiplicatively closed subset of Z_v* holding the generators."""
    check_modulus(v)
    gens = [int(g) % v for g in generators]
    for g in gens:
        if gcd(g, v) != 1:
            raise NonUnitGenerator(f"generator {g} is not a unit modulo {v}")
    seen = {1 % v}
    frontier = [1 % v]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g % v
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return SubgroupH(v, tuple(sorted(seen)))


@dataclass(frozen=True)
class OrbitTable:
    """Partition of Z_v into orbits of a subgroup acting by multiplication.

    Orbits are sorted lists ordered by their representative, which is the
    smallest element of the orbit; orbit 0 is always ``(0,)``.
    """

    v: int
    subgroup: SubgroupH
    orbits: tuple[tuple[int, ...], ...]
    rep_of: dict = field(compare=False, repr=False)
    index_of: tuple[int, ...] = field(compare=False, repr=False)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(o[0] for o in self.orbits)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def orbit_of(self, a: int) -> tuple[int, ...]:
        return self.orbits[self.index_of[a % self.v]]

    def negation_partner(self) -> tuple[int, ...]:
        """Index of the orbit -O for each orbit O."""
        return tuple(self.index_of[(-o[0]) % self.v] for o in self.orbits)


def orbit_table(v: int, h: SubgroupH) -> OrbitTable:
    check_modulus(v)
    if h.v != v:
        raise ValueError(f"subgroup lives in Z_{h.v}, not Z_{v}")
    index_of = [-1] * v
    orbits = []
    for a in range(v):
        if index_of[a] >= 0:
            continue
        orb = tuple(sorted({a * m % v for m in h.elements}))
        for b in orb:
            index_of[b] = len(orbits)
        orbits.append(orb)
    rep_of = {a: orbits[index_of[a]][0] for a in range(v)}
    return OrbitTable(v, h, tuple(orbits), rep_of, tuple(index_of))
