"""GS and propus parameter sets (v; k1, k2, k3, k4; lambda)."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import EvenModulus
from .residues import OrbitTable, check_modulus

# labels reported by validate_params
PAIR_COUNT = "sum k(k-1) = lambda(v-1)"
BLOCK_SUM = "sum k = lambda + v"
SQUARE_SUM = "sum (v-2k)^2 = 4v"


@dataclass(frozen=True, order=True)
class PropusParameterSet:
    v: int
    k: tuple[int, int, int, int]
    lam: int

    def __post_init__(self):
        check_modulus(self.v)
        k = tuple(int(x) for x in self.k)
        if len(k) != 4:
            raise ValueError(f"expected four block sizes, got {len(k)}")
        if any(x < 0 or x > self.v for x in k):
            raise ValueError(f"block sizes {k} must lie in [0, {self.v}]")
        object.__setattr__(self, "k", k)

    def __str__(self) -> str:
        return f"({self.v};{','.join(map(str, self.k))};{self.lam})"


def validate_params(p: PropusParameterSet) -> list[str]:
    """Return the equations violated by ``p`` (empty when it is a GS-parameter set).

    ``lam`` is taken as given and only cross-checked.
    """
    v, k, lam = p.v, p.k, p.lam
    bad = []
    if sum(x * (x - 1) for x in k) != lam * (v - 1):
        bad.append(PAIR_COUNT)
    if sum(k) != lam + v:
        bad.append(BLOCK_SUM)
    if sum((v - 2 * x) ** 2 for x in k) != 4 * v:
        bad.append(SQUARE_SUM)
    return bad


def is_propus_params(p: PropusParameterSet) -> bool:
    """Two block sizes coincide (the tables always pair k2 with k3)."""
    return len(set(p.k)) < 4


def enumerate_propus_params(v: int) -> list[PropusParameterSet]:
    """All normalized propus parameter sets for ``v``.

    Normalized means k_i <= v/2, k2 = k3 and k1 >= k4. Writing a_i = v - 2k_i
    these are the solutions of a1^2 + 2*a2^2 + a4^2 = 4v in positive odd
    integers with a1 <= a4.
    """
    check_modulus(v)
    if v % 2 == 0:
        raise EvenModulus(f"v={v} is even; sum (v-2k)^2 = 4v has no solution")
    out = []
    target = 4 * v
    for a2 in range(1, isqrt(target // 2) + 1, 2):
        rest = target - 2 * a2 * a2
        for a1 in range(1, isqrt(rest // 2) + 1, 2):
            sq = rest - a1 * a1
            a4 = isqrt(sq)
            if a4 * a4 != sq or a4 < a1 or a4 % 2 == 0:
                continue
            k1, k2, k4 = (v - a1) // 2, (v - a2) // 2, (v - a4) // 2
            k = (k1, k2, k2, k4)
            out.append(PropusParameterSet(v, k, sum(k) - v))
    return sorted(out, key=lambda p: tuple(-x for x in p.k))


def subset_sums(sizes) -> set[int]:
    reach = {0}
    for s in sizes:
        reach |= {r + s for r in reach}
    return reach


def h_feasible(p: PropusParameterSet, t: OrbitTable) -> bool:
    """Each k_i is the size of some union of orbits of ``t``."""
    if p.v != t.v:
        raise ValueError(f"parameter set has v={p.v}, orbit table has v={t.v}")
    reach = subset_sums(t.sizes)
    return all(x in reach for x in p.k)


def symmetric_sizes(t: OrbitTable) -> set[int]:
    """Sizes of H-invariant subsets X with -X = X."""
    partner = t.negation_partner()
    units = []
    for i, j in enumerate(partner):
        if i == j:
            units.append(t.sizes[i])
        elif i < j:
            units.append(t.sizes[i] + t.sizes[j])
    return subset_sums(units)


def propus_feasible(p: PropusParameterSet, t: OrbitTable) -> bool:
    """H-feasible, and X1 or X4 can be a symmetric H-invariant block."""
    sym = symmetric_sizes(t)
    return h_feasible(p, t) and (p.k[0] in sym or p.k[3] in sym)
