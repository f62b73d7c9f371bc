"""Exhaustive orbit-method search for propus difference families.

Blocks are unions of orbits of a subgroup H of units, so each block's
autocorrelation count N_X(s) = |X ∩ (X + s)| is constant on H-orbits of
shifts and is stored once per nontrivial orbit. A family (X1, X2, X2, X4)
is found when N_1 + 2 N_2 + N_4 = lambda on every shift orbit.

The block that must be symmetric comes from a small pool (negation pairs
the orbits). For each of its members and each X2 candidate the required
count vector of the remaining block is looked up in a table keyed by a
linear 64-bit hash; every hash hit is confirmed on the exact vectors.
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import chain, combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .equivalence import canonical_form
from .errors import InfeasibleParams
from .families import BlockReps, DifferenceFamily
from .paramsets import PropusParameterSet, h_feasible, validate_params
from .residues import OrbitTable, generate_subgroup, orbit_table

log = logging.getLogger(__name__)

ROLES = ("X1", "X4")
_ROLE_ALIASES = {"first": "X1", "last": "X4", "x1": "X1", "x4": "X4"}
_CHUNK = 8
_ROW_BATCH = 8192
_HASH_SEED = 0x5EED


def _combination_array(n: int, r: int) -> np.ndarray:
    count = comb(n, r)
    flat = np.fromiter(
        chain.from_iterable(combinations(range(n), r)), dtype=np.int32, count=count * r
    )
    return flat.reshape(count, r)


def _units(t: OrbitTable, symmetric_only: bool) -> list[list[int]]:
    """Orbit groups chosen together: single orbits, or {O, -O} pairs."""
    if not symmetric_only:
        return [[i] for i in range(len(t.orbits))]
    partner = t.negation_partner()
    out = []
    for i, j in enumerate(partner):
        if i == j:
            out.append([i])
        elif i < j:
            out.append([i, j])
    return out


def invariant_indicators(t: OrbitTable, k: int, symmetric_only: bool = False) -> np.ndarray:
    """0/1 matrix with one row per union of orbits of total size ``k``.

    Columns follow the orbit order of ``t``. Rows come out in a fixed order.
    """
    norb = len(t.orbits)
    units = _units(t, symmetric_only)
    usize = [sum(t.sizes[o] for o in u) for u in units]
    unit_ind = np.zeros((len(units), norb), dtype=np.uint8)
    for n, u in enumerate(units):
        unit_ind[n, u] = 1

    by_size: dict[int, list[int]] = {}
    for n, s in enumerate(usize):
        by_size.setdefault(s, []).append(n)
    sizes = sorted(by_size)

    parts = []

    def compose(idx, remaining, chosen):
        if idx == len(sizes):
            if remaining == 0:
                parts.append(list(chosen))
            return
        s = sizes[idx]
        for c in range(min(len(by_size[s]), remaining // s) + 1):
            chosen.append(c)
            compose(idx + 1, remaining - c * s, chosen)
            chosen.pop()

    if k >= 0:
        compose(0, k, [])

    blocks = []
    for counts in parts:
        rows = np.zeros((1, norb), dtype=np.uint8)
        for s, c in zip(sizes, counts):
            members = np.array(by_size[s], dtype=np.int32)
            combo = members[_combination_array(len(members), c)]
            group = unit_ind[combo].sum(axis=1, dtype=np.uint8)
            rows = (rows[:, None, :] + group[None, :, :]).reshape(-1, norb)
        blocks.append(rows)
    if not blocks:
        return np.zeros((0, norb), dtype=np.uint8)
    return np.concatenate(blocks)


def _row_reps(t: OrbitTable, row) -> tuple[int, ...]:
    reps = t.representatives
    return tuple(reps[i] for i in np.flatnonzero(row))


def enumerate_invariant_subsets(
    t: OrbitTable, k: int, symmetric_only: bool = False
) -> Iterator[BlockReps]:
    """All unions of H-orbits of size ``k``; with ``symmetric_only`` only those with -X = X."""
    for row in invariant_indicators(t, k, symmetric_only):
        yield BlockReps(t.v, _row_reps(t, row))


def orbit_pair_counts(t: OrbitTable) -> np.ndarray:
    """C[a, b, j] = #{y in O_a : y - s_j in O_b}, s_j the j-th nontrivial orbit rep.

    For a union X of orbits, N_X(s_j) = sum over a, b in X of C[a, b, j].
    """
    v = t.v
    norb = len(t.orbits)
    shifts = [o[0] for o in t.orbits[1:]]
    c = np.zeros((norb, norb, len(shifts)), dtype=np.int64)
    idx = t.index_of
    for a, orb in enumerate(t.orbits):
        for y in orb:
            for j, s in enumerate(shifts):
                c[a, idx[(y - s) % v], j] += 1
    return c


def compressed_counts(indicators: np.ndarray, pair_counts: np.ndarray) -> np.ndarray:
    """N_X over the nontrivial shift orbits for every indicator row (exact)."""
    m, norb = indicators.shape
    nshift = pair_counts.shape[2]
    flat = pair_counts.reshape(norb, norb * nshift).astype(np.float64)
    out = np.empty((m, nshift), dtype=np.int32)
    for lo in range(0, m, _ROW_BATCH):
        ind = indicators[lo : lo + _ROW_BATCH].astype(np.float64)
        partial = (ind @ flat).reshape(len(ind), norb, nshift)
        out[lo : lo + _ROW_BATCH] = np.rint(np.einsum("mb,mbj->mj", ind, partial))
    return out


def expand_counts(t: OrbitTable, compressed) -> list[int]:
    """Full N_X(s) for s in [0, v) from the per-orbit vector; entry 0 is left 0."""
    full = [0] * t.v
    for j, orb in enumerate(t.orbits[1:]):
        for s in orb:
            full[s] = int(compressed[j])
    return full


@dataclass
class CandidatePool:
    role: str
    k: int
    table: OrbitTable
    indicators: np.ndarray
    counts: np.ndarray

    def __len__(self):
        return len(self.indicators)

    def reps(self, i: int) -> BlockReps:
        return BlockReps(self.table.v, _row_reps(self.table, self.indicators[i]))

    @property
    def entries(self):
        return [(self.reps(i), tuple(int(x) for x in self.counts[i])) for i in range(len(self))]


def build_pool(t: OrbitTable, role: str, k: int, symmetric_only: bool, pair_counts=None) -> CandidatePool:
    if pair_counts is None:
        pair_counts = orbit_pair_counts(t)
    ind = invariant_indicators(t, k, symmetric_only)
    return CandidatePool(role, k, t, ind, compressed_counts(ind, pair_counts))


@dataclass
class SearchSpec:
    v: int
    generators: Sequence[int]
    params: PropusParameterSet
    symmetric_role: str = "either"
    dedupe: bool = False
    limit: int = 0
    threads: int = 1

    def roles(self) -> tuple[str, ...]:
        role = _ROLE_ALIASES.get(self.symmetric_role, self.symmetric_role)
        if role == "either":
            return ROLES
        if role not in ROLES:
            raise ValueError(f"symmetric_role must be X1, X4 or either, got {self.symmetric_role!r}")
        return (role,)


@dataclass
class SearchResult:
    families: list[DifferenceFamily]
    exhaustive: bool
    spec: SearchSpec = field(repr=False)

    def __iter__(self):
        return iter(self.families)

    def __len__(self):
        return len(self.families)


def _hash_weights(nshift: int) -> np.ndarray:
    rng = np.random.default_rng(_HASH_SEED)
    return rng.integers(1, 2**63, size=nshift, dtype=np.uint64) * np.uint64(2) + np.uint64(1)


def _hash_rows(counts: np.ndarray, w: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        return (counts.astype(np.uint64) * w[None, :]).sum(axis=1, dtype=np.uint64)


class _HashIndex:
    """Rows of a pool grouped by hash value."""

    def __init__(self, hashes: np.ndarray):
        self.order = np.argsort(hashes, kind="stable")
        self.keys, self.starts, self.sizes = np.unique(
            hashes[self.order], return_index=True, return_counts=True
        )

    def members(self, g: int) -> np.ndarray:
        return self.order[self.starts[g] : self.starts[g] + self.sizes[g]]

    def lookup(self, targets: np.ndarray):
        """Positions i in ``targets`` and groups g with keys[g] == targets[i]."""
        pos = np.searchsorted(self.keys, targets)
        pos_c = np.minimum(pos, len(self.keys) - 1)
        hit = np.flatnonzero((pos < len(self.keys)) & (self.keys[pos_c] == targets))
        return hit, pos_c[hit]


class _Join:
    """Probe state shared read-only by all workers of one role run.

    For a symmetric block S the other two must satisfy
    N_free + 2 N_pair = lambda - N_S, matched first on hashes of the
    distinct count vectors on each side.
    """

    def __init__(self, lam, sym: CandidatePool, pair: CandidatePool, free: CandidatePool):
        self.lam = lam
        self.sym, self.pair, self.free = sym, pair, free
        w = _hash_weights(pair.counts.shape[1])
        with np.errstate(over="ignore"):
            self.base = np.uint64(lam) * w.sum(dtype=np.uint64)
            self.h_sym = _hash_rows(sym.counts, w)
            self.pair_index = _HashIndex(_hash_rows(pair.counts, w) * np.uint64(2))
        self.free_index = _HashIndex(_hash_rows(free.counts, w))
        self.pair2 = 2 * pair.counts

    def probe(self, s_indices) -> list[tuple[int, int, int]]:
        hits = []
        fi_, pi_ = self.free_index, self.pair_index
        query_free = len(fi_.keys) <= len(pi_.keys)
        for si in s_indices:
            with np.errstate(over="ignore"):
                c = self.base - self.h_sym[si]
                if query_free:
                    q, g_other = pi_.lookup(c - fi_.keys)
                    matches = zip(q, g_other)
                else:
                    q, g_other = fi_.lookup(c - pi_.keys)
                    matches = ((gf, gp) for gp, gf in zip(q, g_other))
            need = self.lam - self.sym.counts[si]
            for gf, gp in matches:
                cf, cp = fi_.members(gf), pi_.members(gp)
                total = self.free.counts[cf][:, None, :] + self.pair2[cp][None, :, :]
                ok_f, ok_p = np.nonzero(np.all(total == need, axis=2))
                hits.extend((int(si), int(cp[b]), int(cf[a])) for a, b in zip(ok_f, ok_p))
        return hits


def _check_spec(spec: SearchSpec) -> OrbitTable:
    p = spec.params
    if p.v != spec.v:
        raise InfeasibleParams(f"parameter set is for v={p.v}, search is for v={spec.v}")
    bad = validate_params(p)
    if bad:
        raise InfeasibleParams(f"{p} is not a GS-parameter set: {'; '.join(bad)}")
    if p.k[1] != p.k[2]:
        raise InfeasibleParams(f"{p}: the search needs k2 = k3")
    h = generate_subgroup(spec.v, spec.generators)
    if h.is_trivial:
        warnings.warn("subgroup H is trivial; the orbit method degenerates to a full search")
    t = orbit_table(spec.v, h)
    if not h_feasible(p, t):
        raise InfeasibleParams(f"{p} is not feasible for H={list(h.elements)}")
    return t


def search(spec: SearchSpec) -> SearchResult:
    """Find every H-invariant propus family (X1, X2, X2, X4) for ``spec``.

    Output is sorted by representative lists and does not depend on the
    thread count. With ``limit`` > 0 the scan stops once that many families
    are found and the result is marked non-exhaustive.
    """
    t = _check_spec(spec)
    p = spec.params
    k1, k2, _, k4 = p.k
    pc = orbit_pair_counts(t)
    pools: dict = {}

    def pool(role, k, sym):
        key = (k, sym)
        if key not in pools:
            pools[key] = build_pool(t, role, k, sym, pc)
        return pools[key]

    found: list[DifferenceFamily] = []
    seen = set()
    stopped = False
    threads = max(1, int(spec.threads))
    roles = spec.roles()
    for role in roles:
        if role == "X1":
            sym, free = pool("X1", k1, True), pool("X4", k4, False)
        else:
            sym, free = pool("X4", k4, True), pool("X1", k1, False)
        pair = pool("X2", k2, False)
        log.info("role %s: %d symmetric x %d paired x %d free", role, len(sym), len(pair), len(free))
        if not (len(sym) and len(pair) and len(free)):
            continue
        join = _Join(p.lam, sym, pair, free)
        chunks = [range(i, min(i + _CHUNK, len(sym))) for i in range(0, len(sym), _CHUNK)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for lo in range(0, len(chunks), threads):
                for hits in ex.map(join.probe, chunks[lo : lo + threads]):
                    for si, pi, fi in hits:
                        if role == "X1":
                            r1, r4 = sym.reps(si), free.reps(fi)
                        else:
                            r1, r4 = free.reps(fi), sym.reps(si)
                        reps = (r1.reps, pair.reps(pi).reps, r4.reps)
                        if reps not in seen:
                            seen.add(reps)
                            found.append(DifferenceFamily.from_reps(p, t, *reps))
                if spec.limit and len(found) >= spec.limit:
                    stopped = True
                    break
        if stopped:
            break

    exhaustive = not stopped
    if spec.limit and len(found) > spec.limit:
        found = found[: spec.limit]
        exhaustive = False
    found.sort(key=lambda f: f.rep_lists())
    if spec.dedupe:
        classes = set()
        unique = []
        for f in found:
            cf = canonical_form(f)
            if cf not in classes:
                classes.add(cf)
                unique.append(f)
        found = unique
    return SearchResult(found, exhaustive, spec)
