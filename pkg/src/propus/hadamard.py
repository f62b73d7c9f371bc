"""Circulants, the propus array and exact Hadamard verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoValidArrangement
from .families import DifferenceFamily, is_symmetric
from .residues import ResidueSet
from .sequences import paf_values, to_sequence


def circulant(first_row) -> np.ndarray:
    """Matrix with entry (i, j) = first_row[(j - i) mod v]."""
    row = np.asarray(first_row)
    v = len(row)
    idx = (np.arange(v)[None, :] - np.arange(v)[:, None]) % v
    return row[idx]


def set_circulant(x: ResidueSet) -> np.ndarray:
    return circulant(np.array(to_sequence(x).entries, dtype=np.int8))


def back_diagonal(v: int) -> np.ndarray:
    """R with R[i, j] = 1 iff i + j = v - 1, i.e. the reversal permutation."""
    return np.eye(v, dtype=np.int8)[::-1].copy()


@dataclass
class HadamardCandidate:
    order: int
    entries: np.ndarray
    is_symmetric: bool = False
    is_hadamard: bool = False


class HadamardVerdict(NamedTuple):
    is_symmetric: bool
    is_hadamard: bool


def arrange_for_propus(f: DifferenceFamily) -> tuple[ResidueSet, ResidueSet, ResidueSet, ResidueSet]:
    """Order the blocks as (A1, A2, A3, A4) with A2 = A3 and A1 symmetric.

    Among valid arrangements the first equal pair (in block order) wins, and
    the symmetric block with the lower index is taken as A1.
    """
    b = f.blocks
    for i in range(4):
        for j in range(i + 1, 4):
            if b[i] != b[j]:
                continue
            rest = [r for r in range(4) if r not in (i, j)]
            for s in rest:
                if is_symmetric(b[s]):
                    other = rest[0] if rest[1] == s else rest[1]
                    return (b[s], b[i], b[j], b[other])
    raise NoValidArrangement("no equal pair of blocks with a symmetric block outside it")


def build_propus(blocks, v: int | None = None) -> HadamardCandidate:
    """Plug four blocks into the propus array and verify the result.

    ``blocks`` are ResidueSets (or +-1 circulant matrices) in the order
    (A1, A2, A3, A4).
    """
    if len(blocks) != 4:
        raise DimensionMismatch(f"expected four blocks, got {len(blocks)}")
    mats = []
    for b in blocks:
        if isinstance(b, ResidueSet):
            if v is not None and b.v != v:
                raise DimensionMismatch(f"block lives in Z_{b.v}, expected Z_{v}")
            mats.append(set_circulant(b))
        else:
            mats.append(np.asarray(b, dtype=np.int8))
    size = mats[0].shape[0] if v is None else v
    if any(m.shape != (size, size) for m in mats):
        raise DimensionMismatch(f"all blocks must be {size}x{size}")
    a1, a2, a3, a4 = (m.astype(np.int8) for m in mats)

    # with R the reversal, A @ R flips columns and R @ A flips rows
    def xr(m):
        return m[:, ::-1]

    def rx(m):
        return m[::-1, :]

    h = np.block(
        [
            [-a1, xr(a2), xr(a3), xr(a4)],
            [xr(a3), rx(a4), a1, -rx(a2)],
            [xr(a2), a1, -rx(a4), rx(a3)],
            [xr(a4), -rx(a3), rx(a2), a1],
        ]
    ).astype(np.int8)
    cand = HadamardCandidate(4 * size, h)
    cand.is_symmetric, cand.is_hadamard = verify_hadamard(cand)
    return cand


def propus_matrix(f: DifferenceFamily) -> HadamardCandidate:
    return build_propus(arrange_for_propus(f), f.v)


def verify_hadamard(h) -> HadamardVerdict:
    """Exact check of H = H^T and H H^T = nI over every Gram entry.

    Entries are at most n in magnitude, so float64 accumulation is exact.
    """
    m = np.asarray(getattr(h, "entries", h))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return HadamardVerdict(False, False)
    n = m.shape[0]
    if not np.all(np.abs(m) == 1):
        return HadamardVerdict(bool(np.array_equal(m, m.T)), False)
    mf = m.astype(np.float64)
    gram = mf @ mf.T
    ok = bool(np.array_equal(gram, n * np.eye(n)))
    return HadamardVerdict(bool(np.array_equal(m, m.T)), ok)


def gs_condition(blocks) -> bool:
    """Sum of the blocks' periodic autocorrelations vanishes off the peak."""
    total = None
    for x in blocks:
        vals = paf_values(to_sequence(x).entries)
        total = vals if total is None else total + vals
    return bool(np.all(total[1:] == 0))
