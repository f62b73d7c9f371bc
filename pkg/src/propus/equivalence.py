"""Canonical forms of difference families under the elementary moves.

The moves are: translate one block, negate one block, multiply every
block by a unit, and swap two blocks of equal size. The canonical form
takes, for each unit a, every block to the lexicographically least
translate of a*X or -a*X, sorts the blocks by (size, contents), and keeps
the least result over all units.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .families import DifferenceFamily
from .paramsets import PropusParameterSet
from .residues import ResidueSet, unit_group


@dataclass(frozen=True)
class CanonicalForm:
    v: int
    sizes: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    # witness: blocks[n] = sign * multiplier * X[source] + translate
    multiplier: int = field(default=1, compare=False)
    moves: tuple[tuple[int, int, int], ...] = field(default=(), compare=False)


def _least_translate_key(x: np.ndarray, v: int) -> bytes:
    """Byte key of the lexicographically least translate of the set ``x``.

    The least translate contains 0, so only translates by -a for a in x
    compete. Big-endian words make byte order agree with integer order.
    """
    k = len(x)
    if k == 0:
        return b""
    y = np.sort(x)
    d = (y[None, :] - y[:, None]) % v
    d.sort(axis=1)
    raw = d.astype(">u4").tobytes()
    w = 4 * k
    return min(raw[i * w : (i + 1) * w] for i in range(k))


def _key_to_tuple(key: bytes) -> tuple[int, ...]:
    return tuple(int(a) for a in np.frombuffer(key, dtype=">u4"))


def _normalize_complements(blocks):
    return [b.complement() if 2 * len(b) > b.v else b for b in blocks]


def canonical_form(f: DifferenceFamily, complements: bool = False) -> CanonicalForm:
    """Deterministic representative of the equivalence class of ``f``.

    With ``complements`` every block larger than v/2 is first replaced by its
    complement; that is not one of the elementary moves, so it is opt-in.
    """
    v = f.v
    blocks = _normalize_complements(f.blocks) if complements else list(f.blocks)
    units = unit_group(v)
    arrays = [np.array(b.elements, dtype=np.int64) for b in blocks]

    # least translate of beta*X_i for every unit beta
    keys = []
    for x in arrays:
        keys.append({b: _least_translate_key((x * b) % v, v) for b in units})

    best = None
    best_alpha = None
    for a in units:
        neg = (v - a) % v
        cand = tuple(
            sorted((len(x), min(kd[a], kd[neg])) for x, kd in zip(arrays, keys))
        )
        if best is None or cand < best:
            best, best_alpha = cand, a

    canon = tuple(_key_to_tuple(key) for _, key in best)
    moves = _witness(blocks, canon, best_alpha, v)
    return CanonicalForm(
        v=v,
        sizes=tuple(s for s, _ in best),
        blocks=canon,
        multiplier=best_alpha,
        moves=moves,
    )


def _witness(blocks, canon, alpha, v):
    used = set()
    moves = []
    for target in canon:
        tset = ResidueSet(v, target)
        for i, b in enumerate(blocks):
            if i in used or len(b) != len(target):
                continue
            hit = None
            for sign in (1, -1):
                y = b.scale(sign * alpha)
                for a in (y.elements or (0,)):
                    if y.translate(-a) == tset:
                        hit = (i, sign, (-a) % v)
                        break
                if hit:
                    break
            if hit:
                used.add(i)
                moves.append(hit)
                break
    return tuple(moves)


def equivalent(f: DifferenceFamily, g: DifferenceFamily) -> bool:
    if f.v != g.v or sorted(f.params.k) != sorted(g.params.k):
        return False
    return canonical_form(f) == canonical_form(g)


# elementary moves, used to build equivalent families


def _with_blocks(f: DifferenceFamily, blocks, params=None) -> DifferenceFamily:
    return DifferenceFamily.from_blocks(params or f.params, blocks, f.subgroup)


def translate_block(f: DifferenceFamily, i: int, g: int) -> DifferenceFamily:
    blocks = list(f.blocks)
    blocks[i] = blocks[i].translate(g)
    return _with_blocks(f, blocks)


def negate_block(f: DifferenceFamily, i: int) -> DifferenceFamily:
    blocks = list(f.blocks)
    blocks[i] = blocks[i].scale(-1)
    return _with_blocks(f, blocks)


def apply_automorphism(f: DifferenceFamily, alpha: int) -> DifferenceFamily:
    if gcd(alpha, f.v) != 1:
        raise ValueError(f"{alpha} is not a unit modulo {f.v}")
    return _with_blocks(f, [b.scale(alpha) for b in f.blocks])


def swap_blocks(f: DifferenceFamily, i: int, j: int) -> DifferenceFamily:
    if len(f.blocks[i]) != len(f.blocks[j]):
        raise ValueError("only blocks of equal size may be exchanged")
    blocks = list(f.blocks)
    blocks[i], blocks[j] = blocks[j], blocks[i]
    k = list(f.params.k)
    k[i], k[j] = k[j], k[i]
    return _with_blocks(f, blocks, PropusParameterSet(f.v, tuple(k), f.params.lam))


def random_moves(f: DifferenceFamily, n: int, rng: random.Random) -> DifferenceFamily:
    """Apply ``n`` randomly chosen elementary moves."""
    units = unit_group(f.v)
    for _ in range(n):
        move = rng.randrange(4)
        if move == 0:
            f = translate_block(f, rng.randrange(4), rng.randrange(f.v))
        elif move == 1:
            f = negate_block(f, rng.randrange(4))
        elif move == 2:
            f = apply_automorphism(f, rng.choice(units))
        else:
            pairs = [
                (i, j)
                for i in range(4)
                for j in range(i + 1, 4)
                if len(f.blocks[i]) == len(f.blocks[j])
            ]
            if pairs:
                i, j = rng.choice(pairs)
                f = swap_blocks(f, i, j)
    return f
