"""Command-line interface: ``propus <command> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage
errors or unreadable input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from . import corpus
from .equivalence import equivalent
from .errors import NoValidArrangement, PropusError
from .families import verify_family
from .hadamard import propus_matrix
from .notation import (
    load_records,
    records_from_families,
    serialize_family,
    to_json,
    write_matrix,
)
from .paramsets import PropusParameterSet, enumerate_propus_params, h_feasible, propus_feasible
from .residues import ResidueSet, generate_subgroup, orbit_table
from .search import SearchSpec, search
from .sequences import paf, to_sequence

BLOCK_POSITIONS = {1: 0, 2: 1, 4: 3}


class UsageError(Exception):
    pass


def default_threads() -> int:
    env = os.environ.get("PROPUS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"PROPUS_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _families(path, lenient=False):
    return [f for rec in load_records(path, lenient=lenient) for f in rec.difference_families()]


def _pick(fams, index: int, path):
    if not 1 <= index <= len(fams):
        raise UsageError(f"{path} holds {len(fams)} families; --index {index} is out of range")
    return fams[index - 1]


def cmd_params(args, out):
    t = orbit_table(args.v, generate_subgroup(args.v, args.h_gen))
    for p in enumerate_propus_params(args.v):
        if h_feasible(p, t):
            note = "" if propus_feasible(p, t) else "  (no symmetric H-invariant X1 or X4)"
            print(f"{p}{note}", file=out)
    return 0


def cmd_orbits(args, out):
    h = generate_subgroup(args.v, args.h_gen)
    t = orbit_table(args.v, h)
    print(f"v={args.v} H={{{','.join(map(str, h.elements))}}} orbits={len(t.orbits)}", file=out)
    for orb in t.orbits:
        print(f"{orb[0]}: {','.join(map(str, orb))}", file=out)
    return 0


def cmd_search(args, out):
    k = args.k
    if len(k) != 4:
        raise UsageError("--k needs four block sizes")
    p = PropusParameterSet(args.v, tuple(k), sum(k) - args.v)
    spec = SearchSpec(
        v=args.v,
        generators=args.h_gen,
        params=p,
        symmetric_role=args.sym_block,
        dedupe=args.dedupe,
        limit=args.limit,
        threads=args.threads or default_threads(),
    )
    t0 = time.perf_counter()
    res = search(spec)
    elapsed = time.perf_counter() - t0
    text = serialize_family(records_from_families(res.families)) if res.families else ""
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    status = "exhaustive" if res.exhaustive else "stopped at --limit, not exhaustive"
    print(f"{len(res)} families ({status}) in {elapsed:.1f}s", file=sys.stderr)
    return 0


def cmd_verify(args, out):
    records = load_records(args.file, lenient=args.lenient)
    failed = 0
    report = []
    for rec in records:
        for i, f in enumerate(rec.difference_families(), 1):
            vd = verify_family(f)
            ok = vd.is_gs and vd.is_propus
            failed += not ok
            report.append((rec, i, vd, ok))
    if args.json:
        out.write(to_json(records, verdicts=True, indent=2) + "\n")
    else:
        for rec, i, vd, ok in report:
            sym = ",".join(f"X{s}" for s in vd.symmetric_blocks) or "none"
            status = "ok" if ok else "FAIL " + vd.details()
            print(f"{rec.params} #{i}: {status} (symmetric: {sym})", file=out)
    return 1 if failed else 0


def cmd_expand(args, out):
    records = load_records(args.file, lenient=args.lenient)
    if args.json:
        out.write(to_json(records, expanded=True, indent=2) + "\n")
        return 0
    for rec in records:
        for i, f in enumerate(rec.difference_families(), 1):
            print(f"{rec.params} #{i}", file=out)
            for n, b in enumerate(f.blocks, 1):
                print(f"X{n}: {','.join(map(str, b.elements))}", file=out)
    return 0


def cmd_hadamard(args, out):
    f = _pick(_families(args.file, args.lenient), args.index, args.file)
    h = propus_matrix(f)
    if args.out:
        write_matrix(h, args.out)
    elif not args.check:
        write_matrix(h, out)
    if args.check:
        print(
            f"order {h.order}: symmetric={h.is_symmetric} hadamard={h.is_hadamard}",
            file=out if args.out else sys.stderr,
        )
        return 0 if (h.is_symmetric and h.is_hadamard) else 1
    return 0


def cmd_classify(args, out):
    if args.set is not None:
        if args.v is None:
            raise UsageError("--set needs --v")
        x = ResidueSet(args.v, args.set)
    else:
        if args.block not in BLOCK_POSITIONS:
            raise UsageError("--block must be 1, 2 or 4")
        f = _pick(_families(args.family, args.lenient), args.index, args.family)
        x = f.blocks[BLOCK_POSITIONS[args.block]]
    prof = paf(to_sequence(x))
    flags = []
    if prof.optimal is not None:
        flags.append("optimal" if prof.optimal else "not optimal")
    flags.append("balanced" if prof.balanced else "not balanced")
    if prof.three_level:
        flags.append("three-level")
    half = x.v // 2
    print(f"v={x.v} |X|={len(x)} sum={x.v - 2 * len(x)}", file=out)
    print("paf: " + ",".join(map(str, prof.values[: half + 1])), file=out)
    print("levels: " + ",".join(map(str, sorted(prof.level_set, reverse=True))), file=out)
    print(", ".join(flags), file=out)
    return 0


def cmd_equivalent(args, out):
    f = _pick(_families(args.file_a), args.index_a, args.file_a)
    g = _pick(_families(args.file_b), args.index_b, args.file_b)
    same = equivalent(f, g)
    print("equivalent" if same else "not equivalent", file=out)
    return 0 if same else 1


def cmd_corpus_check(args, out):
    bad_family = bad_matrix = 0
    n = 0
    for entry in corpus.corpus_entries():
        n += 1
        vd = verify_family(entry.family)
        if not (vd.is_gs and vd.is_propus):
            bad_family += 1
            print(f"{entry.label}: FAIL {vd.details()}", file=out)
            continue
        try:
            h = propus_matrix(entry.family)
        except NoValidArrangement as exc:
            bad_matrix += 1
            print(f"{entry.label}: {exc}", file=out)
            continue
        ok = h.is_symmetric and h.is_hadamard
        bad_matrix += not ok
        if args.verbose or not ok:
            print(
                f"{entry.label}: order {h.order} symmetric={h.is_symmetric} hadamard={h.is_hadamard}",
                file=out,
            )
    if bad_family or bad_matrix:
        print(f"{bad_family} families failed, {bad_matrix} matrices failed, of {n}", file=out)
        return 1
    print(f"{n} families: all families verified; all Hadamard matrices symmetric", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="propus",
        description="Search, verify and assemble propus difference families over Z_v.",
    )
    ap.add_argument("--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_group(p):
        p.add_argument("--v", type=int, required=True, help="modulus")
        p.add_argument("--h-gen", type=_int_list, required=True, help="generators of H, e.g. 29 or 2,3")
        return p

    p = with_group(sub.add_parser("params", help="list H-feasible propus parameter sets"))
    p.set_defaults(func=cmd_params)
    p = with_group(sub.add_parser("orbits", help="print the orbits of H on Z_v"))
    p.set_defaults(func=cmd_orbits)

    p = with_group(sub.add_parser("search", help="exhaustive orbit-method search"))
    p.add_argument("--k", type=_int_list, required=True, help="K1,K2,K3,K4 with K2 = K3")
    p.add_argument("--sym-block", choices=("first", "last", "either"), default="either")
    p.add_argument("--dedupe", action="store_true", help="one family per equivalence class")
    p.add_argument("--limit", type=int, default=0, help="stop after N families (0: no limit)")
    p.add_argument("--threads", type=int, default=0, help="workers (default: PROPUS_THREADS or cores)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    def with_file(p):
        p.add_argument("file")
        p.add_argument("--lenient", action="store_true", help="skip lines that are not notation")
        return p

    p = with_file(sub.add_parser("verify", help="verify every family in a file"))
    p.add_argument("--json", action="store_true", help="emit JSON with verdicts")
    p.set_defaults(func=cmd_verify)

    p = with_file(sub.add_parser("expand", help="print the expanded blocks"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = with_file(sub.add_parser("hadamard", help="assemble the propus matrix of one family"))
    p.add_argument("--index", type=int, default=1, help="1-based family index in the file")
    p.add_argument("--out")
    p.add_argument("--check", action="store_true", help="verify symmetry and orthogonality")
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("classify", help="autocorrelation profile of one block or set")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="family file")
    src.add_argument("--set", type=_int_list, help="comma-separated residues")
    p.add_argument("--block", type=int, default=2, help="1, 2 or 4")
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--v", type=int)
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equivalent", help="compare two families up to equivalence")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--index-a", type=int, default=1)
    p.add_argument("--index-b", type=int, default=1)
    p.set_defaults(func=cmd_equivalent)

    p = sub.add_parser("corpus-check", help="verify the bundled tables end to end")
    p.set_defaults(func=cmd_corpus_check)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (UsageError, PropusError, OSError, ValueError) as exc:
        print(f"propus {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
