"""Text, JSON and matrix file formats.

Family text format, one record per parameter set::

    (v;k1,k2,k3,k4;lambda), H={h1,h2,...}
    [r,...],[r,...],[r,...];
    [r,...],[r,...],[r,...]

Each family lists the orbit representatives of X1, X2 (= X3) and X4.
Families of one record are separated by ``;``; whitespace, including line
breaks inside a family, is insignificant. Records are usually separated by
blank lines but a new ``(`` header is enough.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from pathlib import Path

import jsonschema
import numpy as np

from .errors import BlockSizeMismatch, FamilySyntaxError, SchemaError
from .families import DifferenceFamily, verify_family
from .paramsets import PropusParameterSet
from .residues import SubgroupH, orbit_table

Family3 = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


@dataclass
class FamilyRecord:
    params: PropusParameterSet
    subgroup: SubgroupH
    families: list[Family3]
    # H as written in the source, kept for faithful re-serialization
    subgroup_listing: tuple[int, ...] = ()
    line: int = 0

    def __post_init__(self):
        if not self.subgroup_listing:
            self.subgroup_listing = self.subgroup.elements

    def difference_families(self) -> list[DifferenceFamily]:
        t = orbit_table(self.params.v, self.subgroup)
        return [DifferenceFamily.from_reps(self.params, t, *fam) for fam in self.families]


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.n = len(text)

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, msg, pos=None):
        line, col = self.where(pos)
        raise FamilySyntaxError(msg, line, col)

    def skip_ws(self):
        while self.pos < self.n and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < self.n else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, found {got!r}")
        self.pos += 1

    def accept(self, ch) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < self.n and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            got = self.text[self.pos] if self.pos < self.n else "end of input"
            self.fail(f"expected an integer, found {got!r}")
        return int(self.text[start : self.pos])

    def int_list(self, close) -> list[int]:
        out = []
        if self.accept(close):
            return out
        out.append(self.integer())
        while self.accept(","):
            out.append(self.integer())
        self.expect(close)
        return out


_ALLOWED = re.compile(r"^[\s\d;,()\[\]{}=H]*$")


def _strip_unrecognized(text: str) -> str:
    lines = text.split("\n")
    for i, line in enumerate(lines):
        if not _ALLOWED.match(line):
            warnings.warn(f"line {i + 1}: skipping unrecognized text {line.strip()[:40]!r}")
            lines[i] = ""
    return "\n".join(lines)


def parse_families(text: str, lenient: bool = False) -> list[FamilyRecord]:
    """Parse records in the family notation and validate them.

    Checks subgroup closure, that every listed integer is an orbit minimum,
    and that the expanded block sizes match the header. With ``lenient``,
    lines containing anything other than notation characters are skipped
    with a warning.
    """
    if lenient:
        text = _strip_unrecognized(text)
    sc = _Scanner(text)
    records = []
    while sc.peek():
        start = sc.pos
        sc.skip_ws()
        header_line = sc.where()[0]
        sc.expect("(")
        v = sc.integer()
        sc.expect(";")
        k = [sc.integer()]
        for _ in range(3):
            sc.expect(",")
            k.append(sc.integer())
        sc.expect(";")
        lam = sc.integer()
        sc.expect(")")
        sc.expect(",")
        sc.expect("H")
        sc.expect("=")
        sc.expect("{")
        listing = sc.int_list("}")

        fams = []
        while sc.peek() == "[":
            fam = []
            for i in range(3):
                if i:
                    sc.expect(",")
                sc.expect("[")
                fam.append(tuple(sc.int_list("]")))
            fams.append(tuple(fam))
            if not sc.accept(";"):
                break
        if sc.peek() not in ("", "("):
            sc.fail(f"unexpected {sc.peek()!r} after the families of this record")
        if not fams:
            sc.fail("record has no families", start)

        try:
            params = PropusParameterSet(v, tuple(k), lam)
        except ValueError as exc:
            line, col = sc.where(start)
            raise FamilySyntaxError(str(exc), line, col) from exc
        subgroup = SubgroupH.from_elements(v, listing)
        rec = FamilyRecord(params, subgroup, fams, tuple(listing), header_line)
        _check_sizes(rec)
        records.append(rec)
    return records


def _check_sizes(rec: FamilyRecord):
    for n, fam in enumerate(rec.difference_families(), 1):
        for i, block in enumerate(fam.blocks):
            if len(block) != rec.params.k[i]:
                raise BlockSizeMismatch(
                    f"record {rec.params} (line {rec.line}), family {n}: "
                    f"X{i + 1} expands to {len(block)} elements, header says {rec.params.k[i]}"
                )


def _fmt(xs) -> str:
    return ",".join(str(x) for x in xs)


def serialize_record(rec: FamilyRecord) -> str:
    p = rec.params
    head = f"({p.v};{_fmt(p.k)};{p.lam}), H={{{_fmt(rec.subgroup_listing)}}}"
    fams = ";\n".join(",".join(f"[{_fmt(b)}]" for b in fam) for fam in rec.families)
    return f"{head}\n{fams}\n"


def serialize_family(rec_or_records) -> str:
    """Serialize one record or a list of records to the text format."""
    if isinstance(rec_or_records, FamilyRecord):
        return serialize_record(rec_or_records)
    return "\n".join(serialize_record(r) for r in rec_or_records)


def record_from_family(f: DifferenceFamily) -> FamilyRecord:
    if f.subgroup is None:
        raise ValueError("family has no subgroup; it cannot be written in orbit notation")
    return FamilyRecord(f.params, f.subgroup, [f.rep_lists()])


def records_from_families(families) -> list[FamilyRecord]:
    """Group families by (parameter set, subgroup), keeping first-seen order."""
    groups: dict = {}
    for f in families:
        key = (f.params, f.subgroup)
        if key not in groups:
            groups[key] = FamilyRecord(f.params, f.subgroup, [])
        groups[key].families.append(f.rep_lists())
    return list(groups.values())


_int_list = {"type": "array", "items": {"type": "integer", "minimum": 0}}
JSON_SCHEMA = {
    "type": "object",
    "required": ["records"],
    "properties": {
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["v", "k", "lambda", "subgroup", "families"],
                "properties": {
                    "v": {"type": "integer", "minimum": 2},
                    "k": {**_int_list, "minItems": 4, "maxItems": 4},
                    "lambda": {"type": "integer"},
                    "subgroup": {**_int_list, "minItems": 1},
                    "families": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["reps"],
                            "properties": {
                                "reps": {
                                    "type": "array",
                                    "items": _int_list,
                                    "minItems": 3,
                                    "maxItems": 3,
                                },
                                "blocks": {
                                    "type": "array",
                                    "items": _int_list,
                                    "minItems": 4,
                                    "maxItems": 4,
                                },
                                "verdict": {"type": "object"},
                            },
                        },
                    },
                },
            },
        }
    },
}


def to_json(records, expanded: bool = False, verdicts: bool = False, indent=None) -> str:
    if isinstance(records, FamilyRecord):
        records = [records]
    out = []
    for rec in records:
        p = rec.params
        fams = []
        objs = rec.difference_families() if (expanded or verdicts) else [None] * len(rec.families)
        for reps, f in zip(rec.families, objs):
            item = {"reps": [list(b) for b in reps]}
            if expanded:
                item["blocks"] = [list(b.elements) for b in f.blocks]
            if verdicts:
                vd = verify_family(f)
                item["verdict"] = {
                    "is_gs": vd.is_gs,
                    "is_propus": vd.is_propus,
                    "symmetric_blocks": vd.symmetric_blocks,
                }
            fams.append(item)
        out.append(
            {
                "v": p.v,
                "k": list(p.k),
                "lambda": p.lam,
                "subgroup": list(rec.subgroup_listing),
                "families": fams,
            }
        )
    return json.dumps({"records": out}, indent=indent)


def from_json(text: str) -> list[FamilyRecord]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, JSON_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{path or '<root>'}: {exc.message}") from exc
    records = []
    for r in doc["records"]:
        try:
            params = PropusParameterSet(r["v"], tuple(r["k"]), r["lambda"])
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        subgroup = SubgroupH.from_elements(r["v"], r["subgroup"])
        fams = [tuple(tuple(b) for b in fam["reps"]) for fam in r["families"]]
        rec = FamilyRecord(params, subgroup, fams, tuple(r["subgroup"]))
        _check_sizes(rec)
        records.append(rec)
    return records


def load_records(path, lenient: bool = False) -> list[FamilyRecord]:
    """Read a family file, JSON if its first non-blank character is ``{``."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_families(text, lenient=lenient)


def matrix_text(entries) -> str:
    m = np.asarray(entries)
    n = m.shape[0]
    rows = ["".join("+" if x > 0 else "-" for x in row) for row in m]
    return f"{n}\n" + "".join(r + "\n" for r in rows)


def write_matrix(h, sink=None) -> str:
    """Render a +-1 matrix as ``n`` followed by ``n`` rows over ``{+,-}``.

    ``h`` is a :class:`~propus.hadamard.HadamardCandidate` or an array.
    ``sink`` may be a path or a writable text file; the text is returned
    either way.
    """
    entries = getattr(h, "entries", h)
    m = np.asarray(entries)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.all(np.abs(m) == 1):
        raise ValueError("write_matrix needs a square matrix with entries +-1")
    text = matrix_text(m)
    if sink is None:
        return text
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", newline="\n") as fh:
            fh.write(text)
    return text


def read_matrix(text: str) -> np.ndarray:
    lines = text.split("\n")
    n = int(lines[0])
    rows = lines[1 : n + 1]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("matrix text does not match its declared order")
    return np.array([[1 if c == "+" else -1 for c in r] for r in rows], dtype=np.int8)
