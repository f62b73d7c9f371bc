"""The bundled families of the three tables, plus recorded side claims."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files

from .families import DifferenceFamily
from .notation import FamilyRecord, parse_families

TABLES = (1, 2, 3)


def table_text(n: int) -> str:
    if n not in TABLES:
        raise ValueError(f"no table {n}; choose from {TABLES}")
    return files("propus.data").joinpath(f"table{n}.txt").read_text()


@lru_cache(maxsize=None)
def load_table(n: int) -> tuple[FamilyRecord, ...]:
    return tuple(parse_families(table_text(n)))


@lru_cache(maxsize=None)
def annotations() -> dict:
    return json.loads(files("propus.data").joinpath("annotations.json").read_text())


@dataclass(frozen=True)
class CorpusEntry:
    table: int
    record: FamilyRecord
    index: int  # 1-based position of the family within its record
    family: DifferenceFamily

    @property
    def label(self) -> str:
        return f"Table {self.table} {self.record.params} #{self.index}"


def corpus_entries(tables=TABLES) -> list[CorpusEntry]:
    out = []
    for n in tables:
        for rec in load_table(n):
            for i, fam in enumerate(rec.difference_families(), 1):
                out.append(CorpusEntry(n, rec, i, fam))
    return out


def find_record(table: int, header: str, occurrence: int = 0) -> FamilyRecord:
    """Record of ``table`` whose parameter set prints as ``header``."""
    hits = [r for r in load_table(table) if str(r.params) == header]
    if not hits:
        raise KeyError(f"no record {header} in table {table}")
    return hits[occurrence]
