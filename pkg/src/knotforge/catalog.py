"""Embedded knot and family tables (CSV resources under ``knotforge/data``)."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional

EXPECTED_ROWS = {2: 35, 3: 49, 4: 165}


@dataclass(frozen=True)
class Bound:
    """A single value or a set of candidate values such as [2,3] or (2,3,4)."""
    values: tuple
    paren: Optional[str] = None     # None, "square" or "round"

    @property
    def lower(self) -> int:
        return min(self.values)

    @property
    def upper(self) -> int:
        return max(self.values)

    @property
    def exact(self) -> bool:
        return len(self.values) == 1

    def __str__(self) -> str:
        if self.paren is None:
            return str(self.values[0])
        inner = ",".join(map(str, self.values))
        return f"[{inner}]" if self.paren == "square" else f"({inner})"

    @classmethod
    def parse(cls, text: str) -> "Bound":
        t = text.strip()
        m = re.fullmatch(r"([\[(])\s*([\d,\s]+)\s*([\])])", t)
        if m:
            vals = tuple(int(x) for x in m.group(2).split(","))
            if list(vals) != sorted(vals):
                raise ValueError(f"unsorted bound {text!r}")
            return cls(vals, "square" if m.group(1) == "[" else "round")
        return cls((int(t),))


@dataclass(frozen=True)
class KnotRecord:
    name: str
    conway: str
    u: Bound
    a_d: int
    a: Bound
    section: int
    conway_raw: str = ""
    sic: str = ""

    @property
    def crossings(self) -> int:
        return int(self.name.split("_")[0])

    @property
    def paren_style(self) -> str:
        return self.a.paren or "none"


@dataclass(frozen=True)
class FamilyRow:
    name: str
    conway: str
    family: str
    sigma: str
    u: str
    condition: str
    sic: str = ""
    raw: dict = field(default_factory=dict, compare=False, hash=False)


@dataclass(frozen=True)
class LinkRow:
    name: str
    components: Optional[int]
    conway: str
    family_raw: str
    sigma_raw: str


def _read(name: str) -> list:
    text = resources.files("knotforge").joinpath("data", name).read_text(encoding="utf-8")
    return list(csv.DictReader(io.StringIO(text)))


@lru_cache(maxsize=None)
def all_records() -> tuple:
    out = []
    for r in _read("knots.csv"):
        out.append(KnotRecord(
            name=r["name"], conway=r["conway"], u=Bound.parse(r["u"]),
            a_d=int(r["a_d"]), a=Bound.parse(r["a"]), section=int(r["section"]),
            conway_raw=r["conway_raw"], sic=r["sic"]))
    counts: dict = {}
    for rec in out:
        counts[rec.section] = counts.get(rec.section, 0) + 1
    if counts != EXPECTED_ROWS:
        raise RuntimeError(f"catalog row counts {counts} != {EXPECTED_ROWS}")
    for rec in out:
        if rec.a.paren == "round" and rec.u.exact:
            raise RuntimeError(f"{rec.name}: round brackets need an open unknotting number")
    return tuple(out)


@lru_cache(maxsize=None)
def _by_name() -> dict:
    return {r.name: r for r in all_records()}


def lookup(name: str) -> KnotRecord:
    try:
        return _by_name()[name]
    except KeyError:
        raise KeyError(f"unknown knot {name!r}") from None


def records_in(section: int) -> list:
    return [r for r in all_records() if r.section == section]


@lru_cache(maxsize=None)
def family_rows() -> tuple:
    return tuple(FamilyRow(name=r["name"], conway=r["conway"], family=r["family"],
                           sigma=r["sigma"], u=r["u"], condition=r["cond"], sic=r["sic"],
                           raw={k: r[k] for k in ("conway_raw", "family_raw", "sigma_raw",
                                                  "u_raw", "cond_raw")})
                 for r in _read("families.csv"))


def family_row(name: str) -> FamilyRow:
    for r in family_rows():
        if r.name == name:
            return r
    raise KeyError(f"no family row for {name!r}")


@lru_cache(maxsize=None)
def link_rows() -> tuple:
    return tuple(LinkRow(r["name"], int(r["components"]) if r["components"] else None,
                         r["conway"], r["family_raw"], r["sigma_raw"])
                 for r in _read("links.csv"))


def dump(kind: str = "knots") -> str:
    """Raw CSV text of one embedded table."""
    return resources.files("knotforge").joinpath("data", f"{kind}.csv").read_text(encoding="utf-8")
