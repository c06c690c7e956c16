"""Named groups and the text catalog format.

A catalog block is one line ``name; degree; gen, gen, ...`` with generators
in cycle notation, e.g. ``S4; 4; (0 1),(0 1 2 3)``.  A line holding only a
builtin name (``C12``, ``D5``, ``SL(2,3)``, ``S3xC2`` ...) is also accepted.
An optional fourth field ``; gens`` (or ``; e``) restricts a scan to the
single interval above that subgroup.  Blank lines and ``#`` comments are
ignored.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .permgroup import Group, Permutation, group_from_generators


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    generators: tuple[Permutation, ...]
    subgroup: Optional[tuple[Permutation, ...]] = None

    def build(self, cap: Optional[int] = None) -> Group:
        return group_from_generators(self.generators, self.degree, cap=cap, name=self.name)

    def line(self) -> str:
        gens = ",".join(g.cycle_string() for g in self.generators)
        line = f"{self.name}; {self.degree}; {gens}"
        if self.subgroup is not None:
            line += "; " + (",".join(g.cycle_string() for g in self.subgroup) or "e")
        return line


def _cyclic(n: int) -> CatalogEntry:
    return CatalogEntry(f"C{n}", n, (Permutation([*range(1, n), 0]),))


def _dihedral(n: int) -> CatalogEntry:
    if n < 3:
        raise CatalogError("Dn needs n >= 3 (order 2n acting on n points)")
    rot = Permutation([*range(1, n), 0])
    ref = Permutation([(-i) % n for i in range(n)])
    return CatalogEntry(f"D{n}", n, (rot, ref))


def _symmetric(n: int) -> CatalogEntry:
    if n < 2:
        return CatalogEntry(f"S{n}", 1, ())
    gens = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(Permutation([*range(1, n), 0]))
    return CatalogEntry(f"S{n}", n, tuple(gens))


def _alternating(n: int) -> CatalogEntry:
    if n < 3:
        return CatalogEntry(f"A{n}", max(n, 1), ())
    gens = tuple(Permutation.from_cycles([[0, 1, k]], n) for k in range(2, n))
    return CatalogEntry(f"A{n}", n, gens)


def _q8() -> CatalogEntry:
    # quaternion units as (sign, unit) with unit in 1,i,j,k; left regular action
    units = [(s, u) for s in (1, -1) for u in "1ijk"]
    table = {("1", x): (1, x) for x in "1ijk"}
    table.update({(x, "1"): (1, x) for x in "1ijk"})
    table.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                  ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                  ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    pos = {x: n for n, x in enumerate(units)}
    gens = tuple(Permutation([pos[mul((1, q), x)] for x in units]) for q in "ij")
    return CatalogEntry("Q8", 8, gens)


def _sl23() -> CatalogEntry:
    vecs = [v for v in product(range(3), repeat=2) if v != (0, 0)]
    pos = {v: n for n, v in enumerate(vecs)}

    def act(m):
        (a, b), (c, d) = m
        return Permutation([pos[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs])

    return CatalogEntry("SL(2,3)", 8, (act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))))


def _klein() -> CatalogEntry:
    return CatalogEntry("Z/2×Z/2", 4, (Permutation.from_cycles([[0, 1]], 4),
                                      Permutation.from_cycles([[2, 3]], 4)))


def direct_product(entries: list[CatalogEntry], name: str) -> CatalogEntry:
    """Disjoint-union action of the factors."""
    degree = sum(e.degree for e in entries)
    gens, offset = [], 0
    for e in entries:
        gens.extend(g.shift(offset, degree) for g in e.generators)
        offset += e.degree
    return CatalogEntry(name, degree, tuple(gens))


_ALIASES = {"Z/2×Z/2": _klein, "Z/2xZ/2": _klein, "V4": _klein, "Q8": _q8,
            "SL(2,3)": _sl23}


def builtin(name: str) -> CatalogEntry:
    """Catalog entry for a builtin name, including ``x``/``×`` direct products."""
    name = name.strip()
    if name in _ALIASES:
        entry = _ALIASES[name]()
        return CatalogEntry(name, entry.degree, entry.generators)
    parts = [p.strip() for p in re.split(r"[x×]", name)]
    if len(parts) > 1 and all(parts):
        return direct_product([builtin(p) for p in parts], name)
    m = re.fullmatch(r"([CDSA])(\d+)", name)
    if not m:
        raise CatalogError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise CatalogError(f"bad size in {name!r}")
    if kind in "SA" and n > 7:
        raise CatalogError(f"{name}: symmetric and alternating groups limited to n <= 7")
    return {"C": _cyclic, "D": _dihedral, "S": _symmetric, "A": _alternating}[kind](n)


def parse_generators(text: str, degree: int) -> tuple[Permutation, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(Permutation.parse(tok, degree) for tok in re.findall(r"\([^)]*\)(?:\([^)]*\))*", text))


def parse_catalog(text: str) -> list[CatalogEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(";")]
        try:
            if len(fields) == 1:
                entries.append(builtin(fields[0]))
            elif len(fields) in (3, 4):
                degree = int(fields[1])
                sub = None
                if len(fields) == 4:
                    sub = () if fields[3] == "e" else parse_generators(fields[3], degree)
                entries.append(CatalogEntry(fields[0], degree, parse_generators(fields[2], degree), sub))
            else:
                raise CatalogError("expected 'name; degree; generators[; subgroup]' or a builtin name")
        except (ValueError, CatalogError) as exc:
            raise CatalogError(f"line {lineno}: {exc}") from exc
    return entries


def format_catalog(entries: Iterable[CatalogEntry]) -> str:
    return "".join(e.line() + "\n" for e in entries)


def catalog_hash(entries: Iterable[CatalogEntry]) -> str:
    return hashlib.sha256(format_catalog(entries).encode()).hexdigest()


BUILTIN_SCAN_NAMES = (
    [f"C{n}" for n in range(2, 31)]
    + ["Z/2×Z/2", "S3", "D4", "Q8", "A4", "D5", "D6", "C2xC2xC2", "S3xC2", "S4", "SL(2,3)"]
)


def builtin_catalog() -> list[CatalogEntry]:
    """The desk-scale catalog scanned by default."""
    return [builtin(n) for n in BUILTIN_SCAN_NAMES]
