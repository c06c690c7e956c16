"""Finite permutation groups stored as explicit, sorted element tables.

Composition convention: ``(p * q)(x) == p(q(x))``, i.e. ``q`` acts first.
Points are 0-based.  Subgroups are element sets encoded as Python integer
bitmasks over the parent's element indices, so set operations on
subgroups are integer operations.
"""
from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 10080
DEFAULT_ISO_CAP = 720


def order_cap() -> int:
    return int(os.environ.get("ORELAB_CAP_ORDER", DEFAULT_ORDER_CAP))


class GroupError(Exception):
    pass


class CapExceeded(GroupError):
    pass


class DegreeMismatch(GroupError):
    pass


class ElementNotInGroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class Permutation(tuple):
    """Immutable permutation of ``range(degree)`` given by its image list."""

    def __new__(cls, images: Iterable[int] = ()):
        self = super().__new__(cls, images)
        if sorted(self) != list(range(len(self))):
            raise ValueError(f"not a permutation: {tuple(self)}")
        return self

    @classmethod
    def _trusted(cls, images) -> "Permutation":
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise DegreeMismatch(f"point {x} outside degree {degree}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a] = b
        return cls._trusted(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if pts:
                cycles.append(pts)
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise DegreeMismatch(f"degrees {len(self)} and {len(other)}")
        return Permutation._trusted(self[i] for i in other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return Permutation._trusted(inv)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self)):
            if start in seen or self[start] == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (len(c) for c in self.cycles()), 1)

    def cycle_string(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def extend(self, degree: int) -> "Permutation":
        return Permutation._trusted(tuple(self) + tuple(range(len(self), degree)))

    def shift(self, offset: int, degree: int) -> "Permutation":
        """Act on ``offset..offset+len-1`` inside a larger point set."""
        images = list(range(degree))
        for i, x in enumerate(self):
            images[offset + i] = offset + x
        return Permutation._trusted(images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={len(self)})"


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Group:
    """A finite permutation group with its full element list.

    ``elements`` is sorted lexicographically, so index 0 is the identity.
    Derived data (multiplication table, classes) is computed lazily; the
    caches are idempotent, so concurrent fills agree.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[Permutation], name: Optional[str] = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.name = name
        if not self.elements or not self.elements[0].is_identity():
            raise GroupError("element table must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.index

    def __repr__(self) -> str:
        label = self.name or "Group"
        return f"<{label} order={self.order} degree={self.degree}>"

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    @cached_property
    def _codes(self) -> np.ndarray:
        # perms as base-degree integers, sorted in the same order as elements
        arr = np.array(self.elements, dtype=np.int64).reshape(self.order, self.degree)
        weights = self.degree ** np.arange(self.degree - 1, -1, -1, dtype=np.int64)
        return arr @ weights

    @cached_property
    def table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``elements[i] * elements[j]``."""
        n, d = self.order, self.degree
        dtype = np.int16 if n < 2 ** 15 else np.int32
        if d * np.log2(max(d, 2)) > 62:
            # base-d codes would overflow int64; large degree only occurs for small groups
            idx, els = self.index, self.elements
            return np.array([[idx[p * q] for q in els] for p in els], dtype=dtype)
        perms = np.array(self.elements, dtype=np.int64).reshape(n, d)
        weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
        codes = self._codes
        out = np.empty((n, n), dtype=dtype)
        chunk = max(1, 2_000_000 // max(1, n * d))
        for start in range(0, n, chunk):
            block = perms[start:start + chunk]
            # (p*q)(x) = p[q[x]]: prod[a, b, x] = block[a, perms[b, x]]
            prod = np.take_along_axis(block[:, None, :].repeat(n, axis=1),
                                      np.broadcast_to(perms[None, :, :], (len(block), n, d)),
                                      axis=2)
            out[start:start + chunk] = np.searchsorted(codes, prod @ weights)
        return out

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.array([self.index[g.inverse()] for g in self.elements], dtype=np.int64)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    @cached_property
    def element_orders(self) -> list[int]:
        return [g.order() for g in self.elements]

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.element_orders, 1)

    def is_cyclic(self) -> bool:
        return self.order in self.element_orders

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a in self.generators for b in self.generators)

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(c) for c in conjugacy_classes(self))

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, members in enumerate(self.classes):
            for i in members:
                out[i] = c
        return out

    def whole(self) -> "Subgroup":
        return Subgroup(self, (1 << self.order) - 1)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1)

    def subgroup(self, perms: Iterable[Permutation]) -> "Subgroup":
        return subgroup_generated(self, perms)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``parent`` given by a bitmask over parent element indices."""

    parent: Group
    mask: int

    @property
    def indices(self) -> list[int]:
        return mask_indices(self.mask)

    @property
    def order(self) -> int:
        return bin(self.mask).count("1")

    @property
    def elements(self) -> list[Permutation]:
        return [self.parent.elements[i] for i in self.indices]

    def __contains__(self, g) -> bool:
        if isinstance(g, (int, np.integer)):
            return bool(self.mask >> int(g) & 1)
        i = self.parent.index.get(g)
        return i is not None and bool(self.mask >> i & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask)

    def __hash__(self) -> int:
        return hash(self.mask)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.parent is other.parent and self.mask == other.mask

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def is_trivial(self) -> bool:
        return self.mask == 1

    def is_whole(self) -> bool:
        return self.mask == (1 << self.parent.order) - 1

    def generators(self) -> list[Permutation]:
        """A small generating set, found greedily in element order."""
        G = self.parent
        gens, current = [], 1
        for i in self.indices:
            if not current >> i & 1:
                gens.append(i)
                current = _closure_mask(G, gens)
        return [G.elements[i] for i in gens]

    def as_group(self, name: Optional[str] = None) -> Group:
        return Group(self.parent.degree, self.generators(), self.elements, name=name)


def group_from_generators(gens: Sequence[Permutation], degree: int, cap: Optional[int] = None,
                          name: Optional[str] = None) -> Group:
    """Breadth-first closure of ``gens`` acting on ``degree`` points."""
    cap = order_cap() if cap is None else cap
    gens = [Permutation(g) for g in gens]
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatch(f"generator of degree {len(g)} in a degree-{degree} group")
    e = Permutation.identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"closure exceeds order cap {cap}")
                queue.append(y)
    return Group(degree, gens, seen, name=name)


def _closure_mask(G: Group, gen_indices: Sequence[int], start: int = 1,
                  start_gens: Optional[Sequence[int]] = None) -> int:
    """Mask of the subgroup generated by ``gen_indices`` and the subgroup ``start``.

    ``start_gens`` generates ``start``; when omitted every element of ``start``
    is used as a generator.
    """
    table = G.table
    if start_gens is None:
        start_gens = mask_indices(start) if start != 1 else []
    gens = [int(g) for g in gen_indices] + [int(g) for g in start_gens]
    mask = start
    frontier = mask_indices(start)
    for g in gen_indices:
        if not mask >> g & 1:
            mask |= 1 << g
            frontier.append(g)
    # right multiplication by the generators reaches every element of a finite group
    while frontier:
        nxt = []
        for x in frontier:
            row = table[x]
            for s in gens:
                y = int(row[s])
                if not mask >> y & 1:
                    mask |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return mask


def closure_mask(G: Group, gen_indices: Sequence[int]) -> int:
    return _closure_mask(G, gen_indices)


def join_masks(G: Group, a: int, b: int) -> int:
    """Mask of the subgroup generated by two subgroups given as masks."""
    if a & b == b:
        return a
    if a & b == a:
        return b
    return _closure_mask(G, mask_indices(b), start=a)


def subgroup_generated(G: Group, seed: Iterable) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``seed`` (permutations or indices)."""
    idx = []
    for s in seed:
        if isinstance(s, (int, np.integer)):
            idx.append(int(s))
            continue
        i = G.index.get(tuple(s))
        if i is None:
            raise ElementNotInGroup(f"{s!r} is not an element of {G!r}")
        idx.append(i)
    return Subgroup(G, _closure_mask(G, idx))


def conjugacy_classes(G: Group) -> list[list[int]]:
    """Partition of element indices into classes, ordered by smallest member."""
    table, inv = G.table, G.inverses
    gens = [G.index[g] for g in G.generators]
    unseen = set(range(G.order))
    classes = []
    for x in range(G.order):
        if x not in unseen:
            continue
        orbit, frontier = {x}, [x]
        while frontier:
            nxt = []
            for y in frontier:
                for s in gens:
                    z = int(table[table[s, y], inv[s]])
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        unseen -= orbit
        classes.append(sorted(orbit))
    return classes


def conjugate_mask(G: Group, mask: int, g: int) -> int:
    """Mask of ``g H g^-1``."""
    table, inv = G.table, G.inverses
    gi = int(inv[g])
    return _mask(int(table[table[g, h], gi]) for h in mask_indices(mask))


def is_normal(G: Group, K: Subgroup) -> bool:
    return all(conjugate_mask(G, K.mask, G.index[s]) == K.mask for s in G.generators)


def core(G: Group, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of ``G`` inside ``H``: the intersection of all conjugates."""
    m = H.mask
    for g in range(G.order):
        m &= conjugate_mask(G, H.mask, g)
        if m == 1:
            break
    return Subgroup(G, m)


def normal_subgroups(G: Group) -> list[Subgroup]:
    """Normal subgroups as unions of classes, by brute force over class subsets.

    Cheap only when the class count is small; used as an oracle.
    """
    from itertools import combinations

    classes = G.classes
    out = []
    rest = list(range(1, len(classes)))
    for r in range(len(rest) + 1):
        for pick in combinations(rest, r):
            members = [0] + [i for c in pick for i in classes[c]]
            size = len(members)
            if G.order % size:
                continue
            m = _mask(members)
            if _closure_mask(G, members) == m:
                out.append(Subgroup(G, m))
    return out


def _coset_data(G: Group, N: Subgroup) -> tuple[list[int], list[int]]:
    table = G.table
    nidx = N.indices
    coset_of = [-1] * G.order
    cosets = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        members = [int(table[g, n]) for n in nidx]
        for m in members:
            coset_of[m] = len(cosets)
        cosets.append(_mask(members))
    return cosets, coset_of


def quotient_map(G: Group, N: Subgroup) -> "QuotientMap":
    """Projection ``G -> G/N``; the target acts on cosets by left multiplication."""
    if not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    cosets, coset_of = _coset_data(G, N)
    reps = [mask_indices(c)[0] for c in cosets]
    table = G.table
    images = [Permutation._trusted(coset_of[int(table[g, r])] for r in reps)
              for g in range(G.order)]
    gens = [images[G.index[s]] for s in G.generators]
    Q = Group(len(cosets), gens, set(images))
    return QuotientMap(G, Q, tuple(images))


def quotient(G: Group, N: Subgroup) -> Group:
    return quotient_map(G, N).target


@dataclass(frozen=True)
class QuotientMap:
    source: Group
    target: Group
    images: tuple[Permutation, ...]

    def __call__(self, g: int) -> int:
        return self.target.index[self.images[g]]

    def image_of(self, H: Subgroup) -> Subgroup:
        return Subgroup(self.target, _mask(self(i) for i in H.indices))


def _small_generators(G: Group) -> list[int]:
    gens, mask = [], 1
    # prefer high-order elements: fewer generators, stronger pruning
    for i in sorted(range(G.order), key=lambda i: (-G.element_orders[i], i)):
        if not mask >> i & 1:
            gens.append(i)
            mask = _closure_mask(G, gens)
            if mask == (1 << G.order) - 1:
                break
    return gens


def _class_signature(G: Group) -> list[tuple[int, int]]:
    sizes = [len(G.classes[c]) for c in G.class_of]
    return [(G.element_orders[i], sizes[i]) for i in range(G.order)]


def _extend_hom(G1: Group, G2: Group, gens: list[int], images: Sequence[int]) -> Optional[list[int]]:
    """Extend generator images along the Cayley graph; None if inconsistent."""
    t1, t2 = G1.table, G2.table
    phi = [-1] * G1.order
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, si in zip(gens, images):
                y = int(t1[x, s])
                val = int(t2[phi[x], si])
                if phi[y] < 0:
                    phi[y] = val
                    nxt.append(y)
                elif phi[y] != val:
                    return None
        frontier = nxt
    if len(set(phi)) != G2.order:
        return None
    return phi


def iter_isomorphisms(G1: Group, G2: Group, cap: Optional[int] = None) -> Iterator[list[int]]:
    """All isomorphisms ``G1 -> G2`` as index maps, by backtracking on generator images."""
    cap = DEFAULT_ISO_CAP if cap is None else cap
    if max(G1.order, G2.order) > cap:
        raise CapExceeded(f"isomorphism test limited to order {cap}")
    if G1.order != G2.order:
        return
    sig1, sig2 = _class_signature(G1), _class_signature(G2)
    if sorted(sig1) != sorted(sig2):
        return
    if G1.order == 1:
        yield [0]
        return
    gens = _small_generators(G1)
    candidates = [[j for j in range(G2.order) if sig2[j] == sig1[g]] for g in gens]
    for images in product(*candidates):
        phi = _extend_hom(G1, G2, gens, images)
        if phi is not None:
            yield phi


def are_isomorphic(G1: Group, G2: Group, cap: Optional[int] = None) -> Optional[dict[Permutation, Permutation]]:
    """Generator-image map of an isomorphism ``G1 -> G2``, or None."""
    for phi in iter_isomorphisms(G1, G2, cap):
        if not _is_bijective_hom(G1, G2, phi):
            raise GroupError("extended map is not an isomorphism")
        return {G1.elements[g]: G2.elements[phi[g]] for g in _small_generators(G1)}
    return None


def _is_bijective_hom(G1: Group, G2: Group, phi: Sequence[int]) -> bool:
    if sorted(phi) != list(range(G2.order)):
        return False
    t1, t2 = G1.table, G2.table
    phi_arr = np.asarray(phi)
    return bool(np.array_equal(phi_arr[t1], t2[np.ix_(phi_arr, phi_arr)]))
