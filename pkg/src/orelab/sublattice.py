"""Subgroup lattices, intervals ``[H, G]`` and interval equivalence."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .latticekit import FiniteLattice
from .permgroup import (CapExceeded, Group, Subgroup, _closure_mask, core, iter_isomorphisms,
                        mask_indices, quotient_map)

DEFAULT_SUBGROUP_CAP = 720


def subgroup_cap() -> int:
    return int(os.environ.get("ORELAB_CAP_SUBGROUPS", DEFAULT_SUBGROUP_CAP))


@dataclass
class SubgroupLattice:
    """All subgroups of ``group``, sorted by ``(order, element indices)``."""

    group: Group
    nodes: list[Subgroup]
    gens: list[list[int]] = field(repr=False)

    def __post_init__(self):
        self.position = {s.mask: i for i, s in enumerate(self.nodes)}

    def __len__(self) -> int:
        return len(self.nodes)

    def index_of(self, H: Subgroup) -> int:
        return self.position[H.mask]

    @cached_property
    def leq(self) -> np.ndarray:
        masks = [s.mask for s in self.nodes]
        n = len(masks)
        leq = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(masks):
            for j in range(i, n):
                if a & masks[j] == a:
                    leq[i, j] = True
        return leq

    @cached_property
    def lattice(self) -> FiniteLattice:
        return FiniteLattice(self.leq, labels=self.nodes)

    def above(self, H: Subgroup) -> list[int]:
        return [i for i, s in enumerate(self.nodes) if H.mask & s.mask == H.mask]

    def between(self, lo: Subgroup, hi: Subgroup) -> list[int]:
        return [i for i, s in enumerate(self.nodes)
                if lo.mask & s.mask == lo.mask and s.mask & hi.mask == s.mask]


def all_subgroups(G: Group, cap: Optional[int] = None) -> SubgroupLattice:
    """Every subgroup of ``G``.

    Starts from the cyclic subgroups and repeatedly joins known subgroups with
    cyclic ones; every subgroup is a join of cyclic subgroups, so the closure
    is complete.
    """
    cap = subgroup_cap() if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"subgroup enumeration limited to order {cap}")
    cached = G.__dict__.get("_subgroup_lattice")
    if cached is not None:
        return cached
    cyclic: dict[int, int] = {}
    for g in range(G.order):
        m = _closure_mask(G, [g])
        cyclic.setdefault(m, g)
    known: dict[int, list[int]] = {m: ([g] if m != 1 else []) for m, g in cyclic.items()}
    cyc_items = sorted(cyclic.items())
    layer = list(known)
    while layer:
        new = []
        for m in layer:
            gens = known[m]
            for cm, g in cyc_items:
                if m & cm == cm:
                    continue
                j = _closure_mask(G, [g], start=m, start_gens=gens)
                if j not in known:
                    known[j] = gens + [g]
                    new.append(j)
        layer = new
    order = sorted(known, key=lambda m: (bin(m).count("1"), mask_indices(m)))
    lat = SubgroupLattice(G, [Subgroup(G, m) for m in order], [known[m] for m in order])
    G.__dict__["_subgroup_lattice"] = lat
    return lat


@dataclass
class IntervalOfGroups:
    """The interval ``[H, G]``: all subgroups ``K`` with ``H <= K <= G``."""

    group: Group
    sub: Subgroup
    nodes: list[Subgroup]
    lattice: FiniteLattice

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def __len__(self) -> int:
        return len(self.nodes)

    def index_of(self, K: Subgroup) -> int:
        return [s.mask for s in self.nodes].index(K.mask)


def interval(G: Group, H: Subgroup, lat: Optional[SubgroupLattice] = None) -> IntervalOfGroups:
    lat = all_subgroups(G) if lat is None else lat
    keep = lat.above(H)
    nodes = [lat.nodes[i] for i in keep]
    L = FiniteLattice(lat.leq[np.ix_(keep, keep)], labels=nodes, check=False)
    return IntervalOfGroups(G, H, nodes, L)


def subinterval(G: Group, lo: Subgroup, hi: Subgroup,
                lat: Optional[SubgroupLattice] = None) -> IntervalOfGroups:
    """``[lo, hi]`` viewed inside the subgroup lattice of ``G``."""
    lat = all_subgroups(G) if lat is None else lat
    keep = lat.between(lo, hi)
    nodes = [lat.nodes[i] for i in keep]
    L = FiniteLattice(lat.leq[np.ix_(keep, keep)], labels=nodes, check=False)
    return IntervalOfGroups(G, lo, nodes, L)


def _core_quotient(G: Group, A: Subgroup, B: Subgroup):
    """``B / A_B`` with the image of ``A``; ``A_B`` is the core of ``A`` in ``B``."""
    Bg = B.as_group()
    A_in_B = Subgroup(Bg, sum(1 << Bg.index[a] for a in A.elements))
    q = quotient_map(Bg, core(Bg, A_in_B))
    return q.target, q.image_of(A_in_B)


def interval_equivalent(I1: IntervalOfGroups, I2: IntervalOfGroups) -> bool:
    """Is there an isomorphism ``B/A_B -> D/C_D`` sending ``A/A_B`` onto ``C/C_D``?"""
    Q1, A1 = _core_quotient(I1.group, I1.sub, I1.nodes[I1.top])
    Q2, A2 = _core_quotient(I2.group, I2.sub, I2.nodes[I2.top])
    if Q1.order != Q2.order or A1.order != A2.order:
        return False
    target = A2.mask
    a_idx = A1.indices
    for phi in iter_isomorphisms(Q1, Q2):
        if sum(1 << phi[a] for a in a_idx) == target:
            return True
    return False
