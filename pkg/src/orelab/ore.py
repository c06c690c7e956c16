"""H-cyclicity, Ore witnesses and the interval classification.

For an interval ``[H, G]`` of finite groups:

* ``h_cyclic``: some ``g`` has ``<H, g> = G``.  This is w-cyclicity of the
  crossed-product inclusion ``R x| H  <  R x| G``.
* ``linearly_primitive``: some irreducible ``V`` of ``G`` has pointwise
  stabiliser of ``V^H`` equal to ``H``.  This is w-cyclicity of the
  fixed-point inclusion ``R^G < R^H``.
* ``dedekind``: every ``K`` in the interval has ``HgK = KgH`` for all ``g``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .chartable import is_linearly_primitive_interval, min_faithful_components
from .latticekit import (atoms, coatoms, height, is_boolean, is_bottom_boolean,
                         is_distributive, is_top_boolean)
from .permgroup import (Group, Permutation, Subgroup, _closure_mask, core, mask_indices)
from .sublattice import SubgroupLattice, all_subgroups, interval, subinterval


class OreError(Exception):
    pass


class NotDistributive(OreError):
    pass


class WitnessVerificationFailed(OreError):
    pass


class NoChain(OreError):
    pass


def generates_over(G: Group, H: Subgroup, g: int, top: Optional[Subgroup] = None) -> bool:
    top = G.whole() if top is None else top
    return _closure_mask(G, [g], start=H.mask, start_gens=H.indices) == top.mask


def double_coset_reps(G: Group, H: Subgroup, K: Optional[Subgroup] = None) -> list[int]:
    """One representative (the smallest index) of each double coset ``HgK``."""
    K = H if K is None else K
    table = G.table
    h, k = np.array(H.indices), np.array(K.indices)
    covered = np.zeros(G.order, dtype=bool)
    reps = []
    for g in range(G.order):
        if covered[g]:
            continue
        reps.append(g)
        covered[table[np.ix_(table[h, g], k)].ravel()] = True
    return reps


def is_H_cyclic(G: Group, H: Subgroup, full_scan: bool = False) -> Optional[Permutation]:
    """A witness ``g`` with ``<H, g> = G``, or None.

    Only one element per double coset ``HgH`` is tried unless ``full_scan``.
    """
    candidates = range(G.order) if full_scan else double_coset_reps(G, H)
    for g in candidates:
        if generates_over(G, H, g):
            return G.elements[g]
    return None


def _coatom_masks(nodes: list[int], top: int) -> list[int]:
    proper = [m for m in nodes if m != top]
    return [m for m in proper if not any(o != m and o & m == m for o in proper)]


def _witness(G: Group, lat: SubgroupLattice, lo: int, hi: int) -> int:
    """Element ``g`` with ``<lo, g> = hi`` for a distributive interval ``[lo, hi]`` (masks)."""
    if lo == hi:
        return 0
    nodes = [s.mask for s in lat.nodes if s.mask & lo == lo and s.mask & hi == s.mask]
    cos = _coatom_masks(nodes, hi)
    meet = hi
    for m in cos:
        meet &= m
    if meet != lo:
        # reduce to the top interval, which is boolean
        g = _witness(G, lat, meet, hi)
    elif len(cos) == 1:
        # lo is maximal in hi: anything outside works
        g = mask_indices(hi & ~lo)[0]
    else:
        M = cos[0]
        comp = [x for x in nodes if x & M == lo and _join(G, x, M) == hi]
        if len(comp) != 1:
            raise NotDistributive("coatom without a unique complement in a boolean top interval")
        a = _witness(G, lat, lo, M)
        b = _witness(G, lat, lo, comp[0])
        g = G.mul(a, b)
    if _closure_mask(G, [g], start=lo, start_gens=mask_indices(lo)) != hi:
        raise WitnessVerificationFailed(f"constructed witness {G.elements[g]!r} does not generate")
    return g


def _join(G: Group, a: int, b: int) -> int:
    return _closure_mask(G, mask_indices(b), start=a, start_gens=mask_indices(a))


def ore_witness_distributive(G: Group, H: Subgroup) -> Permutation:
    """Witness for a distributive interval, built by the boolean-reduction recursion.

    Top interval first, then coatom/complement pairs: if ``<H,a> = M`` and
    ``<H,b> = M'`` with ``M'`` the complement of ``M``, then ``<H,ab> = G``.
    """
    lat = all_subgroups(G)
    if not is_distributive(interval(G, H, lat).lattice):
        raise NotDistributive("interval is not distributive")
    return G.elements[_witness(G, lat, H.mask, G.whole().mask)]


def _double_coset_mask(G: Group, A: Subgroup, g: int, B: Subgroup) -> frozenset:
    table = G.table
    return frozenset(table[np.ix_(table[np.array(A.indices), g], np.array(B.indices))].ravel().tolist())


def is_teruya_normal(G: Group, H: Subgroup, K: Subgroup) -> bool:
    if K == H or K.is_whole():
        return True
    return all(_double_coset_mask(G, H, g, K) == _double_coset_mask(G, K, g, H)
               for g in range(G.order))


def is_dedekind_interval(G: Group, H: Subgroup) -> bool:
    return all(is_teruya_normal(G, H, K) for K in interval(G, H).nodes)


def is_cyclic_interval(G: Group, H: Subgroup) -> bool:
    return is_dedekind_interval(G, H) and is_distributive(interval(G, H).lattice)


def coatom_index_sum(G: Group, H: Subgroup, side: str = "up") -> Fraction:
    """Sum of ``1/|G:M|`` over coatoms ``M`` (up) or of ``1/|M:H|`` over atoms (down)."""
    I = interval(G, H)
    L = I.lattice
    if side == "up":
        return sum((Fraction(I.nodes[m].order, G.order) for m in coatoms(L)), Fraction(0))
    if side == "down":
        return sum((Fraction(H.order, I.nodes[m].order) for m in atoms(L)), Fraction(0))
    raise ValueError("side must be 'up' or 'down'")


HOLDS = "holds"
COUNTEREXAMPLE = "COUNTEREXAMPLE"


def dual_ore_check(G: Group, H: Subgroup) -> str:
    """Dual Ore statement on a distributive interval: is it linearly primitive?"""
    if not is_distributive(interval(G, H).lattice):
        raise NotDistributive("dual Ore check needs a distributive interval")
    return HOLDS if is_linearly_primitive_interval(G, H) else COUNTEREXAMPLE


def _step_ok(G: Group, lat: SubgroupLattice, lo: Subgroup, hi: Subgroup, mode: str) -> bool:
    L = subinterval(G, lo, hi, lat).lattice
    if mode == "distributive":
        return is_distributive(L)
    if mode == "bottom_boolean":
        return is_bottom_boolean(L)
    raise ValueError(f"unknown mode {mode!r}")


def distributive_chain_length(G: Group, mode: str = "distributive") -> int:
    """Fewest steps ``{e} = H_0 < ... < H_l = G`` with every ``[H_i, H_i+1]`` passing ``mode``.

    Steps may be arbitrary proper inclusions, not only covers.
    """
    lat = all_subgroups(G)
    n = len(lat)
    start, goal = 0, n - 1
    dist = {start: 0}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if i == goal:
            return dist[i]
        lo = lat.nodes[i]
        for j in range(i + 1, n):
            if j in dist or not lat.leq[i, j]:
                continue
            if _step_ok(G, lat, lo, lat.nodes[j], mode):
                dist[j] = dist[i] + 1
                queue.append(j)
    raise NoChain(f"no {mode} chain from the trivial subgroup to the group")


def check_upper_bound(G: Group) -> tuple[int, int, bool]:
    """(fewest irreducible constituents of a faithful rep, distributive chain length, m <= l)."""
    m = min_faithful_components(G)
    ell = distributive_chain_length(G, "distributive")
    return m, ell, m <= ell


def _embed(K: Subgroup, H: Subgroup) -> tuple[Group, Subgroup]:
    """``K`` as a group of its own, with ``H <= K`` inside it."""
    G = K.parent
    cache = G.__dict__.setdefault("_subgroup_groups", {})
    Kg = cache.get(K.mask)
    if Kg is None:
        Kg = cache[K.mask] = K.as_group()
    return Kg, Subgroup(Kg, sum(1 << Kg.index[h] for h in H.elements))


def intermediate_flags(G: Group, H: Subgroup) -> tuple[bool, bool]:
    """For every ``K`` in ``[H, G]``: are ``[H, K]`` and ``[K, G]`` all H-cyclic / all linearly primitive?"""
    all_cyclic = all_primitive = True
    for K in interval(G, H).nodes:
        Kg, HinK = _embed(K, H)
        if all_cyclic:
            all_cyclic = is_H_cyclic(Kg, HinK) is not None and is_H_cyclic(G, K) is not None
        if all_primitive:
            all_primitive = (is_linearly_primitive_interval(Kg, HinK)
                             and is_linearly_primitive_interval(G, K))
        if not (all_cyclic or all_primitive):
            break
    return all_cyclic, all_primitive


@dataclass
class IntervalReport:
    group: str
    group_order: int
    subgroup_generators: list[str]
    subgroup_order: int
    interval_size: int
    height: int
    core_free: bool
    distributive: bool
    boolean: bool
    top_boolean: bool
    bottom_boolean: bool
    dedekind: bool
    cyclic: bool
    h_cyclic: bool
    linearly_primitive: bool
    dual_side_linearly_primitive: bool
    intermediates_h_cyclic: bool
    witness: Optional[str]
    ore_witness: Optional[str]
    coatom_sum_up: Fraction
    coatom_sum_down: Fraction
    theorem_violations: list[str] = field(default_factory=list)
    conjecture_counterexamples: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["coatom_sum_up"] = str(self.coatom_sum_up)
        d["coatom_sum_down"] = str(self.coatom_sum_down)
        return d


def classify_interval(G: Group, H: Subgroup, name: Optional[str] = None) -> IntervalReport:
    """Every flag for ``[H, G]``, with the theorem implications checked.

    Implications that are theorems land in ``theorem_violations`` when they
    fail (a bug); failures of the conjectured statements land in
    ``conjecture_counterexamples``.
    """
    lat = all_subgroups(G)
    I = interval(G, H, lat)
    L = I.lattice
    distributive = is_distributive(L)
    dedekind = is_dedekind_interval(G, H)
    witness = is_H_cyclic(G, H)
    ore = ore_witness_distributive(G, H) if distributive else None
    primitive = is_linearly_primitive_interval(G, H)
    inter_cyclic, inter_primitive = intermediate_flags(G, H)
    up, down = coatom_index_sum(G, H, "up"), coatom_index_sum(G, H, "down")
    n_co, n_at = len(coatoms(L)), len(atoms(L))
    report = IntervalReport(
        group=name or G.name or f"order {G.order}",
        group_order=G.order,
        subgroup_generators=[g.cycle_string() for g in H.generators()],
        subgroup_order=H.order,
        interval_size=len(I),
        height=height(L),
        core_free=core(G, H).is_trivial(),
        distributive=distributive,
        boolean=is_boolean(L),
        top_boolean=is_top_boolean(L),
        bottom_boolean=is_bottom_boolean(L),
        dedekind=dedekind,
        cyclic=dedekind and distributive,
        h_cyclic=witness is not None,
        linearly_primitive=primitive,
        dual_side_linearly_primitive=inter_primitive,
        intermediates_h_cyclic=inter_cyclic,
        witness=witness.cycle_string() if witness is not None else None,
        ore_witness=ore.cycle_string() if ore is not None else None,
        coatom_sum_up=up,
        coatom_sum_down=down,
    )
    theorems = {
        "ore: distributive => H-cyclic": not distributive or report.h_cyclic,
        "top interval of a distributive lattice is boolean": not distributive or report.top_boolean,
        "coatom sum <= 1 => H-cyclic": up > 1 or report.h_cyclic,
        "atom sum <= 1 => linearly primitive": down > 1 or primitive,
        "distributive and coatom sum <= 2 => H-cyclic": not distributive or up > 2 or report.h_cyclic,
        "distributive and atom sum <= 2 => linearly primitive": not distributive or down > 2 or primitive,
        "at most two coatoms => H-cyclic": n_co > 2 or report.h_cyclic,
        "at most two atoms => linearly primitive": n_at > 2 or primitive,
        "cyclic => linearly primitive": not report.cyclic or primitive,
        "distributive with < 32 intermediates => linearly primitive":
            not distributive or len(I) >= 32 or primitive,
        "linearly primitive core-free interval => faithful irreducible":
            not (primitive and report.core_free) or min_faithful_components(G) <= 1,
    }
    report.theorem_violations = [k for k, ok in theorems.items() if not ok]
    if report.cyclic and not distributive:
        report.theorem_violations.append("cyclic without distributive")
    if distributive and ore is None:
        report.theorem_violations.append("no constructive Ore witness")
    if distributive and dual_ore_check(G, H) == COUNTEREXAMPLE:
        report.conjecture_counterexamples.append("distributive => linearly primitive")
    return report
