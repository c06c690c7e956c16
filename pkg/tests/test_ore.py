from fractions import Fraction

import pytest

from orelab.catalog import builtin
from orelab.latticekit import is_distributive
from orelab.ore import (COUNTEREXAMPLE, HOLDS, NotDistributive, check_upper_bound, classify_interval,
                        coatom_index_sum, distributive_chain_length, double_coset_reps, dual_ore_check,
                        generates_over, is_cyclic_interval, is_dedekind_interval, is_H_cyclic,
                        is_teruya_normal, ore_witness_distributive)
from orelab.permgroup import subgroup_generated
from orelab.sublattice import all_subgroups, interval
from oracles import perm

SMALL = ["S3", "D4", "Q8", "A4", "D5", "D6", "C2xC2xC2", "S3xC2", "S4", "SL(2,3)", "C12", "C30", "V4"]


def brute_h_cyclic(G, H):
    """Oracle: try every g and close <H, g> by plain set products."""
    for g in G.elements:
        S = set(H.elements) | {g}
        grown = True
        while grown:
            new = {a * b for a in S for b in S} - S
            S |= new
            grown = bool(new)
        if len(S) == G.order:
            return True
    return False


def test_h_cyclic_examples(S3):
    H = subgroup_generated(S3, [perm("(0 1)", 3)])
    g = is_H_cyclic(S3, H)
    assert g is not None and subgroup_generated(S3, [perm("(0 1)", 3), g]).is_whole()
    V4 = builtin("V4").build()
    assert is_H_cyclic(V4, V4.trivial()) is None
    assert is_H_cyclic(S3, S3.whole()).is_identity()


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "S4", "Q8", "C2xC2xC2"])
def test_double_coset_scan_matches_full_scan(name):
    G = builtin(name).build()
    for H in all_subgroups(G).nodes:
        fast = is_H_cyclic(G, H) is not None
        assert fast == (is_H_cyclic(G, H, full_scan=True) is not None) == brute_h_cyclic(G, H)


def test_double_coset_reps_partition(S4):
    H = subgroup_generated(S4, [perm("(0 1)", 4)])
    reps = double_coset_reps(S4, H)
    cosets = [{h * S4.elements[r] * k for h in H.elements for k in H.elements} for r in reps]
    assert sum(len(c) for c in cosets) == S4.order
    assert set().union(*cosets) == set(S4.elements)


def test_ore_witness_examples(S3):
    C30 = builtin("C30").build()
    g = ore_witness_distributive(C30, C30.trivial())
    assert g.order() == 30
    H = subgroup_generated(S3, [perm("(0 1)", 3)])
    w = ore_witness_distributive(S3, H)
    assert generates_over(S3, H, S3.index[w])
    assert ore_witness_distributive(S3, S3.whole()).is_identity()
    with pytest.raises(NotDistributive):
        ore_witness_distributive(S3, S3.trivial())


@pytest.mark.parametrize("name", SMALL)
def test_ore_on_every_distributive_interval(name):
    G = builtin(name).build()
    for H in all_subgroups(G).nodes:
        if is_distributive(interval(G, H).lattice):
            g = ore_witness_distributive(G, H)
            assert generates_over(G, H, G.index[g])
            assert is_H_cyclic(G, H) is not None


def brute_teruya(G, H, K):
    for g in G.elements:
        if {h * g * k for h in H.elements for k in K.elements} != {k * g * h for h in H.elements for k in K.elements}:
            return False
    return True


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "S4", "Q8"])
def test_teruya_normality_against_oracle(name):
    G = builtin(name).build()
    for H in all_subgroups(G).nodes:
        for K in interval(G, H).nodes:
            assert is_teruya_normal(G, H, K) == brute_teruya(G, H, K)


def test_dedekind_and_cyclic_examples(S3, S4):
    for n in (2, 6, 12):
        G = builtin(f"C{n}").build()
        assert is_dedekind_interval(G, G.trivial())
    assert not is_dedekind_interval(S3, S3.trivial())
    A4 = subgroup_generated(S4, [perm("(0 1 2)", 4), perm("(1 2 3)", 4)])
    assert is_dedekind_interval(S4, A4)
    assert is_cyclic_interval(builtin("C30").build(), builtin("C30").build().trivial())
    assert not is_cyclic_interval(S3, S3.trivial())
    # every maximal interval is cyclic
    for name in SMALL:
        G = builtin(name).build()
        for H in all_subgroups(G).nodes:
            if len(interval(G, H)) == 2:
                assert is_cyclic_interval(G, H)


def test_cyclic_interval_iff_cyclic_group(catalog_groups):
    for name, G in catalog_groups:
        assert is_cyclic_interval(G, G.trivial()) == any(o == G.order for o in G.element_orders), name


def test_coatom_sums():
    C30 = builtin("C30").build()
    assert coatom_index_sum(C30, C30.trivial(), "up") == Fraction(31, 30)
    C4 = builtin("C4").build()
    assert coatom_index_sum(C4, C4.trivial(), "up") == Fraction(1, 2)
    S4 = builtin("S4").build()
    A4 = subgroup_generated(S4, [perm("(0 1 2)", 4), perm("(1 2 3)", 4)])
    assert coatom_index_sum(S4, A4, "up") == Fraction(1, 2)
    assert coatom_index_sum(S4, A4, "down") == Fraction(1, 2)
    with pytest.raises(ValueError):
        coatom_index_sum(S4, A4, "sideways")


def test_z30_converse_fails():
    C30 = builtin("C30").build()
    assert coatom_index_sum(C30, C30.trivial()) > 1
    assert is_H_cyclic(C30, C30.trivial()) is not None


def test_dual_ore_check():
    C7 = builtin("C7").build()
    assert dual_ore_check(C7, C7.trivial()) == HOLDS
    S3 = builtin("S3").build()
    assert dual_ore_check(S3, S3.whole()) == HOLDS
    with pytest.raises(NotDistributive):
        dual_ore_check(S3, S3.trivial())
    assert COUNTEREXAMPLE != HOLDS


def test_chain_lengths_and_bound():
    assert distributive_chain_length(builtin("C30").build()) == 1
    assert distributive_chain_length(builtin("V4").build()) == 2
    assert distributive_chain_length(builtin("C1").build()) == 0
    assert check_upper_bound(builtin("V4").build()) == (2, 2, True)
    m, ell, ok = check_upper_bound(builtin("S3").build())
    assert m == 1 and ell >= 1 and ok
    for n in (2, 9, 30):
        assert check_upper_bound(builtin(f"C{n}").build()) == (1, 1, True)


def test_classify_fixtures(S4):
    H = subgroup_generated(S4, [perm("(0 1)", 4)])
    r = classify_interval(S4, H)
    assert r.linearly_primitive and r.h_cyclic
    # the [S2, S4] fixture: computed flags recorded, lattice not distributive
    assert not r.distributive
    assert r.interval_size == 6
    assert not r.theorem_violations and not r.conjecture_counterexamples
    r2 = classify_interval(S4, subgroup_generated(S4, [perm("(0 1)(2 3)", 4)]))
    assert not r2.linearly_primitive
    C30 = builtin("C30").build()
    r3 = classify_interval(C30, C30.trivial())
    assert r3.cyclic and r3.coatom_sum_up == Fraction(31, 30)
    assert r3.to_json()["coatom_sum_up"] == "31/30"


@pytest.mark.parametrize("name", SMALL)
def test_theorem_implications_hold(name):
    G = builtin(name).build()
    for H in all_subgroups(G).nodes:
        r = classify_interval(G, H, name)
        assert r.theorem_violations == [], (name, r.subgroup_generators)
        assert r.cyclic == (r.dedekind and r.distributive)
