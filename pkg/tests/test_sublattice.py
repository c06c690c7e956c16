import pytest

from orelab.catalog import builtin
from orelab.permgroup import CapExceeded, subgroup_generated
from orelab.sublattice import all_subgroups, interval, interval_equivalent, subinterval
from oracles import brute_subgroups, perm


@pytest.mark.parametrize("name", ["C1", "S3", "C4", "V4", "C6", "D4", "Q8"])
def test_all_subgroups_against_subset_scan(name):
    G = builtin(name).build()
    found = {frozenset(H.elements) for H in all_subgroups(G).nodes}
    assert found == set(brute_subgroups(G))


@pytest.mark.parametrize("name,count", [("S3", 6), ("C30", 8), ("C1", 1), ("S4", 30), ("A4", 10),
                                        ("SL(2,3)", 15), ("A5", 59)])
def test_subgroup_counts(name, count):
    assert len(all_subgroups(builtin(name).build())) == count


def test_cyclic_subgroups_match_divisors():
    for n in range(1, 101):
        G = builtin(f"C{n}").build()
        assert len(all_subgroups(G)) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_subgroup_cap_env(monkeypatch):
    monkeypatch.setenv("ORELAB_CAP_SUBGROUPS", "10")
    G = builtin("S4").build()
    with pytest.raises(CapExceeded):
        all_subgroups(G)


def test_interval_nodes(S3):
    H = subgroup_generated(S3, [perm("(0 1)", 3)])
    I = interval(S3, H)
    # oracle: filter the full subgroup list by containment
    expected = {frozenset(K.elements) for K in all_subgroups(S3).nodes if set(H.elements) <= set(K.elements)}
    assert {frozenset(K.elements) for K in I.nodes} == expected
    assert len(I) == 2
    assert len(interval(S3, S3.whole())) == 1
    assert len(interval(S3, S3.trivial())) == len(all_subgroups(S3))


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "S4", "Q8"])
def test_meet_is_intersection_join_is_generated(name):
    G = builtin(name).build()
    I = interval(G, G.trivial())
    L = I.lattice
    for a in range(len(I)):
        for b in range(len(I)):
            A, B = I.nodes[a], I.nodes[b]
            assert set(I.nodes[L.meet[a, b]].elements) == set(A.elements) & set(B.elements)
            assert I.nodes[L.join[a, b]] == subgroup_generated(G, list(A.elements) + list(B.elements))


def test_subinterval(S4):
    V = subgroup_generated(S4, [perm("(0 1)(2 3)", 4), perm("(0 2)(1 3)", 4)])
    A4 = subgroup_generated(S4, [perm("(0 1 2)", 4), perm("(1 2 3)", 4)])
    J = subinterval(S4, V, A4)
    assert sorted(K.order for K in J.nodes) == [4, 12]


def test_interval_equivalence_fixture(S4):
    c4 = subgroup_generated(S4, [perm("(0 1 2 3)", 4)])
    dbl = subgroup_generated(S4, [perm("(0 1)(2 3)", 4)])
    I1, I2 = interval(S4, c4), interval(S4, dbl)
    assert not interval_equivalent(I1, I2)
    assert interval_equivalent(I1, I1)


def test_interval_equivalence_needs_isomorphic_quotients():
    Z4, V4 = builtin("C4").build(), builtin("V4").build()
    assert not interval_equivalent(interval(Z4, Z4.trivial()), interval(V4, V4.trivial()))
    C6, C2xC3 = builtin("C6").build(), builtin("C2xC3").build()
    assert interval_equivalent(interval(C6, C6.trivial()), interval(C2xC3, C2xC3.trivial()))


def test_interval_equivalence_modulo_core(S4):
    # [V, S4] and [e, S3] have the same quotient data
    V = subgroup_generated(S4, [perm("(0 1)(2 3)", 4), perm("(0 2)(1 3)", 4)])
    S3 = builtin("S3").build()
    assert interval_equivalent(interval(S4, V), interval(S3, S3.trivial()))
