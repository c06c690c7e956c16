import itertools
import random
from fractions import Fraction

import pytest

from orelab.boxmodel import (NotBiprojection, NotPositive, QuadScalar, TwoBox, Zero, biprojection_candidate_masks,
                             biprojection_generated, biprojection_lambda, contragredient, coproduct, e1,
                             exchange_relation_check, id_box, indicator, is_biprojection, is_w_cyclic_model, pfr_witnesses,
                             point, preceq, product, range_projection, smallest_biprojection_above, trace)
from orelab.catalog import builtin
from orelab.sublattice import all_subgroups


@pytest.fixture(scope="module")
def Z2():
    return builtin("C2").build()


def rand_positive(G, rng, density=0.5):
    return TwoBox(G, [Fraction(rng.randint(1, 4), rng.randint(1, 3)) if rng.random() < density else 0
                      for _ in range(G.order)])


def brute_convolution(x, y):
    """Oracle: (x * y)(g) = |G|^-1/2 sum over pairs (h, k) with hk = g, on permutations directly."""
    G = x.group
    out = {}
    for h, a in zip(G.elements, x.coeffs):
        for k, b in zip(G.elements, y.coeffs):
            out[h * k] = out.get(h * k, 0) + a * b
    inv = QuadScalar.sqrt(G.order).inverse()
    return TwoBox(G, [out.get(g, 0) * inv for g in G.elements])


def test_quadscalar_arithmetic():
    r6 = QuadScalar.sqrt(6)
    assert r6 * r6 == 6
    x = QuadScalar(1, 2, 6)
    assert x * x.inverse() == 1
    assert (x - x).sign() == 0
    assert QuadScalar(5, -2, 6).sign() == 1 and QuadScalar(4, -2, 6).sign() == -1
    assert QuadScalar.sqrt(4) == 2
    for text in ("1+2√6", "-3/2√6", "√6", "7", "-1-√6"):
        assert str(QuadScalar.parse(text, 6)) == text
    assert QuadScalar.parse("2 + sqrt(6)", 6) == QuadScalar(2, 1, 6)
    with pytest.raises(ValueError):
        QuadScalar.parse("1+√5", 6)


def test_units(Z2):
    assert e1(Z2).coeffs == (1, 0) and id_box(Z2).coeffs == (1, 1)
    assert trace(e1(Z2)) == Fraction(1, 2) and trace(id_box(Z2)) == 1
    assert product(e1(Z2), id_box(Z2)) == e1(Z2)
    # (id * id)(g) = 2 / sqrt 2 = sqrt 2
    assert coproduct(id_box(Z2), id_box(Z2)) == id_box(Z2).scale(QuadScalar.sqrt(2))


def test_convolution_against_oracle(S3):
    rng = random.Random(3)
    for _ in range(10):
        x, y = rand_positive(S3, rng), rand_positive(S3, rng)
        assert coproduct(x, y) == brute_convolution(x, y)
        assert coproduct(e1(S3), x) == x.scale(QuadScalar.sqrt(6).inverse()) == coproduct(x, e1(S3))
        assert product(id_box(S3), x) == x


def test_json_roundtrip(S3):
    x = TwoBox(S3, [QuadScalar(1, 2, 6), 0, Fraction(-1, 2), 0, QuadScalar(0, 1, 6), 3])
    assert TwoBox.from_json(S3, x.to_json()) == x
    assert TwoBox.from_json(S3, '{"(0 1)": "1+2√6"}').to_json() == {"(0 1)": "1+2√6"}


def test_range_projection(S3):
    g = 2
    assert range_projection(point(S3, g, 3)) == point(S3, g)
    assert range_projection(TwoBox(S3, [0] * 6)).is_zero()
    assert range_projection(e1(S3) + id_box(S3).scale(2)) == id_box(S3)
    with pytest.raises(NotPositive):
        range_projection(point(S3, 1, -1))


def test_biprojection_generated(S3):
    for g in range(S3.order):
        cyc = S3.elements[g]
        expected = {S3.index[cyc_pow] for cyc_pow in _powers(cyc)}
        assert biprojection_generated(point(S3, g)) == indicator(S3, sum(1 << i for i in expected))
    assert biprojection_generated(e1(S3)) == e1(S3)
    assert biprojection_generated(id_box(S3)) == id_box(S3)
    with pytest.raises(Zero):
        biprojection_generated(TwoBox(S3, [0] * 6))


def _powers(g):
    out, x = [g], g * g
    while x != g:
        out.append(x)
        x = x * g
    return out


def test_biprojection_examples(S3):
    for K in all_subgroups(S3).nodes:
        assert is_biprojection(indicator(S3, K))
    assert not is_biprojection(id_box(S3).scale(Fraction(1, 2)))
    assert not is_biprojection(point(S3, 1))


def test_all_subsets_of_s3(S3):
    # exact check of every 0/1 function, no pre-screen
    found = {m for m in range(1 << 6) if is_biprojection(indicator(S3, m))}
    assert found == {K.mask for K in all_subgroups(S3).nodes}
    assert len(found) == 6


@pytest.mark.parametrize("name,count", [("S3", 6), ("S4", 30), ("C4", 3), ("A4", 10), ("Q8", 6)])
def test_biprojections_are_subgroups(name, count):
    G = builtin(name).build()
    found = [m for m in biprojection_candidate_masks(G) if is_biprojection(indicator(G, m))]
    subs = sorted(K.mask for K in all_subgroups(G).nodes)
    assert sorted(found) == subs and len(found) == count


@pytest.mark.parametrize("name,expected", [("C30", True), ("C4", True), ("C1", True), ("S3", False),
                                           ("S4", False), ("V4", False)])
def test_w_cyclic(name, expected):
    assert is_w_cyclic_model(builtin(name).build()) == expected


def test_positives_closed_under_coproduct(S3):
    for g, h in itertools.product(range(S3.order), repeat=2):
        assert coproduct(point(S3, g), point(S3, h)).is_positive()
    rng = random.Random(11)
    for _ in range(20):
        assert coproduct(rand_positive(S3, rng), rand_positive(S3, rng)).is_positive()


def test_preorder_monotone_under_coproduct(S4):
    rng = random.Random(5)
    for _ in range(15):
        b, d = rand_positive(S4, rng, 0.4), rand_positive(S4, rng, 0.4)
        a = product(b, rand_positive(S4, rng, 0.6))
        c = product(d, rand_positive(S4, rng, 0.6))
        assert preceq(a, b) and preceq(c, d)
        assert preceq(coproduct(a, c), coproduct(b, d))


def test_pre2(S4):
    projs = [indicator(S4, K) for K in all_subgroups(S4).nodes] + [point(S4, g) for g in range(S4.order)]
    for p, q in itertools.product(projs[::3], repeat=2):
        assert preceq(e1(S4), coproduct(p, contragredient(q))) == (not product(p, q).is_zero())


def test_pfr(S3):
    projs = [indicator(S3, m) for m in range(1, 1 << 6)]
    rng = random.Random(2)
    for _ in range(60):
        a, b = rng.choice(projs), rng.choice(projs)
        ab = range_projection(coproduct(a, b))
        c = product(ab, rng.choice(projs))
        if c.is_zero():
            continue
        a2, b2 = pfr_witnesses(a, b, c)
        assert preceq(a2, coproduct(c, contragredient(b)))
        assert preceq(b2, coproduct(contragredient(a), c))
        assert not product(a, a2).is_zero() and not product(b, b2).is_zero()


def test_generated_is_smallest(S4):
    subs = all_subgroups(S4).nodes
    rng = random.Random(9)
    for _ in range(15):
        x = rand_positive(S4, rng, 0.1)
        if x.is_zero():
            continue
        assert biprojection_generated(x) == smallest_biprojection_above(x, subs)


def test_lambda_consistency(S4):
    delta = QuadScalar.sqrt(24)
    for K in all_subgroups(S4).nodes:
        b = indicator(S4, K)
        lam = biprojection_lambda(b)
        assert lam.inverse() == delta * trace(b) == delta.inverse() * K.order
        assert coproduct(b, b).scale(lam) == b


def test_exchange_relations(S3):
    subs = all_subgroups(S3).nodes
    basis = [point(S3, g) for g in range(S3.order)]
    A3 = [K for K in subs if K.order == 3][0]
    for b in (indicator(S3, A3), e1(S3)):
        for a1, a2 in itertools.product(basis, repeat=2):
            assert exchange_relation_check(b, a1, a2)
    rng = random.Random(4)
    for _ in range(5):
        a1 = TwoBox(S3, [rng.randint(-3, 3) for _ in range(6)])
        a2 = TwoBox(S3, [QuadScalar(rng.randint(-2, 2), rng.randint(-2, 2), 6) for _ in range(6)])
        assert exchange_relation_check(id_box(S3), a1, a2)
        for K in subs:
            assert exchange_relation_check(indicator(S3, K), a1, a2)
    with pytest.raises(NotBiprojection):
        exchange_relation_check(point(S3, 1), basis[0], basis[1])
