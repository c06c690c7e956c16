"""Exact model of the 2-box space of ``R < R x| G`` as functions on ``G``.

Product is pointwise, the coproduct is the normalised convolution
``(x * y)(g) = delta^-1 sum_h x(h) y(h^-1 g)`` with ``delta = sqrt|G|``, the
contragredient is ``g -> x(g^-1)`` and ``tr(x) = |G|^-1 sum_g x(g)``.
Coefficients live in ``Q(sqrt|G|)`` so every identity is checked with zero
tolerance.

The algebra is commutative.  Positivity therefore means non-negative real
coefficients, and projections are 0/1 functions.  The range-projection
preorder ``a <= b`` becomes containment of supports.  These readings are
specific to this model.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

import numpy as np

from .permgroup import Group, Subgroup, _closure_mask, mask_indices

Rational = Union[int, Fraction]


class BoxError(Exception):
    pass


class GroupMismatch(BoxError):
    pass


class NotPositive(BoxError):
    pass


class Zero(BoxError):
    pass


class NotBiprojection(BoxError):
    pass


class QuadScalar:
    """``a + b sqrt(n)`` with rational ``a, b``.

    When ``n`` is a perfect square the value is folded into ``a``, so
    equality is always componentwise on a canonical form.
    """

    __slots__ = ("a", "b", "n")

    def __init__(self, a: Rational = 0, b: Rational = 0, n: int = 1):
        a, b = Fraction(a), Fraction(b)
        r = isqrt(n)
        if r * r == n:
            a, b = a + b * r, Fraction(0)
        self.a, self.b, self.n = a, b, n

    @classmethod
    def sqrt(cls, n: int) -> "QuadScalar":
        return cls(0, 1, n)

    def _coerce(self, other) -> "QuadScalar":
        if isinstance(other, QuadScalar):
            if other.n != self.n and other.b and self.b:
                raise BoxError(f"mixing sqrt({self.n}) and sqrt({other.n})")
            return other if other.n == self.n else QuadScalar(other.a, other.b, self.n)
        return QuadScalar(other, 0, self.n)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadScalar(self.a + o.a, self.b + o.b, self.n)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.n)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadScalar(self.a * o.a + self.b * o.b * self.n, self.a * o.b + self.b * o.a, self.n)

    __rmul__ = __mul__

    def inverse(self) -> "QuadScalar":
        norm = self.a * self.a - self.b * self.b * self.n
        if norm == 0:
            raise ZeroDivisionError("QuadScalar division by zero")
        return QuadScalar(self.a / norm, -self.b / norm, self.n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadScalar):
            return self.a == other.a and self.b == other.b and (self.b == 0 or self.n == other.n)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.n if self.b else 0))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Exact sign of ``a + b sqrt(n)``."""
        sa, sb = (self.a > 0) - (self.a < 0), (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 n
        diff = self.a * self.a - self.b * self.b * self.n
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __float__(self):
        return float(self.a) + float(self.b) * self.n ** 0.5

    def __repr__(self):
        return f"QuadScalar({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        mag = "" if abs(self.b) == 1 else str(abs(self.b))
        surd = f"{mag}√{self.n}"
        if self.a == 0:
            return surd if self.b > 0 else "-" + surd
        return f"{self.a}{'+' if self.b > 0 else '-'}{surd}"

    @classmethod
    def parse(cls, text: str, n: int) -> "QuadScalar":
        """Parse ``"a"``, ``"a+b√n"``, ``"-b√n"``; ``sqrt(n)`` may replace ``√n``."""
        t = text.replace(" ", "").replace(f"sqrt({n})", f"√{n}")
        terms = re.findall(r"[+-]?[^+-]+", t)
        if not t or "".join(terms) != t:
            raise ValueError(f"bad scalar literal {text!r}")
        a = b = Fraction(0)
        for term in terms:
            if "√" in term:
                coef, _, root = term.partition("√")
                if int(root) != n:
                    raise ValueError(f"literal uses sqrt({root}) in a sqrt({n}) model")
                b += Fraction(coef + "1") if coef in ("", "+", "-") else Fraction(coef)
            else:
                a += Fraction(term)
        return cls(a, b, n)


class TwoBox:
    """A function ``G -> Q(sqrt|G|)``, stored densely by element index."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: Group, coeffs: Sequence):
        n = group.order
        if len(coeffs) != n:
            raise ValueError("one coefficient per group element expected")
        self.group = group
        self.coeffs = tuple(c if isinstance(c, QuadScalar) and c.n == n else QuadScalar(0, 0, n) + c
                            for c in coeffs)

    @property
    def delta(self) -> QuadScalar:
        return QuadScalar.sqrt(self.group.order)

    def _same(self, other: "TwoBox"):
        if other.group is not self.group:
            raise GroupMismatch("2-boxes over different groups")

    def __add__(self, other: "TwoBox") -> "TwoBox":
        self._same(other)
        return TwoBox(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TwoBox") -> "TwoBox":
        self._same(other)
        return TwoBox(self.group, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "TwoBox":
        return TwoBox(self.group, [c * a for a in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoBox) and other.group is self.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def support(self) -> int:
        return sum(1 << i for i, c in enumerate(self.coeffs) if c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_positive(self) -> bool:
        return all(c.sign() >= 0 for c in self.coeffs)

    def is_projection(self) -> bool:
        return all(c == 0 or c == 1 for c in self.coeffs)

    def star(self) -> "TwoBox":
        # every coefficient is real, so the adjoint is the identity map here
        return self

    def to_json(self) -> dict:
        G = self.group
        return {G.elements[i].cycle_string(): str(c) for i, c in enumerate(self.coeffs) if c}

    @classmethod
    def from_json(cls, group: Group, data: Union[str, dict]) -> "TwoBox":
        """Literal ``{"(0 1)": "1+2√6", ...}``; unlisted elements are zero."""
        from .permgroup import Permutation

        if isinstance(data, str):
            data = json.loads(data)
        coeffs = [QuadScalar(0, 0, group.order)] * group.order
        for key, val in data.items():
            g = Permutation.parse(key, group.degree)
            if g not in group.index:
                raise BoxError(f"{key} is not in the group")
            coeffs[group.index[g]] = QuadScalar.parse(str(val), group.order)
        return cls(group, coeffs)

    def __repr__(self):
        return f"TwoBox({self.to_json()})"


def zero(G: Group) -> TwoBox:
    return TwoBox(G, [0] * G.order)


def e1(G: Group) -> TwoBox:
    """Jones projection: the indicator of the identity."""
    return indicator(G, 1)


def id_box(G: Group) -> TwoBox:
    return TwoBox(G, [1] * G.order)


def indicator(G: Group, mask: Union[int, Subgroup]) -> TwoBox:
    if isinstance(mask, Subgroup):
        mask = mask.mask
    return TwoBox(G, [1 if mask >> i & 1 else 0 for i in range(G.order)])


def point(G: Group, g: int, c: Rational = 1) -> TwoBox:
    return TwoBox(G, [c if i == g else 0 for i in range(G.order)])


def product(x: TwoBox, y: TwoBox) -> TwoBox:
    x._same(y)
    return TwoBox(x.group, [a * b for a, b in zip(x.coeffs, y.coeffs)])


def coproduct(x: TwoBox, y: TwoBox) -> TwoBox:
    x._same(y)
    G = x.group
    table = G.table
    acc = [QuadScalar(0, 0, G.order)] * G.order
    # (x * y)(h k) collects x(h) y(k)
    for h, xh in enumerate(x.coeffs):
        if not xh:
            continue
        row = table[h]
        for k, yk in enumerate(y.coeffs):
            if yk:
                g = int(row[k])
                acc[g] = acc[g] + xh * yk
    inv_delta = x.delta.inverse()
    return TwoBox(G, [inv_delta * c for c in acc])


def contragredient(x: TwoBox) -> TwoBox:
    inv = x.group.inverses
    return TwoBox(x.group, [x.coeffs[int(inv[g])] for g in range(x.group.order)])


def trace(x: TwoBox) -> QuadScalar:
    total = QuadScalar(0, 0, x.group.order)
    for c in x.coeffs:
        total = total + c
    return total * Fraction(1, x.group.order)


def preceq(a: TwoBox, b: TwoBox) -> bool:
    """``R(a) <= R(b)``: support containment in this model."""
    sa = a.support()
    return sa & b.support() == sa


def range_projection(x: TwoBox) -> TwoBox:
    if not x.is_positive():
        raise NotPositive("range projection is taken of positive elements")
    return indicator(x.group, x.support())


def biprojection_generated(x: TwoBox) -> TwoBox:
    """Range projection of ``x + x*x + ... + x^{*n}``, once it stops growing."""
    if not x.is_positive():
        raise NotPositive("only positive elements generate biprojections")
    if x.is_zero():
        raise Zero("the zero element generates nothing")
    power, total = x, x
    current = range_projection(total)
    while True:
        power = coproduct(power, x)
        total = total + power
        nxt = range_projection(total)
        if nxt == current:
            return current
        current = nxt


def biprojection_lambda(b: TwoBox) -> QuadScalar:
    """``lambda`` with ``lambda^-1 = delta tr(b)``."""
    return (b.delta * trace(b)).inverse()


def is_biprojection(b: TwoBox) -> bool:
    """``e1 <= b = b^2 = b* = contragredient(b) = lambda b*b`` with ``lambda^-1 = delta tr(b)``."""
    G = b.group
    if b != product(b, b) or b != b.star() or b != contragredient(b):
        return False
    one = e1(G)
    if product(b, one) != one:
        return False
    return b == coproduct(b, b).scale(biprojection_lambda(b))


def biprojection_candidate_masks(G: Group) -> list[int]:
    """Supports ``S`` of 0/1 functions with ``e in S = S^-1`` and ``lambda b*b = b``.

    For a 0/1 function the last identity reads ``#{h in S : h^-1 g in S} = |S| [g in S]``,
    an integer condition evaluated here for all inverse-closed ``S`` at once.
    """
    inv, table = G.inverses, G.table
    n = G.order
    orbits = sorted({tuple(sorted({g, int(inv[g])})) for g in range(1, n)})
    k = len(orbits)
    if k > 24:
        raise BoxError("too many inverse pairs for an exhaustive scan")
    codes = np.arange(2 ** k, dtype=np.int64)
    X = np.zeros((2 ** k, n), dtype=np.int8)
    X[:, 0] = 1
    for bit, orb in enumerate(orbits):
        on = ((codes >> bit) & 1).astype(np.int8)
        for g in orb:
            X[:, g] = on
    size = X.sum(axis=1, dtype=np.int64)
    counts = np.zeros((2 ** k, n), dtype=np.int64)
    # counts[:, h k] += X[:, h] X[:, k]
    for h in range(n):
        xh = X[:, h].astype(np.int64)
        for kk in range(n):
            counts[:, int(table[h, kk])] += xh * X[:, kk]
    ok = (counts == size[:, None] * X).all(axis=1)
    masks = []
    for row in X[ok]:
        masks.append(sum(1 << i for i in np.flatnonzero(row)))
    return sorted(masks)


def is_w_cyclic_model(G: Group) -> bool:
    """Does some minimal projection ``delta_g`` generate the identity biprojection?"""
    full = id_box(G)
    return any(biprojection_generated(point(G, g)) == full for g in range(G.order))


def exchange_relation_check(b: TwoBox, a1: TwoBox, a2: TwoBox) -> bool:
    """Both three-term exchange identities for a biprojection ``b``."""
    if not is_biprojection(b):
        raise NotBiprojection("exchange relations need a biprojection")
    dot, star = product, coproduct
    ba1b, ba2b = dot(dot(b, a1), b), dot(dot(b, a2), b)
    first = [star(ba1b, ba2b),
             dot(dot(b, star(a1, ba2b)), b),
             dot(dot(b, star(ba1b, a2)), b)]
    sa1, sa2 = star(star(b, a1), b), star(star(b, a2), b)
    second = [dot(sa1, sa2),
              star(star(b, dot(a1, sa2)), b),
              star(star(b, dot(sa1, a2)), b)]
    return first[0] == first[1] == first[2] and second[0] == second[1] == second[2]


def smallest_biprojection_above(x: TwoBox, subgroups: Iterable[Subgroup]) -> TwoBox:
    """Oracle: scan subgroup indicators for the least one dominating ``x``."""
    sup = x.support()
    best = None
    for K in subgroups:
        if sup & K.mask == sup and (best is None or K.order < best.order):
            best = K
    if best is None:
        raise BoxError("no subgroup indicator dominates the element")
    return indicator(x.group, best)


def pfr_witnesses(a: TwoBox, b: TwoBox, c: TwoBox) -> tuple[TwoBox, TwoBox]:
    """Projections ``a' <= c * contragredient(b)`` and ``b' <= contragredient(a) * c``
    with ``a a' != 0`` and ``b b' != 0``, for projections with ``c <= a * b``.
    """
    if not preceq(c, coproduct(a, b)):
        raise BoxError("needs c <= a * b")
    G = a.group
    table, inv = G.table, G.inverses
    cs = mask_indices(c.support())
    if not cs:
        raise Zero("c must be non-zero")
    z = cs[0]
    # z = x y with x in supp(a), y in supp(b)
    for x in mask_indices(a.support()):
        y = int(table[int(inv[x]), z])
        if b.support() >> y & 1:
            return point(G, x), point(G, y)
    raise BoxError("support calculus failed to factor an element of c")


def subgroup_of_support(x: TwoBox) -> Subgroup:
    G = x.group
    return Subgroup(G, _closure_mask(G, mask_indices(x.support())))
