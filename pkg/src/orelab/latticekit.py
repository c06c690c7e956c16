"""Finite lattices with explicit order, meet and join tables."""
from __future__ import annotations

from functools import reduce
from itertools import combinations
from typing import Optional, Sequence

import numpy as np


class LatticeError(ValueError):
    pass


class FiniteLattice:
    """A finite lattice on nodes ``0..n-1``.

    ``leq[a, b]`` is True iff ``a <= b``.  Meet and join tables are derived
    from the order and the lattice axioms are checked once, on construction.
    """

    def __init__(self, leq, labels: Optional[Sequence] = None, check: bool = True):
        leq = np.asarray(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] == 0:
            raise LatticeError("order relation must be a non-empty square matrix")
        self.leq = leq
        self.leq.setflags(write=False)
        self.n = leq.shape[0]
        self.labels = list(labels) if labels is not None else list(range(self.n))
        if check:
            self._check_order()
        self.meet = self._bound_table(leq)
        self.join = self._bound_table(leq.T)
        below = leq.sum(axis=0)
        self.bottom = int(np.argmin(below))
        self.top = int(np.argmax(below))
        if check:
            self._check_lattice()

    def _check_order(self):
        leq = self.leq
        if not leq.diagonal().all():
            raise LatticeError("order is not reflexive")
        if (leq & leq.T & ~np.eye(self.n, dtype=bool)).any():
            raise LatticeError("order is not antisymmetric")
        composed = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if (composed & ~leq).any():
            raise LatticeError("order is not transitive")

    @staticmethod
    def _bound_table(leq: np.ndarray) -> np.ndarray:
        # greatest common lower bound (pass leq.T for least common upper bound);
        # -1 marks pairs without one
        n = leq.shape[0]
        down = leq.sum(axis=0)
        table = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            common = leq[:, a][None, :] & leq.T       # common[b, c]: c <= a and c <= b
            best = np.where(common, down[None, :], -1).argmax(axis=1)
            ok = ~(common & ~leq[:, best].T).any(axis=1) & common[np.arange(n), best]
            table[a] = np.where(ok, best, -1)
        return table

    def _check_lattice(self):
        if (self.meet < 0).any() or (self.join < 0).any():
            raise LatticeError("some pair lacks a meet or a join")
        if not self.leq[self.bottom].all() or not self.leq[:, self.top].all():
            raise LatticeError("no global bottom/top")

    # construction helpers

    @classmethod
    def from_covers(cls, n: int, covers: Sequence[tuple[int, int]], labels=None) -> "FiniteLattice":
        """Lattice from cover pairs ``(a, b)`` meaning ``a < b``; closes transitively."""
        leq = np.eye(n, dtype=bool)
        for a, b in covers:
            leq[a, b] = True
        for k in range(n):
            leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
        return cls(leq, labels)

    @classmethod
    def chain(cls, length: int) -> "FiniteLattice":
        """Chain with ``length + 1`` nodes."""
        idx = np.arange(length + 1)
        return cls(idx[:, None] <= idx[None, :])

    @classmethod
    def boolean(cls, rank: int) -> "FiniteLattice":
        idx = np.arange(2 ** rank)
        return cls((idx[:, None] & idx[None, :]) == idx[:, None], labels=list(idx))

    @classmethod
    def divisors(cls, n: int) -> "FiniteLattice":
        ds = [d for d in range(1, n + 1) if n % d == 0]
        return cls([[b % a == 0 for b in ds] for a in ds], labels=ds)

    @classmethod
    def m3(cls) -> "FiniteLattice":
        return cls.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])

    @classmethod
    def n5(cls) -> "FiniteLattice":
        return cls.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])

    def reversed(self) -> "FiniteLattice":
        return FiniteLattice(self.leq.T.copy(), self.labels, check=False)

    def sublattice(self, nodes: Sequence[int]) -> "FiniteLattice":
        nodes = list(nodes)
        return FiniteLattice(self.leq[np.ix_(nodes, nodes)], [self.labels[i] for i in nodes])

    def interval(self, a: int, b: int) -> tuple["FiniteLattice", list[int]]:
        """The interval ``[a, b]`` and the node indices it keeps."""
        nodes = [c for c in range(self.n) if self.leq[a, c] and self.leq[c, b]]
        return self.sublattice(nodes), nodes

    def product(self, other: "FiniteLattice") -> "FiniteLattice":
        leq = np.kron(self.leq.astype(np.int8), other.leq.astype(np.int8)).astype(bool)
        return FiniteLattice(leq)

    def concatenate(self, other: "FiniteLattice") -> "FiniteLattice":
        """Glue the top of ``self`` to the bottom of ``other``."""
        n, m = self.n, other.n
        order_self = [i for i in range(n) if i != self.top] + [self.top]
        order_other = [other.bottom] + [i for i in range(m) if i != other.bottom]
        size = n + m - 1
        leq = np.zeros((size, size), dtype=bool)
        leq[:n, :n] = self.leq[np.ix_(order_self, order_self)]
        leq[n - 1:, n - 1:] = other.leq[np.ix_(order_other, order_other)]
        leq[:n, n - 1:] = True
        return FiniteLattice(leq)

    def is_isomorphic_to(self, other: "FiniteLattice") -> bool:
        """Brute-force order isomorphism; for small lattices in tests."""
        if self.n != other.n:
            return False
        from itertools import permutations

        deg_a = sorted(self.leq.sum(0))
        if deg_a != sorted(other.leq.sum(0)):
            return False
        for perm in permutations(range(self.n)):
            p = list(perm)
            if np.array_equal(self.leq, other.leq[np.ix_(p, p)]):
                return True
        return False


def is_distributive(L: FiniteLattice) -> bool:
    """Direct check of ``a ∧ (b ∨ c) == (a ∧ b) ∨ (a ∧ c)`` over all triples."""
    meet, join = L.meet, L.join
    for a in range(L.n):
        lhs = meet[a][join]                        # lhs[b, c] = a ∧ (b ∨ c)
        ma = meet[a]
        rhs = join[ma[:, None], ma[None, :]]       # (a ∧ b) ∨ (a ∧ c)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def atoms(L: FiniteLattice) -> list[int]:
    return _covers_of(L.leq, L.bottom)


def coatoms(L: FiniteLattice) -> list[int]:
    return _covers_of(L.leq.T, L.top)


def _covers_of(leq: np.ndarray, x: int) -> list[int]:
    above = [y for y in range(leq.shape[0]) if y != x and leq[x, y]]
    return [y for y in above if not any(z != y and leq[z, y] for z in above)]


def complements(L: FiniteLattice, x: int) -> list[int]:
    return [y for y in range(L.n) if L.meet[x, y] == L.bottom and L.join[x, y] == L.top]


def height(L: FiniteLattice) -> int:
    """Length of the longest strict chain."""
    order = sorted(range(L.n), key=lambda i: L.leq[:, i].sum())
    longest = [0] * L.n
    for y in order:
        below = [x for x in range(L.n) if x != y and L.leq[x, y]]
        longest[y] = max((longest[x] + 1 for x in below), default=0)
    return max(longest)


def _boolean_by_complements(L: FiniteLattice) -> bool:
    return is_distributive(L) and all(len(complements(L, x)) == 1 for x in range(L.n))


def _boolean_by_atoms(L: FiniteLattice) -> bool:
    at = atoms(L) if L.n > 1 else []
    if L.n != 2 ** len(at):
        return False
    seen = set()
    for r in range(len(at) + 1):
        for subset in combinations(at, r):
            x = reduce(lambda u, v: int(L.join[u, v]), subset, L.bottom)
            seen.add(x)
    if len(seen) != L.n:
        return False
    # each node's atoms must reproduce it
    for x in range(L.n):
        below = [a for a in at if L.leq[a, x]]
        if reduce(lambda u, v: int(L.join[u, v]), below, L.bottom) != x:
            return False
    return True


def is_boolean(L: FiniteLattice) -> bool:
    by_complements = _boolean_by_complements(L)
    by_atoms = _boolean_by_atoms(L)
    if by_complements != by_atoms:
        raise AssertionError("boolean tests disagree")
    return by_complements


def meet_all(L: FiniteLattice, nodes) -> int:
    return reduce(lambda u, v: int(L.meet[u, v]), nodes, L.top)


def join_all(L: FiniteLattice, nodes) -> int:
    return reduce(lambda u, v: int(L.join[u, v]), nodes, L.bottom)


def top_interval(L: FiniteLattice) -> FiniteLattice:
    return L.interval(top_interval_bottom(L), L.top)[0]


def top_interval_bottom(L: FiniteLattice) -> int:
    """The meet of all coatoms (the top node itself for a one-node lattice)."""
    return meet_all(L, coatoms(L))


def bottom_interval(L: FiniteLattice) -> FiniteLattice:
    return L.interval(L.bottom, join_all(L, atoms(L)))[0]


def is_top_boolean(L: FiniteLattice) -> bool:
    return is_boolean(top_interval(L))


def is_bottom_boolean(L: FiniteLattice) -> bool:
    return is_top_boolean(L.reversed())
