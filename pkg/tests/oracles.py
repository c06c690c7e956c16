"""Independent brute-force oracles shared by the tests."""
import itertools
import os

from orelab.permgroup import Permutation

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(ROOT, "fixtures")


def perm(text, degree):
    return Permutation.parse(text, degree)


def brute_closure(gens, degree):
    """Oracle: closure by repeated products until nothing new appears."""
    elems = {Permutation.identity(degree)}
    frontier = set(elems)
    while frontier:
        new = {a * g for a in frontier for g in gens} - elems
        elems |= new
        frontier = new
    return elems


def brute_subgroups(G):
    """Oracle: every subset containing e and closed under products (tiny groups only)."""
    els = list(G.elements)
    e = G.identity
    rest = [g for g in els if g != e]
    out = []
    for r in range(len(rest) + 1):
        for pick in itertools.combinations(rest, r):
            S = set(pick) | {e}
            if all(a * b in S for a in S for b in S):
                out.append(frozenset(S))
    return out
