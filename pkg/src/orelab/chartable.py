"""Character tables over a prime field and the integer invariants read off them.

The table is computed with the Burnside-Dixon method: the normalised class
functions ``w_k = |C_k| chi(g_k) / chi(1)`` are the common eigenvectors of
the class multiplication matrices, which split over ``F_p`` once
``p = 1 mod exponent(G)``.  Everything used downstream reduces to
fixed-point dimensions, which are integers in ``[0, chi(1)]``; with
``p > 2|G|`` lifting residues to integers is exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import isqrt
from typing import Optional

import numpy as np

from .permgroup import Group, Subgroup, _closure_mask, is_normal, mask_indices

MAX_PRIME_TRIES = 200


class CharacterTableError(Exception):
    pass


class NoSuitablePrime(CharacterTableError):
    pass


class LiftOutOfRange(CharacterTableError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    f = 17
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _primes_for(order: int, exponent: int):
    """Primes ``p = 1 mod exponent`` with ``p > 2 * order``, increasing."""
    k = 2 * order // exponent + 1
    while True:
        p = k * exponent + 1
        if p > 2 * order and _is_prime(p):
            yield p
        k += 1


# linear algebra over F_p on small dense matrices (Python ints)

def _nullspace(A: list[list[int]], p: int) -> list[list[int]]:
    """Basis of ``{x : A x = 0}`` over F_p."""
    rows, cols = len(A), len(A[0]) if A else 0
    M = [[v % p for v in row] for row in A]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [v * inv % p for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * cols
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = -M[i][f] % p
        basis.append(x)
    return basis


def _solve_coords(B: list[list[int]], v: list[int], p: int) -> list[int]:
    """Coordinates of ``v`` in the column basis ``B`` (list of basis vectors)."""
    k = len(B)
    # augmented system sum_j c_j B[j] = v
    A = [[B[j][i] for j in range(k)] + [-v[i]] for i in range(len(v))]
    sol = _nullspace(A, p)
    for s in sol:
        if s[k] % p:
            inv = pow(s[k], -1, p)
            return [x * inv % p for x in s[:k]]
    raise CharacterTableError("vector not in span; subspace is not invariant")


def _charpoly(A: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial coefficients (highest degree first), Faddeev-LeVerrier mod p."""
    n = len(A)
    coeffs = [1]
    M = [[0] * n for _ in range(n)]
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        M = [[(sum(A[i][t] * M[t][j] for t in range(n)) + c * ident[i][j]) % p for j in range(n)]
             for i in range(n)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
        trace = sum(AM[i][i] for i in range(n)) % p
        c = -trace * pow(k, -1, p) % p
        coeffs.append(c)
    return coeffs


def _roots(coeffs: list[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for a in coeffs:
            acc = (acc * x + a) % p
        if acc == 0:
            roots.append(x)
    return roots


def _restrict(M: list[list[int]], basis: list[list[int]], p: int) -> list[list[int]]:
    """Matrix of ``M`` on the invariant subspace spanned by ``basis``."""
    k = len(basis)
    cols = []
    for b in basis:
        img = [sum(M[i][j] * b[j] for j in range(len(b))) % p for i in range(len(M))]
        cols.append(_solve_coords(basis, img, p))
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _split(space: list[list[int]], M: list[list[int]], p: int) -> list[list[list[int]]]:
    """Eigenspaces of ``M`` restricted to ``space``, as lists of ambient vectors."""
    if len(space) == 1:
        return [space]
    R = _restrict(M, space, p)
    k = len(R)
    out = []
    for lam in _roots(_charpoly(R, p), p):
        shifted = [[(R[i][j] - (lam if i == j else 0)) % p for j in range(k)] for i in range(k)]
        coords = _nullspace(shifted, p)
        if coords:
            out.append([[sum(c[j] * space[j][i] for j in range(k)) % p
                         for i in range(len(space[0]))] for c in coords])
    if sum(len(v) for v in out) != len(space):
        raise CharacterTableError("class matrix not diagonalisable over this prime")
    return out


def class_matrices(G: Group) -> list[list[list[int]]]:
    """``M[j][k][l]``: number of ``x in C_j`` with ``x^-1 z_l in C_k``, ``z_l`` a class representative."""
    table, inv = G.table, G.inverses
    classes, class_of = G.classes, G.class_of
    r = len(classes)
    reps = [c[0] for c in classes]
    mats = []
    for j in range(r):
        M = [[0] * r for _ in range(r)]
        for x in classes[j]:
            xi = int(inv[x])
            for l, z in enumerate(reps):
                M[class_of[int(table[xi, z])]][l] += 1
        mats.append(M)
    return mats


@dataclass
class CharacterTable:
    """Irreducible characters of ``group`` as residues modulo ``prime``.

    ``values[i][k]`` is ``chi_i`` on class ``k`` (classes ordered as in
    ``group.classes``), and ``degrees[i]`` is the integer ``chi_i(1)``.
    The trivial character comes first.
    """

    group: Group
    prime: int
    values: list[list[int]]
    degrees: list[int]

    @property
    def classes(self):
        return self.group.classes

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.group.classes]

    def __len__(self) -> int:
        return len(self.degrees)

    def value(self, i: int, g: int) -> int:
        """Residue of ``chi_i`` at element index ``g``."""
        return self.values[i][self.group.class_of[g]]

    @cached_property
    def _element_values(self) -> np.ndarray:
        vals = np.array(self.values, dtype=np.int64)
        return vals[:, np.array(self.group.class_of, dtype=np.int64)]

    def check(self) -> None:
        """Orthogonality relations mod p and the degree identities; raises on failure."""
        G, p = self.group, self.prime
        n = G.order
        sizes = self.class_sizes
        inv_class = [G.class_of[int(G.inverses[c[0]])] for c in G.classes]
        r = len(self.values)
        if r != len(G.classes):
            raise CharacterTableError("row count differs from class count")
        if sum(d * d for d in self.degrees) != n:
            raise CharacterTableError("sum of squared degrees differs from the group order")
        for d in self.degrees:
            if n % d:
                raise CharacterTableError("degree does not divide the group order")
        for a in range(r):
            for b in range(r):
                s = sum(sizes[k] * self.values[a][k] * self.values[b][inv_class[k]] for k in range(r)) % p
                if s != (n % p if a == b else 0):
                    raise CharacterTableError(f"row orthogonality fails for {a}, {b}")
        for k in range(r):
            for l in range(r):
                s = sum(self.values[i][k] * self.values[i][inv_class[l]] for i in range(r)) % p
                expected = (n // sizes[k]) % p if k == l else 0
                if s != expected:
                    raise CharacterTableError(f"column orthogonality fails for {k}, {l}")

    def to_json(self) -> dict:
        G = self.group
        return {
            "group": G.name,
            "order": G.order,
            "prime": self.prime,
            "classes": [{"representative": G.elements[c[0]].cycle_string(), "size": len(c)}
                        for c in G.classes],
            "degrees": list(self.degrees),
            "values": [list(row) for row in self.values],
        }


def _dixon(G: Group, p: int, seed: int) -> Optional[CharacterTable]:
    mats = class_matrices(G)
    r = len(mats)
    n = G.order
    rng = random.Random(seed)
    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    # a random combination usually separates everything at once; fall back to single matrices
    combo = [[0] * r for _ in range(r)]
    for M in mats:
        c = rng.randrange(p)
        for i in range(r):
            for j in range(r):
                combo[i][j] = (combo[i][j] + c * M[i][j]) % p
    for M in [combo] + mats[1:]:
        if all(len(s) == 1 for s in spaces):
            break
        spaces = [piece for s in spaces for piece in _split(s, M, p)]
    if not all(len(s) == 1 for s in spaces):
        return None
    sizes = [len(c) for c in G.classes]
    inv_class = [G.class_of[int(G.inverses[c[0]])] for c in G.classes]
    rows = []
    for (w,) in spaces:
        if w[0] == 0:
            return None
        s = pow(w[0], -1, p)
        w = [x * s % p for x in w]
        norm = sum(w[k] * w[inv_class[k]] * pow(sizes[k], -1, p) for k in range(r)) % p
        if norm == 0:
            return None
        d2 = n * pow(norm, -1, p) % p
        degree = next((d for d in range(1, isqrt(n) + 1) if d * d % p == d2), None)
        if degree is None:
            return None
        rows.append((degree, [degree * w[k] * pow(sizes[k], -1, p) % p for k in range(r)]))
    rows.sort(key=lambda t: (t[0], t[1] != [1] * r, t[1]))
    table = CharacterTable(G, p, [v for _, v in rows], [d for d, _ in rows])
    table.check()
    return table


def character_table(G: Group, seed: int = 0) -> CharacterTable:
    """Character table of ``G``; cached on the group object."""
    cached = G.__dict__.get("_character_table")
    if cached is not None:
        return cached
    primes = _primes_for(G.order, G.exponent)
    for _ in range(MAX_PRIME_TRIES):
        p = next(primes)
        try:
            table = _dixon(G, p, seed)
        except CharacterTableError:
            table = None
        if table is not None:
            G.__dict__["_character_table"] = table
            return table
    raise NoSuitablePrime(f"no prime in the first {MAX_PRIME_TRIES} candidates splits the class algebra")


def _lift(residue: int, bound: int, p: int) -> int:
    if residue > bound:
        raise LiftOutOfRange(f"residue {residue} exceeds bound {bound} (mod {p})")
    return residue


def _dim_fixed(T: CharacterTable, i: int, members: list[int]) -> int:
    p = T.prime
    s = int(T._element_values[i, members].sum()) % p
    return _lift(s * pow(len(members), -1, p) % p, T.degrees[i], p)


def fixed_point_dim(T: CharacterTable, i: int, K: Subgroup) -> int:
    """``dim V_i^K``: the average of ``chi_i`` over ``K``, lifted from F_p."""
    return _dim_fixed(T, i, K.indices)


def character_kernel(T: CharacterTable, i: int) -> Subgroup:
    """Elements acting trivially: those ``g`` with ``dim V_i^<g> = chi_i(1)``."""
    G = T.group
    d = T.degrees[i]
    mask = 0
    for cls in G.classes:
        g = cls[0]
        if _dim_fixed(T, i, mask_indices(_closure_mask(G, [g]))) == d:
            for x in cls:
                mask |= 1 << x
    K = Subgroup(G, mask)
    if not is_normal(G, K):
        raise CharacterTableError("character kernel is not normal")
    return K


def _double_coset_reps(G: Group, H: Subgroup) -> list[int]:
    """One element per double coset ``HgH``."""
    table = G.table
    h = H.indices
    seen = 0
    reps = []
    for g in range(G.order):
        if seen >> g & 1:
            continue
        reps.append(g)
        left = {int(table[a, g]) for a in h}
        for x in left:
            for b in h:
                seen |= 1 << int(table[x, b])
    return reps


def pointwise_stabilizer_is_H(T: CharacterTable, i: int, H: Subgroup) -> bool:
    """Does the pointwise stabiliser of ``V_i^H`` equal ``H``?

    ``g`` fixes ``V^H`` pointwise iff ``dim V^<H, g> == dim V^H``, and
    ``<H, g>`` depends only on the double coset ``HgH``.
    """
    G = T.group
    base = fixed_point_dim(T, i, H)
    hgens = H.indices
    for g in _double_coset_reps(G, H):
        if H.mask >> g & 1:
            continue
        K = _closure_mask(G, [g], start=H.mask, start_gens=hgens)
        if _dim_fixed(T, i, mask_indices(K)) == base:
            return False
    return True


def linearly_primitive_characters(G: Group, H: Subgroup) -> list[int]:
    T = character_table(G)
    return [i for i in range(len(T)) if pointwise_stabilizer_is_H(T, i, H)]


def is_linearly_primitive_interval(G: Group, H: Subgroup) -> bool:
    T = character_table(G)
    return any(pointwise_stabilizer_is_H(T, i, H) for i in range(len(T)))


def kernels(G: Group) -> list[Subgroup]:
    cached = G.__dict__.get("_character_kernels")
    if cached is None:
        T = character_table(G)
        cached = [character_kernel(T, i) for i in range(len(T))]
        G.__dict__["_character_kernels"] = cached
    return cached


def min_faithful_components(G: Group) -> int:
    """Fewest irreducible constituents of a faithful representation of ``G``.

    A sum of irreducibles is faithful iff their kernels meet trivially.  The
    trivial group needs none.
    """
    ks = sorted({K.mask for K in kernels(G)})
    if G.order == 1:
        return 0
    for r in range(1, len(ks) + 1):
        for pick in combinations(ks, r):
            m = pick[0]
            for k in pick[1:]:
                m &= k
            if m == 1:
                return r
    raise CharacterTableError("kernels of all irreducibles do not meet trivially")


def is_linearly_primitive_group(G: Group) -> bool:
    """Kernel-based test: some irreducible character is faithful."""
    return any(K.is_trivial() for K in kernels(G))
