"""Fusion rings given by structure matrices.

``N[i][j][k]`` is the multiplicity of ``x_k`` in ``x_i x_j``; index 0 is the
unit.  Every axiom is checked with exact integer arithmetic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Sequence, Union

import numpy as np


class FusionRingError(Exception):
    pass


class AxiomViolation(FusionRingError):
    def __init__(self, kind: str, indices: tuple, message: str = ""):
        self.kind = kind
        self.indices = indices
        super().__init__(f"{kind} at {indices}" + (f": {message}" if message else ""))


class NonIntegralDims(FusionRingError):
    pass


@dataclass(frozen=True)
class FusionRing:
    N: np.ndarray          # shape (r, r, r)
    duality: tuple[int, ...]
    dims: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.N.shape[0]

    @property
    def global_dimension(self) -> int:
        return sum(d * d for d in self.dims)

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(sorted(self.dims))

    def to_json(self) -> dict:
        return {"rank": self.rank, "dims": list(self.dims), "duality": list(self.duality),
                "global_dimension": self.global_dimension,
                "matrices": self.N.tolist()}


def _check_shape(mats) -> np.ndarray:
    N = np.asarray(mats)
    if N.ndim != 3 or not (N.shape[0] == N.shape[1] == N.shape[2]) or N.shape[0] == 0:
        raise AxiomViolation("shape", tuple(N.shape), "need r square r x r matrices")
    if not np.issubdtype(N.dtype, np.integer):
        raise AxiomViolation("integrality", (), "entries must be integers")
    neg = np.argwhere(N < 0)
    if len(neg):
        raise AxiomViolation("nonnegativity", tuple(int(x) for x in neg[0]))
    return N.astype(np.int64)


def associativity_violations(N: np.ndarray) -> list[tuple[int, int, int, int]]:
    """Quadruples ``(i, j, l, m)`` where ``(x_i x_j) x_l`` and ``x_i (x_j x_l)`` differ on ``x_m``."""
    # left[i, j, l, m] = sum_t N[i, j, t] N[t, l, m]; right = sum_t N[j, l, t] N[i, t, m]
    left = np.einsum("ijt,tlm->ijlm", N, N)
    right = np.einsum("jlt,itm->ijlm", N, N)
    return [tuple(int(x) for x in q) for q in np.argwhere(left != right)]


def _duality(N: np.ndarray) -> tuple[int, ...]:
    r = N.shape[0]
    dual = []
    for i in range(r):
        col = N[i, :, 0]
        hits = np.flatnonzero(col)
        if len(hits) != 1 or col[hits[0]] != 1:
            raise AxiomViolation("duality", (i,), "x_i x_j must contain the unit exactly once for one j")
        dual.append(int(hits[0]))
    for i, j in enumerate(dual):
        if dual[j] != i:
            raise AxiomViolation("duality", (i, j), "duality is not an involution")
    if dual[0] != 0:
        raise AxiomViolation("duality", (0,), "the unit must be self-dual")
    return tuple(dual)


def fp_dimensions(N: np.ndarray) -> tuple[int, ...]:
    """Integral Frobenius-Perron dimensions, verified exactly.

    The Perron eigenvector of ``sum_i N_i`` only seeds the search; candidates
    within one unit of each rounded entry are tried and the first exact
    solution of ``d_i d_j = sum_k N_ij^k d_k`` with ``d_0 = 1`` is returned.
    """
    N = np.asarray(N, dtype=np.int64)
    r = N.shape[0]
    total = N.sum(axis=0).astype(float)
    vals, vecs = np.linalg.eig(total.T)
    v = np.abs(np.real(vecs[:, int(np.argmax(np.real(vals)))]))
    if v[0] == 0:
        raise NonIntegralDims("degenerate Perron vector")
    seed = v / v[0]
    base = np.rint(seed).astype(np.int64)
    offsets = [0, -1, 1]
    # try the rounded vector first, then one-step perturbations of single entries
    tried = [base]
    for i in range(1, r):
        for off in offsets[1:]:
            cand = base.copy()
            cand[i] += off
            tried.append(cand)
    for d in tried:
        d[0] = 1
        if (d < 1).any():
            continue
        if np.array_equal(np.outer(d, d), N @ d):
            return tuple(int(x) for x in d)
    raise NonIntegralDims(f"no integral dimension vector near {seed.round(4).tolist()}")


def fusion_ring_from_matrices(mats: Union[Sequence, np.ndarray]) -> FusionRing:
    """Validate ``mats`` and return the ring; raises ``AxiomViolation`` naming the failure."""
    N = _check_shape(mats)
    r = N.shape[0]
    if not np.array_equal(N[0], np.eye(r, dtype=np.int64)):
        raise AxiomViolation("unit", (0,), "N_0 must be the identity")
    unit_right = N[:, 0, :]
    if not np.array_equal(unit_right, np.eye(r, dtype=np.int64)):
        i = int(np.argwhere(unit_right != np.eye(r, dtype=np.int64))[0][0])
        raise AxiomViolation("unit", (i,), "x_i x_0 must equal x_i")
    bad = associativity_violations(N)
    if bad:
        raise AxiomViolation("associativity", bad[0])
    duality = _duality(N)
    dims = fp_dimensions(N)
    return FusionRing(N, duality, dims)


def proper_fusion_subrings(R: FusionRing) -> list[tuple[int, ...]]:
    """All index sets containing 0 closed under duality and fusion (the full set included)."""
    r = R.rank
    if r > 20:
        raise FusionRingError("subring scan limited to rank 20")
    N = R.N
    out = []
    others = list(range(1, r))
    for size in range(r):
        for pick in combinations(others, size):
            S = (0,) + pick
            inside = np.zeros(r, dtype=bool)
            inside[list(S)] = True
            if not all(inside[R.duality[i]] for i in S):
                continue
            prods = N[np.ix_(S, S)]          # prods[a, b, k]
            if prods[:, :, ~inside].any():
                continue
            out.append(S)
    return out


def is_simple(R: FusionRing) -> bool:
    """No fusion subring other than the unit and the whole ring."""
    return len(proper_fusion_subrings(R)) <= 2


def group_ring(n: int) -> list[list[list[int]]]:
    """Structure matrices of the group ring of Z/n."""
    return [[[int(k == (i + j) % n) for k in range(n)] for j in range(n)] for i in range(n)]


def load_matrices(path: Union[str, Path]) -> list:
    data = json.loads(Path(path).read_text())
    return data["matrices"] if isinstance(data, dict) else data


def rank7_ring_matrices() -> list:
    """The bundled rank-7 fixture of type (1,5,5,5,6,7,7)."""
    text = resources.files("orelab").joinpath("data/fr210.json").read_text()
    return json.loads(text)["matrices"]
