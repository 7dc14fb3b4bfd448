"""Integral homology of finite simplicial sets and the mapping-cone probe."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .categories import FinCategory, initial_object, terminal_object
from .simplicial import FiniteSimplicialSet, SimplicialMap


class HomologyError(ValueError):
    pass


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex; ``boundaries[n]`` is the matrix of d_n (rows C_{n-1}, cols C_n)."""

    ranks: tuple[int, ...]
    boundaries: tuple[np.ndarray, ...]  # index 0 is a 0 x C_0 placeholder

    @property
    def top_dim(self) -> int:
        return len(self.ranks) - 1

    def d(self, n: int) -> np.ndarray:
        if n <= 0 or n > self.top_dim:
            rows = self.ranks[n - 1] if 0 < n <= len(self.ranks) else 0
            cols = self.ranks[n] if 0 <= n < len(self.ranks) else 0
            return np.zeros((rows, cols), dtype=np.int64)
        return self.boundaries[n]

    def check(self) -> None:
        for n in range(2, self.top_dim + 1):
            if np.any(self.d(n - 1).astype(object) @ self.d(n).astype(object)):
                raise HomologyError(f"d_{n - 1} d_{n} != 0")


def chain_complex(X: FiniteSimplicialSet) -> ChainComplex:
    """Normalized chains: degenerate faces contribute zero."""
    ranks = X.counts()
    mats = [np.zeros((0, ranks[0] if ranks else 0), dtype=np.int64)]
    for n in range(1, len(ranks)):
        M = np.zeros((ranks[n - 1], ranks[n]), dtype=np.int64)
        for c in range(ranks[n]):
            for i in range(n + 1):
                f = X.face(n, c, i)
                if f.nondegenerate:
                    M[f.cell, c] += -1 if i % 2 else 1
        mats.append(M)
    cc = ChainComplex(tuple(ranks), tuple(mats))
    cc.check()
    return cc


# -- Smith normal form -------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    D: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def factors(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k) if self.D[i, i]]


def smith_normal_form(M) -> SmithForm:
    """U M V = D with d_1 | d_2 | ... on the diagonal; U, V unimodular.

    Exact Python integers throughout.  Pivots have minimal absolute value;
    an entry not divisible by the pivot is folded into the pivot row so the
    divisibility chain holds on exit.
    """
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    m = len(A)
    n = len(A[0]) if m else (np.asarray(M).shape[1] if np.asarray(M).ndim == 2 else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):  # row_dst += q row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SmithForm(np.array(A, dtype=object).reshape(m, n), np.array(U, dtype=object).reshape(m, m),
                     np.array(V, dtype=object).reshape(n, n))


def invariant_factors(M, backend: str | None = None) -> list[int]:
    """Nonzero invariant factors via the selected elimination kernel."""
    return _kernels.invariant_factors(M, backend)


def bareiss_rank(M) -> int:
    """Rank over Q by fraction-free elimination; independent of the SNF kernels."""
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    m = len(A)
    n = len(A[0]) if m else 0
    rank, prev = 0, 1
    for c in range(n):
        piv = next((r for r in range(rank, m) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(rank + 1, m):
            A[r] = [(A[rank][c] * A[r][k] - A[r][c] * A[rank][k]) // prev for k in range(n)]
        prev = A[rank][c]
        rank += 1
        if rank == m:
            break
    return rank


# -- homology ----------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyProfile:
    """Per degree: (betti number, torsion invariant factors > 1)."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]

    def betti(self, n: int) -> int:
        return self.groups[n][0] if n < len(self.groups) else 0

    def torsion(self, n: int) -> tuple[int, ...]:
        return self.groups[n][1] if n < len(self.groups) else ()

    def degree(self, n: int) -> tuple[int, tuple[int, ...]]:
        return (self.betti(n), self.torsion(n))

    def is_point(self) -> bool:
        return self.groups == ((1, ()),)

    def is_zero(self) -> bool:
        return not self.groups

    def to_json_dict(self) -> dict:
        return {"H": [{"betti": b, "torsion": list(t)} for b, t in self.groups]}

    @staticmethod
    def format_group(betti: int, torsion: Sequence[int]) -> str:
        parts = []
        if betti:
            parts.append("Z" if betti == 1 else f"Z^{betti}")
        parts += [f"Z/{t}" for t in torsion]
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        if not self.groups:
            return "H = 0"
        return ", ".join(f"H{n} = {self.format_group(b, t)}" for n, (b, t) in enumerate(self.groups))


def _trim(groups: list[tuple[int, tuple[int, ...]]]) -> tuple:
    while groups and groups[-1] == (0, ()):
        groups.pop()
    return tuple(groups)


def homology_of_complex(cc: ChainComplex, backend: str | None = None) -> HomologyProfile:
    factors = [[] for _ in range(len(cc.ranks) + 1)]
    for n in range(1, len(cc.ranks)):
        factors[n] = invariant_factors(cc.d(n), backend)
    groups = []
    for n, r in enumerate(cc.ranks):
        rank_out = len(factors[n]) if n >= 1 else 0
        rank_in = len(factors[n + 1])
        groups.append((r - rank_out - rank_in, tuple(f for f in factors[n + 1] if f > 1)))
    return HomologyProfile(_trim(groups))


def homology(X: FiniteSimplicialSet, backend: str | None = None) -> HomologyProfile:
    return homology_of_complex(chain_complex(X), backend)


def reduced_homology(X: FiniteSimplicialSet) -> HomologyProfile:
    H = homology(X)
    if not H.groups:
        return H
    groups = list(H.groups)
    groups[0] = (groups[0][0] - 1, groups[0][1])
    return HomologyProfile(_trim(groups))


# -- maps ------------------------------------------------------------------------------


def chain_map(f: SimplicialMap) -> list[np.ndarray]:
    """Matrices of the normalized chain map, one per degree of the source."""
    X, Y = f.source, f.target
    out = []
    for n in range(len(X.counts())):
        M = np.zeros((Y.count(n), X.count(n)), dtype=np.int64)
        for c in range(X.count(n)):
            s = f.assignment[n][c]
            if s.nondegenerate and s.dim == n:
                M[s.cell, c] += 1
        out.append(M)
    return out


def mapping_cone(f: SimplicialMap) -> ChainComplex:
    """cone_n = C_{n-1}(X) + C_n(Y) with d(a, y) = (-d a, f a + d y)."""
    CX, CY = chain_complex(f.source), chain_complex(f.target)
    F = chain_map(f)

    def rank(cc, n):
        return cc.ranks[n] if 0 <= n < len(cc.ranks) else 0

    top = max(len(CX.ranks), len(CY.ranks) - 1)
    ranks = [rank(CX, n - 1) + rank(CY, n) for n in range(top + 1)]
    mats = [np.zeros((0, ranks[0]), dtype=np.int64)]
    for n in range(1, top + 1):
        a_rows, y_rows = rank(CX, n - 2), rank(CY, n - 1)
        a_cols, y_cols = rank(CX, n - 1), rank(CY, n)
        M = np.zeros((a_rows + y_rows, a_cols + y_cols), dtype=np.int64)
        if n >= 2 and a_rows and a_cols:
            M[:a_rows, :a_cols] = -CX.d(n - 1)
        if y_rows and a_cols and n - 1 < len(F):
            M[a_rows:, :a_cols] = F[n - 1]
        if y_rows and y_cols:
            M[a_rows:, a_cols:] = CY.d(n)
        mats.append(M)
    cc = ChainComplex(tuple(ranks), tuple(mats))
    cc.check()
    return cc


@dataclass(frozen=True)
class HomologyIsoReport:
    iso: bool
    source: HomologyProfile
    target: HomologyProfile
    cone: HomologyProfile
    failure_degree: int | None

    def __bool__(self) -> bool:
        return self.iso

    def to_json_dict(self) -> dict:
        return {
            "iso": self.iso,
            "failure_degree": self.failure_degree,
            "source": self.source.to_json_dict()["H"],
            "target": self.target.to_json_dict()["H"],
            "cone": self.cone.to_json_dict()["H"],
        }


def is_homology_iso(f: SimplicialMap) -> HomologyIsoReport:
    """Acyclicity of the unreduced mapping cone.

    If k is the lowest degree with H_k(cone) != 0 then H_{k-1}(f) is onto,
    and it is an isomorphism when the two groups agree (finitely generated
    abelian groups are Hopfian); so the failing degree is k-1 when the
    profiles differ there and k otherwise.
    """
    HX, HY = homology(f.source), homology(f.target)
    cone = homology_of_complex(mapping_cone(f))
    if cone.is_zero():
        return HomologyIsoReport(True, HX, HY, cone, None)
    k = next(n for n, g in enumerate(cone.groups) if g != (0, ()))
    fail = k - 1 if k >= 1 and HX.degree(k - 1) != HY.degree(k - 1) else k
    return HomologyIsoReport(False, HX, HY, cone, fail)


def contractible_by_terminal(C: FinCategory) -> bool:
    return terminal_object(C) is not None or initial_object(C) is not None
