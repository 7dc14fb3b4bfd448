"""Finite simplicial sets in nondegenerate-cell presentation.

A simplex of a simplicial set is stored as ``Simplex(sur, dim, cell)``: the
nondegenerate ``cell`` of dimension ``dim`` pulled back along the monotone
surjection ``sur: [m] -> [dim]`` (given as the tuple of its values).  This is
the Eilenberg-Zilber normal form; a simplex is degenerate iff ``len(sur) > dim + 1``.

Each nondegenerate n-cell records its n+1 faces as normal-form references.
Every other face operator is derived from those by factoring monotone maps
into a surjection followed by an injection.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence


class SimplicialError(ValueError):
    """Raised when a presentation violates the simplicial identities."""


class NotAComplex(SimplicialError):
    """Raised by operations restricted to vertex-ordered simplicial complexes."""


class Simplex(NamedTuple):
    sur: tuple[int, ...]
    dim: int
    cell: int

    @property
    def degree(self) -> int:
        return len(self.sur) - 1

    @property
    def nondegenerate(self) -> bool:
        return len(self.sur) == self.dim + 1


def identity_sur(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def nd(dim: int, cell: int) -> Simplex:
    return Simplex(identity_sur(dim), dim, cell)


def degeneracies_to_sur(degeneracies: Sequence[int], target_dim: int) -> tuple[int, ...]:
    """Surjection for the degeneracy word ``s_{i1} ... s_{ik}`` (i1 > ... > ik)."""
    m = target_dim + len(degeneracies)
    repeated = set(degeneracies)
    if len(repeated) != len(degeneracies) or any(not 0 <= j < m for j in repeated):
        raise SimplicialError(f"bad degeneracy word {list(degeneracies)} onto dim {target_dim}")
    if list(degeneracies) != sorted(degeneracies, reverse=True):
        raise SimplicialError(f"degeneracy word {list(degeneracies)} is not strictly decreasing")
    values = [0]
    for j in range(m):
        values.append(values[-1] if j in repeated else values[-1] + 1)
    return tuple(values)


def sur_to_degeneracies(sur: Sequence[int]) -> list[int]:
    return sorted((j for j in range(len(sur) - 1) if sur[j] == sur[j + 1]), reverse=True)


def _coface(a: int, n: int) -> tuple[int, ...]:
    """The injection [n-1] -> [n] skipping ``a``."""
    return tuple(j if j < a else j + 1 for j in range(n))


@dataclass(frozen=True, eq=False)
class FiniteSimplicialSet:
    """Nondegenerate cells per dimension plus their normal-form faces.

    ``faces[n][c][i]`` is the i-th face of the nondegenerate n-cell ``c``
    (only for n >= 1).  ``labels[n][c]`` is a display name.  An empty
    simplicial set has ``labels == ()``.
    """

    labels: tuple[tuple[str, ...], ...]
    faces: tuple[tuple[tuple[Simplex, ...], ...], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.faces) != len(self.labels):
            raise SimplicialError("faces and labels disagree on dimension count")
        if self.faces and any(self.faces[0]):
            raise SimplicialError("vertices have no faces")

    @property
    def top_dim(self) -> int:
        return len(self.labels) - 1

    def count(self, n: int) -> int:
        return len(self.labels[n]) if 0 <= n < len(self.labels) else 0

    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.labels)

    def total_cells(self) -> int:
        return sum(self.counts())

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.counts()))

    def cells(self) -> Iterator[tuple[int, int]]:
        for n, level in enumerate(self.labels):
            for c in range(len(level)):
                yield n, c

    def face(self, n: int, c: int, i: int) -> Simplex:
        return self.faces[n][c][i]

    # -- normal-form evaluation ------------------------------------------------

    def pull(self, dim: int, cell: int, theta: Sequence[int]) -> Simplex:
        """theta^* of the nondegenerate cell, for a monotone ``theta: [p] -> [dim]``."""
        theta = tuple(theta)
        key = (dim, cell, theta)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        image = sorted(set(theta))
        if len(image) == dim + 1:
            result = Simplex(theta, dim, cell)
        else:
            missing = max(set(range(dim + 1)) - set(image))
            lowered = tuple(t if t < missing else t - 1 for t in theta)
            tau, fdim, fcell = self.faces[dim][cell][missing]
            result = self.pull(fdim, fcell, tuple(tau[t] for t in lowered))
        self._cache[key] = result
        return result

    def apply(self, simplex: Simplex, theta: Sequence[int]) -> Simplex:
        """theta^* of an arbitrary simplex."""
        sur, dim, cell = simplex
        return self.pull(dim, cell, tuple(sur[t] for t in theta))

    def face_of(self, simplex: Simplex, i: int) -> Simplex:
        return self.apply(simplex, _coface(i, simplex.degree))

    def vertices(self, n: int, c: int) -> tuple[int, ...]:
        return tuple(self.pull(n, c, (j,)).cell for j in range(n + 1))

    def simplices(self, m: int) -> Iterator[Simplex]:
        """All m-simplices, degenerate ones included."""
        for k in range(min(m, self.top_dim) + 1):
            for sur in surjections(m, k):
                for c in range(self.count(k)):
                    yield Simplex(sur, k, c)

    # -- validation ------------------------------------------------------------

    def check(self) -> None:
        """Verify resolvability of every face and the simplicial identities."""
        for n in range(1, len(self.faces)):
            for c, fs in enumerate(self.faces[n]):
                if len(fs) != n + 1:
                    raise SimplicialError(f"cell {n}/{c} has {len(fs)} faces, expected {n + 1}")
                for i, (sur, k, cell) in enumerate(fs):
                    if len(sur) != n or not 0 <= k < n or not 0 <= cell < self.count(k):
                        raise SimplicialError(f"face {n}/{c}/{i} does not resolve")
                    if sur != degeneracies_to_sur(sur_to_degeneracies(sur), k):
                        raise SimplicialError(f"face {n}/{c}/{i} is not in normal form")
        for n in range(2, len(self.faces)):
            for c, fs in enumerate(self.faces[n]):
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face_of(fs[j], i)
                        rhs = self.face_of(fs[i], j - 1)
                        if lhs != rhs:
                            raise SimplicialError(
                                f"d{i}d{j} != d{j - 1}d{i} on cell {n}/{c}: {lhs} vs {rhs}"
                            )

    def is_complex(self) -> bool:
        """Faces nondegenerate, vertices distinct, cells determined by vertex sets."""
        seen = set()
        for n, c in self.cells():
            if n and any(not f.nondegenerate for f in self.faces[n][c]):
                return False
            vs = self.vertices(n, c)
            if len(set(vs)) != len(vs) or frozenset(vs) in seen:
                return False
            seen.add(frozenset(vs))
        return True

    # -- JSON ------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        faces = {}
        for n in range(1, len(self.faces)):
            for c, fs in enumerate(self.faces[n]):
                for i, (sur, _, cell) in enumerate(fs):
                    faces[f"{n}/{c}/{i}"] = {"degeneracies": sur_to_degeneracies(sur), "cell": cell}
        return {"dims": self.top_dim, "cells": [list(level) for level in self.labels], "faces": faces}

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteSimplicialSet":
        labels = tuple(tuple(str(x) for x in level) for level in data["cells"])
        if data["dims"] != len(labels) - 1:
            raise SimplicialError("'dims' disagrees with the cell table")
        faces: list[list[list[Simplex | None]]] = [[] for _ in labels]
        for n in range(1, len(labels)):
            faces[n] = [[None] * (n + 1) for _ in labels[n]]
        for key, ref in data["faces"].items():
            n, c, i = (int(part) for part in key.split("/"))
            degs = list(ref["degeneracies"])
            k = n - 1 - len(degs)
            faces[n][c][i] = Simplex(degeneracies_to_sur(degs, k), k, int(ref["cell"]))
        if any(f is None for level in faces for fs in level for f in fs):
            raise SimplicialError("missing face references")
        out = cls(labels, tuple(tuple(tuple(fs) for fs in level) for level in faces))
        out.check()
        return out

    @classmethod
    def loads(cls, text: str) -> "FiniteSimplicialSet":
        return cls.from_json_dict(json.loads(text))


def surjections(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """Monotone surjections [m] -> [k] in lexicographic order."""
    for repeated in itertools.combinations(range(m), m - k):
        yield degeneracies_to_sur(sorted(repeated, reverse=True), k)


def build(levels: Sequence[Sequence[tuple[str, Sequence[Simplex]]]]) -> FiniteSimplicialSet:
    """Assemble from ``levels[n] = [(label, faces), ...]`` and validate."""
    labels = tuple(tuple(lab for lab, _ in level) for level in levels)
    faces = tuple(tuple(tuple(fs) for _, fs in level) for level in levels)
    out = FiniteSimplicialSet(labels, faces)
    out.check()
    return out


EMPTY = FiniteSimplicialSet((), ())


# -- maps ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: FiniteSimplicialSet
    target: FiniteSimplicialSet
    assignment: tuple[tuple[Simplex, ...], ...]

    def image(self, n: int, c: int) -> Simplex:
        return self.assignment[n][c]

    def __call__(self, simplex: Simplex) -> Simplex:
        return self.target.apply(self.assignment[simplex.dim][simplex.cell], simplex.sur)

    def key(self) -> tuple:
        return self.assignment

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.source is other.source
            and self.target is other.target
            and self.assignment == other.assignment
        )

    def __hash__(self):
        return hash(self.assignment)

    def check(self) -> None:
        src, tgt = self.source, self.target
        if len(self.assignment) != len(src.labels):
            raise SimplicialError("assignment has the wrong number of dimensions")
        for n, c in src.cells():
            img = self.assignment[n][c]
            if img.degree != n:
                raise SimplicialError(f"cell {n}/{c} sent to a simplex of degree {img.degree}")
            if img.dim > tgt.top_dim or not 0 <= img.cell < tgt.count(img.dim):
                raise SimplicialError(f"image of {n}/{c} does not resolve")
            if n == 0:
                continue
            for i in range(n + 1):
                if self(src.face(n, c, i)) != tgt.face_of(img, i):
                    raise SimplicialError(f"map does not commute with d{i} on cell {n}/{c}")

    def is_injective(self) -> bool:
        images = [s for level in self.assignment for s in level]
        return all(s.nondegenerate for s in images) and len(set(images)) == len(images)


def simplicial_map(source, target, assignment) -> SimplicialMap:
    out = SimplicialMap(source, target, tuple(tuple(level) for level in assignment))
    out.check()
    return out


def identity_map(X: FiniteSimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, tuple(tuple(nd(n, c) for c in range(X.count(n))) for n in range(len(X.labels))))


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g after f."""
    return SimplicialMap(f.source, g.target, tuple(tuple(g(s) for s in level) for level in f.assignment))


# -- standard objects ---------------------------------------------------------


def make_standard(kind: str, n: int, k: int | None = None) -> FiniteSimplicialSet:
    """``kind`` is ``simplex``, ``boundary`` or ``horn`` (the latter needs ``k``)."""
    if n < 0:
        raise SimplicialError("n must be >= 0")
    if kind == "horn":
        if k is None or not 0 <= k <= n:
            raise SimplicialError(f"horn index k={k} outside 0..{n}")
    elif kind not in ("simplex", "boundary"):
        raise SimplicialError(f"unknown standard object {kind!r}")

    def keep(vs: tuple[int, ...]) -> bool:
        if kind == "simplex" or len(vs) < n + 1 - (kind == "horn"):
            return True
        if len(vs) == n + 1:
            return False
        return k in vs  # horn: drop the face opposite k

    top = n if kind == "simplex" else n - 1
    if kind == "horn" and n == 0:
        top = -1
    levels = []
    index: dict[tuple[int, ...], int] = {}
    for m in range(top + 1):
        level = []
        for vs in itertools.combinations(range(n + 1), m + 1):
            if not keep(vs):
                continue
            index[vs] = len(level)
            faces = [] if m == 0 else [nd(m - 1, index[vs[:i] + vs[i + 1:]]) for i in range(m + 1)]
            level.append(("".join(map(str, vs)) if n < 10 else ",".join(map(str, vs)), faces))
        levels.append(level)
    while levels and not levels[-1]:
        levels.pop()
    return build(levels)


def simplex(n: int) -> FiniteSimplicialSet:
    return make_standard("simplex", n)


def boundary(n: int) -> FiniteSimplicialSet:
    return make_standard("boundary", n)


def horn(n: int, k: int) -> FiniteSimplicialSet:
    return make_standard("horn", n, k)


def simplex_map(X: FiniteSimplicialSet, x: Simplex) -> SimplicialMap:
    """The map Delta^n -> X classifying the n-simplex ``x``."""
    n = x.degree
    D = simplex(n)
    assignment = []
    for m in range(n + 1):
        assignment.append(tuple(X.apply(x, D.vertices(m, c)) for c in range(D.count(m))))
    return SimplicialMap(D, X, tuple(assignment))


# -- poset nerves (shared by Sd and the category nerve) -------------------------


def poset_nerve(
    names: Sequence[str], less: Sequence[Sequence[bool]], order: Sequence[int] | None = None
) -> tuple[FiniteSimplicialSet, list[tuple[int, ...]]]:
    """Nerve of a finite poset; cells are strict chains.

    ``less[i][j]`` is the strict order.  ``order`` fixes the vertex numbering
    (a linear extension); chains are enumerated lexicographically in it.
    Returns the simplicial set and the chains (in original element indices)
    per cell, flattened in cell order.
    """
    order = list(range(len(names))) if order is None else list(order)
    pos = {e: i for i, e in enumerate(order)}
    for a in range(len(names)):
        for b in range(len(names)):
            if less[a][b] and pos[a] > pos[b]:
                raise ValueError("vertex order is not a linear extension")
    ups = [[b for b in order if less[a][b]] for a in range(len(names))]
    chains_by_dim: list[list[tuple[int, ...]]] = [[(e,) for e in order]] if names else []
    while chains_by_dim and chains_by_dim[-1]:
        nxt = [ch + (b,) for ch in chains_by_dim[-1] for b in ups[ch[-1]]]
        chains_by_dim.append(nxt)
    if chains_by_dim:
        chains_by_dim.pop()
    levels = []
    flat = []
    index: dict[tuple[int, ...], int] = {}
    for m, chains in enumerate(chains_by_dim):
        level = []
        for ch in chains:
            index[ch] = len(level)
            faces = [] if m == 0 else [nd(m - 1, index[ch[:i] + ch[i + 1:]]) for i in range(m + 1)]
            level.append(("<".join(names[e] for e in ch), faces))
            flat.append(ch)
        levels.append(level)
    return build(levels), flat


# -- product --------------------------------------------------------------------


def _lattice_paths(p: int, q: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Monotone lattice paths (0,0) -> (p,q) with steps (1,0), (0,1), (1,1)."""

    def walk(path):
        a, b = path[-1]
        if (a, b) == (p, q):
            yield tuple(path)
            return
        for da, db in ((1, 0), (0, 1), (1, 1)):
            if a + da <= p and b + db <= q:
                path.append((a + da, b + db))
                yield from walk(path)
                path.pop()

    yield from walk([(0, 0)])


@dataclass(frozen=True)
class Product:
    space: FiniteSimplicialSet
    first: SimplicialMap
    second: SimplicialMap


def product(X: FiniteSimplicialSet, Y: FiniteSimplicialSet) -> Product:
    """Categorical product with its projections.

    Nondegenerate m-cells of X x Y are pairs (x, y) of nondegenerate cells
    together with a chain in [dim x] x [dim y] of length m that is jointly
    surjective; these are the shuffle decompositions.
    """
    keys: dict[tuple, tuple[int, int]] = {}
    top = X.top_dim + Y.top_dim if X.labels and Y.labels else -1
    # enumerate by dimension so faces always refer to lower, already indexed cells
    cells_by_dim: list[list[tuple]] = [[] for _ in range(top + 1)]
    for p in range(X.top_dim + 1):
        for q in range(Y.top_dim + 1):
            for path in _lattice_paths(p, q):
                m = len(path) - 1
                for a in range(X.count(p)):
                    for b in range(Y.count(q)):
                        cells_by_dim[m].append((p, a, q, b, path))
    levels = []
    first, second = [], []
    for m, cells in enumerate(cells_by_dim):
        cells.sort(key=lambda t: (t[0], t[1], t[2], t[3], t[4]))
        level = []
        fst, snd = [], []
        for p, a, q, b, path in cells:
            keys[(p, a, q, b, path)] = (m, len(level))
            sx = tuple(s for s, _ in path)
            sy = tuple(t for _, t in path)
            faces = []
            if m:
                for i in range(m + 1):
                    theta = _coface(i, m)
                    fx = X.pull(p, a, tuple(sx[t] for t in theta))
                    fy = Y.pull(q, b, tuple(sy[t] for t in theta))
                    faces.append(_normalize_pair(fx, fy, keys))
            if m == 0:
                label = f"({X.labels[p][a]},{Y.labels[q][b]})"
            else:
                vx = X.vertices(p, a)
                vy = Y.vertices(q, b)
                label = "".join(f"({X.labels[0][vx[s]]},{Y.labels[0][vy[t]]})" for s, t in path)
            level.append((label, faces))
            fst.append(Simplex(sx, p, a))
            snd.append(Simplex(sy, q, b))
        levels.append(level)
        first.append(tuple(fst))
        second.append(tuple(snd))
    space = build(levels)
    return Product(space, SimplicialMap(space, X, tuple(first)), SimplicialMap(space, Y, tuple(second)))


def _normalize_pair(fx: Simplex, fy: Simplex, keys) -> Simplex:
    joint = list(zip(fx.sur, fy.sur))
    distinct = sorted(set(joint))
    rho = tuple(distinct.index(pt) for pt in joint)
    path = tuple(distinct)
    # the chain is indexed in the coordinates of the nondegenerate factors
    m, idx = keys[(fx.dim, fx.cell, fy.dim, fy.cell, path)]
    return Simplex(rho, m, idx)


def pairing(f: SimplicialMap, g: SimplicialMap, prod: Product) -> SimplicialMap:
    """The map (f, g): A -> X x Y into a product built by :func:`product`."""
    P = prod.space
    index = {}
    for m in range(P.top_dim + 1):
        for c in range(P.count(m)):
            index[(prod.first.assignment[m][c], prod.second.assignment[m][c])] = c
    out = []
    for n, level in enumerate(f.assignment):
        row = []
        for c in range(len(level)):
            x, y = f.assignment[n][c], g.assignment[n][c]
            joint = list(zip(x.sur, y.sur))
            distinct = sorted(set(joint))
            rho = tuple(distinct.index(pt) for pt in joint)
            m = len(distinct) - 1
            sx = tuple(s for s, _ in distinct)
            sy = tuple(t for _, t in distinct)
            key = (Simplex(sx, x.dim, x.cell), Simplex(sy, y.dim, y.cell))
            row.append(Simplex(rho, m, index[key]))
        out.append(tuple(row))
    return SimplicialMap(f.source, P, tuple(out))


# -- pushout ---------------------------------------------------------------------


@dataclass(frozen=True)
class Pushout:
    space: FiniteSimplicialSet
    left: SimplicialMap  # X -> P
    right: SimplicialMap  # Y -> P


class UnsupportedPushout(SimplicialError):
    pass


def pushout_sset(f: SimplicialMap, g: SimplicialMap) -> Pushout:
    """Pushout of X <-f- A -g-> Y; one of the legs must be a monomorphism."""
    if f.source is not g.source and (f.source.labels, f.source.faces) != (g.source.labels, g.source.faces):
        raise SimplicialError("legs have different sources")
    if f.is_injective():
        return _pushout_along_mono(f, g, swap=False)
    if g.is_injective():
        return _pushout_along_mono(g, f, swap=True)
    raise UnsupportedPushout("pushout_sset needs at least one injective leg")


def _pushout_along_mono(mono: SimplicialMap, other: SimplicialMap, swap: bool) -> Pushout:
    X, Y = mono.target, other.target
    preimage = {}
    for n, level in enumerate(mono.assignment):
        for c, s in enumerate(level):
            preimage[(s.dim, s.cell)] = (n, c)
    top = max(X.top_dim, Y.top_dim)
    new_index: dict[tuple[int, int], int] = {}
    levels = []
    for n in range(top + 1):
        level = [(lab, Y.faces[n][c] if n else ()) for c, lab in enumerate(Y.labels[n])] if n <= Y.top_dim else []
        levels.append(level)
    x_image = [[None] * X.count(n) for n in range(X.top_dim + 1)]

    def carry(s: Simplex) -> Simplex:
        # image in P of an X-simplex whose nondegenerate part is already placed
        base = x_image[s.dim][s.cell]
        return Simplex(tuple(base.sur[t] for t in s.sur), base.dim, base.cell)

    for n in range(X.top_dim + 1):
        for c in range(X.count(n)):
            if (n, c) in preimage:
                an, ac = preimage[(n, c)]
                x_image[n][c] = other.assignment[an][ac]
                continue
            faces = tuple(carry(X.face(n, c, i)) for i in range(n + 1)) if n else ()
            idx = len(levels[n])
            levels[n].append((X.labels[n][c], faces))
            new_index[(n, c)] = idx
            x_image[n][c] = nd(n, idx)
    while levels and not levels[-1]:
        levels.pop()
    labels = _dedupe_labels([[lab for lab, _ in level] for level in levels])
    levels = [[(labels[n][c], fs) for c, (_, fs) in enumerate(level)] for n, level in enumerate(levels)]
    P = build(levels)
    x_leg = SimplicialMap(X, P, tuple(tuple(row) for row in x_image))
    y_leg = identity_like(Y, P)
    if swap:
        return Pushout(P, y_leg, x_leg)
    return Pushout(P, x_leg, y_leg)


def identity_like(Y: FiniteSimplicialSet, P: FiniteSimplicialSet) -> SimplicialMap:
    return SimplicialMap(Y, P, tuple(tuple(nd(n, c) for c in range(Y.count(n))) for n in range(len(Y.labels))))


def _dedupe_labels(levels: list[list[str]]) -> list[list[str]]:
    out = []
    for level in levels:
        seen: dict[str, int] = {}
        row = []
        for lab in level:
            name = lab
            while name in seen:
                name += "'"
            seen[name] = 1
            row.append(name)
        out.append(row)
    return out


# -- subdivision ------------------------------------------------------------------


@dataclass(frozen=True)
class Subdivision:
    space: FiniteSimplicialSet
    base: FiniteSimplicialSet
    faces: tuple[tuple[int, int], ...]  # vertex index of Sd X -> cell (n, c) of X
    flags: tuple[tuple[int, ...], ...]  # cells of Sd X (flattened) -> chain of Sd-vertex indices


def face_poset(X: FiniteSimplicialSet) -> tuple[list[tuple[int, int]], list[list[bool]]]:
    """Cells of a complex, ordered by (dimension, sorted vertex set), with strict face order."""
    if not X.is_complex():
        raise NotAComplex(
            "Sd is only supported on vertex-ordered simplicial complexes "
            "(nondegenerate faces, cells determined by their vertex sets)"
        )
    cells = sorted(X.cells(), key=lambda nc: (nc[0], sorted(X.vertices(*nc))))
    vsets = [frozenset(X.vertices(*nc)) for nc in cells]
    less = [[a < b for b in vsets] for a in vsets]
    return cells, less


def subdivide(X: FiniteSimplicialSet) -> Subdivision:
    cells, less = face_poset(X)
    names = [X.labels[n][c] for n, c in cells]
    if len(set(names)) != len(names):
        names = [f"{n}:{X.labels[n][c]}" for n, c in cells]
    names = ["{" + nm + "}" for nm in names]
    S, chains = poset_nerve(names, less)
    return Subdivision(S, X, tuple(cells), tuple(chains))


def sd(X: FiniteSimplicialSet) -> FiniteSimplicialSet:
    return subdivide(X).space


def last_vertex_map(X: FiniteSimplicialSet, sub: Subdivision | None = None) -> SimplicialMap:
    """Sd X -> X sending each flag to the last vertices of its members."""
    sub = sub or subdivide(X)
    S = sub.space
    assignment = []
    flat = iter(sub.flags)
    for m in range(S.top_dim + 1):
        row = []
        for _ in range(S.count(m)):
            chain = next(flat)
            top_n, top_c = sub.faces[chain[-1]]
            top_vs = X.vertices(top_n, top_c)
            theta = tuple(top_vs.index(X.vertices(*sub.faces[e])[-1]) for e in chain)
            row.append(X.pull(top_n, top_c, theta))
        assignment.append(tuple(row))
    return SimplicialMap(S, X, tuple(assignment))


# -- Ex ------------------------------------------------------------------------------


class EnumerationCapExceeded(RuntimeError):
    pass


def ex_level(X: FiniteSimplicialSet, n: int, cap: int = 3) -> list[SimplicialMap]:
    """All simplicial maps Sd Delta^n -> X, i.e. the n-simplices of Ex X."""
    if n > cap:
        raise EnumerationCapExceeded(f"ex_level n={n} exceeds cap {cap}")
    S = sd(simplex(n))
    cells = list(S.cells())
    candidates = {m: list(X.simplices(m)) for m in range(S.top_dim + 1)}
    chosen: dict[tuple[int, int], Simplex] = {}
    results = []

    def go(pos: int):
        if pos == len(cells):
            results.append(
                SimplicialMap(S, X, tuple(tuple(chosen[(m, c)] for c in range(S.count(m))) for m in range(S.top_dim + 1)))
            )
            return
        m, c = cells[pos]
        for cand in candidates[m]:
            if m and any(X.face_of(cand, i) != _image_of(S.face(m, c, i)) for i in range(m + 1)):
                continue
            chosen[(m, c)] = cand
            go(pos + 1)
        chosen.pop((m, c), None)

    def _image_of(s: Simplex) -> Simplex:
        return X.apply(chosen[(s.dim, s.cell)], s.sur)

    go(0)
    return results


def ex_unit(X: FiniteSimplicialSet, x: Simplex) -> SimplicialMap:
    """Image of the n-simplex ``x`` under X_n -> Ex(X)_n (precompose with the last-vertex map)."""
    n = x.degree
    return compose(simplex_map(X, x), last_vertex_map(simplex(n)))
