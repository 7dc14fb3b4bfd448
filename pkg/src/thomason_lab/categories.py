"""Finite posets, finitely presented categories and their saturations.

Compositions are written ``compose(g, f)`` for "f then g".  Paths in a
presentation are tuples of arrow names listed in the order they are
traversed (diagrammatic order); the empty path is an identity.
"""

from __future__ import annotations

import heapq
import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .simplicial import FiniteSimplicialSet, Simplex, SimplicialMap, build, nd


class CategoryError(ValueError):
    pass


class NotSaturated(CategoryError):
    """Saturation did not stabilize within the path-length bound."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InfiniteNerve(CategoryError):
    pass


class NotAFunctor(CategoryError):
    pass


class SizeCapExceeded(CategoryError):
    pass


# -- posets -------------------------------------------------------------------------


@dataclass(frozen=True)
class FinPoset:
    objects: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_relations(cls, objects: Sequence[str], pairs: Iterable[tuple[int, int]]) -> "FinPoset":
        n = len(objects)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for i, j in pairs:
            rel[i][j] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    row_k = rel[k]
                    row_i = rel[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if rel[i][j] and rel[j][i]:
                    raise CategoryError(f"relation is not antisymmetric at {objects[i]}, {objects[j]}")
        return cls(tuple(objects), tuple(tuple(r) for r in rel))

    def __len__(self) -> int:
        return len(self.objects)

    def less(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def covers(self) -> list[tuple[int, int]]:
        n = len(self.objects)
        return [
            (i, j)
            for i in range(n)
            for j in range(n)
            if self.less(i, j) and not any(self.less(i, k) and self.less(k, j) for k in range(n))
        ]

    def index(self, name: str) -> int:
        return self.objects.index(name)

    def subposet(self, keep: Iterable[int]) -> "FinPoset":
        keep = sorted(set(keep))
        return FinPoset(
            tuple(self.objects[i] for i in keep), tuple(tuple(self.leq[i][j] for j in keep) for i in keep)
        )

    def strict_relations(self) -> int:
        return sum(self.less(i, j) for i in range(len(self)) for j in range(len(self)))

    def to_json_dict(self) -> dict:
        return {"objects": list(self.objects), "leq": [list(p) for p in self.covers()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict()) + "\n"

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FinPoset":
        return cls.from_relations(list(data["objects"]), [tuple(p) for p in data["leq"]])


def chain_poset(n: int, names: Sequence[str] | None = None) -> FinPoset:
    names = list(names) if names else [str(i) for i in range(n)]
    return FinPoset.from_relations(names, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> FinPoset:
    return FinPoset.from_relations([str(i) for i in range(n)], [])


def cube_poset(d: int = 3) -> FinPoset:
    """{0 -> 1}^d with objects named by bit strings."""
    elems = ["".join(bits) for bits in itertools.product("01", repeat=d)]
    pairs = [
        (i, j)
        for i, a in enumerate(elems)
        for j, b in enumerate(elems)
        if all(x <= y for x, y in zip(a, b))
    ]
    return FinPoset.from_relations(elems, pairs)


# -- presentations ------------------------------------------------------------------


class Arrow(NamedTuple):
    name: str
    src: int
    dst: int


Path = tuple[str, ...]


@dataclass(frozen=True)
class CatPresentation:
    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[Path, Path], ...]

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise CategoryError("arrow names must be unique")
        for lhs, rhs in self.relations:
            el, er = self.endpoints(lhs), self.endpoints(rhs)
            if el and er and el != er:
                raise CategoryError(f"relation {lhs} ~ {rhs} is not parallel")
            if (el is None and er and er[0] != er[1]) or (er is None and el and el[0] != el[1]):
                raise CategoryError(f"relation {lhs} ~ {rhs} equates a non-loop with an identity")

    @property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def endpoints(self, path: Path) -> tuple[int, int] | None:
        if not path:
            return None
        amap = self.arrow_map
        try:
            arrows = [amap[n] for n in path]
        except KeyError as exc:
            raise CategoryError(f"unknown arrow {exc.args[0]!r}") from None
        for a, b in zip(arrows, arrows[1:]):
            if a.dst != b.src:
                raise CategoryError(f"path {path} is not composable")
        return arrows[0].src, arrows[-1].dst

    def to_json_dict(self) -> dict:
        rels = sorted([list(l), list(r)] for l, r in self.relations)
        return {
            "objects": list(self.objects),
            "arrows": [{"name": a.name, "src": self.objects[a.src], "dst": self.objects[a.dst]} for a in self.arrows],
            "relations": rels,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict()) + "\n"

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "CatPresentation":
        objects = tuple(data["objects"])
        idx = {o: i for i, o in enumerate(objects)}
        arrows = tuple(Arrow(a["name"], idx[a["src"]], idx[a["dst"]]) for a in data["arrows"])
        rels = tuple((tuple(l), tuple(r)) for l, r in data["relations"])
        return cls(objects, arrows, rels)


# -- finite categories --------------------------------------------------------------


class Morphism(NamedTuple):
    src: int
    dst: int
    label: str
    rep: Path  # representative path; () for identities


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identities: tuple[int, ...]
    table: Mapping[tuple[int, int], int]  # (g, f) -> g o f
    generators: Mapping[str, int] = field(default_factory=dict)
    _hom: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        hom = defaultdict(list)
        for m, mor in enumerate(self.morphisms):
            hom[(mor.src, mor.dst)].append(m)
        self._hom.update({k: tuple(v) for k, v in hom.items()})

    def __len__(self) -> int:
        return len(self.objects)

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._hom.get((x, y), ())

    def compose(self, g: int, f: int) -> int:
        return self.table[(g, f)]

    def is_identity(self, m: int) -> bool:
        return self.identities[self.morphisms[m].src] == m

    def index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise CategoryError(f"unknown object {name!r}") from None

    def morphism_count(self) -> int:
        return len(self.morphisms)

    def evaluate(self, path: Path, start: int) -> int:
        m = self.identities[start]
        for name in path:
            m = self.compose(self.generators[name], m)
        return m

    def check(self) -> None:
        """Identity and associativity laws over the whole composition table."""
        for x, i in enumerate(self.identities):
            mor = self.morphisms[i]
            if (mor.src, mor.dst) != (x, x):
                raise CategoryError(f"identity of {self.objects[x]} has wrong endpoints")
        for f, mf in enumerate(self.morphisms):
            if self.compose(self.identities[mf.dst], f) != f or self.compose(f, self.identities[mf.src]) != f:
                raise CategoryError(f"identity law fails at {mf.label}")
            for g in self._outgoing(mf.dst):
                gf = self.compose(g, f)
                if (self.morphisms[gf].src, self.morphisms[gf].dst) != (mf.src, self.morphisms[g].dst):
                    raise CategoryError(f"composite {self.morphisms[g].label} o {mf.label} misplaced")
                for h in self._outgoing(self.morphisms[g].dst):
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        raise CategoryError("associativity fails")

    def _outgoing(self, x: int) -> list[int]:
        return [m for y in range(len(self.objects)) for m in self.hom(x, y)]

    def is_poset(self) -> bool:
        n = len(self.objects)
        return all(len(self.hom(x, y)) <= 1 for x in range(n) for y in range(n)) and all(
            not (self.hom(x, y) and self.hom(y, x)) for x in range(n) for y in range(n) if x != y
        )

    def to_presentation(self) -> CatPresentation:
        """All nonidentity morphisms as generators, composition table as relations."""
        names = {m: self.morphisms[m].label for m in range(len(self.morphisms)) if not self.is_identity(m)}
        arrows = tuple(Arrow(names[m], self.morphisms[m].src, self.morphisms[m].dst) for m in names)
        rels = []
        for f in names:
            for g in self._outgoing(self.morphisms[f].dst):
                if g in names:
                    gf = self.compose(g, f)
                    rels.append(((names[f], names[g]), (names[gf],) if gf in names else ()))
        return CatPresentation(self.objects, arrows, tuple(rels))

    def path_of(self, m: int) -> Path:
        """Path of ``m`` in :meth:`to_presentation`."""
        return () if self.is_identity(m) else (self.morphisms[m].label,)


def _build_category(objects, morphs, compose_fn, generators=None) -> FinCategory:
    """``morphs`` is a list of Morphism with identities among them; ``compose_fn(g, f)`` returns an index."""
    identities = [None] * len(objects)
    for m, mor in enumerate(morphs):
        if mor.src == mor.dst and not mor.rep and identities[mor.src] is None:
            identities[mor.src] = m
    if any(i is None for i in identities):
        raise CategoryError("missing identity")
    by_src = defaultdict(list)
    for m, mor in enumerate(morphs):
        by_src[mor.src].append(m)
    table = {}
    for f, mf in enumerate(morphs):
        for g in by_src[mf.dst]:
            table[(g, f)] = compose_fn(g, f)
    return FinCategory(tuple(objects), tuple(morphs), tuple(identities), table, dict(generators or {}))


def poset_to_category(P: FinPoset) -> FinCategory:
    n = len(P.objects)
    morphs = []
    index = {}
    for x in range(n):
        for y in range(n):
            if P.leq[x][y]:
                index[(x, y)] = len(morphs)
                if x == y:
                    morphs.append(Morphism(x, x, f"id_{P.objects[x]}", ()))
                else:
                    label = f"{P.objects[x]}<{P.objects[y]}"
                    morphs.append(Morphism(x, y, label, (label,)))

    def comp(g, f):
        return index[(morphs[f].src, morphs[g].dst)]

    gens = {m.label: i for i, m in enumerate(morphs) if m.rep}
    return _build_category(P.objects, morphs, comp, gens)


def category_to_poset(C: FinCategory) -> FinPoset:
    if not C.is_poset():
        raise CategoryError("category is not a poset")
    n = len(C.objects)
    return FinPoset.from_relations(C.objects, [(x, y) for x in range(n) for y in range(n) if C.hom(x, y)])


def discrete_category(names: Sequence[str]) -> FinCategory:
    return poset_to_category(FinPoset.from_relations(list(names), []))


def walking_arrow() -> FinCategory:
    return poset_to_category(chain_poset(2))


def terminal_category() -> FinCategory:
    return poset_to_category(chain_poset(1))


# -- saturation ---------------------------------------------------------------------


class _PathSpace:
    """All generator paths of length <= bound, with a union-find on them."""

    def __init__(self, pres: CatPresentation, bound: int):
        self.pres = pres
        self.bound = bound
        arrows = pres.arrows
        self.name_index = {a.name: i for i, a in enumerate(arrows)}
        out = defaultdict(list)
        for i, a in enumerate(arrows):
            out[a.src].append(i)
        # a path is (src, word) where word is a tuple of arrow indices
        self.paths: list[tuple[int, tuple[int, ...]]] = []
        frontier = [(x, ()) for x in range(len(pres.objects))]
        length = 0
        while frontier:
            self.paths.extend(frontier)
            if length == bound:
                break
            nxt = []
            for x, w in frontier:
                end = arrows[w[-1]].dst if w else x
                for i in out[end]:
                    nxt.append((x, w + (i,)))
            frontier = nxt
            length += 1
        self.index = {p: k for k, p in enumerate(self.paths)}
        self.parent = list(range(len(self.paths)))

    def end(self, path) -> int:
        x, w = path
        return self.pres.arrows[w[-1]].dst if w else x

    def find(self, k: int) -> int:
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def close(self) -> None:
        """Congruence generated by the relations, applied in context within the bound."""
        arrows = self.pres.arrows
        starts = defaultdict(list)
        inserts = defaultdict(list)  # object -> nonempty loops equated with the identity there
        for lhs, rhs in self.pres.relations:
            l = tuple(self.name_index[n] for n in lhs)
            r = tuple(self.name_index[n] for n in rhs)
            if not l and not r:
                continue
            if not l:
                l, r = r, l
            starts[l[0]].append((l, r))
            if not r:
                inserts[arrows[l[0]].src].append(l)
        for k, (x, w) in enumerate(self.paths):
            for pos in range(len(w)):
                for l, r in starts[w[pos]]:
                    if w[pos:pos + len(l)] == l:
                        nw = w[:pos] + r + w[pos + len(l):]
                        if len(nw) <= self.bound:
                            self.union(k, self.index[(x, nw)])
            if inserts:
                for pos in range(len(w) + 1):
                    obj = arrows[w[pos - 1]].dst if pos else x
                    for l in inserts.get(obj, ()):
                        nw = w[:pos] + l + w[pos:]
                        if len(nw) <= self.bound:
                            self.union(k, self.index[(x, nw)])

    def classes(self) -> dict[int, list[int]]:
        out = defaultdict(list)
        for k in range(len(self.paths)):
            out[self.find(k)].append(k)
        return out

    def names(self, k: int) -> Path:
        return tuple(self.pres.arrows[i].name for i in self.paths[k][1])


def bounded_congruence(pres: CatPresentation, bound: int) -> _PathSpace:
    space = _PathSpace(pres, bound)
    space.close()
    return space


def saturate(pres: CatPresentation, max_path_len: int = 8) -> FinCategory:
    """Decide the finitely presented category, or raise :class:`NotSaturated`.

    Congruence closure is computed on all paths of length <= L and on all
    paths of length <= L-1; the result is accepted only if the two
    partitions agree and every path of length L is equivalent to a shorter
    one.  Representatives are shortest, then lexicographic in arrow order.
    """
    L = max_path_len
    if L < 1:
        raise ValueError("max_path_len must be >= 1")
    longest_rel = max((max(len(l), len(r)) for l, r in pres.relations), default=0)
    if longest_rel > L:
        raise NotSaturated(f"a relation has length {longest_rel} > bound {L}")
    big = bounded_congruence(pres, L)
    small = bounded_congruence(pres, L - 1)
    for k in range(len(small.paths)):
        root_small = small.paths[small.find(k)]
        if big.find(big.index[root_small]) != big.find(k):
            raise NotSaturated(
                f"classes differ between bounds {L - 1} and {L}", witness=(small.names(k), small.names(small.find(k)))
            )
    classes = big.classes()
    reps = {}
    for root, members in classes.items():
        best = min(members, key=lambda k: (len(big.paths[k][1]), big.paths[k][1]))
        if len(big.paths[best][1]) == L:
            raise NotSaturated(
                f"composite {'.'.join(big.names(best))} has no representative shorter than {L}",
                witness=big.names(best),
            )
        reps[root] = best
    order = sorted(reps, key=lambda r: (big.paths[reps[r]][0], big.end(big.paths[reps[r]]), len(big.paths[reps[r]][1]), big.paths[reps[r]][1]))
    mid = {root: i for i, root in enumerate(order)}
    objects = pres.objects
    morphs = []
    for root in order:
        k = reps[root]
        x, w = big.paths[k]
        names = big.names(k)
        label = ".".join(names) if names else f"id_{objects[x]}"
        morphs.append(Morphism(x, big.end((x, w)), label, names))

    def comp(g, f):
        x, wf = big.paths[reps[order[f]]]
        word = wf + big.paths[reps[order[g]]][1]
        while len(word) > L:
            head = big.find(big.index[(x, word[:L])])
            word = big.paths[reps[head]][1] + word[L:]
        return mid[big.find(big.index[(x, word)])]

    gens = {a.name: mid[big.find(big.index[(a.src, (i,))])] for i, a in enumerate(pres.arrows)}
    return _build_category(objects, morphs, comp, gens)


# -- functors and transformations ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class CatFunctor:
    source: FinCategory
    target: FinCategory
    on_objects: tuple[int, ...]
    on_morphisms: tuple[int, ...]

    def check(self) -> None:
        S, T = self.source, self.target
        for m, mor in enumerate(S.morphisms):
            img = T.morphisms[self.on_morphisms[m]]
            if (img.src, img.dst) != (self.on_objects[mor.src], self.on_objects[mor.dst]):
                raise NotAFunctor(f"{mor.label} sent to a morphism with wrong endpoints")
        for x, i in enumerate(S.identities):
            if self.on_morphisms[i] != T.identities[self.on_objects[x]]:
                raise NotAFunctor(f"identity of {S.objects[x]} not preserved")
        for (g, f), gf in S.table.items():
            if self.on_morphisms[gf] != T.compose(self.on_morphisms[g], self.on_morphisms[f]):
                raise NotAFunctor(f"composite {S.morphisms[g].label} o {S.morphisms[f].label} not preserved")

    def is_identity(self) -> bool:
        return (
            (self.source is self.target
             or (self.source.objects, self.source.morphisms) == (self.target.objects, self.target.morphisms))
            and self.on_objects == tuple(range(len(self.source.objects)))
            and self.on_morphisms == tuple(range(len(self.source.morphisms)))
        )

    def is_injective_on_objects(self) -> bool:
        return len(set(self.on_objects)) == len(self.on_objects)

    def is_fully_faithful(self) -> bool:
        S, T = self.source, self.target
        for x in range(len(S)):
            for y in range(len(S)):
                images = sorted(self.on_morphisms[m] for m in S.hom(x, y))
                if images != sorted(T.hom(self.on_objects[x], self.on_objects[y])):
                    return False
        return True

    def object_names(self) -> dict[str, str]:
        return {self.source.objects[x]: self.target.objects[y] for x, y in enumerate(self.on_objects)}

    def to_json_dict(self) -> dict:
        S, T = self.source, self.target
        return {
            "objects": self.object_names(),
            "morphisms": {S.morphisms[m].label: T.morphisms[t].label for m, t in enumerate(self.on_morphisms)},
        }


def functor(source, target, on_objects, on_morphisms) -> CatFunctor:
    out = CatFunctor(source, target, tuple(on_objects), tuple(on_morphisms))
    out.check()
    return out


def functor_from_objects(source: FinCategory, target: FinCategory, on_objects: Sequence[int]) -> CatFunctor:
    """The functor determined by an object map into a category with thin hom-sets."""
    mors = []
    for mor in source.morphisms:
        hom = target.hom(on_objects[mor.src], on_objects[mor.dst])
        if len(hom) != 1:
            raise NotAFunctor(f"no unique image for {mor.label}")
        mors.append(hom[0])
    return functor(source, target, on_objects, mors)


def functor_from_generators(source: FinCategory, target: FinCategory, on_objects, on_generators) -> CatFunctor:
    """Extend an assignment on generators of a saturated category along representatives."""
    mors = []
    for mor in source.morphisms:
        m = target.identities[on_objects[mor.src]]
        for name in mor.rep:
            m = target.compose(on_generators[name], m)
        mors.append(m)
    return functor(source, target, on_objects, mors)


def identity_functor(C: FinCategory) -> CatFunctor:
    return CatFunctor(C, C, tuple(range(len(C.objects))), tuple(range(len(C.morphisms))))


def compose_functors(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    return CatFunctor(
        F.source,
        G.target,
        tuple(G.on_objects[x] for x in F.on_objects),
        tuple(G.on_morphisms[m] for m in F.on_morphisms),
    )


@dataclass(frozen=True, eq=False)
class NatTransformation:
    source: CatFunctor
    target: CatFunctor
    components: tuple[int, ...]

    def check(self) -> None:
        F, G = self.source, self.target
        C, D = F.source, F.target
        if G.source is not C or G.target is not D:
            raise CategoryError("functors are not parallel")
        for x, comp in enumerate(self.components):
            mor = D.morphisms[comp]
            if (mor.src, mor.dst) != (F.on_objects[x], G.on_objects[x]):
                raise CategoryError(f"component at {C.objects[x]} has wrong endpoints")
        for m, mor in enumerate(C.morphisms):
            lhs = D.compose(self.components[mor.dst], F.on_morphisms[m])
            rhs = D.compose(G.on_morphisms[m], self.components[mor.src])
            if lhs != rhs:
                raise CategoryError(f"naturality fails at {mor.label}")


# -- subcategories, sieves ------------------------------------------------------------


def full_subcategory(C: FinCategory, keep: Iterable[int]) -> tuple[FinCategory, CatFunctor]:
    keep = sorted(set(keep))
    pos = {x: i for i, x in enumerate(keep)}
    old = [m for m, mor in enumerate(C.morphisms) if mor.src in pos and mor.dst in pos]
    new_of = {m: i for i, m in enumerate(old)}
    morphs = [
        Morphism(pos[C.morphisms[m].src], pos[C.morphisms[m].dst], C.morphisms[m].label, C.morphisms[m].rep)
        for m in old
    ]
    identities = tuple(new_of[C.identities[x]] for x in keep)
    table = {(new_of[g], new_of[f]): new_of[C.compose(g, f)] for (g, f) in C.table if g in new_of and f in new_of}
    gens = {name: new_of[m] for name, m in C.generators.items() if m in new_of}
    sub = FinCategory(tuple(C.objects[x] for x in keep), tuple(morphs), identities, table, gens)
    return sub, CatFunctor(sub, C, tuple(keep), tuple(old))


def is_sieve(B: FinCategory, A: Iterable[int]) -> bool:
    A = set(A)
    return all(not (mor.dst in A and mor.src not in A) for mor in B.morphisms)


def is_cosieve(B: FinCategory, A: Iterable[int]) -> bool:
    A = set(A)
    return all(not (mor.src in A and mor.dst not in A) for mor in B.morphisms)


def cosieve_generated(B: FinCategory, A: Iterable[int]) -> list[int]:
    A = set(A)
    return sorted({mor.dst for mor in B.morphisms if mor.src in A})


def sieve_generated(B: FinCategory, A: Iterable[int]) -> list[int]:
    A = set(A)
    return sorted({mor.src for mor in B.morphisms if mor.dst in A})


# -- preorders ----------------------------------------------------------------------------


def preorder_of(C: FinCategory) -> list[list[bool]]:
    n = len(C.objects)
    return [[bool(C.hom(x, y)) for y in range(n)] for x in range(n)]


def szpilrajn_extend(pre: Sequence[Sequence[bool]]) -> list[int]:
    """Total preorder extending ``pre``, returned as a rank per element.

    Mutual-comparability classes keep a common rank; the quotient order is
    topologically sorted with ties broken by the smallest member index.
    """
    n = len(pre)
    cls = list(range(n))
    for x in range(n):
        for y in range(x):
            if pre[x][y] and pre[y][x]:
                cls[x] = cls[y]
                break
    reps = sorted(set(cls))
    below = {r: set() for r in reps}
    for x in range(n):
        for y in range(n):
            if pre[x][y] and cls[x] != cls[y]:
                below[cls[y]].add(cls[x])
    indeg = {r: len(below[r]) for r in reps}
    above = defaultdict(list)
    for r in reps:
        for s in below[r]:
            above[s].append(r)
    heap = [r for r in reps if indeg[r] == 0]
    heapq.heapify(heap)
    rank_of = {}
    while heap:
        r = heapq.heappop(heap)
        rank_of[r] = len(rank_of)
        for s in above[r]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(heap, s)
    if len(rank_of) != len(reps):
        raise CategoryError("input is not a preorder")
    return [rank_of[cls[x]] for x in range(n)]


def threshold_retraction(F: FinCategory, ranks: Sequence[int], pivot: int, direction: str) -> CatFunctor:
    """Cut functor F -> {0 -> 1} at the pivot's rank."""
    if direction == "below":
        side = [0 if ranks[z] < ranks[pivot] else 1 for z in range(len(F))]
    elif direction == "above":
        side = [0 if ranks[z] <= ranks[pivot] else 1 for z in range(len(F))]
    else:
        raise ValueError(f"direction must be 'below' or 'above', not {direction!r}")
    I = walking_arrow()
    return functor_from_objects(F, I, side)


def edge_inclusion(F: FinCategory, m: int) -> CatFunctor:
    """The functor {0 -> 1} -> F picking out the morphism ``m``."""
    I = walking_arrow()
    mor = F.morphisms[m]
    on_mor = []
    for imor in I.morphisms:
        if imor.src != imor.dst:
            on_mor.append(m)
        else:
            on_mor.append(F.identities[mor.src if imor.src == 0 else mor.dst])
    return functor(I, F, (mor.src, mor.dst), on_mor)


# -- products, pushouts ---------------------------------------------------------------


@dataclass(frozen=True)
class CatProduct:
    category: FinCategory
    first: CatFunctor
    second: CatFunctor


def cat_product(C: FinCategory, D: FinCategory) -> CatProduct:
    nC, nD = len(C.objects), len(D.objects)
    objects = [f"({a},{b})" for a in C.objects for b in D.objects]
    pairs = [(f, g) for f in range(len(C.morphisms)) for g in range(len(D.morphisms))]
    index = {p: i for i, p in enumerate(pairs)}
    morphs = []
    for f, g in pairs:
        mf, mg = C.morphisms[f], D.morphisms[g]
        both_id = C.is_identity(f) and D.is_identity(g)
        label = f"id_({C.objects[mf.src]},{D.objects[mg.src]})" if both_id else f"({mf.label},{mg.label})"
        morphs.append(Morphism(mf.src * nD + mg.src, mf.dst * nD + mg.dst, label, () if both_id else (label,)))

    def comp(h, k):
        (f1, g1), (f2, g2) = pairs[h], pairs[k]
        return index[(C.compose(f1, f2), D.compose(g1, g2))]

    gens = {m.label: i for i, m in enumerate(morphs) if m.rep}
    P = _build_category(objects, morphs, comp, gens)
    p1 = CatFunctor(P, C, tuple(x // nD for x in range(nC * nD)), tuple(f for f, _ in pairs))
    p2 = CatFunctor(P, D, tuple(x % nD for x in range(nC * nD)), tuple(g for _, g in pairs))
    return CatProduct(P, p1, p2)


def product_functor(F: CatFunctor, G: CatFunctor, src: CatProduct, dst: CatProduct) -> CatFunctor:
    nD = len(G.source.morphisms)
    nT = len(G.target.morphisms)
    nDo = len(G.source.objects)
    nTo = len(G.target.objects)
    objs = tuple(F.on_objects[x // nDo] * nTo + G.on_objects[x % nDo] for x in range(len(src.category.objects)))
    mors = tuple(F.on_morphisms[m // nD] * nT + G.on_morphisms[m % nD] for m in range(len(src.category.morphisms)))
    return CatFunctor(src.category, dst.category, objs, mors)


@dataclass(frozen=True)
class PushoutPresentation:
    """A presentation of X +_A Y together with both legs on the presentation level."""

    presentation: CatPresentation
    left_objects: tuple[int, ...]
    right_objects: tuple[int, ...]
    left_paths: tuple[Path, ...]  # per morphism of X
    right_paths: tuple[Path, ...]  # per morphism of Y

    def legs(self, P: FinCategory, X: FinCategory, Y: FinCategory) -> tuple[CatFunctor, CatFunctor]:
        left = CatFunctor(
            X, P, self.left_objects,
            tuple(P.evaluate(p, self.left_objects[X.morphisms[m].src]) for m, p in enumerate(self.left_paths)),
        )
        right = CatFunctor(
            Y, P, self.right_objects,
            tuple(P.evaluate(p, self.right_objects[Y.morphisms[m].src]) for m, p in enumerate(self.right_paths)),
        )
        left.check()
        right.check()
        return left, right


def cat_pushout(f: CatFunctor, g: CatFunctor, tags: tuple[str, str] = ("l", "r")) -> PushoutPresentation:
    """Presentation of X +_A Y for f: A -> X and g: A -> Y.

    Arrow names carry the leg tag (``l:`` or ``r:``) so that generators of
    the two sides never collide.  Objects of Y that are not identified keep
    their names, primed on collision with X.
    """
    A, X, Y = f.source, f.target, g.target
    if g.source is not A:
        raise CategoryError("pushout legs must share their source")
    nX, nY = len(X.objects), len(Y.objects)
    parent = list(range(nX + nY))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for a in range(len(A.objects)):
        ra, rb = find(f.on_objects[a]), find(nX + g.on_objects[a])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = []
    for k in range(nX + nY):
        if find(k) not in roots:
            roots.append(find(k))
    obj_index = {r: i for i, r in enumerate(roots)}
    used = set()
    names = []
    for r in roots:
        name = X.objects[r] if r < nX else Y.objects[r - nX]
        while name in used:
            name += "'"
        used.add(name)
        names.append(name)
    left_objects = tuple(obj_index[find(x)] for x in range(nX))
    right_objects = tuple(obj_index[find(nX + y)] for y in range(nY))
    lt, rt = tags

    def tagged(tag, C, objs):
        pres = C.to_presentation()
        arrows = [Arrow(f"{tag}:{a.name}", objs[a.src], objs[a.dst]) for a in pres.arrows]
        rels = [
            (tuple(f"{tag}:{n}" for n in l), tuple(f"{tag}:{n}" for n in r)) for l, r in pres.relations
        ]
        paths = tuple(tuple(f"{tag}:{n}" for n in C.path_of(m)) for m in range(len(C.morphisms)))
        return arrows, rels, paths

    xa, xr, xp = tagged(lt, X, left_objects)
    ya, yr, yp = tagged(rt, Y, right_objects)
    glue = []
    for m in range(len(A.morphisms)):
        if A.is_identity(m):
            continue
        lhs, rhs = xp[f.on_morphisms[m]], yp[g.on_morphisms[m]]
        if lhs != rhs and (lhs, rhs) not in glue:
            glue.append((lhs, rhs))
    pres = CatPresentation(tuple(names), tuple(xa + ya), tuple(xr + yr + glue))
    return PushoutPresentation(pres, left_objects, right_objects, xp, yp)


@dataclass(frozen=True)
class CatPushout:
    category: FinCategory
    left: CatFunctor
    right: CatFunctor
    presentation: PushoutPresentation


def saturated_pushout(f: CatFunctor, g: CatFunctor, max_path_len: int = 8) -> CatPushout:
    po = cat_pushout(f, g)
    P = saturate(po.presentation, max_path_len)
    left, right = po.legs(P, f.target, g.target)
    return CatPushout(P, left, right, po)


def induced_from_pushout(
    po: CatPushout, left: CatFunctor, right: CatFunctor
) -> CatFunctor:
    """The functor out of a saturated pushout determined by its two legs."""
    P = po.category
    pres = po.presentation
    on_objects = [None] * len(P.objects)
    for x, p in enumerate(pres.left_objects):
        on_objects[p] = left.on_objects[x]
    for y, p in enumerate(pres.right_objects):
        on_objects[p] = right.on_objects[y]
    gens = {}
    for side, F in (("l", left), ("r", right)):
        for m, mor in enumerate(F.source.morphisms):
            if not F.source.is_identity(m):
                gens[f"{side}:{mor.label}"] = F.on_morphisms[m]
    return functor_from_generators(P, left.target, on_objects, gens)


# -- nerve and fundamental category ---------------------------------------------


def _check_acyclic(C: FinCategory) -> None:
    n = len(C.objects)
    succ = [set() for _ in range(n)]
    for m, mor in enumerate(C.morphisms):
        if C.is_identity(m):
            continue
        if mor.src == mor.dst:
            raise InfiniteNerve(f"nonidentity endomorphism {mor.label}")
        succ[mor.src].add(mor.dst)
    state = [0] * n

    def visit(x):
        state[x] = 1
        for y in succ[x]:
            if state[y] == 1:
                raise InfiniteNerve(f"cycle through {C.objects[y]}")
            if state[y] == 0:
                visit(y)
        state[x] = 2

    for x in range(n):
        if state[x] == 0:
            visit(x)


def nerve(C: FinCategory) -> FiniteSimplicialSet:
    _check_acyclic(C)
    nonid = [m for m in range(len(C.morphisms)) if not C.is_identity(m)]
    out_of = defaultdict(list)
    for m in nonid:
        out_of[C.morphisms[m].src].append(m)
    levels = [[(name, ()) for name in C.objects]]
    index: dict[tuple[int, ...], int] = {}
    chains = [(m,) for m in nonid]
    n = 1
    while chains:
        level = []
        for ch in chains:
            index[ch] = len(level)
            faces = []
            for i in range(n + 1):
                if i == 0:
                    sub = ch[1:]
                elif i == n:
                    sub = ch[:-1]
                else:
                    sub = ch[:i - 1] + (C.compose(ch[i], ch[i - 1]),) + ch[i + 1:]
                if sub:
                    faces.append(nd(n - 1, index[sub]))
                else:
                    faces.append(nd(0, C.morphisms[ch[0]].dst if i == 0 else C.morphisms[ch[0]].src))
            level.append(("|".join(C.morphisms[m].label for m in ch), faces))
        levels.append(level)
        chains = [ch + (m,) for ch in chains for m in out_of[C.morphisms[ch[-1]].dst]]
        n += 1
    if not C.objects:
        levels = []
    return build(levels)


def nerve_chains(C: FinCategory) -> list[list[tuple[int, ...]]]:
    """Chains of nonidentity morphisms indexed like the cells of :func:`nerve`."""
    nonid = [m for m in range(len(C.morphisms)) if not C.is_identity(m)]
    out_of = defaultdict(list)
    for m in nonid:
        out_of[C.morphisms[m].src].append(m)
    result = [[(x,) for x in range(len(C.objects))]]
    chains = [(m,) for m in nonid]
    while chains:
        result.append(chains)
        chains = [ch + (m,) for ch in chains for m in out_of[C.morphisms[ch[-1]].dst]]
    return result


def nerve_map(F: CatFunctor, NC: FiniteSimplicialSet | None = None, ND: FiniteSimplicialSet | None = None) -> SimplicialMap:
    """N(F): identities in the image collapse into degeneracies."""
    C, D = F.source, F.target
    NC = NC or nerve(C)
    ND = ND or nerve(D)
    src_chains = nerve_chains(C)
    dst_index = [{ch: i for i, ch in enumerate(level)} for level in nerve_chains(D)]
    assignment = [tuple(Simplex((0,), 0, F.on_objects[x]) for x in range(len(C.objects)))]
    for n in range(1, len(src_chains)):
        row = []
        for ch in src_chains[n]:
            images = [F.on_morphisms[m] for m in ch]
            kept = tuple(m for m in images if not D.is_identity(m))
            sur = [0]
            for m in images:
                sur.append(sur[-1] + (0 if D.is_identity(m) else 1))
            if kept:
                row.append(Simplex(tuple(sur), len(kept), dst_index[len(kept)][kept]))
            else:
                row.append(Simplex(tuple(sur), 0, F.on_objects[C.morphisms[ch[0]].src]))
        assignment.append(tuple(row))
    if not C.objects:
        assignment = []
    return SimplicialMap(NC, ND, tuple(assignment))


def fundamental_category(X: FiniteSimplicialSet) -> CatPresentation:
    """Objects are vertices, arrows the nondegenerate edges, one relation per 2-cell."""
    objects = list(X.labels[0]) if X.labels else []
    if len(set(objects)) != len(objects):
        objects = [f"{lab}#{i}" for i, lab in enumerate(objects)]
    edge_names = list(X.labels[1]) if X.top_dim >= 1 else []
    if len(set(edge_names)) != len(edge_names) or set(edge_names) & set(objects):
        edge_names = [f"e{i}:{lab}" for i, lab in enumerate(edge_names)]
    arrows = []
    for e in range(X.count(1)):
        src, dst = X.vertices(1, e)
        arrows.append(Arrow(edge_names[e], src, dst))

    def as_path(s: Simplex) -> Path:
        return (edge_names[s.cell],) if s.nondegenerate and s.dim == 1 else ()

    rels = []
    for t in range(X.count(2)):
        d0, d1, d2 = (X.face(2, t, i) for i in range(3))
        lhs = as_path(d1)
        rhs = as_path(d2) + as_path(d0)
        if lhs != rhs:
            rels.append((lhs, rhs))
    return CatPresentation(tuple(objects), tuple(arrows), tuple(rels))


# -- isomorphism, terminal/initial ----------------------------------------------------


def terminal_object(C: FinCategory) -> int | None:
    n = len(C.objects)
    for t in range(n):
        if all(len(C.hom(a, t)) == 1 for a in range(n)):
            return t
    return None


def initial_object(C: FinCategory) -> int | None:
    n = len(C.objects)
    for t in range(n):
        if all(len(C.hom(t, a)) == 1 for a in range(n)):
            return t
    return None


def iso_check(
    C: FinCategory, D: FinCategory, cap: int = 16, fixed: Mapping[int, int] | None = None
) -> CatFunctor | None:
    """Search for an isomorphism C -> D; ``fixed`` pins part of the object map."""
    n = len(C.objects)
    if max(n, len(D.objects)) > cap:
        raise SizeCapExceeded(f"iso_check limited to {cap} objects")
    if n != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None

    def sig(K, x):
        m = len(K.objects)
        return (
            sorted(len(K.hom(x, y)) for y in range(m)),
            sorted(len(K.hom(y, x)) for y in range(m)),
            len(K.hom(x, x)),
        )

    sigC = [sig(C, x) for x in range(n)]
    sigD = [sig(D, y) for y in range(n)]
    fixed = dict(fixed or {})
    obj = [None] * n
    used = [False] * n

    def objects_ok(x, y):
        for x2 in range(n):
            y2 = obj[x2]
            if y2 is None:
                continue
            if len(C.hom(x, x2)) != len(D.hom(y, y2)) or len(C.hom(x2, x)) != len(D.hom(y2, y)):
                return False
        return len(C.hom(x, x)) == len(D.hom(y, y))

    def assign_objects(x):
        if x == n:
            return match_morphisms()
        choices = [fixed[x]] if x in fixed else range(n)
        for y in choices:
            if used[y] or sigC[x] != sigD[y] or not objects_ok(x, y):
                continue
            obj[x], used[y] = y, True
            found = assign_objects(x + 1)
            if found:
                return found
            obj[x], used[y] = None, False
        return None

    def match_morphisms():
        order = sorted(range(len(C.morphisms)), key=lambda m: (C.morphisms[m].src, C.morphisms[m].dst))
        mor = [None] * len(C.morphisms)
        taken = set()
        for x in range(n):
            mor[C.identities[x]] = D.identities[obj[x]]
            taken.add(D.identities[obj[x]])
        pending = [m for m in order if mor[m] is None]

        def consistent(m):
            for (g, f), gf in C.table.items():
                if m not in (g, f, gf):
                    continue
                if mor[g] is not None and mor[f] is not None and mor[gf] is not None:
                    if D.compose(mor[g], mor[f]) != mor[gf]:
                        return False
            return True

        def go(k):
            if k == len(pending):
                return True
            m = pending[k]
            mm = C.morphisms[m]
            for t in D.hom(obj[mm.src], obj[mm.dst]):
                if t in taken:
                    continue
                mor[m] = t
                taken.add(t)
                if consistent(m) and go(k + 1):
                    return True
                taken.discard(t)
                mor[m] = None
            return False

        if go(0):
            return CatFunctor(C, D, tuple(obj), tuple(mor))
        return None

    found = assign_objects(0)
    if found is not None:
        found.check()
    return found


# -- file formats ------------------------------------------------------------------------


def load_category_file(data: Mapping, max_path_len: int = 8) -> FinCategory:
    """Accept either the poset or the presentation JSON layout."""
    if "leq" in data:
        return poset_to_category(FinPoset.from_json_dict(data))
    if "arrows" in data:
        return saturate(CatPresentation.from_json_dict(data), max_path_len)
    raise CategoryError("unrecognized category file: expected 'leq' or 'arrows'")
