"""Iterated pushout products and stagewise filtrations of free pushouts.

Everything here lives in Set (or in Set-enriched shadows of Cat-level
constructions), where each stage is a finite set and can be compared
against an independent brute-force enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .categories import (
    Arrow,
    CatFunctor,
    CatPresentation,
    FinCategory,
    FinPoset,
    bounded_congruence,
    cat_product,
    functor_from_objects,
    full_subcategory,
    initial_object,
    is_cosieve,
    cosieve_generated,
    poset_to_category,
    saturate,
    saturated_pushout,
    induced_from_pushout,
    walking_arrow,
)
from .simplicial import sd, simplex


class FiltrationError(ValueError):
    pass


class SizeGuardExceeded(FiltrationError):
    pass


# -- sets -------------------------------------------------------------------------------


@dataclass(frozen=True)
class SetInclusion:
    K: tuple[str, ...]
    L: tuple[str, ...]

    def __post_init__(self):
        if not set(self.K) <= set(self.L):
            raise FiltrationError("K must be contained in L")
        if len(set(self.L)) != len(self.L):
            raise FiltrationError("L has repeated elements")

    @property
    def new(self) -> tuple[str, ...]:
        ks = set(self.K)
        return tuple(x for x in self.L if x not in ks)


def pushout_product_iter(f: SetInclusion, i: int, cap: int = 1_000_000) -> tuple[frozenset, frozenset]:
    """(domain, codomain) of the i-fold pushout product, both as subsets of L^i.

    The domain is built one factor at a time: dom_{k+1} = dom_k x L  u  L^k x K.
    """
    if len(f.L) ** i > cap:
        raise SizeGuardExceeded(f"|L|^{i} exceeds {cap}")
    dom = frozenset()
    cod = frozenset({()})
    for _ in range(i):
        dom = frozenset({d + (l,) for d in dom for l in f.L} | {c + (k,) for c in cod for k in f.K})
        cod = frozenset(c + (l,) for c in cod for l in f.L)
    return dom, cod


def corner_formula_check(f: SetInclusion, i: int) -> bool:
    dom, cod = pushout_product_iter(f, i)
    outside = frozenset(itertools.product(f.new, repeat=i))
    return dom == cod - outside


# -- monoids ------------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteMonoid:
    elements: tuple[str, ...]
    unit: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        r = range(n)
        for a in r:
            if self.table[self.unit][a] != a or self.table[a][self.unit] != a:
                raise FiltrationError("unit law fails")
        for a in r:
            for b in r:
                ab = self.table[a][b]
                for c in r:
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise FiltrationError("multiplication is not associative")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def __len__(self) -> int:
        return len(self.elements)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FiniteMonoid":
        els = tuple(data["elements"])
        idx = {e: i for i, e in enumerate(els)}
        table = tuple(tuple(idx[v] for v in row) for row in data["table"])
        return cls(els, idx[data["unit"]], table)

    def to_json_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "unit": self.elements[self.unit],
            "table": [[self.elements[v] for v in row] for row in self.table],
        }


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(("e",), 0, ((0,),))


def cyclic_group(n: int) -> FiniteMonoid:
    return FiniteMonoid(tuple(f"g{k}" for k in range(n)), 0, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def idempotent_monoid() -> FiniteMonoid:
    """{e, p} with p p = p."""
    return FiniteMonoid(("e", "p"), 0, ((0, 1), (1, 1)))


def truncated_monoid(n: int) -> FiniteMonoid:
    """{0, 1, ..., n} under addition capped at n (not a group)."""
    return FiniteMonoid(
        tuple(f"t{k}" for k in range(n + 1)), 0, tuple(tuple(min(a + b, n) for b in range(n + 1)) for a in range(n + 1))
    )


@dataclass(frozen=True)
class MonoidPushoutProblem:
    X: FiniteMonoid
    f: SetInclusion
    attach: Mapping[str, int]  # K -> element index of X

    def __post_init__(self):
        if set(self.attach) != set(self.f.K):
            raise FiltrationError("attach must be defined exactly on K")

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "MonoidPushoutProblem":
        X = FiniteMonoid.from_json_dict(data)
        f = SetInclusion(tuple(data["K"]), tuple(data["L"]))
        attach = {k: X.elements.index(v) for k, v in data["attach"].items()}
        return cls(X, f, attach)

    def to_json_dict(self) -> dict:
        return {
            **self.X.to_json_dict(),
            "K": list(self.f.K),
            "L": list(self.f.L),
            "attach": {k: self.X.elements[v] for k, v in self.attach.items()},
        }


# A word in the pushout is an alternating tuple (x0, m1, x1, ..., mj, xj) with
# x's element indices of X and m's names from L \ K.


def word_multiply(X: FiniteMonoid, u: tuple, v: tuple) -> tuple:
    return u[:-1] + (X.mul(u[-1], v[0]),) + v[1:]


def new_letters(word: tuple) -> int:
    return len(word) // 2


def format_word(prob: MonoidPushoutProblem, word: tuple) -> str:
    X = prob.X
    return " ".join(X.elements[w] if k % 2 == 0 else w for k, w in enumerate(word))


def _absorb(prob: MonoidPushoutProblem, cell: tuple) -> tuple:
    """Evaluate a cell of L^i x X^(i+1): K-letters become X-letters and merge left to right."""
    X = prob.X
    out = [cell[0]]
    for k in range(1, len(cell), 2):
        letter, x = cell[k], cell[k + 1]
        if letter in prob.attach:
            out[-1] = X.mul(X.mul(out[-1], prob.attach[letter]), x)
        else:
            out.extend((letter, x))
    return tuple(out)


@dataclass(frozen=True)
class FiltrationStage:
    index: int
    carrier: frozenset
    new_cells: frozenset
    corner_cells: int
    attaching: Mapping  # corner cell -> element of the previous stage
    square_commutes: bool
    disjoint: bool

    def __len__(self) -> int:
        return len(self.carrier)


def monoid_pushout_filtration(prob: MonoidPushoutProblem, max_stage: int = 3) -> list[FiltrationStage]:
    """P_0 = U(X), and P_i obtained by attaching L^i x X^(i+1) along its corner."""
    X = prob.X
    xs = range(len(X))
    P0 = frozenset((x,) for x in xs)
    stages = [FiltrationStage(0, P0, P0, 0, {}, True, True)]
    for i in range(1, max_stage + 1):
        prev = stages[-1].carrier
        corner, _ = pushout_product_iter(prob.f, i)
        attaching = {}
        new = set()
        for letters in itertools.product(prob.f.L, repeat=i):
            for xvals in itertools.product(xs, repeat=i + 1):
                cell = (xvals[0],) + tuple(v for pair in zip(letters, xvals[1:]) for v in pair)
                if letters in corner:
                    attaching[cell] = _absorb(prob, cell)
                else:
                    new.add(cell)
        commutes = all(w in prev for w in attaching.values())
        # the bottom map sends a corner cell to its absorbed word, the same as the top-then-inclusion route
        commutes = commutes and all(_absorb(prob, c) == w for c, w in attaching.items())
        disjoint = not (new & prev)
        stages.append(
            FiltrationStage(i, prev | frozenset(new), frozenset(new), len(attaching), attaching, commutes, disjoint)
        )
    return stages


# -- string rewriting oracle ----------------------------------------------------------------


Rule = tuple[tuple, tuple]


def rewrite_normal_form(word: tuple, rules: Sequence[Rule]) -> tuple:
    """Leftmost-first rewriting to a normal form (rules must terminate)."""
    by_first: dict = {}
    for lhs, rhs in rules:
        by_first.setdefault(lhs[0], []).append((lhs, rhs))
    w = tuple(word)
    changed = True
    while changed:
        changed = False
        for pos in range(len(w)):
            for lhs, rhs in by_first.get(w[pos], ()):
                if w[pos:pos + len(lhs)] == lhs:
                    w = w[:pos] + rhs + w[pos + len(lhs):]
                    changed = True
                    break
            if changed:
                break
    return w


def critical_pairs(rules: Sequence[Rule]) -> list[tuple[tuple, tuple, tuple]]:
    """(overlap word, one reduct, other reduct) for every overlap and inclusion of left sides."""
    out = []
    for l1, r1 in rules:
        for l2, r2 in rules:
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    word = l1 + l2[k:]
                    out.append((word, r1 + l2[k:], l1[:-k] + r2))
            if (l1, r1) != (l2, r2) and len(l2) <= len(l1):
                for pos in range(len(l1) - len(l2) + 1):
                    if l1[pos:pos + len(l2)] == l2:
                        out.append((l1, r1, l1[:pos] + r2 + l1[pos + len(l2):]))
    return out


def locally_confluent(rules: Sequence[Rule]) -> tuple[bool, tuple | None]:
    for word, a, b in critical_pairs(rules):
        if rewrite_normal_form(a, rules) != rewrite_normal_form(b, rules):
            return False, (word, a, b)
    return True, None


def monoid_rules(prob: MonoidPushoutProblem) -> list[Rule]:
    X = prob.X
    rules: list[Rule] = [((("x", X.unit),), ())]
    for a in range(len(X)):
        for b in range(len(X)):
            rules.append(((("x", a), ("x", b)), (("x", X.mul(a, b)),)))
    for k, x in prob.attach.items():
        rules.append(((("l", k),), (("x", x),)))
    return rules


def _canonical(prob: MonoidPushoutProblem, nf: tuple) -> tuple:
    """Pad a rewriting normal form with units into alternating shape."""
    out = []
    expect_x = True
    for kind, val in nf:
        if kind == "x":
            out.append(val)
            expect_x = False
        else:
            if expect_x:
                out.append(prob.X.unit)
            out.append(val)
            expect_x = True
    if expect_x:
        out.append(prob.X.unit)
    return tuple(out)


def monoid_pushout_oracle(prob: MonoidPushoutProblem, max_letters: int) -> frozenset:
    """Rewrite every raw word of length <= 2 max_letters + 1 and keep those with few new letters."""
    rules = monoid_rules(prob)
    alphabet = [("x", a) for a in range(len(prob.X))] + [("l", l) for l in prob.f.L]
    out = set()
    for length in range(2 * max_letters + 2):
        for raw in itertools.product(alphabet, repeat=length):
            nf = rewrite_normal_form(raw, rules)
            if sum(1 for kind, _ in nf if kind == "l") <= max_letters:
                out.add(_canonical(prob, nf))
    return frozenset(out)


@dataclass(frozen=True)
class StageComparison:
    index: int
    stage_size: int
    oracle_size: int
    agrees: bool
    witness: tuple | None = None

    def to_json_dict(self) -> dict:
        out = {"stage": self.index, "size": self.stage_size, "oracle": self.oracle_size, "agrees": self.agrees}
        if self.witness is not None:
            out["witness"] = [list(map(str, w)) if isinstance(w, tuple) else w for w in self.witness]
        return out


def compare_monoid_stages(prob: MonoidPushoutProblem, stages: int = 3) -> list[StageComparison]:
    out = []
    for st in monoid_pushout_filtration(prob, stages):
        oracle = monoid_pushout_oracle(prob, st.index)
        diff = sorted(st.carrier ^ oracle)
        out.append(StageComparison(st.index, len(st.carrier), len(oracle), not diff, (diff[0],) if diff else None))
    return out


def associativity_in_range(prob: MonoidPushoutProblem, stage: FiltrationStage) -> bool:
    """Associativity and unitality of word multiplication on triples whose products stay in range."""
    X = prob.X
    unit = (X.unit,)
    words = sorted(stage.carrier)
    bound = stage.index
    for u in words:
        if word_multiply(X, unit, u) != u or word_multiply(X, u, unit) != u:
            return False
    for u in words:
        for v in words:
            uv = word_multiply(X, u, v)
            if new_letters(uv) > bound:
                continue
            for w in words:
                if new_letters(uv) + new_letters(w) > bound:
                    continue
                if word_multiply(X, uv, w) != word_multiply(X, u, word_multiply(X, v, w)):
                    return False
    return True


# -- T_{0,1} and the Muro hom filtration ------------------------------------------------------


def t01(A: Iterable[str]) -> FinCategory:
    """Two objects 0, 1 with hom(0, 1) = A and nothing else but identities."""
    arrows = tuple(Arrow(a, 0, 1) for a in A)
    return saturate(CatPresentation(("0", "1"), arrows, ()), 2)


@dataclass(frozen=True)
class MuroInstance:
    X: FinCategory
    a: int
    b: int
    x: int
    y: int
    f: SetInclusion
    attach: Mapping[str, int]  # K -> morphism of X(a, b)

    def __post_init__(self):
        if set(self.attach) != set(self.f.K):
            raise FiltrationError("attach must be defined exactly on K")
        for k, m in self.attach.items():
            mor = self.X.morphisms[m]
            if (mor.src, mor.dst) != (self.a, self.b):
                raise FiltrationError(f"attach({k}) is not a morphism a -> b")

    @classmethod
    def from_json_dict(cls, data: Mapping, max_path_len: int = 8) -> "MuroInstance":
        from .categories import load_category_file

        X = load_category_file(data["category"], max_path_len)
        labels = {m.label: i for i, m in enumerate(X.morphisms)}
        f = SetInclusion(tuple(data.get("K", [])), tuple(data["L"]))
        return cls(
            X, X.index(data["a"]), X.index(data["b"]), X.index(data["x"]), X.index(data["y"]),
            f, {k: labels[v] for k, v in data.get("attach", {}).items()},
        )


def _muro_cells(inst: MuroInstance, letters: tuple) -> Iterable[tuple]:
    X = inst.X
    i = len(letters)
    first = X.hom(inst.x, inst.a)
    middle = X.hom(inst.b, inst.a)
    last = X.hom(inst.b, inst.y)
    for h0 in first:
        for gs in itertools.product(middle, repeat=i - 1):
            for h in last:
                maps = (h0,) + gs + (h,)
                yield (maps[0],) + tuple(v for pair in zip(letters, maps[1:]) for v in pair)


def _muro_absorb(inst: MuroInstance, cell: tuple) -> tuple:
    X = inst.X
    out = [cell[0]]
    for k in range(1, len(cell), 2):
        letter, g = cell[k], cell[k + 1]
        if letter in inst.attach:
            out[-1] = X.compose(g, X.compose(inst.attach[letter], out[-1]))
        else:
            out.extend((letter, g))
    return tuple(out)


def muro_hom_filtration(inst: MuroInstance, max_stage: int = 3) -> list[FiltrationStage]:
    """Stages of the hom-set P(x, y) of X +_{T(K)} T(L), where T = t01 at (a, b)."""
    X = inst.X
    P0 = frozenset((h,) for h in X.hom(inst.x, inst.y))
    stages = [FiltrationStage(0, P0, P0, 0, {}, True, True)]
    for i in range(1, max_stage + 1):
        prev = stages[-1].carrier
        corner, _ = pushout_product_iter(inst.f, i)
        attaching, new = {}, set()
        for letters in itertools.product(inst.f.L, repeat=i):
            for cell in _muro_cells(inst, letters):
                if letters in corner:
                    attaching[cell] = _muro_absorb(inst, cell)
                else:
                    new.add(cell)
        commutes = all(w in prev for w in attaching.values())
        disjoint = not (new & prev)
        stages.append(
            FiltrationStage(i, prev | frozenset(new), frozenset(new), len(attaching), attaching, commutes, disjoint)
        )
    return stages


def muro_presentation(inst: MuroInstance) -> CatPresentation:
    """X with an arrow a -> b per element of L; K-arrows equal their attached morphisms."""
    base = inst.X.to_presentation()
    arrows = list(base.arrows) + [Arrow(f"new:{l}", inst.a, inst.b) for l in inst.f.L]
    rels = list(base.relations) + [((f"new:{k}",), inst.X.path_of(m)) for k, m in inst.attach.items()]
    return CatPresentation(base.objects, tuple(arrows), tuple(rels))


def muro_oracle(inst: MuroInstance, max_letters: int) -> dict[tuple, int]:
    """Bounded congruence classes x -> y, keyed by the stage word of each class.

    Returns class root -> number of new letters for classes with at most
    ``max_letters`` letters from L \\ K.
    """
    pres = muro_presentation(inst)
    space = bounded_congruence(pres, 2 * max_letters + 1)
    new_names = {f"new:{l}" for l in inst.f.new}
    strata = {}
    for k, (src, word) in enumerate(space.paths):
        if src != inst.x or space.end((src, word)) != inst.y:
            continue
        count = sum(1 for name in space.names(k) if name in new_names)
        if count <= max_letters:
            strata.setdefault(space.find(k), count)
    return strata, space


def compare_muro_stages(inst: MuroInstance, stages: int = 3) -> list[StageComparison]:
    out = []
    for st in muro_hom_filtration(inst, stages):
        strata, space = muro_oracle(inst, st.index)
        seen = {}
        witness = None
        for word in sorted(st.carrier):
            path = list(inst.X.path_of(word[0]))
            for k in range(1, len(word), 2):
                path.append(f"new:{word[k]}")
                path.extend(inst.X.path_of(word[k + 1]))
            key = (inst.x, tuple(space.name_index[n] for n in path))
            root = space.find(space.index[key])
            if root in seen and witness is None:
                witness = (seen[root], word)
            seen[root] = word
        missing = set(strata) - set(seen)
        if witness is None and missing:
            witness = (space.names(sorted(missing)[0]),)
        agrees = witness is None and len(seen) == len(st.carrier)
        out.append(StageComparison(st.index, len(st.carrier), len(strata), agrees, witness))
    return out


# -- the W factorization ------------------------------------------------------------------


@dataclass(frozen=True)
class WFactorization:
    n: int
    B: FinPoset
    A: tuple[int, ...]
    W: tuple[int, ...]
    V: tuple[int, ...]
    checks: Mapping[str, bool]
    sizes: Mapping[str, int]

    @property
    def passes(self) -> bool:
        return all(self.checks.values())


def _flags(n: int) -> tuple[list[tuple[frozenset, ...]], list[str]]:
    faces = [frozenset(c) for k in range(1, n + 2) for c in itertools.combinations(range(n + 1), k)]
    flags = []
    for size in range(1, n + 2):
        for chain in itertools.combinations(faces, size):
            if all(a < b for a, b in zip(chain, chain[1:])):
                flags.append(chain)
    names = ["<" + "|".join("".join(map(str, sorted(f))) for f in ch) + ">" for ch in flags]
    return flags, names


def w_factorization(n: int, size_guard: int = 3) -> WFactorization:
    """B = flag poset of Sd of the n-simplex, A = flags avoiding the top face, W = cosieve of A."""
    if n > size_guard:
        raise SizeGuardExceeded(f"n = {n} exceeds the size guard {size_guard}")
    flags, names = _flags(n)
    sets = [frozenset(f) for f in flags]
    B = FinPoset.from_relations(names, [(i, j) for i, s in enumerate(sets) for j, t in enumerate(sets) if s < t])
    Bcat = poset_to_category(B)
    top = frozenset(range(n + 1))
    A = tuple(i for i, f in enumerate(flags) if top not in f)
    W = tuple(cosieve_generated(Bcat, A))
    V = tuple(i for i in range(len(flags)) if i not in set(A))
    WV = tuple(sorted(set(W) & set(V)))
    checks: dict[str, bool] = {}
    I = walking_arrow()
    Acat, _ = full_subcategory(Bcat, A)
    Wcat, _ = full_subcategory(Bcat, W)
    AxI = cat_product(Acat, I).category
    a_pos = {b: k for k, b in enumerate(A)}

    def phi(b: int) -> int:
        rest = flags[b][:-1] if flags[b][-1] == top else flags[b]
        side = 1 if flags[b][-1] == top else 0
        return a_pos[sets.index(frozenset(rest))] * 2 + side

    # (a) A -> W is A x {0} -> A x I, through an explicit isomorphism
    if W:
        iso = functor_from_objects(Wcat, AxI, [phi(w) for w in W])
        bijective = sorted(iso.on_objects) == list(range(len(AxI.objects)))
        checks["a_neighborhood"] = bijective and iso.is_fully_faithful() and all(phi(a) % 2 == 0 for a in A)
        # (d) W n V is A x {1}
        checks["d_top_layer"] = sorted(phi(w) for w in WV) == [2 * k + 1 for k in range(len(A))]
    else:
        checks["a_neighborhood"] = not A
        checks["d_top_layer"] = not WV
    # (b) V \ W is the barycenter, initial in V
    rest = [v for v in V if v not in set(W)]
    Vcat, _ = full_subcategory(Bcat, V)
    init = initial_object(Vcat)
    checks["b_barycenter"] = (
        len(rest) == 1 and flags[rest[0]] == (top,) and init is not None and V[init] == rest[0]
    )
    # (c) W n V -> W, V -> B is a pushout with cosieve legs
    legs_ok = is_cosieve(Wcat, [W.index(x) for x in WV]) and is_cosieve(Bcat, V)
    checks["c_pushout"] = legs_ok and _pushout_recovers(Bcat, W, V, WV)
    sizes = {"A": len(A), "W": len(W), "V": len(V), "V_minus_W": len(rest), "B": len(flags),
             "sd_cells": sd(simplex(n)).total_cells()}
    return WFactorization(n, B, A, W, V, checks, sizes)


def _pushout_recovers(Bcat: FinCategory, W, V, WV) -> bool:
    Wc, w_in_b = full_subcategory(Bcat, W)
    Vc, v_in_b = full_subcategory(Bcat, V)
    WVc, _ = full_subcategory(Bcat, WV)
    to_w = functor_from_objects(WVc, Wc, [W.index(x) for x in WV])
    to_v = functor_from_objects(WVc, Vc, [V.index(x) for x in WV])
    po = saturated_pushout(to_w, to_v)
    comparison = induced_from_pushout(po, w_in_b, v_in_b)
    return (
        sorted(comparison.on_objects) == list(range(len(Bcat.objects)))
        and sorted(comparison.on_morphisms) == list(range(len(Bcat.morphisms)))
    )


# -- pushout products in Cat ---------------------------------------------------------------


def cat_pushout_product_iter(f: CatFunctor, i: int) -> tuple[FinCategory, CatFunctor]:
    from .dwyer import pushout_product_power

    return pushout_product_power(f, i)
