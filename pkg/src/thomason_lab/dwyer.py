"""Cisinski-Dwyer and Dwyer conditions for full inclusions, with certificates.

A full inclusion i: A -> B passes when A is a sieve and, for Z the cosieve
generated by A, there is a retraction r: Z -> A with r i = id together with
a natural transformation eps: i r -> id_Z restricting to the identity on A.
The original Dwyer condition asks in addition that i be left adjoint to r
with counit eps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .categories import (
    CatFunctor,
    CategoryError,
    CatProduct,
    CatPushout,
    FinCategory,
    NatTransformation,
    cat_product,
    compose_functors,
    cosieve_generated,
    full_subcategory,
    identity_functor,
    induced_from_pushout,
    nerve_map,
    is_sieve,
    product_functor,
    saturated_pushout,
)
from .homology import HomologyIsoReport, is_homology_iso


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DwyerVerdict:
    status: str  # "certified", "refuted" or "unknown"
    sieve: bool
    cosieve: tuple[str, ...]
    retraction: CatFunctor | None = None
    epsilon: NatTransformation | None = None
    exhausted: bool = False
    adjoint: bool | None = None
    nodes: int = 0
    certificates_seen: int = 0

    @property
    def cisinski_dwyer(self) -> bool | None:
        return {"certified": True, "refuted": False}.get(self.status)

    @property
    def dwyer(self) -> bool | None:
        if self.status == "unknown":
            return None
        if self.status == "refuted":
            return False
        return self.adjoint

    def to_json_dict(self) -> dict:
        out = {
            "status": self.status,
            "cisinski_dwyer": self.cisinski_dwyer,
            "dwyer": self.dwyer,
            "sieve": self.sieve,
            "cosieve": list(self.cosieve),
            "exhausted": self.exhausted,
            "nodes": self.nodes,
        }
        if self.adjoint is not None:
            out["adjoint"] = self.adjoint
        if self.retraction is not None:
            r, eps = self.retraction, self.epsilon
            Z = r.source
            out["retraction"] = r.to_json_dict()
            out["epsilon"] = {Z.objects[z]: Z.morphisms[m].label for z, m in enumerate(eps.components)}
        return out


@dataclass(frozen=True)
class _Setup:
    B: FinCategory
    Z: FinCategory
    A: FinCategory
    z_in_b: CatFunctor
    a_in_z: CatFunctor
    a_pos: dict  # Z object -> A object


def _setup(B: FinCategory, sub: Sequence[int]) -> _Setup:
    Zobjs = cosieve_generated(B, sub)
    Z, z_in_b = full_subcategory(B, Zobjs)
    zpos = {b: z for z, b in enumerate(Zobjs)}
    A, a_in_z = full_subcategory(Z, [zpos[a] for a in sorted(set(sub))])
    return _Setup(B, Z, A, z_in_b, a_in_z, {z: a for a, z in enumerate(a_in_z.on_objects)})


def _certificates(s: _Setup, budget: list[int]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """Yield (r on Z objects, r on Z morphisms, eps) with everything valued in Z.

    Objects and eps components are chosen jointly; naturality prunes both
    before morphism images are assigned.
    """
    Z = s.Z
    n = len(Z.objects)
    in_a = [z in s.a_pos for z in range(n)]
    r_obj: list[int | None] = [z if in_a[z] else None for z in range(n)]
    eps: list[int | None] = [Z.identities[z] if in_a[z] else None for z in range(n)]
    free = [z for z in range(n) if not in_a[z]]
    a_objs = [z for z in range(n) if in_a[z]]
    morph_between = {}
    for m, mor in enumerate(Z.morphisms):
        morph_between.setdefault((mor.src, mor.dst), []).append(m)

    def candidates(u: int) -> list[int]:
        mor = Z.morphisms[u]
        target = Z.compose(u, eps[mor.src])
        return [v for v in Z.hom(r_obj[mor.src], r_obj[mor.dst]) if Z.compose(eps[mor.dst], v) == target]

    def tick():
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchCapExceeded("node budget exhausted")

    def objects_ok(z: int) -> bool:
        for w in range(n):
            if r_obj[w] is None:
                continue
            for u in morph_between.get((z, w), []) + (morph_between.get((w, z), []) if w != z else []):
                if not candidates(u):
                    return False
        return True

    morphs = [m for m in range(len(Z.morphisms)) if not (in_a[Z.morphisms[m].src] and in_a[Z.morphisms[m].dst])]
    comp_checks: dict[int, list[tuple[int, int, int]]] = {}
    position = {m: k for k, m in enumerate(morphs)}
    for (g, f), gf in Z.table.items():
        last = max(position.get(x, -1) for x in (g, f, gf))
        if last >= 0:
            comp_checks.setdefault(morphs[last], []).append((g, f, gf))

    def assign_morphisms(k: int, r_mor: list[int | None]):
        if k == len(morphs):
            yield tuple(r_obj), tuple(r_mor), tuple(eps)
            return
        u = morphs[k]
        if Z.is_identity(u):
            options = [Z.identities[r_obj[Z.morphisms[u].src]]]
        else:
            options = candidates(u)
        for v in options:
            tick()
            r_mor[u] = v
            if all(Z.compose(r_mor[g], r_mor[f]) == r_mor[gf] for g, f, gf in comp_checks.get(u, ())):
                yield from assign_morphisms(k + 1, r_mor)
            r_mor[u] = None

    def assign_objects(k: int):
        if k == len(free):
            r_mor: list[int | None] = [m if in_a[Z.morphisms[m].src] and in_a[Z.morphisms[m].dst] else None
                                       for m in range(len(Z.morphisms))]
            yield from assign_morphisms(0, r_mor)
            return
        z = free[k]
        for a in a_objs:
            for e in Z.hom(a, z):
                tick()
                r_obj[z], eps[z] = a, e
                if objects_ok(z):
                    yield from assign_objects(k + 1)
                r_obj[z], eps[z] = None, None

    yield from assign_objects(0)


def _package(s: _Setup, cert) -> tuple[CatFunctor, NatTransformation]:
    r_obj, r_mor, eps = cert
    Z, A = s.Z, s.A
    a_mor = {m: k for k, m in enumerate(s.a_in_z.on_morphisms)}
    r = CatFunctor(Z, A, tuple(s.a_pos[x] for x in r_obj), tuple(a_mor[m] for m in r_mor))
    ir = compose_functors(s.a_in_z, r)
    return r, NatTransformation(ir, identity_functor(Z), tuple(eps))


def verify_certificate(s_or_incl, r: CatFunctor, epsilon: NatTransformation) -> None:
    """Independent re-check of a certificate; raises CategoryError on failure."""
    s = s_or_incl
    r.check()
    ri = compose_functors(r, s.a_in_z)
    if ri.on_objects != tuple(range(len(s.A.objects))) or ri.on_morphisms != tuple(range(len(s.A.morphisms))):
        raise CategoryError("r i is not the identity")
    epsilon.check()
    for a, z in enumerate(s.a_in_z.on_objects):
        if epsilon.components[z] != s.Z.identities[z]:
            raise CategoryError("eps i is not the identity")


def _is_adjoint(s: _Setup, r: CatFunctor, epsilon: NatTransformation) -> bool:
    """g |-> eps_z o i(g) must biject hom_A(a, r z) onto hom_Z(i a, z)."""
    Z, A = s.Z, s.A
    for a in range(len(A.objects)):
        ia = s.a_in_z.on_objects[a]
        for z in range(len(Z.objects)):
            image = sorted(
                Z.compose(epsilon.components[z], s.a_in_z.on_morphisms[g]) for g in A.hom(a, r.on_objects[z])
            )
            if image != sorted(Z.hom(ia, z)):
                return False
    return True


def _check(B: FinCategory, sub: Sequence[int], node_budget: int, want_adjoint: bool) -> DwyerVerdict:
    sub = sorted(set(sub))
    sieve = is_sieve(B, sub)
    s = _setup(B, sub)
    cos = tuple(s.Z.objects)
    if not sieve:
        return DwyerVerdict("refuted", False, cos, adjoint=False if want_adjoint else None)
    budget = [node_budget]
    first = None
    seen = 0
    try:
        for cert in _certificates(s, budget):
            r, eps = _package(s, cert)
            verify_certificate(s, r, eps)
            seen += 1
            if first is None:
                first = (r, eps)
                if not want_adjoint:
                    break
            if want_adjoint and _is_adjoint(s, r, eps):
                return DwyerVerdict("certified", True, cos, r, eps, False, True, node_budget - budget[0], seen)
    except SearchCapExceeded:
        nodes = node_budget - budget[0]
        if first is not None:
            r, eps = first
            return DwyerVerdict("certified", True, cos, r, eps, False, None, nodes, seen)
        return DwyerVerdict("unknown", True, cos, nodes=nodes)
    nodes = node_budget - budget[0]
    if first is None:
        return DwyerVerdict("refuted", True, cos, exhausted=True, adjoint=False if want_adjoint else None, nodes=nodes)
    r, eps = first
    return DwyerVerdict("certified", True, cos, r, eps, False, False if want_adjoint else None, nodes, seen)


def check_cisinski_dwyer(B: FinCategory, sub: Sequence[int], node_budget: int = 200_000) -> DwyerVerdict:
    return _check(B, sub, node_budget, want_adjoint=False)


def check_dwyer(B: FinCategory, sub: Sequence[int], node_budget: int = 200_000) -> DwyerVerdict:
    return _check(B, sub, node_budget, want_adjoint=True)


def inclusion_objects(F: CatFunctor) -> list[int]:
    """Object image of a full embedding; raises if F is not one."""
    if not F.is_injective_on_objects() or not F.is_fully_faithful():
        raise CategoryError("functor is not a full embedding")
    return sorted(F.on_objects)


def check_functor(F: CatFunctor, dwyer: bool = False, node_budget: int = 200_000) -> DwyerVerdict:
    return _check(F.target, inclusion_objects(F), node_budget, want_adjoint=dwyer)


# -- pushout products and probes ------------------------------------------------------


@dataclass(frozen=True)
class PushoutProduct:
    corner: CatPushout
    comparison: CatFunctor  # P -> B x Y
    target: CatProduct


def pushout_product_cat(f: CatFunctor, g: CatFunctor, max_path_len: int = 8) -> PushoutProduct:
    """P = (B x X) +_(A x X) (A x Y) together with P -> B x Y."""
    A, B, X, Y = f.source, f.target, g.source, g.target
    AX, BX, AY, BY = cat_product(A, X), cat_product(B, X), cat_product(A, Y), cat_product(B, Y)
    idX, idY, idA, idB = identity_functor(X), identity_functor(Y), identity_functor(A), identity_functor(B)
    fX = product_functor(f, idX, AX, BX)
    Ag = product_functor(idA, g, AX, AY)
    po = saturated_pushout(fX, Ag, max_path_len)
    Bg = product_functor(idB, g, BX, BY)
    fY = product_functor(f, idY, AY, BY)
    comparison = induced_from_pushout(po, Bg, fY)
    return PushoutProduct(po, comparison, BY)


def pushout_product_power(f: CatFunctor, k: int) -> tuple[FinCategory, CatFunctor]:
    """Iterated pushout product f^k as a functor into B^k."""
    current = f
    for _ in range(k - 1):
        current = pushout_product_cat(current, f).comparison
    return current.source, current


@dataclass(frozen=True)
class ProbeReport:
    passes: bool
    homology: HomologyIsoReport
    detail: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"passes": self.passes, **self.detail, "homology": self.homology.to_json_dict()}


def flatness_probe(cof: CatFunctor, we: CatFunctor) -> ProbeReport:
    pp = pushout_product_cat(cof, we)
    rep = is_homology_iso(nerve_map(pp.comparison))
    return ProbeReport(rep.iso, rep, {"corner_objects": len(pp.corner.category.objects)})


def cobase_change(i: CatFunctor, attach: CatFunctor, max_path_len: int = 8) -> CatPushout:
    """X +_A B for i: A -> B and attach: A -> X; ``left`` is X -> P, ``right`` is B -> P."""
    return saturated_pushout(attach, i, max_path_len)


def hcofibration_probe(i: CatFunctor, f: CatFunctor, attach: CatFunctor, max_path_len: int = 8) -> ProbeReport:
    """Compare X +_A B -> Y +_A B induced by f.

    A failure refutes the h-cofibration property of ``i`` when f is a weak
    equivalence; a pass is evidence only.
    """
    src = cobase_change(i, attach, max_path_len)
    dst = cobase_change(i, compose_functors(f, attach), max_path_len)
    induced = induced_from_pushout(src, compose_functors(dst.left, f), dst.right)
    we = is_homology_iso(nerve_map(f))
    rep = is_homology_iso(nerve_map(induced))
    detail = {
        "f_is_homology_iso": we.iso,
        "source_objects": len(src.category.objects),
        "target_objects": len(dst.category.objects),
        "refutes": bool(we.iso and not rep.iso),
    }
    return ProbeReport(rep.iso, rep, detail)


# -- closure corpus -----------------------------------------------------------------------


def composite_inclusion(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    return compose_functors(G, F)


def cobase_change_inclusion(i: CatFunctor, F: CatFunctor) -> CatFunctor:
    """The leg X -> X +_A B of the cobase change of ``i`` along F: A -> X."""
    return cobase_change(i, F).left


def product_inclusion(i: CatFunctor, W: FinCategory) -> CatFunctor:
    src, dst = cat_product(W, i.source), cat_product(W, i.target)
    return product_functor(identity_functor(W), i, src, dst)
