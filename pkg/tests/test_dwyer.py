import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from thomason_lab import dwyer
from thomason_lab.categories import (
    Arrow,
    CatPresentation,
    CategoryError,
    FinPoset,
    NatTransformation,
    cat_product,
    chain_poset,
    cosieve_generated,
    cube_poset,
    discrete_category,
    full_subcategory,
    functor_from_objects,
    identity_functor,
    is_sieve,
    iso_check,
    poset_to_category,
    saturate,
    terminal_category,
    walking_arrow,
)
from thomason_lab.dwyer import (
    check_cisinski_dwyer,
    check_dwyer,
    check_functor,
    cobase_change_inclusion,
    composite_inclusion,
    flatness_probe,
    hcofibration_probe,
    inclusion_objects,
    product_inclusion,
    pushout_product_cat,
    pushout_product_power,
    verify_certificate,
)


@st.composite
def poset_with_subset(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    P = FinPoset.from_relations([str(k) for k in range(n)], chosen)
    sub = draw(st.lists(st.integers(0, n - 1), unique=True, min_size=1))
    return P, sorted(sub)


def brute_force_cd(B, sub):
    """Enumerate every functor r: Z -> A and every family eps; no pruning."""
    if not is_sieve(B, sub):
        return False
    zobjs = cosieve_generated(B, sub)
    Z, _ = full_subcategory(B, zobjs)
    a_in_z = [zobjs.index(a) for a in sub]
    n = len(Z.objects)
    for r_obj in itertools.product(a_in_z, repeat=n):
        if any(r_obj[z] != z for z in a_in_z):
            continue
        choices = [Z.hom(r_obj[m.src], r_obj[m.dst]) for m in Z.morphisms]
        for r_mor in itertools.product(*choices):
            if any(r_mor[Z.identities[z]] != Z.identities[r_obj[z]] for z in range(n)):
                continue
            if any(r_mor[m] != m for m, mor in enumerate(Z.morphisms) if mor.src in a_in_z and mor.dst in a_in_z):
                continue
            if any(Z.compose(r_mor[g], r_mor[f]) != r_mor[gf] for (g, f), gf in Z.table.items()):
                continue
            eps_choices = [(Z.identities[z],) if z in a_in_z else Z.hom(r_obj[z], z) for z in range(n)]
            for eps in itertools.product(*eps_choices):
                if all(Z.compose(u, eps[mor.src]) == Z.compose(eps[mor.dst], r_mor[u])
                       for u, mor in enumerate(Z.morphisms)):
                    return True
    return False


def involution_category():
    """a -> z with an involution t on z."""
    pres = CatPresentation(("a", "z"), (Arrow("f", 0, 1), Arrow("t", 1, 1)), ((("t", "t"), ()),))
    return saturate(pres)


def fixed_arrow_category():
    """a -> z with an involution t on z that fixes f."""
    pres = CatPresentation(("a", "z"), (Arrow("f", 0, 1), Arrow("t", 1, 1)),
                           ((("t", "t"), ()), (("f", "t"), ("f",))))
    return saturate(pres)


# -- decision procedure -------------------------------------------------------------------


def test_point_into_arrow_is_certified():
    v = check_dwyer(walking_arrow(), [0])
    assert v.status == "certified" and v.sieve
    data = v.to_json_dict()
    assert data["retraction"]["objects"] == {"0": "0", "1": "0"}
    assert data["epsilon"] == {"0": "id_0", "1": "0<1"}
    assert v.dwyer is True


def test_top_into_arrow_is_not_a_sieve():
    v = check_cisinski_dwyer(walking_arrow(), [1])
    assert v.status == "refuted" and not v.sieve


def test_identity_inclusion():
    B = poset_to_category(cube_poset(2))
    v = check_dwyer(B, range(4))
    assert v.status == "certified" and v.dwyer is True
    assert v.retraction.on_objects == tuple(range(4))
    assert all(v.epsilon.components[z] == v.retraction.source.identities[z] for z in range(4))


def corner_in_square():
    j = functor_from_objects(terminal_category(), walking_arrow(), [0])
    return pushout_product_power(j, 2)[1]


def test_corner_is_refuted_exhaustively():
    corner = corner_in_square()
    sub = inclusion_objects(corner)
    v = check_dwyer(corner.target, sub)
    assert v.sieve and v.status == "refuted" and v.exhausted
    assert len(v.cosieve) == 4
    assert v.dwyer is False and v.cisinski_dwyer is False


def test_general_category_refutation_and_certificate():
    v = check_cisinski_dwyer(involution_category(), [0])
    assert v.status == "refuted" and v.exhausted
    assert brute_force_cd(involution_category(), [0]) is False
    w = check_cisinski_dwyer(fixed_arrow_category(), [0])
    assert w.status == "certified"
    assert brute_force_cd(fixed_arrow_category(), [0]) is True


@given(poset_with_subset())
@settings(max_examples=80)
def test_decision_matches_brute_force(case):
    P, sub = case
    B = poset_to_category(P)
    v = check_cisinski_dwyer(B, sub)
    assert v.status != "unknown"
    assert v.cisinski_dwyer == brute_force_cd(B, sub)
    if v.status == "refuted":
        assert v.exhausted or not v.sieve


@given(poset_with_subset())
@settings(max_examples=40)
def test_posets_cisinski_dwyer_implies_dwyer(case):
    P, sub = case
    B = poset_to_category(P)
    v = check_dwyer(B, sub)
    if v.status == "certified":
        assert v.dwyer is True


def test_certificates_reverify_and_tampering_is_caught():
    B = poset_to_category(chain_poset(3))
    v = check_cisinski_dwyer(B, [0])
    s = dwyer._setup(B, [0])
    verify_certificate(s, v.retraction, v.epsilon)
    bad = list(v.epsilon.components)
    bad[1] = s.Z.identities[1]
    with pytest.raises(CategoryError):
        verify_certificate(s, v.retraction, NatTransformation(v.epsilon.source, v.epsilon.target, tuple(bad)))


def test_verdicts_are_deterministic():
    B = poset_to_category(cube_poset(3))
    sub = [i for i, o in enumerate(B.objects) if o.count("1") <= 1]
    runs = [json.dumps(check_dwyer(B, sub).to_json_dict(), sort_keys=True) for _ in range(3)]
    assert len(set(runs)) == 1


def test_node_budget_gives_unknown_not_false():
    corner = corner_in_square()
    v = check_cisinski_dwyer(corner.target, inclusion_objects(corner), node_budget=1)
    assert v.status == "unknown" and v.cisinski_dwyer is None and v.dwyer is None


def test_check_functor_rejects_non_embeddings():
    collapse = functor_from_objects(walking_arrow(), terminal_category(), [0, 0])
    with pytest.raises(CategoryError):
        check_functor(collapse)


# -- pushout products --------------------------------------------------------------------------


def test_pushout_product_of_point_inclusions_is_corner():
    j = functor_from_objects(terminal_category(), walking_arrow(), [0])
    pp = pushout_product_cat(j, j)
    P = pp.corner.category
    assert len(P.objects) == 3 and P.is_poset()
    pp.comparison.check()
    assert pp.comparison.is_injective_on_objects() and pp.comparison.is_fully_faithful()
    names = sorted(pp.target.category.objects[x] for x in pp.comparison.on_objects)
    assert names == ["(0,0)", "(0,1)", "(1,0)"]


def test_pushout_product_with_empty_inclusion_is_product():
    j = functor_from_objects(terminal_category(), walking_arrow(), [0])
    X = poset_to_category(chain_poset(3))
    empty = functor_from_objects(discrete_category([]), X, [])
    pp = pushout_product_cat(j, empty)
    # the corner is A x X and the comparison is j x X
    assert iso_check(pp.corner.category, X) is not None
    assert iso_check(pp.target.category, cat_product(walking_arrow(), X).category) is not None
    names = sorted(pp.target.category.objects[x] for x in pp.comparison.on_objects)
    assert names == ["(0,0)", "(0,1)", "(0,2)"]
    assert pp.comparison.is_fully_faithful()


def test_triple_pushout_product_is_cube_minus_top():
    j = functor_from_objects(terminal_category(), walking_arrow(), [0])
    P, f = pushout_product_power(j, 3)
    assert len(P.objects) == 7 and len(f.target.objects) == 8
    B = poset_to_category(cube_poset(3))
    A, _ = full_subcategory(B, [i for i, o in enumerate(B.objects) if o != "111"])
    assert iso_check(P, A) is not None
    assert iso_check(f.target, B) is not None


# -- probes ---------------------------------------------------------------------------------------


def test_flatness_probe_passes_with_contractible_collapse():
    j = functor_from_objects(terminal_category(), walking_arrow(), [0])
    collapse = functor_from_objects(walking_arrow(), terminal_category(), [0, 0])
    assert flatness_probe(j, collapse).passes
    assert flatness_probe(j, identity_functor(walking_arrow())).passes


def test_flatness_probe_reports_on_corner():
    corner = corner_in_square()
    collapse = functor_from_objects(walking_arrow(), terminal_category(), [0, 0])
    rep = flatness_probe(corner, collapse)
    assert rep.passes == rep.homology.iso
    assert "homology" in rep.to_json_dict()


def test_hcofibration_probe_identity_passes():
    B = poset_to_category(chain_poset(3))
    A, i = full_subcategory(B, [0])
    rep = hcofibration_probe(i, identity_functor(A), identity_functor(A))
    assert rep.passes and not rep.detail["refutes"]


def test_hcofibration_probe_cube_configuration_fails():
    B = poset_to_category(cube_poset(3))
    A, iA = full_subcategory(B, [i for i, o in enumerate(B.objects) if o != "111"])
    C, iC = full_subcategory(A, [i for i, o in enumerate(A.objects) if o != "000"])
    rep = hcofibration_probe(iC, iA, iC)
    assert rep.detail["f_is_homology_iso"] and not rep.passes and rep.detail["refutes"]


@pytest.mark.parametrize("P,sub", [
    (chain_poset(2), [0]),
    (chain_poset(3), [0]),
    (chain_poset(3), [0, 1]),
    (FinPoset.from_relations(["0", "1", "2"], [(0, 1), (0, 2)]), [0]),
    (cube_poset(2), [0]),
    (cube_poset(2), [0, 1]),
])
def test_hcofibration_probe_passes_on_certified_maps_with_collapse(P, sub):
    Bc = poset_to_category(P)
    A, i = full_subcategory(Bc, sub)
    assert check_functor(i).status == "certified"
    collapse = functor_from_objects(A, terminal_category(), [0] * len(A.objects))
    rep = hcofibration_probe(i, collapse, identity_functor(A))
    assert rep.detail["f_is_homology_iso"] and rep.passes


# -- closure helpers ---------------------------------------------------------------------------------


def test_closure_operations_stay_certified():
    B = poset_to_category(chain_poset(3))
    M, outer = full_subcategory(B, [0, 1])
    S, inner = full_subcategory(M, [0])
    assert check_functor(composite_inclusion(outer, inner)).status == "certified"
    collapse = functor_from_objects(M, terminal_category(), [0, 0])
    assert check_functor(cobase_change_inclusion(outer, collapse)).status == "certified"
    assert check_functor(product_inclusion(outer, walking_arrow())).status == "certified"
