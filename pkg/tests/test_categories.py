import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from thomason_lab.categories import (
    Arrow,
    CatPresentation,
    CategoryError,
    FinPoset,
    InfiniteNerve,
    NotSaturated,
    SizeCapExceeded,
    antichain_poset,
    bounded_congruence,
    cat_product,
    chain_poset,
    compose_functors,
    cosieve_generated,
    cube_poset,
    discrete_category,
    edge_inclusion,
    full_subcategory,
    functor_from_objects,
    fundamental_category,
    identity_functor,
    initial_object,
    is_cosieve,
    is_sieve,
    iso_check,
    load_category_file,
    nerve,
    nerve_map,
    poset_to_category,
    preorder_of,
    saturate,
    saturated_pushout,
    szpilrajn_extend,
    terminal_category,
    terminal_object,
    threshold_retraction,
    walking_arrow,
)
from thomason_lab.homology import homology
from thomason_lab.simplicial import product, sd, simplex


@st.composite
def posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(n)))
    names = [f"p{k}" for k in range(n)]
    return FinPoset.from_relations(names, [(perm[i], perm[j]) for i, j in chosen])


@st.composite
def preorders(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    rel = [[i == j or draw(st.booleans()) and draw(st.booleans()) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                rel[i][j] = rel[i][j] or (rel[i][k] and rel[k][j])
    return rel


def hexagon():
    B = poset_to_category(cube_poset(3))
    keep = [i for i, o in enumerate(B.objects) if o not in ("000", "111")]
    return full_subcategory(B, keep)[0]


def brute_force_cosieve(C, A):
    closed = set(A)
    changed = True
    while changed:
        changed = False
        for m in C.morphisms:
            if m.src in closed and m.dst not in closed:
                closed.add(m.dst)
                changed = True
    return sorted(closed)


# -- posets and categories ---------------------------------------------------------


def test_chain_category():
    C = poset_to_category(chain_poset(2))
    assert len(C.objects) == 2 and len(C.morphisms) == 3


def test_cube_category_counts_comparable_pairs():
    P = cube_poset(3)
    pairs = sum(1 for a in P.objects for b in P.objects if all(x <= y for x, y in zip(a, b)))
    C = poset_to_category(P)
    assert len(C.objects) == 8
    assert len(C.morphisms) == pairs == 27
    assert P.strict_relations() == 19


def test_antichain_category():
    assert len(poset_to_category(antichain_poset(3)).morphisms) == 3


def test_antisymmetry_enforced():
    with pytest.raises(CategoryError):
        FinPoset.from_relations(["a", "b"], [(0, 1), (1, 0)])


@given(posets())
def test_hom_nonempty_iff_leq(P):
    C = poset_to_category(P)
    for x in range(len(P)):
        for y in range(len(P)):
            assert len(C.hom(x, y)) == int(P.leq[x][y])


# -- saturation ----------------------------------------------------------------------


def test_saturate_walking_arrow():
    pres = CatPresentation(("0", "1"), (Arrow("f", 0, 1),), ())
    assert len(saturate(pres).morphisms) == 3


def test_free_loop_never_saturates():
    pres = CatPresentation(("x",), (Arrow("f", 0, 0),), ())
    for bound in (1, 2, 5, 9):
        with pytest.raises(NotSaturated) as err:
            saturate(pres, bound)
        assert err.value.witness is not None


def test_idempotent_loop_saturates():
    pres = CatPresentation(("x",), (Arrow("e", 0, 0),), ((("e", "e"), ("e",)),))
    C = saturate(pres, 4)
    assert len(C.morphisms) == 2
    C.check()


def test_commuting_square_identifies_diagonals():
    pres = CatPresentation(
        ("a", "b", "c", "d"),
        (Arrow("f", 0, 1), Arrow("g", 1, 3), Arrow("h", 0, 2), Arrow("k", 2, 3)),
        ((("f", "g"), ("h", "k")),),
    )
    C = saturate(pres)
    assert len(C.hom(0, 3)) == 1
    free = saturate(CatPresentation(pres.objects, pres.arrows, ()))
    assert len(free.hom(0, 3)) == 2


def test_presentation_rejects_nonparallel_relation():
    with pytest.raises(CategoryError):
        CatPresentation(("a", "b"), (Arrow("f", 0, 1),), ((("f",), ()),))


def test_bounded_congruence_collapses_relations():
    pres = CatPresentation(("x",), (Arrow("e", 0, 0),), ((("e", "e"), ("e",)),))
    space = bounded_congruence(pres, 3)
    assert len(space.classes()) == 2


def associative(C):
    n = len(C.morphisms)
    for f in range(n):
        for g in C.hom(C.morphisms[f].dst, C.morphisms[f].dst) + tuple(
            m for m in range(n) if C.morphisms[m].src == C.morphisms[f].dst
        ):
            for h in (m for m in range(n) if C.morphisms[m].src == C.morphisms[g].dst):
                if C.compose(h, C.compose(g, f)) != C.compose(C.compose(h, g), f):
                    return False
    for m, mor in enumerate(C.morphisms):
        if C.compose(m, C.identities[mor.src]) != m or C.compose(C.identities[mor.dst], m) != m:
            return False
    return True


@given(posets(5))
@settings(max_examples=30)
def test_saturated_categories_are_associative(P):
    C = saturate(poset_to_category(P).to_presentation())
    C.check()
    assert associative(C)


def test_saturated_category_with_nontrivial_monoid_is_associative():
    pres = CatPresentation(
        ("x", "y"),
        (Arrow("f", 0, 1), Arrow("t", 1, 1)),
        ((("t", "t"), ()),),
    )
    C = saturate(pres)
    assert len(C.hom(0, 1)) == 2
    assert associative(C)


# -- nerve and fundamental category ---------------------------------------------------


def test_nerve_of_arrow_is_interval():
    assert nerve(walking_arrow()).counts() == (2, 1)


def test_nerve_of_hexagon_is_circle():
    N = nerve(hexagon())
    assert N.counts() == (6, 6)
    assert str(homology(N)) == "H0 = Z, H1 = Z"


def test_nerve_of_discrete():
    assert nerve(discrete_category(["a", "b", "c"])).counts() == (3,)


def test_nerve_rejects_loops():
    pres = CatPresentation(("x",), (Arrow("e", 0, 0),), ((("e", "e"), ("e",)),))
    with pytest.raises(InfiniteNerve):
        nerve(saturate(pres))


def test_fundamental_category_of_point():
    pres = fundamental_category(simplex(0))
    assert len(pres.objects) == 1 and not pres.arrows


def test_fundamental_category_of_chain_nerve():
    P = poset_to_category(chain_poset(3))
    C = saturate(fundamental_category(nerve(P)))
    assert iso_check(C, P) is not None


def test_fundamental_category_of_sd_interval():
    C = saturate(fundamental_category(sd(simplex(1))))
    flags = poset_to_category(FinPoset.from_relations(["0", "1", "01"], [(0, 2), (1, 2)]))
    assert len(C.morphisms) == 5
    assert iso_check(C, flags) is not None


@given(posets())
@settings(max_examples=50)
def test_fundamental_category_of_nerve_round_trip(P):
    C = poset_to_category(P)
    back = saturate(fundamental_category(nerve(C)))
    assert iso_check(back, C) is not None


@given(posets(3), posets(3))
@settings(max_examples=25)
def test_nerve_of_product_is_product_of_nerves(P, Q):
    C, D = poset_to_category(P), poset_to_category(Q)
    NCD = nerve(cat_product(C, D).category)
    prod = product(nerve(C), nerve(D)).space
    assert NCD.counts() == prod.counts()
    assert homology(NCD) == homology(prod)


def test_nerve_map_is_simplicial():
    B = poset_to_category(cube_poset(2))
    A, inc = full_subcategory(B, [0, 1, 2])
    f = nerve_map(inc)
    f.check()
    assert f.is_injective()


# -- products and pushouts -------------------------------------------------------------


def test_square_product():
    I = walking_arrow()
    S = cat_product(I, I).category
    assert len(S.objects) == 4 and len(S.morphisms) == 9
    assert iso_check(S, poset_to_category(cube_poset(2))) is not None


def test_product_with_terminal():
    C = poset_to_category(chain_poset(3))
    assert iso_check(cat_product(C, terminal_category()).category, C) is not None


def test_triple_product_is_cube():
    I = walking_arrow()
    cube = cat_product(cat_product(I, I).category, I).category
    assert iso_check(cube, poset_to_category(cube_poset(3))) is not None


def test_product_projections_are_functors():
    prod = cat_product(walking_arrow(), poset_to_category(chain_poset(3)))
    prod.first.check()
    prod.second.check()


def test_pushout_along_identity_leg():
    C = poset_to_category(chain_poset(3))
    A, inc = full_subcategory(C, [0, 1])
    po = saturated_pushout(identity_functor(A), inc)
    assert iso_check(po.category, C) is not None
    po.left.check()
    po.right.check()


def test_pushout_duplicates_bottom():
    B = poset_to_category(cube_poset(3))
    A, _ = full_subcategory(B, [i for i, o in enumerate(B.objects) if o != "111"])
    C, iC = full_subcategory(A, [i for i, o in enumerate(A.objects) if o != "000"])
    D = saturated_pushout(iC, iC).category
    assert len(D.objects) == 8 and D.is_poset()
    assert sorted(D.objects) == sorted(list(A.objects) + ["000'"])


def test_pushout_square_commutes():
    B = poset_to_category(chain_poset(3))
    A, inc = full_subcategory(B, [0])
    collapse = functor_from_objects(A, terminal_category(), [0])
    po = saturated_pushout(collapse, inc)
    left_then = compose_functors(po.left, collapse)
    right_then = compose_functors(po.right, inc)
    assert left_then.on_objects == right_then.on_objects
    assert left_then.on_morphisms == right_then.on_morphisms


# -- sieves ----------------------------------------------------------------------------


def test_cube_minus_top_is_sieve():
    B = poset_to_category(cube_poset(3))
    A = [i for i, o in enumerate(B.objects) if o != "111"]
    assert is_sieve(B, A)
    assert not is_cosieve(B, A)


def test_cosieve_of_bottom_of_arrow():
    I = walking_arrow()
    assert cosieve_generated(I, [0]) == [0, 1]


def test_whole_category_is_sieve_and_cosieve():
    B = poset_to_category(cube_poset(2))
    everything = list(range(4))
    assert is_sieve(B, everything) and is_cosieve(B, everything)
    assert cosieve_generated(B, everything) == everything


@given(posets(), st.data())
@settings(max_examples=60)
def test_cosieve_generated_is_smallest(P, data):
    C = poset_to_category(P)
    n = len(P)
    A = data.draw(st.lists(st.integers(0, n - 1), unique=True))
    Z = cosieve_generated(C, A)
    assert set(A) <= set(Z)
    assert Z == brute_force_cosieve(C, A)
    assert is_cosieve(C, Z)
    for r in range(n + 1):
        for cand in itertools.combinations(range(n), r):
            if set(A) <= set(cand) and is_cosieve(C, cand):
                assert set(Z) <= set(cand)


# -- Szpilrajn --------------------------------------------------------------------------


def test_szpilrajn_antichain_tie_break():
    ranks = szpilrajn_extend(preorder_of(discrete_category(["0", "1"])))
    assert ranks[0] < ranks[1]


def test_szpilrajn_on_total_order_is_unchanged():
    C = poset_to_category(chain_poset(4))
    assert szpilrajn_extend(preorder_of(C)) == [0, 1, 2, 3]


def test_szpilrajn_on_cube_contains_all_relations():
    P = cube_poset(3)
    ranks = szpilrajn_extend(preorder_of(poset_to_category(P)))
    held = sum(1 for i in range(8) for j in range(8) if P.less(i, j) and ranks[i] < ranks[j])
    assert held == 19
    assert sorted(ranks) == list(range(8))


@given(preorders())
def test_szpilrajn_extends_and_is_total(pre):
    ranks = szpilrajn_extend(pre)
    n = len(pre)
    for x in range(n):
        for y in range(n):
            if pre[x][y]:
                assert ranks[x] <= ranks[y]
            assert (ranks[x] == ranks[y]) == (pre[x][y] and pre[y][x])


def test_threshold_retraction_examples():
    I = walking_arrow()
    r = threshold_retraction(I, [0, 1], 1, "below")
    assert r.on_objects == (0, 1)
    chain = poset_to_category(chain_poset(3, ["a", "b", "c"]))
    r = threshold_retraction(chain, [0, 1, 2], 1, "below")
    assert r.on_objects == (0, 1, 1)
    r = threshold_retraction(chain, [0, 1, 2], 1, "above")
    assert r.on_objects == (0, 0, 1)


def test_threshold_retraction_splits_edge_inclusion():
    chain = poset_to_category(chain_poset(3, ["a", "b", "c"]))
    r = threshold_retraction(chain, [0, 1, 2], 1, "below")
    ab = next(m for m, mor in enumerate(chain.morphisms) if (mor.src, mor.dst) == (0, 1))
    comp = compose_functors(r, edge_inclusion(chain, ab))
    assert comp.is_identity()


# -- terminal objects and isomorphisms ----------------------------------------------------


def test_terminal_and_initial():
    B = poset_to_category(cube_poset(3))
    assert B.objects[terminal_object(B)] == "111"
    assert B.objects[initial_object(B)] == "000"
    assert terminal_object(hexagon()) is None and initial_object(hexagon()) is None


def test_iso_check_self_is_identity():
    C = hexagon()
    iso = iso_check(C, C)
    assert iso is not None and iso.is_identity()


def test_iso_check_distinguishes():
    assert iso_check(poset_to_category(chain_poset(3)), poset_to_category(antichain_poset(3))) is None


def test_iso_check_size_cap():
    big = poset_to_category(chain_poset(17))
    with pytest.raises(SizeCapExceeded):
        iso_check(big, big)


# -- files -------------------------------------------------------------------------------------


@given(posets())
def test_poset_json_round_trip(P):
    text = P.dumps()
    Q = FinPoset.from_json_dict(json.loads(text))
    assert Q == P
    assert Q.dumps() == text


def test_presentation_json_round_trip():
    pres = poset_to_category(cube_poset(2)).to_presentation()
    text = pres.dumps()
    again = CatPresentation.from_json_dict(json.loads(text))
    assert again.dumps() == text


def test_load_category_file_accepts_both_formats():
    P = cube_poset(2)
    C1 = load_category_file(P.to_json_dict())
    C2 = load_category_file(poset_to_category(P).to_presentation().to_json_dict())
    assert iso_check(C1, C2) is not None
