import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ttg.errors import ContractError, InputError
from ttg.explorer import labeled_posets
from ttg.finspace import (
    FinSpace, SpaceMap, closed_points, closure, generic_points, map_predicates, v_of, z_of,
)

P1S = FinSpace.from_order("xyz", [("y", "x"), ("z", "x")])
P1X = FinSpace.discrete(["yh", "zh"])
P2S = FinSpace.from_order("abcd", [("d", "b"), ("b", "a"), ("d", "c"), ("c", "a")])
P2X = FinSpace.from_order(["bh", "ch", "dh"], [("dh", "bh"), ("dh", "ch")])
P3X = FinSpace.from_order(["bh", "dh"], [("dh", "bh")])

SMALL = [sp for n in range(1, 5) for sp in labeled_posets(n)]


@st.composite
def space_and_subset(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    sp = draw(st.sampled_from(labeled_posets(n)))
    return sp, draw(st.integers(0, sp.full))


def test_closure_examples():
    assert closure(P1S, ["x"]) == {"x", "y", "z"}
    assert closure(P1S, []) == frozenset()
    assert closure(P2S, ["b"]) == {"b", "d"}


def test_v_and_z_examples():
    assert v_of(P1X, "yh") == {"yh"} and z_of(P1X, "yh") == {"zh"}
    assert v_of(P2X, "bh") == {"bh", "dh"} and z_of(P2X, "bh") == {"ch", "dh"}


def test_closed_points_examples():
    assert closed_points(P1S) == {"y", "z"}
    assert closed_points(FinSpace.discrete(["p"])) == {"p"}
    assert closed_points(P2S) == {"d"}


def test_generic_points_examples():
    assert generic_points(P1X, ["yh", "zh"]) == {"yh", "zh"}
    assert generic_points(P3X, ["bh", "dh"]) == {"bh"}
    for p in P2S.points:
        assert generic_points(P2S, v_of(P2S, p)) == {p}


def test_generic_points_rejects_open_input():
    with pytest.raises(ContractError):
        generic_points(P1S, ["x"])


def test_unknown_point_is_input_error():
    with pytest.raises(InputError):
        closure(P1S, ["w"])
    with pytest.raises(InputError):
        v_of(P1S, "w")


def test_antisymmetry_violation_rejected():
    with pytest.raises(InputError):
        FinSpace.from_order("ab", [("a", "b"), ("b", "a")])


def test_transitive_closure_applied():
    sp = FinSpace.from_order("abc", [("a", "b"), ("b", "c")])
    assert sp.leq(0, 2)
    assert sp.order_pairs() == [("a", "b"), ("b", "c")]


def test_map_predicate_examples():
    eta = SpaceMap.from_mapping(P1X, P1S, {"yh": "y", "zh": "z"})
    assert map_predicates(eta).__dict__ == dict(continuous=True, closed=True,
                                                surjective=False, injective=True)
    ident = SpaceMap.identity(P2S)
    assert all(map_predicates(ident).__dict__.values())
    pt = FinSpace.discrete(["pt"])
    rho = SpaceMap.from_mapping(FinSpace.discrete("yz"), pt, {"y": "pt", "z": "pt"})
    assert map_predicates(rho).__dict__ == dict(continuous=True, closed=True,
                                                surjective=True, injective=False)


def test_non_monotone_map_rejected():
    with pytest.raises(ContractError, match="map not continuous"):
        SpaceMap.from_mapping(P1S, P1X, {"x": "yh", "y": "yh", "z": "zh"})


@pytest.mark.parametrize("sp", SMALL[::3])
def test_downsets_match_oracle(sp):
    rel = oracles.relation(sp)
    want = sorted(sp.mask_of(d) for d in oracles.downsets(sp.points, rel))
    assert list(sp.downset_list) == want


@given(space_and_subset())
def test_closure_operator_laws(data):
    sp, a = data
    c = sp.closure_mask(a)
    assert c & a == a
    assert sp.closure_mask(c) == c
    rel = oracles.relation(sp)
    assert set(sp.names_of(c)) == oracles.closure(rel, set(sp.names_of(a)))


@given(space_and_subset(), st.integers(0, 31))
def test_closure_monotone_and_additive(data, b):
    sp, a = data
    b &= sp.full
    ca, cb = sp.closure_mask(a), sp.closure_mask(b)
    assert sp.closure_mask(a | b) == ca | cb
    assert sp.closure_mask(a & b) & ~(ca & cb) == 0


@given(st.integers(1, 5).flatmap(lambda n: st.sampled_from(labeled_posets(n))))
def test_v_minus_z_is_point(sp):
    for i in range(sp.n):
        v, z = sp.v_mask(i), sp.z_mask(i)
        assert sp.is_downset(v) and sp.is_downset(z)
        assert v & ~z == 1 << i


@pytest.mark.parametrize("sp", [P1S, P1X, P2S, P2X, P3X])
def test_irreducible_downsets_have_one_generic_point(sp):
    principal = set(sp.below)
    for d in sp.downset_list:
        if not d:
            continue
        # irreducible: not a union of two proper closed subsets
        reducible = any(a | b == d for a in sp.downset_list for b in sp.downset_list
                        if a != d and b != d)
        assert (not reducible) == (d in principal)
        if not reducible:
            assert bin(sp.maximal_mask(d)).count("1") == 1


def _maps(dom, cod):
    from itertools import product
    for f in product(range(cod.n), repeat=dom.n):
        yield SpaceMap(dom, cod, f)


@pytest.mark.slow
def test_closed_predicate_matches_brute_force_up_to_five_points():
    spaces = [sp for n in range(1, 5) for sp in labeled_posets(n)]
    pairs = [(a, b) for a in spaces for b in spaces if a.n + b.n <= 5]
    checked = 0
    for dom, cod in pairs:
        rd, rc = oracles.relation(dom), oracles.relation(cod)
        for f in _maps(dom, cod):
            if not f.is_continuous():
                continue
            fmap = {dom.points[i]: cod.points[t] for i, t in enumerate(f.assign)}
            assert f.is_closed() == oracles.map_closed(dom.points, rd, rc, fmap)
            checked += 1
    assert checked > 1000


def test_subspace_and_rename():
    sub = P2S.subspace(P2S.mask_of(["b", "d"]), ["u", "v"])
    assert sub.points == ("u", "v") and sub.leq(1, 0)
