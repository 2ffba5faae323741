from itertools import combinations

import pytest

import oracles
from ttg.errors import ContractError, InputError, NotRepresentableError
from ttg.explorer import InstanceFamily, enumerate_instances, labeled_posets
from ttg.finspace import FinSpace, SpaceMap
from ttg.suppdata import (
    CompactObject, SupportDatum, ThickIdeal, check_axioms, faithful_via_closed_points,
    galois_check, is_comparative, is_faithful, is_realizing, is_tensorial, phi, sigma_of,
    support_report, theta, universal_eta,
)


def names(space, mask):
    return set(space.names_of(mask))


def test_sigma_of_examples(P1, P4):
    sd = P1.supports["sigma"]
    S = sd.base
    assert names(sd.target, sigma_of(sd, CompactObject.of(S, ["y"]))) == {"yh"}
    assert sigma_of(sd, CompactObject.unit(S)) == sd.target.full
    p4 = P4.supports["sigma"]
    assert names(p4.target, sigma_of(p4, CompactObject.of(p4.base, ["y"]))) == {"pt"}


def test_sigma_of_base_mismatch(P1, P2):
    with pytest.raises(InputError):
        sigma_of(P1.supports["sigma"], CompactObject.unit(P2.spaces["S"]))


def test_compact_object_must_be_closed(P1):
    with pytest.raises(ContractError):
        CompactObject.of(P1.spaces["S"], ["x"])


def test_axioms_pass_on_fixtures(P1, P4):
    for sd in (P1.supports["sigma"], P4.supports["sigma"]):
        assert all(p.verdict for p in check_axioms(sd))


def test_unit_axiom_failure_has_witness(P1):
    S, X = P1.spaces["S"], P1.spaces["X"]
    table = {S.below[0]: X.mask_of(["yh"]), S.below[1]: X.mask_of(["yh"]),
             S.below[2]: 0}
    sd = SupportDatum.from_table(S, X, table)
    unit = next(p for p in check_axioms(sd) if p.name == "axiom-unit")
    assert not unit.verdict and unit.witness == "{x y z}"


def test_tensorial_examples(P1, P4):
    assert is_tensorial(P1.supports["sigma"]).holds
    t = is_tensorial(P4.supports["sigma"])
    assert not t.holds and t.witness == "({y}, {z})"
    assert is_tensorial(SupportDatum.balmer(P1.spaces["S"])).holds


def test_faithful_realizing_examples(P1):
    sd = P1.supports["sigma"]
    assert is_faithful(sd).holds and is_realizing(sd).holds
    S = P1.spaces["S"]
    # image {x} misses both closed points
    eta = SpaceMap.from_mapping(FinSpace.discrete(["u"]), S, {"u": "x"})
    bad = SupportDatum.pullback(eta)
    f = is_faithful(bad)
    assert not f.holds and f.witness == "{y}"
    bal = SupportDatum.balmer(S)
    assert is_faithful(bal).holds and is_realizing(bal).holds


def test_faithful_via_closed_points_examples(P1, P3):
    assert faithful_via_closed_points(P1.supports["sigma"])
    assert faithful_via_closed_points(P3.supports["sigma"])
    assert faithful_via_closed_points(SupportDatum.balmer(P3.spaces["S"]))


def test_faithful_via_closed_points_precondition(P4):
    with pytest.raises(ContractError):
        faithful_via_closed_points(P4.supports["sigma"])


def test_faithful_via_closed_points_agrees_exhaustively():
    checked = 0
    for inst in enumerate_instances(InstanceFamily(3, kind="pullback-general")):
        sd = inst.support
        if sd.tensorial and sd.realizing:
            assert faithful_via_closed_points(sd) == sd.faithful.holds
            checked += 1
    assert checked > 50


@pytest.mark.parametrize("fx", ["P1", "P3"])
def test_universal_eta_recovers_from_table(fx, request):
    wb = request.getfixturevalue(fx)
    sd = wb.supports["sigma"]
    eta = universal_eta(sd.tabulate())
    assert eta.as_dict() == sd.eta.as_dict()
    for w in sd.base.downset_list:
        assert eta.preimage(w) == sd.sigma_mask(w)


def test_universal_eta_of_balmer_is_identity(P2):
    S = P2.spaces["S"]
    eta = universal_eta(SupportDatum.balmer(S).tabulate())
    assert eta.assign == tuple(range(S.n))


def test_universal_eta_sparse_table():
    S = FinSpace.from_order("ab", [("b", "a")])
    X = FinSpace.from_order(["p", "q"], [("p", "q")])
    sd = SupportDatum.from_table(S, X, {S.below[0]: X.full, S.below[1]: X.mask_of(["p"])})
    assert universal_eta(sd).as_dict() == {"p": "b", "q": "a"}


def test_universal_eta_not_representable():
    S = FinSpace.discrete("yz")
    X = FinSpace.discrete(["p"])
    # declared value on S breaks union preservation
    sd = SupportDatum.from_table(S, X, {1: 0, 2: 0, 3: 1})
    assert sd.tensorial and sd.realizing
    assert not next(p for p in check_axioms(sd) if p.name == "axiom-union").verdict
    with pytest.raises(NotRepresentableError):
        universal_eta(sd)


def test_universal_eta_precondition(P4):
    with pytest.raises(ContractError):
        universal_eta(P4.supports["sigma"])


def test_comparative_examples(P1, P3):
    c = is_comparative(P1.supports["sigma"])
    assert not c.holds and c.witness == "x"
    c3 = is_comparative(P3.supports["sigma"])
    assert c3.holds
    assert c3.value.as_dict() == {"a": "bh", "b": "bh", "c": "dh", "d": "dh"}
    S = P3.spaces["S"]
    ci = is_comparative(SupportDatum.balmer(S))
    assert ci.holds and ci.value.assign == tuple(range(S.n))


def test_comparative_matches_generic_point_oracle():
    for inst in enumerate_instances(InstanceFamily(3, kind="pullback-injective")):
        sd = inst.support
        if not (sd.tensorial and sd.realizing):
            continue
        S, X = sd.base, sd.target
        srel, xrel = oracles.relation(S), oracles.relation(X)
        eta = sd.eta.as_dict()
        want = True
        for p in S.points:
            pre = oracles.sigma_pullback(eta, oracles.closure(srel, {p}))
            if len(oracles.generic_points(xrel, pre)) != 1:
                want = False
        assert sd.comparative.holds == want


def test_support_report_lists_comparative(P1):
    props = {p.name: p for p in support_report(P1.supports["sigma"])}
    assert props["comparative"].witness == "x"
    assert all(p.support == "sigma" for p in props.values())


def test_support_laws_hold_exhaustively():
    for inst in enumerate_instances(InstanceFamily(3, kind="pushforward-surjective")):
        sd = inst.support
        sig = sd.sigma_map
        for w1, w2 in combinations(sd.base.downset_list, 2):
            assert sig[w1 | w2] == sig[w1] | sig[w2]
            assert sig[w1 & w2] & ~(sig[w1] & sig[w2]) == 0


def test_thick_ideal_membership_and_join(P2):
    S = P2.spaces["S"]
    bd, cd = S.mask_of(list("bd")), S.mask_of(list("cd"))
    i, j = ThickIdeal(S, bd), ThickIdeal(S, cd)
    assert i.contains(CompactObject.of(S, ["d"]))
    assert not i.contains(CompactObject.of(S, ["c", "d"]))
    assert i.join(j).phi == S.mask_of(list("bcd"))


def _ideal_families(space):
    """Families of down-sets closed under sub-down-sets and binary unions."""
    ds = space.downset_list
    out = []
    for r in range(1, len(ds) + 1):
        for fam in combinations(ds, r):
            s = set(fam)
            if all((a | b) in s for a in s for b in s) and \
                    all(d in s for a in s for d in ds if d & ~a == 0):
                out.append(frozenset(s))
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_galois_matches_brute_force(n):
    for space in labeled_posets(n):
        bal = SupportDatum.balmer(space)
        assert galois_check(space).holds
        fams = _ideal_families(space)
        # ideals correspond exactly to down-sets
        assert len(fams) == len(space.downset_list)
        for fam in fams:
            top = 0
            for a in fam:
                top |= a
            ideal = ThickIdeal(space, phi(bal, ThickIdeal(space, top)))
            assert ideal.members() == fam
            assert theta(bal, ideal.phi).members() == fam
