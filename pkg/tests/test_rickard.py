import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ttg.errors import ContractError, InputError
from ttg.explorer import InstanceFamily, enumerate_instances
from ttg.finspace import FinSpace, SpaceMap
from ttg.rickard import (
    GAMMA, LOCAL, POINT, BigObject, IdempotentSpec, check_extension_axioms,
    eta_pullback_extension, extended_mask, extended_support, gamma_ideal_support,
    gamma_ideal_support_generic, gamma_point_support, generated_algebra,
    idempotent_identities_check, is_extension_faithful, l_ideal_support, search_zero_extension,
    tensor_idem, tensor_orbit,
)
from ttg.suppdata import CompactObject, SupportDatum

PULLBACKS = list(enumerate_instances(InstanceFamily(3, kind="pullback-general")))
PUSHES = list(enumerate_instances(InstanceFamily(3, kind="pushforward-surjective")))


def m(space, pts):
    return space.mask_of(list(pts))


def test_gamma_ideal_support_examples(P1, P2):
    sd = P1.supports["sigma"]
    S, X = sd.base, sd.target
    assert gamma_ideal_support(sd, m(X, ["yh"])) == m(S, "y")
    assert gamma_ideal_support(sd, X.full) == S.full
    assert gamma_ideal_support(sd, 0) == 0
    p2 = P2.supports["sigma"]
    assert gamma_ideal_support(p2, m(p2.target, ["bh", "dh"])) == m(p2.base, "bd")


def test_gamma_ideal_support_rejects_open_set(P2):
    sd = P2.supports["sigma"]
    with pytest.raises(ContractError):
        gamma_ideal_support(sd, m(sd.target, ["bh"]))


def test_l_support_is_complement(P1):
    sd = P1.supports["sigma"]
    v = m(sd.target, ["yh"])
    assert l_ideal_support(sd, v) == m(sd.base, "xz")


def test_gamma_point_support_examples(P1, P2):
    sd = P1.supports["sigma"]
    assert gamma_point_support(sd, "yh") == m(sd.base, "y")
    assert gamma_point_support(sd, "zh") == m(sd.base, "z")
    bal = SupportDatum.balmer(P2.spaces["S"])
    for i, p in enumerate(bal.base.points):
        assert gamma_point_support(bal, p) == 1 << i
    p2 = P2.supports["sigma"]
    assert gamma_point_support(p2, "bh") == m(p2.base, "b")
    with pytest.raises(InputError):
        gamma_point_support(p2, "zz")


def test_tensor_idem_examples(P1, P2):
    sd = P1.supports["sigma"]
    S = sd.base
    one = BigObject.unit(S)
    v = m(sd.target, ["yh"])
    a = tensor_idem(tensor_idem(one, IdempotentSpec(GAMMA, sd, v)), IdempotentSpec(LOCAL, sd, v))
    assert a.is_zero
    bal = SupportDatum.balmer(S)
    a = tensor_idem(one, IdempotentSpec.local(bal, ["y", "z"]))
    assert a.supp == m(S, "x")
    b = BigObject.compact(S, m(S, "y"))
    assert tensor_idem(b, IdempotentSpec(GAMMA, sd, sd.target.full)).supp == b.supp
    with pytest.raises(InputError):
        tensor_idem(BigObject.unit(P2.spaces["S"]), IdempotentSpec(GAMMA, sd, v))


def test_tensor_orbit_examples(P1, P2):
    S = P1.spaces["S"]
    a = BigObject.formal(S, m(S, "x"))
    assert tensor_orbit(a, CompactObject.of(S, "y")) == 0
    assert tensor_orbit(a, CompactObject.unit(S)) == a.supp
    S2 = P2.spaces["S"]
    b = BigObject.formal(S2, m(S2, "ab"))
    assert tensor_orbit(b, CompactObject.of(S2, ["b", "d"])) == m(S2, "b")


def test_extended_support_examples(P1, P3):
    sd = P1.supports["sigma"]
    A = P1.objects["A"]
    assert A.supp == m(sd.base, "x") and extended_support(sd, A) == 0
    assert extended_support(sd, BigObject.unit(sd.base)) == sd.target.full
    p3 = P3.supports["sigma"]
    a = BigObject.formal(p3.base, m(p3.base, "a"))
    assert extended_support(p3, a) == m(p3.target, ["bh"])


def test_eta_pullback_extension_examples(P1, P3):
    sd = P1.supports["sigma"]
    assert eta_pullback_extension(sd, BigObject.formal(sd.base, m(sd.base, "x"))) == 0
    bal = SupportDatum.balmer(P3.spaces["S"])
    a = BigObject.formal(bal.base, m(bal.base, "ac"))
    assert eta_pullback_extension(bal, a) == a.supp
    p3 = P3.supports["sigma"]
    a = BigObject.formal(p3.base, m(p3.base, "a"))
    hat, ext = eta_pullback_extension(p3, a), extended_support(p3, a)
    assert hat == 0 and ext == m(p3.target, ["bh"])


def test_eta_pullback_extension_needs_pullback(P4):
    sd = P4.supports["sigma"]
    with pytest.raises(ContractError):
        eta_pullback_extension(sd, BigObject.unit(sd.base))


def test_extension_faithful_examples(P1, P2, P3):
    v = is_extension_faithful(P1.supports["sigma"])
    assert not v.holds and v.witness == "x"
    assert v.value.supp == m(P1.spaces["S"], "x")
    assert extended_support(P1.supports["sigma"], v.value) == 0
    v2 = is_extension_faithful(P2.supports["sigma"])
    assert not v2.holds and v2.witness == "a"
    assert is_extension_faithful(P3.supports["sigma"]).holds


def test_extension_faithful_pushforward_always(P4):
    assert is_extension_faithful(P4.supports["sigma"]).holds


def test_extension_faithful_precondition():
    S = FinSpace.from_order("xyz", [("y", "x"), ("z", "x")])
    eta = SpaceMap.from_mapping(FinSpace.discrete(["u"]), S, {"u": "y"})
    with pytest.raises(ContractError):
        is_extension_faithful(SupportDatum.pullback(eta))


@pytest.mark.parametrize("fx", ["P1", "P2", "P3"])
def test_generated_algebra_search_agrees(fx, request):
    sd = request.getfixturevalue(fx).supports["sigma"]
    full = search_zero_extension(sd)
    restricted = search_zero_extension(sd, limit=0)
    assert (full is None) == (restricted is None)
    assert restricted is None or restricted in generated_algebra(sd)


def test_extension_axioms_examples(P1, P4):
    props = {p.name: p for p in check_extension_axioms(P1.supports["sigma"])}
    assert props["extension-agrees-on-compacts"].verdict
    assert all(p.verdict for p in check_extension_axioms(P4.supports["sigma"]))


def test_extension_agreement_fails_for_non_closed_rho():
    S = FinSpace.discrete("ab")
    X = FinSpace.from_order(["x0", "x1"], [("x1", "x0")])
    rho = SpaceMap.from_mapping(S, X, {"a": "x0", "b": "x1"})
    assert not rho.is_closed()
    props = {p.name: p for p in check_extension_axioms(SupportDatum.pushforward(rho))}
    agree = props["extension-agrees-on-compacts"]
    assert not agree.verdict and agree.witness == "{a}"


def test_identities_on_comparative_fixture(P3):
    assert all(p.verdict for p in idempotent_identities_check(P3.supports["sigma"]))


def test_identities_on_balmer(P2):
    bal = SupportDatum.balmer(P2.spaces["S"])
    assert all(p.verdict for p in idempotent_identities_check(bal))


def test_gamma_union_failure_on_P1(P1):
    props = {p.name: p for p in idempotent_identities_check(P1.supports["sigma"])}
    union = props["identity-gamma-union"]
    assert not union.verdict and union.informational
    assert union.witness == ("({yh}, {zh}): phitheta({yh zh}) = {x y z}, "
                             "phitheta({yh}) | phitheta({zh}) = {y z}")


@pytest.mark.parametrize("inst", PULLBACKS[::4] + PUSHES[::25], ids=lambda i: i.describe())
def test_fast_paths_match_generic(inst):
    sd = inst.support
    for v in sd.target.downset_list:
        assert gamma_ideal_support(sd, v) == gamma_ideal_support_generic(sd, v)


@pytest.mark.parametrize("inst", PULLBACKS[::9] + PUSHES[::40], ids=lambda i: i.describe())
def test_extended_support_matches_oracle(inst):
    sd = inst.support
    S, X = sd.base, sd.target
    srel, xrel = oracles.relation(S), oracles.relation(X)
    if inst.kind == "pullback":
        eta = inst.map.as_dict()
        sigma = lambda w: oracles.sigma_pullback(eta, w)  # noqa: E731
    else:
        rho = inst.map.as_dict()
        sigma = lambda w: oracles.sigma_pushforward(xrel, rho, w)  # noqa: E731
    for a in oracles.subsets(S.points):
        want = oracles.extended(S.points, srel, X.points, xrel, sigma, a)
        assert set(X.names_of(extended_mask(sd, S.mask_of(a)))) == want


@pytest.mark.parametrize("inst", PUSHES[::7], ids=lambda i: i.describe())
def test_pushforward_extension_is_image(inst):
    sd = inst.support
    for a in range(1 << sd.base.n):
        assert extended_mask(sd, a) == sd.rho.image(a)
    for x in range(sd.target.n):
        assert gamma_point_support(sd, x) == sd.rho.fibers[x]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([i for i in PULLBACKS if i.support.tensorial and i.support.realizing
                        and i.support.faithful]), st.integers(0, 7))
def test_sigma_hat_inside_sigma_tilde(inst, a):
    sd = inst.support
    a &= sd.base.full
    obj = BigObject.formal(sd.base, a)
    assert eta_pullback_extension(sd, obj) & ~extended_support(sd, obj) == 0


def test_idempotent_spec_validation(P2):
    sd = P2.supports["sigma"]
    with pytest.raises(ContractError):
        IdempotentSpec(GAMMA, sd, m(sd.target, ["bh"]))
    with pytest.raises(InputError):
        IdempotentSpec(POINT, sd, 7)
    assert IdempotentSpec.at_point(sd, "bh").describe() == "gammapt(sigma, bh)"
