"""Rickard idempotents and extended supports, at the level of Balmer supports.

Big objects are recorded only through their extended Balmer support, an
arbitrary subset of the base space; zero detection is "support empty",
which is faithful on a Noetherian base.  The supports of the idempotents
are exact:

* ``Gamma_V 1`` has support ``Phi(Theta(V))`` and ``L_V 1`` its complement;
* ``Gamma_x 1 = Gamma_{V(x)} 1 (x) L_{Z(x)} 1`` has support
  ``Phi Theta V(x) minus Phi Theta Z(x)``;
* tensoring with an idempotent intersects supports.

No tensor of two arbitrary big objects is offered: only the orbit union
``tensor_orbit`` has a proven value in the non-symmetric setting.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from .errors import ContractError, InputError, TheoremViolation
from .finspace import FinSpace, bits
from .report import Property, Verdict, fmt_pair, fmt_set
from .suppdata import PULLBACK, PUSHFORWARD, CompactObject, SupportDatum

GAMMA = "gamma"
LOCAL = "l"
POINT = "gammapt"

#: exhaustive big-object search runs over all subsets of S up to this size
SEARCH_LIMIT = 12


@dataclass(frozen=True)
class IdempotentSpec:
    """``Gamma_V``, ``L_V`` (for a down-set ``V`` of X) or the point idempotent ``Gamma_x``."""

    flavor: str
    sd: SupportDatum
    scope: int

    def __post_init__(self):
        X = self.sd.target
        if self.flavor == POINT:
            if not 0 <= self.scope < X.n:
                raise InputError(f"point index {self.scope} outside the target")
        elif self.flavor in (GAMMA, LOCAL):
            X.check_mask(self.scope)
            if not X.is_downset(self.scope):
                raise ContractError(f"{fmt_set(X, self.scope)} is not specialization-closed")
        else:
            raise InputError(f"unknown idempotent flavor {self.flavor!r}")

    @classmethod
    def gamma(cls, sd, names) -> "IdempotentSpec":
        return cls(GAMMA, sd, sd.target.mask_of(names))

    @classmethod
    def local(cls, sd, names) -> "IdempotentSpec":
        return cls(LOCAL, sd, sd.target.mask_of(names))

    @classmethod
    def at_point(cls, sd, name) -> "IdempotentSpec":
        return cls(POINT, sd, sd.target.index(name))

    def support(self) -> int:
        """Extended Balmer support of the idempotent applied to the unit."""
        if self.flavor == GAMMA:
            return gamma_ideal_support(self.sd, self.scope)
        if self.flavor == LOCAL:
            return l_ideal_support(self.sd, self.scope)
        return _point_supports(self.sd)[self.scope]

    def describe(self) -> str:
        X = self.sd.target
        label = self.sd.name or "sigma"
        if self.flavor == POINT:
            return f"gammapt({label}, {X.points[self.scope]})"
        return f"{self.flavor}({label}, {fmt_set(X, self.scope)})"


@dataclass(frozen=True)
class BigObject:
    """An object of the big category, known through its extended Balmer support."""

    base: FinSpace
    supp: int
    expr: tuple

    def __post_init__(self):
        self.base.check_mask(self.supp)

    @classmethod
    def compact(cls, base: FinSpace, mask: int) -> "BigObject":
        a = CompactObject(base, mask)
        return cls(base, a.supp, ("compact", fmt_set(base, mask)))

    @classmethod
    def from_compact(cls, a: CompactObject) -> "BigObject":
        return cls.compact(a.base, a.supp)

    @classmethod
    def unit(cls, base: FinSpace) -> "BigObject":
        return cls.compact(base, base.full)

    @classmethod
    def formal(cls, base: FinSpace, mask: int) -> "BigObject":
        """A big object with prescribed support (used by exhaustive searches)."""
        return cls(base, mask, ("formal", fmt_set(base, mask)))

    @property
    def is_zero(self) -> bool:
        return self.supp == 0

    def __add__(self, other: "BigObject") -> "BigObject":
        return direct_sum(self, other)

    def describe(self) -> str:
        return _describe(self.expr)


def _describe(expr) -> str:
    tag = expr[0]
    if tag in ("compact", "formal"):
        return f"{tag} {expr[1]}"
    if tag == "sum":
        return f"sum({_describe(expr[1])}, {_describe(expr[2])})"
    return f"{expr[2]} * ({_describe(expr[1])})"


def direct_sum(a: BigObject, b: BigObject) -> BigObject:
    if a.base != b.base:
        raise InputError("objects live over different base spaces")
    return BigObject(a.base, a.supp | b.supp, ("sum", a.expr, b.expr))


def tensor_idem(a: BigObject, i: IdempotentSpec) -> BigObject:
    """``a (x) idempotent``: support is the exact intersection."""
    if a.base != i.sd.base:
        raise InputError("object and idempotent live over different base spaces")
    return BigObject(a.base, a.supp & i.support(), ("tensor", a.expr, i.describe()))


def tensor_orbit(a: BigObject, c: CompactObject) -> int:
    """Union over compacts ``B`` of ``Supp(a (x) B (x) c)``.

    This is the orbit value, not the support of one tensor product.
    """
    if a.base != c.base:
        raise InputError("objects live over different base spaces")
    return a.supp & c.supp


# -- idempotent supports ---------------------------------------------------------

def _check_target_downset(sd, v):
    sd.target.check_mask(v)
    if not sd.target.is_downset(v):
        raise ContractError(f"{fmt_set(sd.target, v)} is not closed in the target")


def gamma_ideal_support_generic(sd: SupportDatum, v: int) -> int:
    """Union of all closed ``W`` of S with ``sigma(W)`` inside ``v``."""
    _check_target_downset(sd, v)
    out = kernels.phi_theta(sd.base.downsets, sd.sigma_table, np.array([v], dtype=np.int64))
    return int(out[0])


def gamma_ideal_support(sd: SupportDatum, v: int) -> int:
    """Support of ``Gamma_v 1``; pullback and pushforward data take a direct formula."""
    key = ("gamma", v)
    hit = sd.memo.get(key)
    if hit is not None:
        return hit
    _check_target_downset(sd, v)
    S = sd.base
    if sd.kind == PULLBACK:
        out = 0
        for r in range(S.n):
            if sd.eta.preimage(S.below[r]) & ~v == 0:
                out |= 1 << r
    elif sd.kind == PUSHFORWARD:
        out = sd.rho.preimage(v)
    else:
        out = gamma_ideal_support_generic(sd, v)
    sd.memo[key] = out
    return out


def l_ideal_support(sd: SupportDatum, v: int) -> int:
    return sd.base.full & ~gamma_ideal_support(sd, v)


def _point_supports(sd: SupportDatum) -> tuple[int, ...]:
    hit = sd.memo.get("points")
    if hit is None:
        X = sd.target
        hit = tuple(gamma_ideal_support(sd, X.v_mask(x)) & ~gamma_ideal_support(sd, X.z_mask(x))
                    for x in range(X.n))
        sd.memo["points"] = hit
    return hit


def gamma_point_support(sd: SupportDatum, x) -> int:
    """Support of ``Gamma_x 1``; ``x`` is a point name or index of the target."""
    idx = sd.target.index(x) if isinstance(x, str) else x
    if not 0 <= idx < sd.target.n:
        raise InputError(f"unknown point {x!r}")
    return _point_supports(sd)[idx]


# -- extended supports -----------------------------------------------------------

def extended_mask(sd: SupportDatum, supp: int) -> int:
    """``sigma~`` of a big object given by its support mask."""
    out = 0
    for x, g in enumerate(_point_supports(sd)):
        if g & supp:
            out |= 1 << x
    return out


def extended_support(sd: SupportDatum, a: BigObject) -> int:
    """``{x : Gamma_x a != 0}`` as a mask of the target."""
    if a.base != sd.base:
        raise InputError("object lives over a different base space")
    return extended_mask(sd, a.supp)


def eta_pullback_extension(sd: SupportDatum, a: BigObject) -> int:
    """``sigma^(a) = eta^-1(Supp(a))``, the second extension of a pullback support."""
    if sd.kind != PULLBACK:
        raise ContractError("eta_pullback_extension needs a pullback support")
    if a.base != sd.base:
        raise InputError("object lives over a different base space")
    return sd.eta.preimage(a.supp)


def search_zero_extension(sd: SupportDatum, limit: int = SEARCH_LIMIT) -> int | None:
    """Direct search for a nonzero big object with empty ``sigma~``.

    Runs over every subset of S when ``|S| <= limit`` and otherwise over the
    algebra generated by compacts and the idempotents of ``sd``.  Returns the
    support of the first witness in increasing mask order, or ``None``.
    """
    S = sd.base
    candidates = range(1, 1 << S.n) if S.n <= limit else sorted(generated_algebra(sd))
    for a in candidates:
        if a and extended_mask(sd, a) == 0:
            return a
    return None


def is_extension_faithful(sd: SupportDatum, limit: int = SEARCH_LIMIT) -> Verdict:
    """Decide faithfulness of ``sigma~`` and cross-check against a direct search.

    Pushforward data always have a faithful extension.  Otherwise the datum
    must be tensorial, realizing and faithful, and the answer is its
    comparativeness; on failure the witness is a base point ``P`` and
    ``value`` is the nonzero object ``Gamma_P 1`` (for ``supp^B``) whose
    extended support is empty.
    """
    S = sd.base
    if sd.kind == PUSHFORWARD:
        criterion = Verdict(True)
    else:
        if not (sd.tensorial and sd.realizing and sd.faithful):
            raise ContractError("extension faithfulness needs a tensorial, realizing, faithful datum")
        comp = sd.comparative
        if comp:
            criterion = Verdict(True)
        else:
            p = comp.data["point"]
            balmer = SupportDatum.balmer(S, name="suppB")
            obj = tensor_idem(BigObject.unit(S), IdempotentSpec(POINT, balmer, p))
            if obj.supp != 1 << p:
                raise TheoremViolation("Gamma_P 1 does not have support {P}")
            if extended_support(sd, obj) != 0:
                raise TheoremViolation(f"Gamma_{S.points[p]} 1 has nonempty extended support")
            criterion = Verdict(False, S.points[p], value=obj, data={"point": p})
    found = search_zero_extension(sd, limit)
    if (found is None) != criterion.holds:
        raise TheoremViolation(
            f"criterion says {criterion.holds} but direct search found {found!r}")
    criterion.data["search"] = found
    return criterion


# -- generated algebra -------------------------------------------------------------

def idempotent_specs(sd: SupportDatum) -> list[IdempotentSpec]:
    X = sd.target
    specs = [IdempotentSpec(GAMMA, sd, v) for v in X.downset_list]
    specs += [IdempotentSpec(LOCAL, sd, v) for v in X.downset_list]
    specs += [IdempotentSpec(POINT, sd, x) for x in range(X.n)]
    return specs


def generated_algebra(sd: SupportDatum, cap: int = 1 << 16) -> frozenset[int]:
    """Supports reachable from compacts by sums and tensoring with idempotents of ``sd``."""
    idem = {i.support() for i in idempotent_specs(sd)}
    found = set(sd.base.downset_list)
    frontier = list(found)
    while frontier:
        new = set()
        for a in frontier:
            for s in idem:
                new.add(a & s)
            for b in found:
                new.add(a | b)
        new -= found
        found |= new
        if len(found) > cap:
            raise ContractError(f"generated algebra exceeds {cap} elements")
        frontier = list(new)
    return frozenset(found)


def check_extension_axioms(sd: SupportDatum) -> list[Property]:
    """Agreement with ``sigma`` on compacts, additivity and idempotent sub-multiplicativity."""
    S = sd.base
    agree_bad = None
    for w in S.downset_list:
        if extended_mask(sd, w) != sd.sigma_map[w]:
            agree_bad = w
            break
    props = [Property("extension-agrees-on-compacts", agree_bad is None,
                      None if agree_bad is None else fmt_set(S, agree_bad))]
    algebra = sorted(generated_algebra(sd))
    ext = {a: extended_mask(sd, a) for a in algebra}
    add_bad = None
    for a, b in combinations(algebra, 2):
        if extended_mask(sd, a | b) != ext[a] | ext[b]:
            add_bad = (a, b)
            break
    props.append(Property("extension-additive", add_bad is None,
                          None if add_bad is None else fmt_pair(S, *add_bad)))
    mult_bad = None
    for spec in idempotent_specs(sd):
        s = spec.support()
        es = extended_mask(sd, s)
        for a in algebra:
            if extended_mask(sd, a & s) & ~(ext[a] & es):
                mult_bad = f"{fmt_set(S, a)} * {spec.describe()}"
                break
        if mult_bad:
            break
    props.append(Property("extension-tensor-idempotent", mult_bad is None, mult_bad))
    return props


def _is_comparative(sd) -> bool:
    return bool(sd.tensorial and sd.realizing and sd.comparative)


def idempotent_identities_check(sd: SupportDatum) -> list[Property]:
    """Support-level identities between Rickard idempotents.

    Orthogonality and monotonicity hold for every datum.  The union,
    ``Y minus Z`` locality and support-locality identities are proven only
    for comparative data; elsewhere their failures are recorded as
    informational entries.
    """
    S, X = sd.base, sd.target
    ds = X.downset_list
    gam = {v: gamma_ideal_support(sd, v) for v in ds}
    loc = {v: S.full & ~gam[v] for v in ds}
    props = []

    bad = next((v for v in ds if gam[v] & loc[v]), None)
    props.append(Property("identity-gamma-l-orthogonal", bad is None,
                          None if bad is None else fmt_set(X, bad)))
    mono_bad = anti_bad = None
    for v in ds:
        for w in ds:
            if v & ~w:
                continue
            if mono_bad is None and gam[v] & ~gam[w]:
                mono_bad = (v, w)
            if anti_bad is None and loc[w] & ~loc[v]:
                anti_bad = (v, w)
    props.append(Property("identity-gamma-monotone", mono_bad is None,
                          None if mono_bad is None else fmt_pair(X, *mono_bad)))
    props.append(Property("identity-l-antitone", anti_bad is None,
                          None if anti_bad is None else fmt_pair(X, *anti_bad)))

    informational = not _is_comparative(sd)

    union_bad = None
    for v, w in combinations(ds, 2):
        if gam[v | w] != gam[v] | gam[w]:
            union_bad = (f"{fmt_pair(X, v, w)}: phitheta({fmt_set(X, v | w)}) = "
                         f"{fmt_set(S, gam[v | w])}, phitheta({fmt_set(X, v)}) | "
                         f"phitheta({fmt_set(X, w)}) = {fmt_set(S, gam[v] | gam[w])}")
            break
    props.append(Property("identity-gamma-union", union_bad is None, union_bad,
                          informational=informational and union_bad is not None))

    seen: dict[int, tuple[int, int, int]] = {}
    local_bad = None
    for y in ds:
        for z in ds:
            key = y & ~z
            val = gam[y] & loc[z]
            if key not in seen:
                seen[key] = (y, z, val)
            elif seen[key][2] != val:
                y0, z0, _ = seen[key]
                local_bad = f"{fmt_pair(X, y0, z0)} vs {fmt_pair(X, y, z)}"
                break
        if local_bad:
            break
    props.append(Property("identity-l-gamma-local", local_bad is None, local_bad,
                          informational=informational and local_bad is not None))

    support_bad = None
    if S.n <= SEARCH_LIMIT:
        sig = sd.sigma_map
        for a in range(1 << S.n):
            ea = extended_mask(sd, a)
            for w in S.downset_list:
                if a & ~w == 0 and ea & ~sig[w]:
                    support_bad = fmt_pair(S, a, w)
                    break
            if support_bad:
                break
    props.append(Property("identity-support-local", support_bad is None, support_bad,
                          informational=informational and support_bad is not None))
    return props
