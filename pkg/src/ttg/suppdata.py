"""Support data on the compact part, modelled through Balmer supports.

A compact object is represented by its Balmer support, a closed subset of
the base space ``S`` (every closed subset is realized in the Noetherian
case).  A support datum is then a function from down-sets of ``S`` to
down-sets of a target space ``X``:

* pullback along a continuous ``eta: X -> S``: ``sigma(W) = eta^-1(W)``;
* pushforward along a continuous surjection ``rho: S -> X``:
  ``sigma(W) = closure(rho(W))``;
* an explicit table, given on principal down-sets and extended by union.

Only the lattice shadow of the support-datum axioms is checkable here: the
triangle axiom has no content once cones are not represented, and is
subsumed by union preservation.  Tensoriality is decided as preservation of
binary intersections of down-sets, which is what the union over the
middle factor collapses to once compacts are replaced by their supports.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Mapping

import numpy as np

from . import kernels
from .errors import ContractError, InputError, NotRepresentableError, TheoremViolation
from .finspace import FinSpace, SpaceMap, bits, popcount
from .report import Property, Verdict, fmt_pair, fmt_set

PULLBACK = "pullback"
PUSHFORWARD = "pushforward"
TABLE = "table"


@dataclass(frozen=True)
class CompactObject:
    """A compact object, known through its Balmer support (a down-set of S)."""

    base: FinSpace
    supp: int

    def __post_init__(self):
        self.base.check_mask(self.supp)
        if not self.base.is_downset(self.supp):
            raise ContractError(f"{fmt_set(self.base, self.supp)} is not closed in the base")

    @classmethod
    def of(cls, base: FinSpace, names) -> "CompactObject":
        return cls(base, base.mask_of(names))

    @classmethod
    def unit(cls, base: FinSpace) -> "CompactObject":
        return cls(base, base.full)

    @classmethod
    def zero(cls, base: FinSpace) -> "CompactObject":
        return cls(base, 0)


@dataclass(frozen=True)
class ThickIdeal:
    """A thick ideal, stored as its Balmer-support union ``phi``."""

    base: FinSpace
    phi: int

    def __post_init__(self):
        if not self.base.is_downset(self.phi):
            raise ContractError("ideal support set must be a down-set")

    def contains(self, a: CompactObject) -> bool:
        return a.supp & ~self.phi == 0

    def members(self) -> frozenset[int]:
        return frozenset(w for w in self.base.downset_list if w & ~self.phi == 0)

    def join(self, other: "ThickIdeal") -> "ThickIdeal":
        return ThickIdeal(self.base, self.phi | other.phi)


class SupportDatum:
    """A support datum ``sigma`` from compacts over ``base`` to closed sets of ``target``."""

    def __init__(self, base: FinSpace, target: FinSpace, kind: str, *,
                 eta: SpaceMap | None = None, rho: SpaceMap | None = None,
                 table: Mapping[int, int] | None = None, name: str | None = None):
        self.base = base
        self.target = target
        self.kind = kind
        self.eta = eta
        self.rho = rho
        self.table = dict(table) if table is not None else None
        self.name = name
        # per-datum memo for derived supports (rickard); values are immutable
        self.memo: dict = {}

    @classmethod
    def pullback(cls, eta: SpaceMap, name: str | None = None) -> "SupportDatum":
        if not eta.is_continuous():
            raise ContractError("pullback map is not continuous")
        return cls(eta.codomain, eta.domain, PULLBACK, eta=eta, name=name)

    @classmethod
    def pushforward(cls, rho: SpaceMap, name: str | None = None) -> "SupportDatum":
        if not rho.is_continuous():
            raise ContractError("pushforward map is not continuous")
        if not rho.is_surjective():
            raise ContractError("pushforward map is not surjective")
        return cls(rho.domain, rho.codomain, PUSHFORWARD, rho=rho, name=name)

    @classmethod
    def balmer(cls, base: FinSpace, name: str | None = None) -> "SupportDatum":
        """``supp^B`` itself: the pullback along the identity."""
        return cls.pullback(SpaceMap.identity(base), name=name)

    @classmethod
    def from_table(cls, base: FinSpace, target: FinSpace, entries: Mapping[int, int],
                   name: str | None = None) -> "SupportDatum":
        """Table support; ``entries`` maps down-set masks of base to down-set masks of target.

        Values on every principal down-set are required; other entries are kept
        as declared and checked against the union extension by ``check_axioms``.
        """
        for w, v in entries.items():
            base.check_mask(w)
            target.check_mask(v)
            if not base.is_downset(w):
                raise InputError(f"table key {fmt_set(base, w)} is not closed")
            if not target.is_downset(v):
                raise InputError(f"table value {fmt_set(target, v)} is not closed")
        for p, b in enumerate(base.below):
            if b not in entries:
                raise InputError(f"table has no value on closure{{{base.points[p]}}}")
        return cls(base, target, TABLE, table=entries, name=name)

    def tabulate(self, name: str | None = None) -> "SupportDatum":
        """Full table over every down-set (a debugging view of any datum)."""
        entries = {w: self.sigma_mask(w) for w in self.base.downset_list}
        return SupportDatum(self.base, self.target, TABLE, table=entries, name=name or self.name)

    # -- evaluation --------------------------------------------------------

    def sigma_mask(self, w: int) -> int:
        if self.kind == PULLBACK:
            return self.eta.preimage(w)
        if self.kind == PUSHFORWARD:
            return self.target.closure_mask(self.rho.image(w))
        if w in self.table:
            return self.table[w]
        out = 0
        for p in bits(w):
            out |= self.table[self.base.below[p]]
        return out

    @cached_property
    def sigma_table(self) -> np.ndarray:
        """``sigma`` on ``base.downsets``, index-aligned."""
        base = self.base
        if self.kind == PULLBACK:
            vals = kernels.union_rows(self._preimage_rows, base.downsets)
        elif self.kind == PUSHFORWARD:
            img_rows = np.array([1 << t for t in self.rho.assign], dtype=np.int64)
            img = kernels.union_rows(img_rows, base.downsets)
            vals = kernels.union_rows(np.asarray(self.target.below, dtype=np.int64), img)
        else:
            vals = np.array([self.sigma_mask(w) for w in base.downset_list], dtype=np.int64)
        vals.setflags(write=False)
        return vals

    @cached_property
    def _preimage_rows(self) -> np.ndarray:
        # bit t of the base maps to the eta-fiber over t
        return np.asarray(self.eta.fibers, dtype=np.int64)

    @cached_property
    def sigma_map(self) -> dict[int, int]:
        return dict(zip(self.base.downset_list, (int(v) for v in self.sigma_table)))

    def __call__(self, a: CompactObject) -> int:
        return sigma_of(self, a)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<SupportDatum{label} {self.kind} {self.base!r} -> {self.target!r}>"

    # -- cached property flags --------------------------------------------

    @cached_property
    def tensorial(self) -> Verdict:
        return _tensorial(self)

    @cached_property
    def faithful(self) -> Verdict:
        return _faithful(self)

    @cached_property
    def realizing(self) -> Verdict:
        return _realizing(self)

    @cached_property
    def eta_map(self) -> SpaceMap:
        return _universal_eta(self)

    @cached_property
    def comparative(self) -> Verdict:
        return _comparative(self)


def sigma_of(sd: SupportDatum, a: CompactObject) -> int:
    """``sigma(a)`` as a mask of the target space."""
    if a.base != sd.base:
        raise InputError("object lives over a different base space")
    return sd.sigma_map[a.supp]


# -- axioms --------------------------------------------------------------

def check_axioms(sd: SupportDatum) -> list[Property]:
    """Exhaustive check of the lattice-level support-datum axioms."""
    S, X = sd.base, sd.target
    ds = S.downset_list
    sig = {w: sd.sigma_mask(w) for w in ds}
    props = []

    unit_ok = sig[S.full] == X.full
    props.append(Property("axiom-unit", unit_ok, None if unit_ok else fmt_set(S, S.full)))
    zero_ok = sig[0] == 0
    props.append(Property("axiom-zero", zero_ok, None if zero_ok else fmt_set(S, 0)))

    bad = next((w for w in ds if not X.is_downset(sig[w]) or sig[w] & ~X.full), None)
    props.append(Property("axiom-closed-values", bad is None,
                          None if bad is None else fmt_set(S, bad)))

    union_bad = tensor_bad = None
    for w1, w2 in combinations(ds, 2):
        if union_bad is None and sig[w1 | w2] != sig[w1] | sig[w2]:
            union_bad = (w1, w2)
        if tensor_bad is None and sig[w1 & w2] & ~(sig[w1] & sig[w2]):
            tensor_bad = (w1, w2)
    props.append(Property("axiom-union", union_bad is None,
                          None if union_bad is None else fmt_pair(S, *union_bad)))
    props.append(Property("axiom-tensor", tensor_bad is None,
                          None if tensor_bad is None else fmt_pair(S, *tensor_bad)))
    return props


def _tensorial(sd):
    ds = sd.base.downset_list
    sig = sd.sigma_map
    for w1, w2 in combinations(ds, 2):
        if sig[w1 & w2] != sig[w1] & sig[w2]:
            return Verdict(False, fmt_pair(sd.base, w1, w2), data={"pair": (w1, w2)})
    return Verdict(True)


def _faithful(sd):
    for w in sd.base.downset_list:
        if w and sd.sigma_map[w] == 0:
            return Verdict(False, fmt_set(sd.base, w), data={"downset": w})
    return Verdict(True)


def _realizing(sd):
    values = set(sd.sigma_map.values())
    for v in sd.target.downset_list:
        if v not in values:
            return Verdict(False, fmt_set(sd.target, v), data={"downset": v})
    return Verdict(True)


def is_tensorial(sd: SupportDatum) -> Verdict:
    """``sigma`` preserves binary intersections; witness is a violating pair."""
    return sd.tensorial


def is_faithful(sd: SupportDatum) -> Verdict:
    return sd.faithful


def is_realizing(sd: SupportDatum) -> Verdict:
    return sd.realizing


def _require_tensorial_realizing(sd, what):
    if not sd.tensorial:
        raise ContractError(f"{what} needs a tensorial support datum")
    if not sd.realizing:
        raise ContractError(f"{what} needs a realizing support datum")


def _universal_eta(sd):
    _require_tensorial_realizing(sd, "universal_eta")
    if sd.kind == PULLBACK:
        return sd.eta
    S, X = sd.base, sd.target
    z_index = {S.z_mask(p): p for p in range(S.n)}
    assign = []
    for x in range(X.n):
        # union of all closed W whose sigma misses x is Z(eta(x))
        missing = 0
        for w, v in sd.sigma_map.items():
            if not v >> x & 1:
                missing |= w
        if missing not in z_index:
            raise NotRepresentableError(
                f"no base point P with Z(P) = {fmt_set(S, missing)} for {X.points[x]!r}")
        assign.append(z_index[missing])
    eta = SpaceMap(X, S, tuple(assign))
    for w, v in sd.sigma_map.items():
        if eta.preimage(w) != v:
            raise NotRepresentableError(
                f"sigma({fmt_set(S, w)}) is not the preimage under the recovered map")
    if not eta.is_continuous():
        raise NotRepresentableError("recovered map is not continuous")
    return eta


def universal_eta(sd: SupportDatum) -> SpaceMap:
    """The unique continuous ``eta: X -> S`` with ``sigma(W) = eta^-1(W)``."""
    return sd.eta_map


def faithful_via_closed_points(sd: SupportDatum) -> bool:
    """Faithfulness read off the image of ``eta``: it must contain every closed point of S."""
    _require_tensorial_realizing(sd, "faithful_via_closed_points")
    eta = sd.eta_map
    return sd.base.closed_points_mask & ~eta.image(sd.target.full) == 0


def _comparative(sd):
    _require_tensorial_realizing(sd, "is_comparative")
    S, X = sd.base, sd.target
    eta = sd.eta_map
    assign = []
    for p in range(S.n):
        pre = eta.preimage(S.below[p])
        gen = X.maximal_mask(pre)
        if popcount(gen) != 1:
            return Verdict(False, S.points[p], data={"point": p, "generic": gen})
        assign.append(gen.bit_length() - 1)
    rho = SpaceMap(S, X, tuple(assign))
    if rho.compose(eta).assign != tuple(range(X.n)):
        raise TheoremViolation("comparison map is not a retraction of eta")
    for p in range(S.n):
        if not S.leq(eta.assign[rho.assign[p]], p):
            raise TheoremViolation(f"eta(rho({S.points[p]})) is not a specialization")
    return Verdict(True, value=rho)


def is_comparative(sd: SupportDatum) -> Verdict:
    """Comparativeness via unique generic points of ``eta^-1(closure{P})``.

    On success ``verdict.value`` is the comparison map ``rho: S -> X``; on
    failure the witness names a base point ``P`` whose preimage closure has
    no unique generic point.
    """
    return sd.comparative


# -- Phi / Theta -----------------------------------------------------------

def theta_members(sd: SupportDatum, v: int) -> frozenset[int]:
    """Compact objects (as Balmer supports) with ``sigma`` inside ``v``."""
    return frozenset(w for w, s in sd.sigma_map.items() if s & ~v == 0)


def phi_theta_mask(sd: SupportDatum, v: int) -> int:
    """``Phi_{supp^B}(Theta_sigma(v))`` by the generic union formula."""
    out = kernels.phi_theta(sd.base.downsets, sd.sigma_table, np.array([v], dtype=np.int64))
    return int(out[0])


def theta(sd: SupportDatum, v: int) -> ThickIdeal:
    if not sd.target.is_downset(v):
        raise ContractError(f"{fmt_set(sd.target, v)} is not closed in the target")
    return ThickIdeal(sd.base, phi_theta_mask(sd, v))


def phi(sd: SupportDatum, ideal: ThickIdeal) -> int:
    """``Phi_sigma(I)``: union of ``sigma`` over the members of ``I``."""
    out = 0
    for w in ideal.members():
        out |= sd.sigma_map[w]
    return out


def galois_check(space: FinSpace) -> Verdict:
    """``Phi o Theta = id`` on down-sets and ``Theta o Phi = id`` on ideals, for ``supp^B``."""
    bal = SupportDatum.balmer(space)
    for w in space.downset_list:
        # Theta by brute force over all compacts, Phi as the union of their supports
        union = 0
        for m in theta_members(bal, w):
            union |= m
        if union != w or phi_theta_mask(bal, w) != w:
            return Verdict(False, fmt_set(space, w), data={"side": "phi-theta", "downset": w})
    for d in space.downset_list:
        ideal = ThickIdeal(space, d)
        if theta_members(bal, phi(bal, ideal)) != ideal.members():
            return Verdict(False, fmt_set(space, d), data={"side": "theta-phi", "downset": d})
    return Verdict(True)


def support_report(sd: SupportDatum, label: str | None = None) -> list[Property]:
    """Axioms plus the tensorial/faithful/realizing/comparative verdicts."""
    label = label if label is not None else sd.name
    props = check_axioms(sd)
    t, f, r = sd.tensorial, sd.faithful, sd.realizing
    props.append(Property("tensorial", t.holds, t.witness))
    props.append(Property("faithful", f.holds, f.witness))
    props.append(Property("realizing", r.holds, r.witness))
    if t and r:
        c = sd.comparative
        props.append(Property("comparative", c.holds, c.witness))
    for p in props:
        p.support = label
    return props
