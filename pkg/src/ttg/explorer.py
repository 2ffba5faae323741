"""Exhaustive enumeration of small instances and theorem verification.

Finite posets stand in for finite Noetherian spectral spaces (every finite
poset is the specialization poset of some Balmer spectrum), so enumerating
labeled posets and monotone maps enumerates every small situation.

Instances come in three families:

``pullback-injective``
    every poset S, every labeled poset X occurring as an induced subposet
    of S, every injective monotone ``eta: X -> S``;
``pullback-general``
    every S, every labeled X, every monotone ``eta``;
``pushforward-surjective``
    every S, every labeled X with ``|X| <= |S|``, every surjective monotone
    ``rho: S -> X``.

Streams are in size-lexicographic order (base size, then target size), so
the first witness a search reports is size-minimal.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Callable, Iterator

import numpy as np

from . import kernels
from .errors import InputError, ResourceCapError, TheoremViolation
from .finspace import FinSpace, SpaceMap, bits, popcount
from .report import Property, Report, fmt_map, fmt_set
from .rickard import (
    extended_mask, gamma_ideal_support, gamma_ideal_support_generic, gamma_point_support,
    idempotent_identities_check, search_zero_extension,
)
from .suppdata import SupportDatum, check_axioms, faithful_via_closed_points, galois_check

PULLBACK_INJECTIVE = "pullback-injective"
PULLBACK_GENERAL = "pullback-general"
PUSHFORWARD_SURJECTIVE = "pushforward-surjective"
KINDS = (PULLBACK_INJECTIVE, PULLBACK_GENERAL, PUSHFORWARD_SURJECTIVE)

DEFAULT_MAX_BASE = 6
BASE_NAMES = "abcdefghijkl"


def max_base_cap() -> int:
    raw = os.environ.get("TTG_MAX_BASE")
    if not raw:
        return DEFAULT_MAX_BASE
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"TTG_MAX_BASE must be an integer, got {raw!r}") from None


def base_names(n: int) -> tuple[str, ...]:
    return tuple(BASE_NAMES[:n]) if n <= len(BASE_NAMES) else tuple(f"s{i}" for i in range(n))


def target_names(m: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(m))


# -- labeled posets ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _poset_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """``below`` tuples of every labeled poset on ``n`` points.

    Each poset on ``k+1`` points restricts to one on the first ``k``; the new
    point is inserted with a down-set ``D`` beneath it and a disjoint up-set
    ``U`` above it such that everything in ``D`` lies below everything in ``U``.
    """
    if n == 0:
        return ((),)
    out = []
    for below in _poset_rows(n - 1):
        k = n - 1
        sp = FinSpace(base_names(k), below)
        downs = sp.downsets
        ups = (sp.full & ~downs[::-1]).astype(np.int64)
        above = np.asarray(sp.above, dtype=np.int64)
        ds, us = kernels.extension_pairs(downs, ups, above, sp.full)
        new_bit = 1 << k
        for d, u in zip(ds.tolist(), us.tolist()):
            row = list(below)
            for i in bits(u):
                row[i] |= d | new_bit
            row.append(d | new_bit)
            out.append(tuple(row))
    return tuple(out)


def labeled_posets(n: int, names=None) -> list[FinSpace]:
    names = tuple(names) if names is not None else base_names(n)
    return [FinSpace(names, rows) for rows in _poset_rows(n)]


def count_labeled_posets(n: int) -> int:
    return len(_poset_rows(n))


# -- canonical forms ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _min_perms(space: FinSpace) -> tuple[int, np.ndarray]:
    perms = _perms(space.n)
    codes = kernels.perm_codes(space.leq_matrix, perms)
    best = int(codes.min()) if len(codes) else 0
    return best, perms[codes == best]


def canonical_code(space: FinSpace) -> tuple[int, int]:
    """``(n, code)`` where ``code`` is the lexicographically least relation matrix."""
    return space.n, _min_perms(space)[0]


def isomorphic(a: FinSpace, b: FinSpace) -> bool:
    return canonical_code(a) == canonical_code(b)


# -- instances ---------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """A base space, a target space and the map defining a support datum."""

    kind: str  # "pullback" or "pushforward"
    base: FinSpace
    target: FinSpace
    map: SpaceMap

    @cached_property
    def support(self) -> SupportDatum:
        if self.kind == "pullback":
            return SupportDatum.pullback(self.map, name="sigma")
        return SupportDatum.pushforward(self.map, name="sigma")

    def describe(self) -> str:
        def sp(s):
            rel = ", ".join(f"{a}<{b}" for a, b in s.order_pairs())
            return f"{{{' '.join(s.points)}; {rel}}}" if rel else f"{{{' '.join(s.points)}}}"
        label = "eta" if self.kind == "pullback" else "rho"
        return f"S{sp(self.base)} X{sp(self.target)} {label}{{{fmt_map(self.map)}}}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "base": {"points": list(self.base.points),
                     "order": [f"{a}<{b}" for a, b in self.base.order_pairs()]},
            "target": {"points": list(self.target.points),
                       "order": [f"{a}<{b}" for a, b in self.target.order_pairs()]},
            "map": self.map.as_dict(),
        }

    def __getstate__(self):
        # cached support data are rebuilt on the other side of a process boundary
        return {k: v for k, v in self.__dict__.items() if k != "support"}

    def __setstate__(self, state):
        self.__dict__.update(state)


def canonical_instance(inst: Instance) -> tuple:
    """Isomorphism invariant of an instance (complete for instance isomorphism)."""
    sc, sperms = _min_perms(inst.base)
    xc, xperms = _min_perms(inst.target)
    f = inst.map.assign
    best = None
    for ps in sperms.tolist():
        inv_s = {old: new for new, old in enumerate(ps)}
        for px in xperms.tolist():
            inv_x = {old: new for new, old in enumerate(px)}
            if inst.kind == "pullback":
                code = tuple(inv_s[f[px[i]]] for i in range(len(px)))
            else:
                code = tuple(inv_x[f[ps[i]]] for i in range(len(ps)))
            if best is None or code < best:
                best = code
    return inst.kind, (inst.base.n, sc), (inst.target.n, xc), best


def instances_isomorphic(a: Instance, b: Instance) -> bool:
    return canonical_instance(a) == canonical_instance(b)


@dataclass(frozen=True)
class InstanceFamily:
    max_base: int
    max_target: int | None = None
    kind: str = PULLBACK_INJECTIVE
    dedup: str = "labeled"
    min_base: int = 1
    cap: int | None = None  # overrides TTG_MAX_BASE when set

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown instance kind {self.kind!r}")
        if self.dedup not in ("labeled", "iso"):
            raise InputError(f"unknown dedup mode {self.dedup!r}")
        if self.max_base < 1 or (self.max_target is not None and self.max_target < 1):
            raise InputError("size bounds must be at least 1")

    @property
    def target_bound(self) -> int:
        return self.max_base if self.max_target is None else self.max_target


def _check_cap(n: int, cap: int | None = None) -> None:
    cap = max_base_cap() if cap is None else cap
    if n > cap:
        raise ResourceCapError(
            f"base size {n} exceeds the enumeration cap {cap} (set TTG_MAX_BASE to raise it)")


def _instances_for_base(S: FinSpace, kind: str, m: int) -> Iterator[Instance]:
    if kind == PULLBACK_INJECTIVE:
        seen = set()
        targets = []
        for u in range(1, 1 << S.n):
            k = popcount(u)
            if k > m:
                continue
            X = S.subspace(u, target_names(k))
            if X not in seen:
                seen.add(X)
                targets.append(X)
        targets.sort(key=lambda X: X.n)
        for X in targets:
            for row in kernels.monotone_maps(X.leq_matrix, S.leq_matrix, injective=True).tolist():
                yield Instance("pullback", S, X, SpaceMap(X, S, tuple(row)))
    elif kind == PULLBACK_GENERAL:
        for k in range(1, m + 1):
            for X in labeled_posets(k, target_names(k)):
                for row in kernels.monotone_maps(X.leq_matrix, S.leq_matrix).tolist():
                    yield Instance("pullback", S, X, SpaceMap(X, S, tuple(row)))
    else:
        for k in range(1, min(m, S.n) + 1):
            for X in labeled_posets(k, target_names(k)):
                for row in kernels.monotone_maps(S.leq_matrix, X.leq_matrix,
                                                 surjective=True).tolist():
                    yield Instance("pushforward", S, X, SpaceMap(S, X, tuple(row)))


def enumerate_instances(family: InstanceFamily) -> Iterator[Instance]:
    """Stream every instance of ``family`` (one per isomorphism class with ``dedup='iso'``)."""
    _check_cap(family.max_base, family.cap)
    seen = set()
    for n in range(family.min_base, family.max_base + 1):
        for S in labeled_posets(n):
            for inst in _instances_for_base(S, family.kind, family.target_bound):
                if family.dedup == "iso":
                    key = canonical_instance(inst)
                    if key in seen:
                        continue
                    seen.add(key)
                yield inst


def count_instances(family: InstanceFamily) -> int:
    return sum(1 for _ in enumerate_instances(family))


# -- theorem suite -----------------------------------------------------------------

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    anchor: str
    check: Callable[[Instance], tuple[str, str | None]]


@dataclass
class TheoremSuite:
    entries: list[SuiteEntry] = field(default_factory=list)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def subset(self, names) -> "TheoremSuite":
        wanted = set(names)
        unknown = wanted - set(self.names())
        if unknown:
            raise InputError(f"unknown suite entries: {sorted(unknown)}")
        return TheoremSuite([e for e in self.entries if e.name in wanted])


def _ok(cond: bool, witness: str | None = None) -> tuple[str, str | None]:
    return (PASS, None) if cond else (FAIL, witness)


def _applicable_pullback(inst) -> bool:
    sd = inst.support
    return inst.kind == "pullback" and bool(sd.tensorial and sd.realizing and sd.faithful)


def _tensorial_realizing(inst) -> bool:
    sd = inst.support
    return bool(sd.tensorial and sd.realizing)


def _check_pullback_tensorial(inst):
    if inst.kind != "pullback":
        return NA, None
    t = inst.support.tensorial
    return _ok(t.holds, t.witness)


def _check_ind_supp(inst):
    if inst.kind != "pushforward":
        return NA, None
    sd = inst.support
    bad = [p.name for p in check_axioms(sd) if not p.verdict]
    if not sd.faithful:
        bad.append("faithful")
    if not sd.realizing:
        bad.append("realizing")
    return _ok(not bad, ", ".join(bad))


def _check_eta_inj(inst):
    if not _tensorial_realizing(inst):
        return NA, None
    sd = inst.support
    eta = sd.eta_map
    if not eta.is_injective():
        return FAIL, fmt_map(eta)
    # recovery from the bare table must reproduce the same map
    recovered = sd.tabulate().eta_map
    return _ok(recovered.assign == eta.assign and recovered.domain == eta.domain,
               fmt_map(recovered))


def _check_closed_points(inst):
    if not _tensorial_realizing(inst):
        return NA, None
    sd = inst.support
    return _ok(faithful_via_closed_points(sd) == sd.faithful.holds)


def _check_comparative_props(inst):
    if not _tensorial_realizing(inst) or not inst.support.comparative:
        return NA, None
    sd = inst.support
    rho = sd.comparative.value
    if not rho.is_closed():
        return FAIL, "rho not closed"
    for w, v in sd.sigma_map.items():
        if rho.image(w) != v or sd.target.closure_mask(rho.image(w)) != v:
            return FAIL, fmt_set(sd.base, w)
    return _ok(rho.compose(sd.eta_map).assign == tuple(range(sd.target.n)), "rho o eta")


def _check_o2_faithful(inst):
    if not _applicable_pullback(inst):
        return NA, None
    sd = inst.support
    S, X, eta = sd.base, sd.target, sd.eta_map
    for p in range(S.n):
        empty = extended_mask(sd, 1 << p) == 0
        no_generic = popcount(X.maximal_mask(eta.preimage(S.below[p]))) != 1
        if empty != no_generic:
            return FAIL, S.points[p]
    return PASS, None


def _check_tensor_faith_iff(inst):
    if not _applicable_pullback(inst):
        return NA, None
    sd = inst.support
    S, X, eta = sd.base, sd.target, sd.eta_map
    generic = all(popcount(X.maximal_mask(eta.preimage(b))) == 1 for b in S.below)
    comparative = sd.comparative.holds
    search = search_zero_extension(sd) is None
    return _ok(generic == comparative == search,
               f"generic={generic} comparative={comparative} search={search}")


def _check_ext_agrees(inst):
    if not _tensorial_realizing(inst):
        return NA, None
    sd = inst.support
    for w, v in sd.sigma_map.items():
        if extended_mask(sd, w) != v:
            return FAIL, fmt_set(sd.base, w)
    return PASS, None


def _check_sigma_hat(inst):
    # containment needs eta to be the universal map of sigma (realizing);
    # the faithfulness criterion is checked wherever eta is injective
    if inst.kind != "pullback":
        return NA, None
    sd = inst.support
    S, eta = sd.base, sd.eta
    contain = bool(sd.realizing)
    if not contain and not eta.is_injective():
        return NA, None
    hat_faithful = True
    for a in range(1, 1 << S.n):
        hat = eta.preimage(a)
        if contain and hat & ~extended_mask(sd, a):
            return FAIL, fmt_set(S, a)
        if hat == 0:
            hat_faithful = False
    if eta.is_injective() and hat_faithful != eta.is_isomorphism():
        return FAIL, "faithfulness vs isomorphism"
    return PASS, None


def _check_surj_map_faith(inst):
    if inst.kind != "pushforward":
        return NA, None
    sd = inst.support
    S, rho = sd.base, sd.rho
    for a in range(1 << S.n):
        ext = extended_mask(sd, a)
        if ext != rho.image(a):
            return FAIL, fmt_set(S, a)
        if a and not ext:
            return FAIL, fmt_set(S, a)
    agrees = all(extended_mask(sd, w) == v for w, v in sd.sigma_map.items())
    return _ok(agrees == rho.is_closed(), f"agreement={agrees} closed={rho.is_closed()}")


def _check_gamma_paths(inst):
    sd = inst.support
    X = sd.target
    for v in X.downset_list:
        if gamma_ideal_support(sd, v) != gamma_ideal_support_generic(sd, v):
            return FAIL, fmt_set(X, v)
    if inst.kind == "pushforward":
        for x in range(X.n):
            if gamma_point_support(sd, x) != sd.rho.fibers[x]:
                return FAIL, X.points[x]
    return PASS, None


@lru_cache(maxsize=None)
def _galois(space: FinSpace) -> bool:
    return galois_check(space).holds


def _check_class_ideals(inst):
    return _ok(_galois(inst.base), "Phi/Theta")


def _check_identities(inst):
    sd = inst.support
    bad = [p for p in idempotent_identities_check(sd) if not p.verdict and not p.informational]
    return _ok(not bad, "; ".join(f"{p.name} {p.witness}" for p in bad))


def default_suite() -> TheoremSuite:
    return TheoremSuite([
        SuiteEntry("pullback-tensorial", "pullback supports preserve intersections",
                   _check_pullback_tensorial),
        SuiteEntry("pushforward-is-support", "induced support is a faithful realizing datum",
                   _check_ind_supp),
        SuiteEntry("ideal-classification", "Phi and Theta are inverse bijections", _check_class_ideals),
        SuiteEntry("universal-map-injective", "universal map of a realizing datum is injective", _check_eta_inj),
        SuiteEntry("faithful-via-closed-points", "faithful iff image of eta has all closed points",
                   _check_closed_points),
        SuiteEntry("comparison-map-properties", "comparison map is closed and induces sigma",
                   _check_comparative_props),
        SuiteEntry("extension-on-compacts", "extension agrees with sigma on compacts",
                   _check_ext_agrees),
        SuiteEntry("generic-point-criterion", "Gamma_P 1 invisible iff no unique generic point",
                   _check_o2_faithful),
        SuiteEntry("faithful-iff-comparative", "extension faithful iff comparative",
                   _check_tensor_faith_iff),
        SuiteEntry("eta-preimage-extension", "eta-preimage extension sits inside sigma~",
                   _check_sigma_hat),
        SuiteEntry("pushforward-extension", "sigma~ = rho o Supp, extension iff rho closed",
                   _check_surj_map_faith),
        SuiteEntry("gamma-paths", "fast idempotent supports match the generic formula",
                   _check_gamma_paths),
        SuiteEntry("idempotent-identities", "Rickard identities at the support level",
                   _check_identities),
    ])


@dataclass
class SuiteResult:
    """Per-entry outcome of a suite run on one instance."""

    instance: Instance
    outcomes: list[tuple[str, str, str | None]]

    @property
    def failures(self):
        return [o for o in self.outcomes if o[1] == FAIL]


def run_suite(suite: TheoremSuite, instance: Instance) -> SuiteResult:
    """Run every entry; an exception inside a check counts as a failure."""
    outcomes = []
    for entry in suite.entries:
        try:
            status, witness = entry.check(instance)
        except TheoremViolation as exc:
            status, witness = FAIL, str(exc)
        outcomes.append((entry.name, status, witness))
    return SuiteResult(instance, outcomes)


def suite_report(result: SuiteResult) -> Report:
    rep = Report(instance=result.instance.to_json())
    for name, status, witness in result.outcomes:
        if status == NA:
            continue
        rep.add(Property(name, status == PASS, witness))
    return rep


@dataclass
class FamilySummary:
    """Associative-commutative aggregate of suite results over a family."""

    instances: int = 0
    applicable: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    first_failure: dict = field(default_factory=dict)

    def add(self, result: SuiteResult, order: tuple) -> None:
        self.instances += 1
        for name, status, witness in result.outcomes:
            self.applicable.setdefault(name, 0)
            self.failures.setdefault(name, 0)
            if status == NA:
                continue
            self.applicable[name] += 1
            if status == FAIL:
                self.failures[name] += 1
                prev = self.first_failure.get(name)
                entry = (order, f"{result.instance.describe()}: {witness}")
                if prev is None or entry[0] < prev[0]:
                    self.first_failure[name] = entry

    def merge(self, other: "FamilySummary") -> "FamilySummary":
        out = FamilySummary(self.instances + other.instances)
        for name in set(self.applicable) | set(other.applicable):
            out.applicable[name] = self.applicable.get(name, 0) + other.applicable.get(name, 0)
            out.failures[name] = self.failures.get(name, 0) + other.failures.get(name, 0)
        for src in (self.first_failure, other.first_failure):
            for name, entry in src.items():
                prev = out.first_failure.get(name)
                if prev is None or entry[0] < prev[0]:
                    out.first_failure[name] = entry
        return out

    @property
    def violations(self) -> int:
        return sum(self.failures.values())

    def to_report(self, names, family: InstanceFamily) -> Report:
        rep = Report(instance={"family": family.kind, "max_base": family.max_base,
                               "max_target": family.target_bound, "dedup": family.dedup})
        for name in names:
            fail = self.failures.get(name, 0)
            witness = self.first_failure[name][1] if fail else None
            rep.add(Property(name, fail == 0, witness))
        rep.computations.append({"instances": self.instances})
        for name in names:
            rep.computations.append({"entry": name,
                                     "applicable": self.applicable.get(name, 0),
                                     "violations": self.failures.get(name, 0)})
        return rep


def _run_chunk(args) -> FamilySummary:
    family, base_index, suite_names = args
    suite = default_suite().subset(suite_names)
    summary = FamilySummary()
    n, i = base_index
    S = labeled_posets(n)[i]
    for j, inst in enumerate(_instances_for_base(S, family.kind, family.target_bound)):
        summary.add(run_suite(suite, inst), (n, i, j))
    return summary


def run_family(family: InstanceFamily, suite: TheoremSuite | None = None,
               workers: int = 1, progress: Callable[[str], None] | None = None) -> FamilySummary:
    """Run ``suite`` over every labeled instance of ``family``.

    Work is split per base poset; ``workers > 1`` fans chunks out to a process
    pool.  Aggregation is order-independent so results do not depend on the
    worker count.
    """
    if family.dedup != "labeled":
        raise InputError("suite runs use the labeled enumeration")
    _check_cap(family.max_base, family.cap)
    suite = suite or default_suite()
    names = suite.names()
    jobs = [(family, (n, i), names)
            for n in range(family.min_base, family.max_base + 1)
            for i in range(count_labeled_posets(n))]
    total = FamilySummary()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for k, part in enumerate(pool.map(_run_chunk, jobs, chunksize=8)):
                total = total.merge(part)
                if progress and k % 50 == 0:
                    progress(f"{k + 1}/{len(jobs)} base spaces")
    else:
        for k, job in enumerate(jobs):
            total = total.merge(_run_chunk(job))
            if progress and k % 50 == 0:
                progress(f"{k + 1}/{len(jobs)} base spaces")
    return total


# -- counterexample search -------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    instance: Instance
    detail: str

    def to_json(self) -> dict:
        return {"instance": self.instance.to_json(), "detail": self.detail}


def _pred_non_faithful_extension(inst):
    if not _applicable_pullback(inst):
        return None
    comp = inst.support.comparative
    return None if comp else f"P = {comp.witness}"


def _pred_non_tensorial_pushforward(inst):
    t = inst.support.tensorial
    return None if t else f"pair {t.witness}"


def _pred_non_closed_rho(inst):
    sd = inst.support
    rho = sd.rho
    for w in sd.base.downset_list:
        img = rho.image(w)
        if sd.target.closure_mask(img) != img:
            return (f"rho({fmt_set(sd.base, w)}) = {fmt_set(sd.target, img)} "
                    f"is not closed; sigma~ misses {fmt_set(sd.target, sd.target.closure_mask(img) & ~img)}")
    return None


def _pred_comparative_nonfaithful(inst):
    if not _applicable_pullback(inst) or not inst.support.comparative:
        return None
    found = search_zero_extension(inst.support)
    return None if found is None else f"zero sigma~ on {fmt_set(inst.base, found)}"


def _pred_strict_hat(inst):
    if inst.kind != "pullback" or not inst.support.realizing:
        return None
    sd = inst.support
    for a in range(1, 1 << sd.base.n):
        hat = sd.eta_map.preimage(a)
        ext = extended_mask(sd, a)
        if hat != ext:
            return (f"A = {fmt_set(sd.base, a)}: sigma^ = {fmt_set(sd.target, hat)}, "
                    f"sigma~ = {fmt_set(sd.target, ext)}")
    return None


# name -> (instance kind, predicate, expected empty)
PREDICATES: dict[str, tuple[str, Callable, bool]] = {
    "non-faithful-extension": (PULLBACK_INJECTIVE, _pred_non_faithful_extension, False),
    "non-tensorial-pushforward": (PUSHFORWARD_SURJECTIVE, _pred_non_tensorial_pushforward, False),
    "non-closed-rho": (PUSHFORWARD_SURJECTIVE, _pred_non_closed_rho, False),
    "comparative-but-nonfaithful-extension": (PULLBACK_INJECTIVE, _pred_comparative_nonfaithful, True),
    "strict-sigma-hat-containment": (PULLBACK_INJECTIVE, _pred_strict_hat, False),
}


def search_counterexamples(predicate: str, family: InstanceFamily,
                           limit: int | None = None) -> list[Witness]:
    """Witnesses of ``predicate`` in enumeration order (the first is size-minimal).

    The predicate fixes the instance kind; ``family`` supplies the bounds and
    dedup mode.  A witness for an expected-empty predicate raises
    ``TheoremViolation``.
    """
    if predicate not in PREDICATES:
        raise InputError(f"unknown predicate {predicate!r}; known: {', '.join(PREDICATES)}")
    kind, test, expect_empty = PREDICATES[predicate]
    fam = InstanceFamily(family.max_base, family.max_target, kind, family.dedup,
                         family.min_base, family.cap)
    out = []
    for inst in enumerate_instances(fam):
        detail = test(inst)
        if detail is None:
            continue
        if expect_empty:
            raise TheoremViolation(f"{predicate} has a witness: {inst.describe()}: {detail}")
        out.append(Witness(inst, detail))
        if limit is not None and len(out) >= limit:
            break
    return out
