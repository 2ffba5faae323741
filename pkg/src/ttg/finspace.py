"""Finite spectral spaces as specialization posets.

A finite T0 space is the same thing as a finite poset: ``p <= q`` means
``p`` lies in the closure of ``{q}``.  Closed sets are the down-sets, the
irreducible closed sets are the principal down-sets, and the generic point
of ``closure{q}`` is ``q``.  Finite spaces are Noetherian and sober, so the
usual Noetherian and Zariski-type hypotheses hold without a runtime check,
and Thomason subsets coincide with down-sets.

Point sets are ``int`` bitmasks indexed by position in ``FinSpace.points``.
The public functions at the bottom of the module accept and return point
names; the ``*_mask`` methods are the fast internal surface.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .errors import ContractError, InputError


def bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of ``mask``, in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FinSpace:
    """Immutable finite poset; ``below[i]`` is the mask of ``closure{points[i]}``."""

    points: tuple[str, ...]
    below: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise InputError(f"duplicate point in {self.points}")
        if len(self.below) != len(self.points):
            raise InputError("below table does not match the point list")

    @classmethod
    def from_order(cls, points: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> "FinSpace":
        """Build a space from generating relations ``(a, b)`` meaning ``a <= b``.

        Reflexive and transitive closure is applied; a cycle between distinct
        points violates T0 and raises ``InputError``.
        """
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        if len(index) != len(points):
            raise InputError(f"duplicate point in {points}")
        below = [1 << i for i in range(len(points))]
        for a, b in pairs:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise InputError(f"unknown point {missing!r}")
            below[index[b]] |= 1 << index[a]
        # Warshall on bitmask rows
        for k in range(len(points)):
            for i in range(len(points)):
                if below[i] >> k & 1:
                    below[i] |= below[k]
        for i in range(len(points)):
            for j in bits(below[i]):
                if j != i and below[j] >> i & 1:
                    raise InputError(
                        f"order is not antisymmetric: {points[i]!r} and {points[j]!r}")
        return cls(points, tuple(below))

    @classmethod
    def from_matrix(cls, points: Iterable[str], leq) -> "FinSpace":
        """Build from a boolean matrix with ``leq[i][j]`` meaning ``i <= j``."""
        points = tuple(points)
        pairs = [(points[i], points[j])
                 for i in range(len(points)) for j in range(len(points)) if leq[i][j]]
        return cls.from_order(points, pairs)

    @classmethod
    def discrete(cls, points: Iterable[str]) -> "FinSpace":
        points = tuple(points)
        return cls(points, tuple(1 << i for i in range(len(points))))

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown point {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        if isinstance(names, str):
            names = [names]
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in bits(mask))

    def check_mask(self, mask: int) -> int:
        if mask < 0 or mask & ~self.full:
            raise InputError(f"mask {mask:#x} is not a subset of a {self.n}-point space")
        return mask

    @cached_property
    def above(self) -> tuple[int, ...]:
        up = [0] * self.n
        for i in range(self.n):
            for j in bits(self.below[i]):
                up[j] |= 1 << i
        return tuple(up)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for j in range(self.n):
            for i in bits(self.below[j]):
                m[i, j] = True
        m.setflags(write=False)
        return m

    # -- topology ----------------------------------------------------------

    def closure_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.below[i]
        return out

    def is_downset(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def upclosure_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.above[i]
        return out

    def v_mask(self, i: int) -> int:
        return self.below[i]

    def z_mask(self, i: int) -> int:
        """Points whose closure does not contain point ``i``."""
        return self.full & ~self.above[i]

    @cached_property
    def closed_points_mask(self) -> int:
        return sum(1 << i for i in range(self.n) if self.below[i] == 1 << i)

    def maximal_mask(self, mask: int) -> int:
        return sum(1 << i for i in bits(mask) if self.above[i] & mask == 1 << i)

    @cached_property
    def downsets(self) -> np.ndarray:
        """All down-sets (closed sets) as a sorted ``int64`` array."""
        d = kernels.downset_masks(np.asarray(self.below, dtype=np.int64))
        d.setflags(write=False)
        return d

    @cached_property
    def downset_list(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.downsets)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(q, p)`` with ``p`` an immediate specialization of ``q``."""
        out = []
        for q in range(self.n):
            strict = self.below[q] & ~(1 << q)
            for p in bits(strict):
                between = strict & self.above[p] & ~(1 << p)
                if not between:
                    out.append((q, p))
        return tuple(out)

    def subspace(self, mask: int, names: Iterable[str] | None = None) -> "FinSpace":
        """Induced subposet on ``mask``, optionally renaming its points."""
        idx = list(bits(mask))
        names = tuple(names) if names is not None else tuple(self.points[i] for i in idx)
        pos = {old: new for new, old in enumerate(idx)}
        below = []
        for i in idx:
            b = 0
            for j in bits(self.below[i] & mask):
                b |= 1 << pos[j]
            below.append(b)
        return FinSpace(names, tuple(below))

    def renamed(self, names: Iterable[str]) -> "FinSpace":
        return FinSpace(tuple(names), self.below)

    def order_pairs(self) -> list[tuple[str, str]]:
        """Covering relations as ``(a, b)`` with ``a < b``, in a fixed order."""
        return [(self.points[p], self.points[q]) for q, p in self.covers]

    def __repr__(self):
        rel = ", ".join(f"{a}<{b}" for a, b in self.order_pairs())
        return f"FinSpace({' '.join(self.points)}; {rel})"


@dataclass(frozen=True)
class MapPredicates:
    continuous: bool
    closed: bool
    surjective: bool
    injective: bool


@dataclass(frozen=True)
class SpaceMap:
    """A total function between finite spaces; ``assign[i]`` indexes the codomain."""

    domain: FinSpace
    codomain: FinSpace
    assign: tuple[int, ...]

    def __post_init__(self):
        if len(self.assign) != self.domain.n:
            raise InputError("map is not total on its domain")
        for t in self.assign:
            if not 0 <= t < self.codomain.n:
                raise InputError(f"map value {t} outside the codomain")

    @classmethod
    def from_mapping(cls, domain: FinSpace, codomain: FinSpace,
                     mapping: Mapping[str, str], continuous: bool = True) -> "SpaceMap":
        for key in mapping:
            domain.index(key)
        missing = [p for p in domain.points if p not in mapping]
        if missing:
            raise InputError(f"map is not defined on {', '.join(missing)}")
        f = cls(domain, codomain, tuple(codomain.index(mapping[p]) for p in domain.points))
        if continuous and not f.is_continuous():
            raise ContractError("map not continuous")
        return f

    @classmethod
    def identity(cls, space: FinSpace) -> "SpaceMap":
        return cls(space, space, tuple(range(space.n)))

    def __call__(self, name: str) -> str:
        return self.codomain.points[self.assign[self.domain.index(name)]]

    def as_dict(self) -> dict[str, str]:
        return {p: self.codomain.points[t] for p, t in zip(self.domain.points, self.assign)}

    def image(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.assign[i]
        return out

    def preimage(self, mask: int) -> int:
        out = 0
        for i, t in enumerate(self.assign):
            if mask >> t & 1:
                out |= 1 << i
        return out

    @cached_property
    def fibers(self) -> tuple[int, ...]:
        fib = [0] * self.codomain.n
        for i, t in enumerate(self.assign):
            fib[t] |= 1 << i
        return tuple(fib)

    def compose(self, first: "SpaceMap") -> "SpaceMap":
        """``self after first``."""
        if first.codomain != self.domain:
            raise InputError("maps are not composable")
        return SpaceMap(first.domain, self.codomain, tuple(self.assign[t] for t in first.assign))

    def is_continuous(self) -> bool:
        dom, cod = self.domain, self.codomain
        return all(cod.leq(self.assign[i], self.assign[j])
                   for j in range(dom.n) for i in bits(dom.below[j]))

    def is_closed(self) -> bool:
        # images of principal down-sets suffice: closures are finitely additive
        return all(self.codomain.is_downset(self.image(b)) for b in self.domain.below)

    def is_surjective(self) -> bool:
        return self.image(self.domain.full) == self.codomain.full

    def is_injective(self) -> bool:
        return len(set(self.assign)) == len(self.assign)

    def is_order_embedding(self) -> bool:
        dom, cod = self.domain, self.codomain
        return self.is_injective() and all(
            dom.leq(i, j) == cod.leq(self.assign[i], self.assign[j])
            for i in range(dom.n) for j in range(dom.n))

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_order_embedding()

    def predicates(self) -> MapPredicates:
        return MapPredicates(
            continuous=self.is_continuous(),
            closed=self.is_closed(),
            surjective=self.is_surjective(),
            injective=self.is_injective(),
        )


# -- name-level API ----------------------------------------------------------

def closure(space: FinSpace, subset: Iterable[str]) -> frozenset[str]:
    return frozenset(space.names_of(space.closure_mask(space.mask_of(subset))))


def v_of(space: FinSpace, x: str) -> frozenset[str]:
    return frozenset(space.names_of(space.v_mask(space.index(x))))


def z_of(space: FinSpace, x: str) -> frozenset[str]:
    return frozenset(space.names_of(space.z_mask(space.index(x))))


def closed_points(space: FinSpace) -> frozenset[str]:
    return frozenset(space.names_of(space.closed_points_mask))


def generic_points(space: FinSpace, closed: Iterable[str]) -> frozenset[str]:
    mask = space.mask_of(closed)
    if not space.is_downset(mask):
        raise ContractError(f"{sorted(closed)} is not a closed subset")
    return frozenset(space.names_of(space.maximal_mask(mask)))


def map_predicates(f: SpaceMap) -> MapPredicates:
    return f.predicates()
