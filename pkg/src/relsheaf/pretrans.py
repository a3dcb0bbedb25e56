"""H-indexed families of relations (pre-transformations).

A pre-transformation ``tau: A -> B`` over an algebra H assigns to every pair
``(b, a)`` its fiber ``{h | tau_h(b, a) = 1}``, stored as a bitmask over the
elements of H.  Fibers that are down-sets make the family order-preserving
(mode ``ORD``); principal fibers make it infima-preserving (mode ``INF``),
in which case the family is equivalently an H-valued matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import CarrierMismatch, ModeError
from .heyting import HeytingAlgebra, is_down_closed_mask, is_principal_mask, iter_bits, to_mask
from .relations import FiniteSet, Relation


class Mode(str, enum.Enum):
    ORD = "ord"
    INF = "inf"


@dataclass(frozen=True, eq=False)
class PreTransformation:
    algebra: HeytingAlgebra
    source: FiniteSet
    target: FiniteSet
    fibers: tuple  # fibers[j][i] is the mask for (target.members[j], source.members[i])

    def __post_init__(self):
        fibers = tuple(tuple(row) for row in self.fibers)
        object.__setattr__(self, "fibers", fibers)
        if len(fibers) != len(self.target) or any(len(row) != len(self.source) for row in fibers):
            raise CarrierMismatch("fiber table does not match the carriers")
        full = (1 << self.algebra.n) - 1
        for row in fibers:
            for m in row:
                if m & ~full:
                    raise ValueError("fiber mentions elements outside the algebra")

    @classmethod
    def from_fibers(cls, H: HeytingAlgebra, source: FiniteSet, target: FiniteSet,
                    fibers: Mapping, default: Iterable[int] = ()) -> "PreTransformation":
        """Build from a mapping ``(b, a) -> iterable of elements``."""
        dflt = to_mask(default)
        table = [[dflt] * len(source) for _ in target]
        for (b, a), elems in fibers.items():
            table[target.position(b)][source.position(a)] = to_mask(elems)
        return cls(H, source, target, table)

    def __eq__(self, other):
        if not isinstance(other, PreTransformation):
            return NotImplemented
        return (self.algebra is other.algebra and self.source is other.source
                and self.target is other.target and self.fibers == other.fibers)

    def __hash__(self):
        return hash((id(self.algebra), id(self.source), id(self.target), self.fibers))

    def __repr__(self):
        H = self.algebra
        rows = []
        for j, b in enumerate(self.target):
            for i, a in enumerate(self.source):
                rows.append(f"{b}<-{a}:{{{','.join(H.names[h] for h in iter_bits(self.fibers[j][i]))}}}")
        return f"PreTransformation({self.source.label}->{self.target.label}; {' '.join(rows)})"

    def fiber_mask(self, b, a) -> int:
        return self.fibers[self.target.position(b)][self.source.position(a)]

    def fiber(self, b, a) -> frozenset:
        return frozenset(iter_bits(self.fiber_mask(b, a)))

    def at(self, h: int) -> Relation:
        """The relation tau_h."""
        pairs = frozenset(
            (b, a)
            for j, b in enumerate(self.target)
            for i, a in enumerate(self.source)
            if self.fibers[j][i] >> h & 1
        )
        return Relation(self.source, self.target, pairs)

    @cached_property
    def order_preserving(self) -> bool:
        H = self.algebra
        return all(is_down_closed_mask(H, m) for row in self.fibers for m in row)

    @cached_property
    def infima_preserving(self) -> bool:
        H = self.algebra
        return all(is_principal_mask(H, m) for row in self.fibers for m in row)

    @cached_property
    def entries(self) -> tuple:
        """Matrix entries ``entries[j][i]``; only meaningful when infima-preserving."""
        if not self.infima_preserving:
            raise ModeError("only infima-preserving families have a matrix form")
        H = self.algebra
        return tuple(tuple(H.sup_mask(m) for m in row) for row in self.fibers)

    def is_endo(self) -> bool:
        return self.source is self.target


class Classification(NamedTuple):
    order_preserving: bool
    infima_preserving: bool


def classify(tau: PreTransformation) -> Classification:
    return Classification(tau.order_preserving, tau.infima_preserving)


def has_mode(tau: PreTransformation, mode: Mode) -> bool:
    return tau.order_preserving if mode == Mode.ORD else tau.infima_preserving


def _require(tau: PreTransformation, mode: Mode, what: str) -> None:
    if not has_mode(tau, mode):
        raise ModeError(f"{what} is not {'order' if Mode(mode) is Mode.ORD else 'infima'}-preserving")


def _composable(sigma: PreTransformation, tau: PreTransformation) -> None:
    if sigma.algebra is not tau.algebra:
        raise CarrierMismatch("pre-transformations over different algebras")
    if sigma.source is not tau.target:
        raise CarrierMismatch(f"cannot compose: {sigma.source.label} is not {tau.target.label}")


@dataclass(frozen=True, eq=False)
class FiberMatrix:
    algebra: HeytingAlgebra
    source: FiniteSet
    target: FiniteSet
    entries: tuple  # entries[j][i] in H for (target[j], source[i])

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(r) for r in self.entries))

    def __eq__(self, other):
        if not isinstance(other, FiberMatrix):
            return NotImplemented
        return (self.algebra is other.algebra and self.source is other.source
                and self.target is other.target and self.entries == other.entries)

    def __hash__(self):
        return hash((id(self.algebra), id(self.source), id(self.target), self.entries))

    def __call__(self, b, a) -> int:
        return self.entries[self.target.position(b)][self.source.position(a)]


def to_matrix(tau: PreTransformation) -> FiberMatrix:
    _require(tau, Mode.INF, "pre-transformation")
    return FiberMatrix(tau.algebra, tau.source, tau.target, tau.entries)


def from_matrix(M: FiberMatrix) -> PreTransformation:
    return from_entries(M.algebra, M.source, M.target, M.entries)


def from_entries(H: HeytingAlgebra, source: FiniteSet, target: FiniteSet, entries) -> PreTransformation:
    down = H.down_mask
    return PreTransformation(H, source, target, tuple(tuple(down[e] for e in row) for row in entries))


def compose_ord(sigma: PreTransformation, tau: PreTransformation) -> PreTransformation:
    """Order-preserving composite.  With down-closed fibers it is levelwise."""
    _composable(sigma, tau)
    _require(sigma, Mode.ORD, "left factor")
    _require(tau, Mode.ORD, "right factor")
    nb = len(tau.target)
    rows = []
    for srow in sigma.fibers:
        row = []
        for i in range(len(tau.source)):
            m = 0
            for b in range(nb):
                m |= srow[b] & tau.fibers[b][i]
            row.append(m)
        rows.append(row)
    return PreTransformation(tau.algebra, tau.source, sigma.target, rows)


def compose_inf(sigma: PreTransformation, tau: PreTransformation) -> PreTransformation:
    """Infima-preserving composite, by the matrix formula sup_b S(c,b) /\\ T(b,a)."""
    _composable(sigma, tau)
    _require(sigma, Mode.INF, "left factor")
    _require(tau, Mode.INF, "right factor")
    H = tau.algebra
    meet, join = H._meet, H._join
    S, T = sigma.entries, tau.entries
    nb = len(tau.target)
    rows = []
    for srow in S:
        row = []
        for i in range(len(tau.source)):
            s = H.bottom
            for b in range(nb):
                s = join[s][meet[srow[b]][T[b][i]]]
            row.append(s)
        rows.append(row)
    return from_entries(H, tau.source, sigma.target, rows)


def compose(sigma: PreTransformation, tau: PreTransformation, mode: Mode) -> PreTransformation:
    return compose_ord(sigma, tau) if Mode(mode) is Mode.ORD else compose_inf(sigma, tau)


def involution(tau: PreTransformation) -> PreTransformation:
    cols = [tuple(row[i] for row in tau.fibers) for i in range(len(tau.source))]
    return PreTransformation(tau.algebra, tau.target, tau.source, cols)


def identity(H: HeytingAlgebra, A: FiniteSet, mode: Mode) -> PreTransformation:
    """Identity for composition: diagonal fibers H; off-diagonal empty (ORD) or {bot} (INF)."""
    full = (1 << H.n) - 1
    off = 0 if Mode(mode) is Mode.ORD else H.down_mask[H.bottom]
    n = len(A)
    return PreTransformation(H, A, A, [[full if i == j else off for i in range(n)] for j in range(n)])


def pt_leq(tau: PreTransformation, sigma: PreTransformation) -> bool:
    if tau.algebra is not sigma.algebra or tau.source is not sigma.source or tau.target is not sigma.target:
        raise CarrierMismatch("pre-transformations live in different hom-sets")
    return all(
        m & ~n == 0 for r1, r2 in zip(tau.fibers, sigma.fibers) for m, n in zip(r1, r2)
    )


def inf_completion(tau: PreTransformation) -> PreTransformation:
    """Replace each fiber by the principal down-set of its supremum."""
    _require(tau, Mode.ORD, "pre-transformation")
    H = tau.algebra
    return PreTransformation(
        H, tau.source, tau.target,
        tuple(tuple(H.down_mask[H.sup_mask(m)] for m in row) for row in tau.fibers),
    )


def pt_join(family: Iterable[PreTransformation], mode: Mode, source: FiniteSet,
            target: FiniteSet, H: HeytingAlgebra) -> PreTransformation:
    """Supremum in the hom-set: fiberwise union (ORD) or entrywise join (INF)."""
    rows = [[0] * len(source) for _ in target]
    for tau in family:
        if tau.source is not source or tau.target is not target or tau.algebra is not H:
            raise CarrierMismatch("pre-transformations live in different hom-sets")
        for j, row in enumerate(tau.fibers):
            for i, m in enumerate(row):
                rows[j][i] |= m
    out = PreTransformation(H, source, target, rows)
    if Mode(mode) is Mode.INF:
        out = PreTransformation(H, source, target,
                                tuple(tuple(H.down_mask[H.sup_mask(m)] for m in row) for row in rows))
    return out


def _lax_violation(outer: PreTransformation, inner: PreTransformation, result: PreTransformation):
    """First (l, k, c, a) with outer_l o inner_k (c, a) but not result_{l/\\k}(c, a).

    All three families must have down-closed fibers; then it is enough to
    test the maximal elements of each fiber.
    """
    H = outer.algebra
    meet = H._meet
    top = H.maximal
    ifib = inner.fibers
    for j, orow in enumerate(outer.fibers):
        outer_tops = [top(om) if om else () for om in orow]
        for i, target_mask in enumerate(result.fibers[j]):
            for b, ls in enumerate(outer_tops):
                if not ls:
                    continue
                im = ifib[b][i]
                if not im:
                    continue
                for k in top(im):
                    for l in ls:
                        if not target_mask >> meet[l][k] & 1:
                            return (l, k, outer.target.members[j], inner.source.members[i])
    return None


def rel_object_violation(tau: PreTransformation, mode: Mode):
    """Name of the first failing law for tau as an object, or None if valid."""
    mode = Mode(mode)
    if not tau.is_endo():
        return "endo"
    if not has_mode(tau, mode):
        return "mode"
    if involution(tau) != tau:
        return "symmetry"
    if compose(tau, tau, mode) != tau:
        return "idempotency"
    if _lax_violation(tau, tau, tau) is not None:
        return "lax"
    return None


def is_rel_object(tau: PreTransformation, mode: Mode) -> bool:
    return rel_object_violation(tau, mode) is None


def rel_morphism_violation(theta: PreTransformation, tau: PreTransformation,
                           sigma: PreTransformation, mode: Mode):
    """First failing morphism law for theta: tau -> sigma, or None.

    Laws, in check order: mode, lax-domain, lax-codomain, absorb-domain,
    absorb-codomain, map-total (tau <= theta* theta), map-univalent
    (theta theta* <= sigma).
    """
    mode = Mode(mode)
    if theta.source is not tau.target or theta.target is not sigma.source:
        raise CarrierMismatch("morphism carriers do not match its domain and codomain")
    if not (has_mode(theta, mode) and has_mode(tau, mode) and has_mode(sigma, mode)):
        return "mode"
    if _lax_violation(theta, tau, theta) is not None:
        return "lax-domain"
    if _lax_violation(sigma, theta, theta) is not None:
        return "lax-codomain"
    if compose(theta, tau, mode) != theta:
        return "absorb-domain"
    if compose(sigma, theta, mode) != theta:
        return "absorb-codomain"
    star = involution(theta)
    if not pt_leq(tau, compose(star, theta, mode)):
        return "map-total"
    if not pt_leq(compose(theta, star, mode), sigma):
        return "map-univalent"
    return None


def is_rel_morphism(theta, tau, sigma, mode) -> bool:
    return rel_morphism_violation(theta, tau, sigma, mode) is None


@dataclass(frozen=True, eq=False)
class RelObject:
    """A symmetric idempotent lax family on one carrier (relational (pre)sheaf)."""
    relation: PreTransformation
    mode: Mode

    @property
    def carrier(self) -> FiniteSet:
        return self.relation.source

    @property
    def algebra(self) -> HeytingAlgebra:
        return self.relation.algebra

    def violation(self):
        return rel_object_violation(self.relation, self.mode)

    def entry(self, b, a) -> int:
        return self.relation.entries[self.carrier.position(b)][self.carrier.position(a)]


@dataclass(frozen=True, eq=False)
class RelMorphism:
    domain: RelObject
    codomain: RelObject
    arrow: PreTransformation
    mode: Mode

    def violation(self):
        return rel_morphism_violation(self.arrow, self.domain.relation, self.codomain.relation, self.mode)

    def __eq__(self, other):
        if not isinstance(other, RelMorphism):
            return NotImplemented
        return (self.domain is other.domain and self.codomain is other.codomain
                and self.arrow == other.arrow and self.mode is other.mode)

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), self.arrow))


def identity_morphism(obj: RelObject) -> RelMorphism:
    """In the Karoubi envelope the identity on an object is the object itself."""
    return RelMorphism(obj, obj, obj.relation, obj.mode)


def compose_morphisms(phi: RelMorphism, theta: RelMorphism, mode: Mode | None = None) -> RelMorphism:
    mode = Mode(mode or theta.mode)
    if phi.domain is not theta.codomain:
        raise CarrierMismatch("codomain of the first morphism is not the domain of the second")
    return RelMorphism(theta.domain, phi.codomain, compose(phi.arrow, theta.arrow, mode), mode)
