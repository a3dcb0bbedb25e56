"""Singleton morphisms into an infima-preserving relational object.

A singleton at level h is a symmetric map from the one-point object with
entry h into F.  It is stored in normal form as its extent: the function
sending each carrier member x to the entry alpha(x) of its matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .._memo import memoized
from ..errors import LawViolation, ModeError, OrderError
from ..heyting import HeytingAlgebra
from ..pretrans import (Mode, PreTransformation, RelMorphism, RelObject, compose_inf, from_entries,
                        involution, rel_morphism_violation)
from ..relations import FiniteSet

POINT = FiniteSet("*", ("*",))


def point_object(H: HeytingAlgebra, h: int) -> RelObject:
    """The one-point object whose only entry is h."""
    return memoized(H, ("point", h), lambda: RelObject(from_entries(H, POINT, POINT, [[h]]), Mode.INF))


@dataclass(frozen=True)
class SingletonMorphism:
    target: RelObject
    level: int
    extent: tuple  # extent[i] = alpha(carrier.members[i])

    def value(self, x) -> int:
        return self.extent[self.target.carrier.position(x)]

    @property
    def arrow(self) -> PreTransformation:
        H = self.target.algebra
        return from_entries(H, POINT, self.target.carrier, [[v] for v in self.extent])

    def as_morphism(self) -> RelMorphism:
        return RelMorphism(point_object(self.target.algebra, self.level), self.target, self.arrow, Mode.INF)

    def describe(self) -> str:
        H = self.target.algebra
        body = ",".join(f"{x}:{H.names[v]}" for x, v in zip(self.target.carrier, self.extent))
        return f"<{H.names[self.level]}|{body}>"


def _require_inf(F: RelObject) -> None:
    if Mode(F.mode) is not Mode.INF:
        raise ModeError("singletons are defined for infima-preserving objects")


def singleton_violation(F: RelObject, h: int, extent) -> str | None:
    """Name the first failing singleton condition for an extent, or None."""
    H = F.algebra
    E = F.relation.entries
    n = len(F.carrier)
    if len(extent) != n:
        return "extent length differs from the carrier"
    meet, leq = H._meet, H._leq
    for i, v in enumerate(extent):
        if not leq[v][meet[h][E[i][i]]]:
            return f"value at {F.carrier.members[i]} exceeds the level or the diagonal"
    for i in range(n):
        for j in range(n):
            if not leq[meet[E[j][i]][extent[i]]][extent[j]]:
                return f"not closed: {F.carrier.members[i]} -> {F.carrier.members[j]}"
            if not leq[meet[extent[i]][extent[j]]][E[i][j]]:
                return f"not univalent at {F.carrier.members[i]}, {F.carrier.members[j]}"
    if H.sup(extent) != h:
        return "extent does not join to the level"
    return None


def make_singleton(F: RelObject, h: int, extent) -> SingletonMorphism:
    problem = singleton_violation(F, h, tuple(extent))
    if problem is not None:
        raise LawViolation(f"not a singleton at {F.algebra.names[h]}: {problem}")
    return SingletonMorphism(F, h, tuple(extent))


def enumerate_singletons(F: RelObject, h: int) -> list[SingletonMorphism]:
    """All singletons at level h, in lexicographic order of extents."""
    _require_inf(F)
    H = F.algebra
    E = F.relation.entries
    meet, join, leq = H._meet, H._join, H._leq
    n = len(F.carrier)
    caps = [meet[h][E[i][i]] for i in range(n)]
    reach = [H.bottom] * (n + 1)
    for i in range(n - 1, -1, -1):
        reach[i] = join[reach[i + 1]][caps[i]]
    out = []
    values = [0] * n

    def extend(i, acc):
        if not leq[h][join[acc][reach[i]]]:
            return
        if i == n:
            out.append(SingletonMorphism(F, h, tuple(values)))
            return
        for v in H.below(caps[i]):
            ok = True
            for j in range(i):
                w = values[j]
                if not (leq[meet[E[i][j]][w]][v] and leq[meet[E[j][i]][v]][w] and leq[meet[v][w]][E[i][j]]):
                    ok = False
                    break
            if ok:
                values[i] = v
                extend(i + 1, join[acc][v])

    extend(0, H.bottom)
    return out


def singletons_by_definition(F: RelObject, h: int) -> list[SingletonMorphism]:
    """Brute force: every H-valued column that is a symmetric map from the point object."""
    H = F.algebra
    point = point_object(H, h)
    out = []
    for extent in product(H.elements, repeat=len(F.carrier)):
        arrow = from_entries(H, POINT, F.carrier, [[v] for v in extent])
        if rel_morphism_violation(arrow, point.relation, F.relation, Mode.INF) is None:
            out.append(SingletonMorphism(F, h, tuple(extent)))
    return out


def restrict_singleton(alpha: SingletonMorphism, k: int) -> SingletonMorphism:
    H = alpha.target.algebra
    if not H.leq(k, alpha.level):
        raise OrderError(f"cannot restrict from {H.names[alpha.level]} to {H.names[k]}")
    meet = H._meet
    return SingletonMorphism(alpha.target, k, tuple(meet[v][k] for v in alpha.extent))


def representable_singleton(F: RelObject, x) -> SingletonMorphism:
    """y -> F(y, x), at the level F(x, x)."""
    i = F.carrier.position(x)
    E = F.relation.entries
    return SingletonMorphism(F, E[i][i], tuple(row[i] for row in E))


class Agreement(NamedTuple):
    restrictions_equal: bool
    composite_holds: bool
    closed_form: bool


def singleton_agreement(alpha: SingletonMorphism, beta: SingletonMorphism, l: int) -> Agreement:
    """Compare equality of restrictions to l with the converse composite of the two singletons at l."""
    if alpha.target is not beta.target:
        raise ValueError("singletons into different objects")
    H = alpha.target.algebra
    if H.leq(l, alpha.level) and H.leq(l, beta.level):
        equal = restrict_singleton(alpha, l) == restrict_singleton(beta, l)
    else:
        equal = False
    composite = compose_inf(involution(alpha.arrow), beta.arrow)
    holds = bool(composite.fibers[0][0] >> l & 1)
    bound = H.sup(H.meet(a, b) for a, b in zip(alpha.extent, beta.extent))
    return Agreement(equal, holds, H.leq(l, bound))
