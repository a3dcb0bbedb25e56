"""Finite sets and relations.

A relation ``R: A -> B`` is a subset of ``B x A``; pairs are stored and
printed target first, ``(b, a)``.  Carriers are nominal: two FiniteSet
objects with the same members are still different objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .errors import CarrierMismatch


@dataclass(frozen=True, eq=False)
class FiniteSet:
    label: str
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if len(set(self.members)) != len(self.members):
            raise ValueError(f"members of {self.label} are not distinct")
        object.__setattr__(self, "_pos", {m: i for i, m in enumerate(self.members)})

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self._pos

    def position(self, x: Hashable) -> int:
        return self._pos[x]

    def __repr__(self):
        return f"FiniteSet({self.label!r}, {list(self.members)!r})"


@dataclass(frozen=True)
class Relation:
    source: FiniteSet
    target: FiniteSet
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for b, a in self.pairs:
            if b not in self.target or a not in self.source:
                raise CarrierMismatch(f"pair ({b!r}, {a!r}) is outside {self.target.label} x {self.source.label}")

    def __contains__(self, pair):
        return pair in self.pairs

    def __repr__(self):
        shown = sorted(self.pairs, key=lambda p: (self.target.position(p[0]), self.source.position(p[1])))
        return f"Relation({self.source.label} -> {self.target.label}: {shown})"


def _same_hom(R: Relation, S: Relation) -> None:
    if R.source is not S.source or R.target is not S.target:
        raise CarrierMismatch("relations live in different hom-sets")


def compose(S: Relation, R: Relation) -> Relation:
    """S after R, for R: A -> B and S: B -> C."""
    if S.source is not R.target:
        raise CarrierMismatch(f"cannot compose: {S.source.label} is not {R.target.label}")
    after = {}
    for c, b in S.pairs:
        after.setdefault(b, []).append(c)
    pairs = {(c, a) for b, a in R.pairs for c in after.get(b, ())}
    return Relation(R.source, S.target, frozenset(pairs))


def converse(R: Relation) -> Relation:
    return Relation(R.target, R.source, frozenset((a, b) for b, a in R.pairs))


def diagonal(A: FiniteSet) -> Relation:
    return Relation(A, A, frozenset((a, a) for a in A))


def empty(A: FiniteSet, B: FiniteSet) -> Relation:
    return Relation(A, B, frozenset())


def leq(R: Relation, S: Relation) -> bool:
    _same_hom(R, S)
    return R.pairs <= S.pairs


def union(relations: Iterable[Relation], source: FiniteSet, target: FiniteSet) -> Relation:
    pairs = set()
    for R in relations:
        if R.source is not source or R.target is not target:
            raise CarrierMismatch("relations live in different hom-sets")
        pairs |= R.pairs
    return Relation(source, target, frozenset(pairs))


def is_symmetric_map(f: Relation) -> bool:
    """1 <= f* f and f f* <= 1: the relation is a total function."""
    A, B = f.source, f.target
    return leq(diagonal(A), compose(converse(f), f)) and leq(compose(f, converse(f)), diagonal(B))
