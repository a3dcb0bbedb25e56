"""Slow definitional versions of the fast routines, used to cross-check them.

Nothing here calls the matrix or fiber-table shortcuts it is meant to check:
composites are found by searching levels and families of level pairs over
plain relations, and objects over the two-element algebra are compared with
partial equivalence relations built from scratch.
"""

from __future__ import annotations

from itertools import combinations, product

from .heyting import HeytingAlgebra
from .pretrans import PreTransformation, from_entries
from .relations import FiniteSet
from .relations import compose as compose_relations


def _level_relations(tau: PreTransformation):
    return [tau.at(h) for h in tau.algebra.elements]


def compose_ord_by_definition(sigma: PreTransformation, tau: PreTransformation) -> dict:
    """(c, a) -> set of h such that some k, l with h <= k /\\ l have (sigma_k o tau_l)(c, a)."""
    H = sigma.algebra
    S, T = _level_relations(sigma), _level_relations(tau)
    out = {(c, a): set() for c in sigma.target for a in tau.source}
    for k, l in product(H.elements, repeat=2):
        for c, a in compose_relations(S[k], T[l]).pairs:
            out[c, a].update(h for h in H.elements if H.leq(h, H.meet(k, l)))
    return out


def _family_sups(H: HeytingAlgebra, pairs) -> set:
    """Joins of k /\\ l over every subfamily of ``pairs`` (the empty family gives bottom).

    Families with the same set of meets have the same join, so one pair per
    distinct meet suffices.
    """
    values = sorted({H.meet(k, l) for k, l in pairs})
    sups = set()
    for r in range(len(values) + 1):
        for family in combinations(values, r):
            sups.add(H.sup(family))
    return sups


def compose_inf_by_definition(sigma: PreTransformation, tau: PreTransformation) -> dict:
    """(c, a) -> set of h below the join of some family of pairs (k, l) with (sigma_k o tau_l)(c, a)."""
    H = sigma.algebra
    S, T = _level_relations(sigma), _level_relations(tau)
    witnesses = {(c, a): set() for c in sigma.target for a in tau.source}
    for k, l in product(H.elements, repeat=2):
        for c, a in compose_relations(S[k], T[l]).pairs:
            witnesses[c, a].add((k, l))
    cache = {}
    out = {}
    for key, pairs in witnesses.items():
        frozen = frozenset(pairs)
        if frozen not in cache:
            cache[frozen] = _family_sups(H, frozen)
        out[key] = {h for h in H.elements if any(H.leq(h, s) for s in cache[frozen])}
    return out


def fibers_as_sets(tau: PreTransformation) -> dict:
    return {(b, a): set(tau.fiber(b, a)) for b in tau.target for a in tau.source}


def all_pretransformations(H: HeytingAlgebra, source, target, fiber_masks):
    """Every pre-transformation whose fibers are drawn from ``fiber_masks``."""
    cells = len(source) * len(target)
    for choice in product(fiber_masks, repeat=cells):
        rows = [choice[j * len(source):(j + 1) * len(source)] for j in range(len(target))]
        yield PreTransformation(H, source, target, rows)


def partial_equivalences(members) -> list[frozenset]:
    """All symmetric transitive relations on ``members``, as sets of pairs."""
    members = list(members)
    out = []
    # a PER is a partition of some subset; enumerate the subset, then set partitions of it
    for r in range(len(members) + 1):
        for subset in combinations(members, r):
            for blocks in _set_partitions(list(subset)):
                out.append(frozenset((x, y) for block in blocks for x in block for y in block))
    return out


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for blocks in _set_partitions(rest):
        yield [[first]] + blocks
        for i in range(len(blocks)):
            yield blocks[:i] + [[first] + blocks[i]] + blocks[i + 1:]


def per_classes(per: frozenset, members) -> list[frozenset]:
    seen = []
    for x in members:
        if (x, x) in per:
            block = frozenset(y for y in members if (x, y) in per)
            if block not in seen:
                seen.append(block)
    return seen


def class_functions(src_classes, dst_classes) -> list[dict]:
    return [dict(zip(src_classes, images)) for images in product(dst_classes, repeat=len(src_classes))]


def delta_home_levels(F) -> PreTransformation:
    """Agreement matrix that only compares two elements at the meet of their own levels.

    This is the reading of the gluing formula in which the levels range over
    home levels alone.  It is kept to show that it is not idempotent: two
    distinct elements can each agree with a third lower element while
    disagreeing with each other at their common level.
    """
    H = F.algebra
    members = tuple((h, x) for h in H.elements for x in F.carriers[h])
    carrier = FiniteSet(f"Home({F.label})", members)
    rows = []
    for (l, y) in members:
        row = []
        for (k, x) in members:
            m = H.meet(k, l)
            row.append(m if F.restrict(x, k, m) == F.restrict(y, l, m) else H.bottom)
        rows.append(row)
    return from_entries(H, carrier, carrier, rows)
