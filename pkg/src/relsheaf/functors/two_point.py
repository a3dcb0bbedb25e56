"""Relational sheaves over the two-element algebra are sets with partial equivalence relations.

Over ``bot < top`` an infima-preserving family is just the relation at top.
Objects then correspond to partial equivalence relations and symmetric maps
between them to functions between their classes.  ``two_point_census``
checks both correspondences exhaustively for small carriers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..checks import Check, check
from ..heyting import HeytingAlgebra
from ..oracles import class_functions, partial_equivalences, per_classes
from ..pretrans import Mode, PreTransformation, from_entries, rel_morphism_violation, rel_object_violation
from ..relations import FiniteSet


def _require_two_point(H: HeytingAlgebra) -> None:
    if H.n != 2:
        raise ValueError(f"{H.label} is not the two-element algebra")


def object_to_per(tau: PreTransformation) -> frozenset:
    return tau.at(tau.algebra.top).pairs


def per_to_object(H: HeytingAlgebra, carrier: FiniteSet, per) -> PreTransformation:
    _require_two_point(H)
    return from_entries(H, carrier, carrier,
                        [[H.top if (b, a) in per else H.bottom for a in carrier] for b in carrier])


def morphism_to_class_function(theta: PreTransformation, src_per, dst_per) -> dict:
    """Class [a] goes to the class of any b with theta(b, a) = top."""
    top = theta.at(theta.algebra.top).pairs
    dst = per_classes(dst_per, theta.target)
    out = {}
    for block in per_classes(src_per, theta.source):
        a = min(block, key=theta.source.position)
        images = {c for c in dst if any((b, a) in top for b in c)}
        out[block] = images.pop() if len(images) == 1 else None
    return out


def _all_inf_families(H, source, target):
    cells = len(source) * len(target)
    for values in product((H.bottom, H.top), repeat=cells):
        rows = [values[j * len(source):(j + 1) * len(source)] for j in range(len(target))]
        yield from_entries(H, source, target, rows)


@dataclass
class Census:
    objects: dict = field(default_factory=dict)  # size -> list of (object, per)
    checks: list = field(default_factory=list)


def two_point_census(H: HeytingAlgebra, max_carrier: int = 3) -> Census:
    """Enumerate objects and morphisms over carriers of size <= max_carrier and compare with PERs."""
    _require_two_point(H)
    census = Census()
    carriers = [FiniteSet(f"A{n}", tuple(str(i + 1) for i in range(n))) for n in range(max_carrier + 1)]
    for A in carriers:
        found = [tau for tau in _all_inf_families(H, A, A) if rel_object_violation(tau, Mode.INF) is None]
        pers = [object_to_per(tau) for tau in found]
        expected = set(partial_equivalences(A.members))
        problem = None
        if len(set(pers)) != len(pers):
            problem = "two objects share a relation at top"
        elif set(pers) != expected:
            odd = (expected - set(pers)) or (set(pers) - expected)
            problem = f"objects and partial equivalences differ, e.g. {sorted(next(iter(odd)))}"
        else:
            for per in expected:
                if rel_object_violation(per_to_object(H, A, per), Mode.INF) is not None:
                    problem = f"{sorted(per)} does not give an object"
                    break
        census.checks.append(check("objects-are-pers", problem, A.label))
        census.objects[len(A)] = list(zip(found, pers))
    for A, B in product(carriers, repeat=2):
        for src, sp in census.objects[len(A)]:
            for dst, dp in census.objects[len(B)]:
                census.checks.append(_morphism_check(H, src, sp, dst, dp))
    return census


def _morphism_check(H, src, sp, dst, dp) -> Check:
    A, B = src.source, dst.source
    label = f"{A.label}{sorted(sp)} -> {B.label}{sorted(dp)}"
    seen = []
    for theta in _all_inf_families(H, A, B):
        if rel_morphism_violation(theta, src, dst, Mode.INF) is not None:
            continue
        f = morphism_to_class_function(theta, sp, dp)
        if any(v is None for v in f.values()):
            return Check("morphisms-are-class-functions", False, f"{theta!r} is not single-valued on classes", label)
        seen.append(f)
    expected = class_functions(per_classes(sp, A.members), per_classes(dp, B.members))
    if len(seen) != len(expected) or any(f not in seen for f in expected):
        return Check("morphisms-are-class-functions", False,
                     f"{len(seen)} morphisms against {len(expected)} class functions", label)
    return Check("morphisms-are-class-functions", True, "", label)


def census_checks(H: HeytingAlgebra, max_carrier: int = 3) -> list[Check]:
    return two_point_census(H, max_carrier).checks
