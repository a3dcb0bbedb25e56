"""Presheaves on a finite Heyting algebra and the sheaf condition.

A presheaf stores one tuple of members per algebra element and a restriction
map for every pair ``k <= h`` (identities included).  Covers range over
every subset of the algebra, the empty cover of bottom included, so a sheaf
always has exactly one member at bottom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import InvalidPresheaf, NaturalityViolation, NotACover
from .heyting import HeytingAlgebra, iter_bits


@dataclass(frozen=True, eq=False)
class Presheaf:
    algebra: HeytingAlgebra
    carriers: tuple
    restrictions: Mapping  # (h, k) with k <= h  ->  {x: x|_k}
    label: str = "F"

    def __post_init__(self):
        object.__setattr__(self, "carriers", tuple(tuple(c) for c in self.carriers))

    def carrier(self, h: int) -> tuple:
        return self.carriers[h]

    def restrict(self, x, h: int, k: int):
        return self.restrictions[h, k][x]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.carriers)

    def __repr__(self):
        H = self.algebra
        body = ", ".join(f"{H.names[h]}:{len(c)}" for h, c in enumerate(self.carriers))
        return f"<Presheaf {self.label} over {H.label}: {body}>"


def presheaf_violation(F: Presheaf):
    """Describe the first failure of totality or functoriality, or return None."""
    H = F.algebra
    if len(F.carriers) != H.n:
        return "carrier count differs from the number of elements"
    for h in H.elements:
        if len(set(F.carriers[h])) != len(F.carriers[h]):
            return f"carrier at {H.names[h]} has repeated members"
        for k in H.below(h):
            r = F.restrictions.get((h, k))
            if r is None:
                return f"missing restriction {H.names[h]}->{H.names[k]}"
            if set(r) != set(F.carriers[h]):
                return f"restriction {H.names[h]}->{H.names[k]} is not total on the carrier"
            for x, y in r.items():
                if y not in F.carriers[k]:
                    return f"restriction {H.names[h]}->{H.names[k]} sends {x} outside the carrier"
        for x in F.carriers[h]:
            if F.restrictions[h, h][x] != x:
                return f"restriction {H.names[h]}->{H.names[h]} is not the identity at {x}"
    for h in H.elements:
        for l in H.below(h):
            for k in H.below(l):
                for x in F.carriers[h]:
                    if F.restrictions[l, k][F.restrictions[h, l][x]] != F.restrictions[h, k][x]:
                        return (f"restriction {H.names[h]}->{H.names[k]} differs from "
                                f"{H.names[l]}->{H.names[k]} after {H.names[h]}->{H.names[l]} at {x}")
    return None


def validate_presheaf(F: Presheaf) -> Presheaf:
    problem = presheaf_violation(F)
    if problem is not None:
        raise InvalidPresheaf(problem)
    return F


def make_presheaf(H: HeytingAlgebra, carriers: Mapping, restrictions: Mapping, label: str = "F") -> Presheaf:
    """Build and validate a presheaf from partial restriction data.

    ``carriers`` maps elements to member lists (missing elements get an empty
    carrier).  ``restrictions`` maps ``(h, k)`` to dicts; identities and any
    pair reachable by composing given maps are filled in.
    """
    cars = [tuple(carriers.get(h, ())) for h in H.elements]
    res = {(h, h): {x: x for x in cars[h]} for h in H.elements}
    for (h, k), r in restrictions.items():
        if not H.leq(k, h):
            raise InvalidPresheaf(f"restriction {H.names[h]}->{H.names[k]} goes upward")
        res[h, k] = dict(r)
    for h in H.elements:
        for k in H.below(h):
            if (h, k) not in res and not cars[h]:
                res[h, k] = {}
    # fill by composition, shortest gaps first
    pending = sorted(((h, k) for h in H.elements for k in H.below(h) if (h, k) not in res),
                     key=lambda p: H.height[p[0]] - H.height[p[1]])
    progress = True
    while pending and progress:
        progress = False
        rest = []
        for h, k in pending:
            for l in H.below(h):
                if l in (h, k) or not H.leq(k, l):
                    continue
                if (h, l) in res and (l, k) in res:
                    first, second = res[h, l], res[l, k]
                    try:
                        res[h, k] = {x: second[first[x]] for x in cars[h]}
                    except KeyError:
                        raise InvalidPresheaf(
                            f"restrictions {H.names[h]}->{H.names[l]}->{H.names[k]} are not composable") from None
                    progress = True
                    break
            else:
                rest.append((h, k))
        pending = rest
    if pending:
        h, k = pending[0]
        raise InvalidPresheaf(f"restriction {H.names[h]}->{H.names[k]} is neither given nor derivable")
    return validate_presheaf(Presheaf(H, cars, res, label))


@dataclass(frozen=True)
class MatchingFamily:
    parts: tuple  # sorted elements of A
    choice: tuple  # choice[i] is a member of F(parts[i])
    presheaf: Presheaf = field(compare=False, hash=False, repr=False, default=None)

    def value(self, k: int):
        return self.choice[self.parts.index(k)]

    def as_dict(self) -> dict:
        return dict(zip(self.parts, self.choice))

    def restrict_to(self, B: Iterable[int]) -> "MatchingFamily":
        keep = set(B)
        pairs = [(k, x) for k, x in zip(self.parts, self.choice) if k in keep]
        return MatchingFamily(tuple(k for k, _ in pairs), tuple(x for _, x in pairs), self.presheaf)


def is_matching(F: Presheaf, family: Mapping) -> bool:
    H = F.algebra
    items = list(family.items())
    for i, (k, x) in enumerate(items):
        for l, y in items[i + 1:]:
            m = H.meet(k, l)
            if F.restrict(x, k, m) != F.restrict(y, l, m):
                return False
    return True


def iter_matching_families(F: Presheaf, A: Iterable[int]) -> Iterator[MatchingFamily]:
    H = F.algebra
    parts = tuple(sorted(set(A)))
    # maximal elements first, so lower choices are usually forced by restriction
    order = sorted(parts, key=lambda k: (-H.height[k], k))
    slot = {k: parts.index(k) for k in parts}
    chosen: list = [None] * len(parts)

    def candidates(depth):
        k = order[depth]
        for l in order[:depth]:
            if H.leq(k, l):
                return (F.restrict(chosen[slot[l]], l, k),)
        return F.carriers[k]

    def backtrack(depth):
        if depth == len(order):
            yield MatchingFamily(parts, tuple(chosen), F)
            return
        k = order[depth]
        for x in candidates(depth):
            ok = True
            for l in order[:depth]:
                m = H.meet(k, l)
                if F.restrict(x, k, m) != F.restrict(chosen[slot[l]], l, m):
                    ok = False
                    break
            if ok:
                chosen[slot[k]] = x
                yield from backtrack(depth + 1)
        chosen[slot[k]] = None

    yield from backtrack(0)


def matching_families(F: Presheaf, A: Iterable[int]) -> list[MatchingFamily]:
    return list(iter_matching_families(F, A))


def amalgamations(F: Presheaf, X: MatchingFamily, h: int | None = None) -> list:
    H = F.algebra
    top = H.sup(X.parts)
    if h is not None and h != top:
        raise NotACover(f"the parts join to {H.names[top]}, not {H.names[h]}")
    return [x for x in F.carriers[top]
            if all(F.restrict(x, top, k) == xk for k, xk in zip(X.parts, X.choice))]


@dataclass(frozen=True)
class SheafCounterexample:
    cover_of: int
    family: MatchingFamily
    amalgamations: tuple


def sheaf_counterexample(F: Presheaf):
    """A cover and matching family without exactly one amalgamation, or None."""
    H = F.algebra
    for mask in range(1 << H.n):
        parts = tuple(iter_bits(mask))
        h = H.sup(parts)
        for X in iter_matching_families(F, parts):
            found = amalgamations(F, X)
            if len(found) != 1:
                return SheafCounterexample(h, X, tuple(found))
    return None


def is_sheaf(F: Presheaf) -> bool:
    return sheaf_counterexample(F) is None


def element_dagger(F: Presheaf, x, h: int) -> MatchingFamily:
    """The matching family k -> x|_k over the principal down-set of h."""
    H = F.algebra
    parts = H.below(h)
    return MatchingFamily(parts, tuple(F.restrict(x, h, k) for k in parts), F)


@dataclass(frozen=True, eq=False)
class Transformation:
    dom: Presheaf
    cod: Presheaf
    components: tuple  # components[h] = {x: tau_h(x)}

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(dict(c) for c in self.components))

    def __call__(self, h: int, x):
        return self.components[h][x]

    def __eq__(self, other):
        if not isinstance(other, Transformation):
            return NotImplemented
        return self.dom is other.dom and self.cod is other.cod and self.components == other.components

    def __hash__(self):
        return hash((id(self.dom), id(self.cod)))


def naturality_violation(tau: Transformation):
    """First (h, k, x) where tau_k(x|_k) != tau_h(x)|_k, or a description of a typing fault."""
    F, G = tau.dom, tau.cod
    H = F.algebra
    if G.algebra is not H:
        return "domain and codomain live over different algebras"
    for h in H.elements:
        comp = tau.components[h]
        if set(comp) != set(F.carriers[h]):
            return f"component at {H.names[h]} is not total"
        for x, y in comp.items():
            if y not in G.carriers[h]:
                return f"component at {H.names[h]} sends {x} outside the codomain"
    for h in H.elements:
        for k in H.below(h):
            for x in F.carriers[h]:
                if tau.components[k][F.restrict(x, h, k)] != G.restrict(tau.components[h][x], h, k):
                    return (h, k, x)
    return None


def validate_transformation(tau: Transformation) -> Transformation:
    problem = naturality_violation(tau)
    if problem is not None:
        raise NaturalityViolation(f"naturality fails: {problem!r}")
    return tau


def identity_transformation(F: Presheaf) -> Transformation:
    return Transformation(F, F, tuple({x: x for x in c} for c in F.carriers))


def compose_transformations(sigma: Transformation, tau: Transformation) -> Transformation:
    if sigma.dom is not tau.cod:
        raise NaturalityViolation("transformations are not composable")
    return Transformation(tau.dom, sigma.cod,
                          tuple({x: sigma.components[h][y] for x, y in tau.components[h].items()}
                                for h in tau.dom.algebra.elements))


def is_levelwise_bijection(tau: Transformation) -> bool:
    return all(
        len(set(comp.values())) == len(comp) and set(comp.values()) == set(tau.cod.carriers[h])
        for h, comp in enumerate(tau.components)
    )


def is_natural_iso(tau: Transformation) -> bool:
    return naturality_violation(tau) is None and is_levelwise_bijection(tau)
