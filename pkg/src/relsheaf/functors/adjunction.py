"""The adjunction between presheaves and infima-preserving relational objects.

``delta_inf_obj`` glues all carriers of a presheaf into one set and records,
for each pair, the join of the levels at which the two elements agree.
``theta_inf_obj`` goes back by taking singletons at every level.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .._memo import memoized
from ..checks import Check, check
from ..errors import LawViolation
from ..presheaf import (Presheaf, Transformation, compose_transformations, identity_transformation,
                        is_levelwise_bijection, is_sheaf, naturality_violation)
from ..pretrans import Mode, RelMorphism, RelObject, compose_inf, from_entries, involution
from ..relations import FiniteSet
from .singletons import (SingletonMorphism, enumerate_singletons, representable_singleton, restrict_singleton,
                         singleton_violation)


def _agreement(F: Presheaf, G: Presheaf, k: int, x, l: int, y, image=None) -> int:
    """Join of the levels m <= k /\\ l where x|_m (pushed along image) equals y|_m."""
    H = F.algebra
    s = H.bottom
    for m in H.below(H.meet(k, l)):
        left = F.restrict(x, k, m)
        if image is not None:
            left = image(m, left)
        if left == G.restrict(y, l, m):
            s = H.join(s, m)
    return s


def delta_carrier(F: Presheaf) -> FiniteSet:
    return delta_inf_obj(F).carrier


def delta_inf_obj(F: Presheaf) -> RelObject:
    """Disjoint union of the carriers with the agreement-extent matrix."""
    def build():
        H = F.algebra
        members = tuple((h, x) for h in H.elements for x in F.carriers[h])
        carrier = FiniteSet(f"Delta({F.label})", members)
        rows = [[_agreement(F, F, k, x, l, y) for (k, x) in members] for (l, y) in members]
        return RelObject(from_entries(H, carrier, carrier, rows), Mode.INF)
    return memoized(F, "delta", build)


def delta_inf_mor(tau: Transformation) -> RelMorphism:
    def build():
        F, G = tau.dom, tau.cod
        src, dst = delta_inf_obj(F), delta_inf_obj(G)
        image = tau.__call__
        rows = []
        for (l, y) in dst.carrier:
            row = []
            for (k, x) in src.carrier:
                # compare in G: push the restriction of x along tau first
                row.append(_agreement(F, G, k, x, l, y, image))
            rows.append(row)
        arrow = from_entries(F.algebra, src.carrier, dst.carrier, rows)
        return RelMorphism(src, dst, arrow, Mode.INF)
    return memoized(tau, "delta", build)


def theta_inf_obj(F: RelObject) -> Presheaf:
    """The presheaf of singletons of F, restricted by meeting extents with the lower level."""
    def build():
        H = F.algebra
        carriers = [tuple(enumerate_singletons(F, h)) for h in H.elements]
        res = {}
        for h in H.elements:
            for k in H.below(h):
                res[h, k] = {a: restrict_singleton(a, k) for a in carriers[h]}
        return Presheaf(H, carriers, res, f"Theta({F.carrier.label})")
    return memoized(F, "theta", build)


def act(theta: RelMorphism, alpha: SingletonMorphism) -> SingletonMorphism:
    """theta after alpha, as a singleton of the codomain (validated)."""
    if alpha.target is not theta.domain:
        raise ValueError("singleton does not live on the domain of the morphism")
    H = theta.arrow.algebra
    M = theta.arrow.entries
    meet, join = H._meet, H._join
    extent = []
    for row in M:
        s = H.bottom
        for m, v in zip(row, alpha.extent):
            s = join[s][meet[m][v]]
        extent.append(s)
    extent = tuple(extent)
    problem = singleton_violation(theta.codomain, alpha.level, extent)
    if problem is not None:
        raise LawViolation(f"image of a singleton is not a singleton: {problem}")
    return SingletonMorphism(theta.codomain, alpha.level, extent)


def theta_inf_mor(theta: RelMorphism) -> Transformation:
    def build():
        dom, cod = theta_inf_obj(theta.domain), theta_inf_obj(theta.codomain)
        comps = [{a: act(theta, a) for a in dom.carriers[h]} for h in dom.algebra.elements]
        return Transformation(dom, cod, comps)
    return memoized(theta, "theta", build)


def eta_component(F: Presheaf, h: int) -> dict:
    D = delta_inf_obj(F)
    return {x: representable_singleton(D, (h, x)) for x in F.carriers[h]}


def eta(F: Presheaf) -> Transformation:
    return memoized(F, "eta", lambda: Transformation(
        F, theta_inf_obj(delta_inf_obj(F)), [eta_component(F, h) for h in F.algebra.elements]))


def epsilon_component(F: RelObject) -> RelMorphism:
    """Counit: the matrix entry at (x, alpha) is alpha(x)."""
    def build():
        src = delta_inf_obj(theta_inf_obj(F))
        rows = [[alpha.extent[i] for (_, alpha) in src.carrier] for i in range(len(F.carrier))]
        return RelMorphism(src, F, from_entries(F.algebra, src.carrier, F.carrier, rows), Mode.INF)
    return memoized(F, "epsilon", build)


def a_shv(F: Presheaf) -> Presheaf:
    """Associated sheaf: singletons of the glued relational object."""
    return theta_inf_obj(delta_inf_obj(F))


def flatten_singleton(F: RelObject, A: SingletonMorphism) -> SingletonMorphism:
    """Turn a singleton of Delta(Theta(F)) into a singleton of F by joining over its support."""
    glued = delta_inf_obj(theta_inf_obj(F))
    if A.target is not glued:
        raise ValueError("singleton does not live on Delta(Theta(F))")
    H = F.algebra
    meet, join = H._meet, H._join
    extent = []
    for i in range(len(F.carrier)):
        s = H.bottom
        for (_, gamma), w in zip(glued.carrier, A.extent):
            s = join[s][meet[gamma.extent[i]][w]]
        extent.append(s)
    extent = tuple(extent)
    problem = singleton_violation(F, A.level, extent)
    if problem is not None:
        raise LawViolation(f"flattened extent is not a singleton: {problem}")
    return SingletonMorphism(F, A.level, extent)


def _first_mismatch(P, Q):
    if P == Q:
        return None
    for j, b in enumerate(Q.target):
        for i, a in enumerate(Q.source):
            if P.fibers[j][i] != Q.fibers[j][i]:
                return f"differs at ({b!r}, {a!r})"
    return "carriers differ"


def representability_checks(F: RelObject, instance: str = "") -> list[Check]:
    """eta at Theta(F) is a bijection: every singleton of Delta(Theta(F)) is the representable of its flattening."""
    glued = delta_inf_obj(theta_inf_obj(F))
    H = F.algebra
    out = []
    surj = inj = None
    for h in H.elements:
        seen = {}
        for alpha in theta_inf_obj(F).carriers[h]:
            rep = representable_singleton(glued, (h, alpha))
            if rep in seen:
                inj = inj or f"{alpha.describe()} and {seen[rep].describe()} share a representable"
            seen[rep] = alpha
        for A in enumerate_singletons(glued, h):
            alpha = flatten_singleton(F, A)
            if representable_singleton(glued, (h, alpha)) != A:
                surj = surj or f"singleton at {H.names[h]} is not representable by its flattening"
    out.append(check("eta-theta-injective", inj, instance))
    out.append(check("eta-theta-surjective", surj, instance))
    return out


class SheafEtaReport(NamedTuple):
    sheaf: bool
    eta_iso: bool

    @property
    def agrees(self) -> bool:
        return self.sheaf == self.eta_iso


def sheaf_iff_eta_iso(F: Presheaf) -> SheafEtaReport:
    """Compute both sides independently: the sheaf condition and bijectivity of every eta component."""
    return SheafEtaReport(is_sheaf(F), is_levelwise_bijection(eta(F)))


def adjunction_check(presheaves: Iterable[Presheaf] = (), objects: Iterable[RelObject] = (),
                     transformations: Iterable[Transformation] = (),
                     composable: Iterable[tuple[Transformation, Transformation]] = (),
                     morphisms: Iterable[RelMorphism] = ()) -> list[Check]:
    """Functoriality, counit isomorphism, naturality and both triangle identities on a sample."""
    out = []
    for F in presheaves:
        D = delta_inf_obj(F)
        out.append(check("delta-object", D.violation(), F.label))
        out.append(check("eta-natural", naturality_violation(eta(F)), F.label))
        out.append(check("delta-identity", _first_mismatch(delta_inf_mor(identity_transformation(F)).arrow,
                                                           D.relation), F.label))
        eps = epsilon_component(D)
        d_eta = delta_inf_mor(eta(F))
        out.append(check("triangle-delta", _first_mismatch(compose_inf(eps.arrow, d_eta.arrow), D.relation),
                         F.label))
    for G in objects:
        label = G.carrier.label
        eps = epsilon_component(G)
        glued = eps.domain
        out.append(check("epsilon-morphism", eps.violation(), label))
        star = involution(eps.arrow)
        out.append(check("epsilon-iso-domain", _first_mismatch(compose_inf(star, eps.arrow), glued.relation),
                         label))
        out.append(check("epsilon-iso-codomain", _first_mismatch(compose_inf(eps.arrow, star), G.relation),
                         label))
        problem = None
        T = theta_inf_obj(G)
        for h in G.algebra.elements:
            for alpha in T.carriers[h]:
                back = act(eps, representable_singleton(glued, (h, alpha)))
                if back != alpha:
                    problem = f"{alpha.describe()} comes back as {back.describe()}"
                    break
            if problem:
                break
        out.append(check("triangle-theta", problem, label))
    for tau in transformations:
        label = f"{tau.dom.label}->{tau.cod.label}"
        d_tau = delta_inf_mor(tau)
        out.append(check("delta-morphism", d_tau.violation(), label))
        G = tau.cod
        DG = delta_inf_obj(G)
        problem = None
        for (l, y) in DG.carrier:
            for (k, x) in d_tau.domain.carrier:
                if d_tau.arrow.fiber_mask((l, y), (k, x)) != DG.relation.fiber_mask((l, y), (k, tau(k, x))):
                    problem = f"entry at ({l}, {y!r}), ({k}, {x!r}) differs from the image entry"
                    break
            if problem:
                break
        out.append(check("delta-key-identity", problem, label))
        problem = None
        for h in tau.dom.algebra.elements:
            for x in tau.dom.carriers[h]:
                if act(d_tau, eta(tau.dom)(h, x)) != eta(G)(h, tau(h, x)):
                    problem = f"square fails at level {h} for {x!r}"
                    break
            if problem:
                break
        out.append(check("eta-natural-square", problem, label))
    for sigma, tau in composable:
        st = compose_transformations(sigma, tau)
        lhs = delta_inf_mor(st).arrow
        rhs = compose_inf(delta_inf_mor(sigma).arrow, delta_inf_mor(tau).arrow)
        out.append(check("delta-functor", _first_mismatch(lhs, rhs), f"{tau.dom.label}->{sigma.cod.label}"))
    for theta in morphisms:
        label = f"{theta.domain.carrier.label}->{theta.codomain.carrier.label}"
        out.append(check("morphism", theta.violation(), label))
        eps_dom, eps_cod = epsilon_component(theta.domain), epsilon_component(theta.codomain)
        lhs = compose_inf(theta.arrow, eps_dom.arrow)
        rhs = compose_inf(eps_cod.arrow, delta_inf_mor(theta_inf_mor(theta)).arrow)
        out.append(check("epsilon-natural", _first_mismatch(lhs, rhs), label))
    return out
