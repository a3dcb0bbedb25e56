"""Relational presheaves (order-preserving) versus presheaves, routed through D(H).

``delta_pre`` glues a presheaf into an order-preserving relational object by
passing to sheaves on D(H) and back; ``theta_pre`` takes singletons over D(H)
and reindexes.  ``a_rel`` is the associated relational sheaf.
"""

from __future__ import annotations

from ..checks import Check, check
from ..presheaf import Presheaf, Transformation, element_dagger, naturality_violation, is_levelwise_bijection
from ..pretrans import (Mode, RelObject, compose_inf, compose_ord, involution, rel_morphism_violation)
from .adjunction import delta_inf_mor, delta_inf_obj, epsilon_component, theta_inf_obj
from .comparison import gamma, lambda_, phi, psi, sheaf_side_map
from .singletons import representable_singleton
from .._memo import memoized


def lift(tau: RelObject) -> RelObject:
    """An order-preserving object over H as an infima-preserving object over D(H)."""
    return memoized(tau, "lift", lambda: RelObject(psi(tau.relation), Mode.INF))


def delta_pre(F: Presheaf) -> RelObject:
    return memoized(F, "delta_pre", lambda: RelObject(phi(delta_inf_obj(gamma(F)).relation), Mode.ORD))


def theta_pre(tau: RelObject) -> Presheaf:
    return memoized(tau, "theta_pre", lambda: lambda_(theta_inf_obj(lift(tau))))


def a_rel(tau: RelObject) -> RelObject:
    return delta_inf_obj(theta_pre(tau))


def presheaf_roundtrip_map(F: Presheaf) -> Transformation:
    """x in F(h) goes to the representable singleton of its dagger in Theta_Pre(Delta_Pre(F))(h)."""
    rel = delta_pre(F)
    target = theta_pre(rel)
    D = gamma(F).algebra
    lifted = lift(rel)
    comps = []
    for h in F.algebra.elements:
        comps.append({x: representable_singleton(lifted, (D.dagger(h), element_dagger(F, x, h)))
                      for x in F.carriers[h]})
    return Transformation(F, target, comps)


def relational_roundtrip_map(tau: RelObject):
    """The order-preserving comparison from Delta_Pre(Theta_Pre(tau)) to tau, as a pre-transformation."""
    P = lift(tau)
    G = theta_inf_obj(P)
    u = sheaf_side_map(G)
    inverse = Transformation(u.cod, u.dom, [{v: k for k, v in comp.items()} for comp in u.components])
    through = compose_inf(epsilon_component(P).arrow, delta_inf_mor(inverse).arrow)
    return phi(through)


def equivalence_checks(presheaves=(), objects=()) -> list[Check]:
    out = []
    for F in presheaves:
        rel = delta_pre(F)
        out.append(check("delta-pre-object", rel.violation(), F.label))
        m = presheaf_roundtrip_map(F)
        out.append(check("presheaf-roundtrip-natural", naturality_violation(m), F.label))
        out.append(check("presheaf-roundtrip-bijective",
                         None if is_levelwise_bijection(m) else "some level is not a bijection", F.label))
    for tau in objects:
        label = tau.carrier.label
        back = delta_pre(theta_pre(tau))
        theta = relational_roundtrip_map(tau)
        out.append(check("relational-roundtrip-morphism",
                         rel_morphism_violation(theta, back.relation, tau.relation, Mode.ORD), label))
        star = involution(theta)
        out.append(check("relational-roundtrip-iso-domain",
                         None if compose_ord(star, theta) == back.relation else "converse composite is not the domain",
                         label))
        out.append(check("relational-roundtrip-iso-codomain",
                         None if compose_ord(theta, star) == tau.relation else "composite is not the codomain",
                         label))
    return out
