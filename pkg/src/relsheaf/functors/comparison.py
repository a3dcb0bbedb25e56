"""Presheaves on H versus sheaves on D(H), and the matching comparison of pre-transformations.

``gamma`` sends a presheaf to its matching families over down-sets and
``lambda_`` reindexes a presheaf on D(H) along ``h -> h-dagger``.  ``psi`` and
``phi`` translate order-preserving families over H into infima-preserving
families over D(H) and back.
"""

from __future__ import annotations

from ..checks import Check, check
from ..errors import ModeError, NotASheaf
from ..heyting import DownsetAlgebra, downset_algebra
from ..presheaf import (MatchingFamily, Presheaf, Transformation, element_dagger, is_levelwise_bijection,
                        iter_matching_families, naturality_violation, sheaf_counterexample)
from ..pretrans import PreTransformation
from .._memo import memoized


def _downset_base(F: Presheaf) -> DownsetAlgebra:
    D = F.algebra
    if not isinstance(D, DownsetAlgebra):
        raise TypeError(f"{F.label} does not live over a down-set algebra")
    return D


def gamma(F: Presheaf) -> Presheaf:
    """Matching families of F over each down-set, restricted by dropping parts."""
    def build():
        H = F.algebra
        D = downset_algebra(H)
        carriers = [tuple(iter_matching_families(F, D.members(A))) for A in D.elements]
        res = {}
        for A in D.elements:
            for B in D.below(A):
                keep = D.members(B)
                res[A, B] = {X: X.restrict_to(keep) for X in carriers[A]}
        return Presheaf(D, carriers, res, f"Gamma({F.label})")
    return memoized(F, "gamma", build)


def gamma_mor(tau: Transformation) -> Transformation:
    def build():
        GF, GG = gamma(tau.dom), gamma(tau.cod)
        comps = []
        for A, members in enumerate(GF.carriers):
            comps.append({
                X: MatchingFamily(X.parts, tuple(tau(k, x) for k, x in zip(X.parts, X.choice)), tau.cod)
                for X in members
            })
        return Transformation(GF, GG, comps)
    return memoized(tau, "gamma", build)


def lambda_(F: Presheaf) -> Presheaf:
    """Reindex a presheaf on D(H) along the principal down-set map."""
    def build():
        D = _downset_base(F)
        H = D.base
        carriers = [F.carriers[D.dagger(h)] for h in H.elements]
        res = {}
        for h in H.elements:
            for k in H.below(h):
                res[h, k] = F.restrictions[D.dagger(h), D.dagger(k)]
        return Presheaf(H, carriers, res, f"Lambda({F.label})")
    return memoized(F, "lambda", build)


def lambda_mor(tau: Transformation) -> Transformation:
    def build():
        D = _downset_base(tau.dom)
        return Transformation(lambda_(tau.dom), lambda_(tau.cod),
                              [tau.components[D.dagger(h)] for h in D.base.elements])
    return memoized(tau, "lambda", build)


def presheaf_side_map(F: Presheaf) -> Transformation:
    """x in F(h) goes to x-dagger in Lambda(Gamma(F))(h)."""
    target = lambda_(gamma(F))
    comps = [{x: element_dagger(F, x, h) for x in F.carriers[h]} for h in F.algebra.elements]
    return Transformation(F, target, comps)


def sheaf_side_map(G: Presheaf) -> Transformation:
    """x in G(A) goes to the family (x restricted to k-dagger) for k in A."""
    D = _downset_base(G)
    L = lambda_(G)
    target = gamma(L)
    comps = []
    for A in D.elements:
        parts = D.members(A)
        comps.append({
            x: MatchingFamily(parts, tuple(G.restrict(x, A, D.dagger(k)) for k in parts), L)
            for x in G.carriers[A]
        })
    return Transformation(G, target, comps)


def _iso_checks(name: str, tau: Transformation, instance: str) -> list[Check]:
    out = [check(f"{name}-natural", naturality_violation(tau), instance)]
    bad = None
    if not is_levelwise_bijection(tau):
        names = tau.dom.algebra.names
        for h, comp in enumerate(tau.components):
            if len(set(comp.values())) != len(comp) or set(comp.values()) != set(tau.cod.carriers[h]):
                bad = f"not a bijection at {names[h]}: {len(comp)} -> {len(tau.cod.carriers[h])}"
                break
    out.append(check(f"{name}-bijective", bad, instance))
    return out


def comparison_check(F: Presheaf, G: Presheaf) -> list[Check]:
    """Both comparison maps are natural bijections, for F over H and the sheaf G over D(H)."""
    _downset_base(G)
    cx = sheaf_counterexample(G)
    if cx is not None:
        raise NotASheaf(f"{G.label} is not a sheaf: cover of {G.algebra.names[cx.cover_of]} "
                        f"has {len(cx.amalgamations)} amalgamations")
    out = []
    cx = sheaf_counterexample(gamma(F))
    out.append(check("gamma-is-sheaf", None if cx is None else
                     f"cover of {gamma(F).algebra.names[cx.cover_of]} has {len(cx.amalgamations)} amalgamations",
                     F.label))
    out += _iso_checks("presheaf-dagger", presheaf_side_map(F), F.label)
    out += _iso_checks("sheaf-dagger", sheaf_side_map(G), G.label)
    return out


def psi(tau: PreTransformation) -> PreTransformation:
    """Order-preserving over H to infima-preserving over D(H): X in the fiber iff X is inside tau's fiber."""
    if not tau.order_preserving:
        raise ModeError("psi needs an order-preserving pre-transformation")
    D = downset_algebra(tau.algebra)
    rows = []
    for row in tau.fibers:
        rows.append(tuple(sum(1 << X for X in D.elements if D.sets[X] & ~m == 0) for m in row))
    return PreTransformation(D, tau.source, tau.target, rows)


def phi(tau: PreTransformation) -> PreTransformation:
    """Infima-preserving over D(H) back to order-preserving over H: h in the fiber iff h-dagger is."""
    D = tau.algebra
    if not isinstance(D, DownsetAlgebra):
        raise ModeError("phi needs a pre-transformation over a down-set algebra")
    if not tau.infima_preserving:
        raise ModeError("phi needs an infima-preserving pre-transformation")
    H = D.base
    rows = []
    for row in tau.fibers:
        rows.append(tuple(sum(1 << h for h in H.elements if m >> D.dagger(h) & 1) for m in row))
    return PreTransformation(H, tau.source, tau.target, rows)


def lemma_dagger_injective(G: Presheaf):
    """First pair x != y at some level with equal daggers, or None."""
    for A in G.algebra.elements:
        seen = {}
        for x in G.carriers[A]:
            key = element_dagger(G, x, A)
            if key in seen:
                return (A, seen[key], x)
            seen[key] = x
    return None


__all__ = ["gamma", "gamma_mor", "lambda_", "lambda_mor", "presheaf_side_map", "sheaf_side_map",
           "comparison_check", "psi", "phi", "lemma_dagger_injective"]
