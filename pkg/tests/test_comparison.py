import random

import pytest
from hypothesis import given, settings

from relsheaf.errors import ModeError, NotASheaf
from relsheaf.functors.comparison import (comparison_check, gamma, gamma_mor, lambda_, lambda_mor,
                                          lemma_dagger_injective, phi, psi)
from relsheaf.harness import generate as gen
from relsheaf.heyting import downset_algebra
from relsheaf.presheaf import (compose_transformations, identity_transformation, is_sheaf, make_presheaf,
                               naturality_violation)
from relsheaf.pretrans import compose_inf, compose_ord, from_entries

from strategies import ORD, INF, chains, presheaves, seeds


def D_of(F, *names):
    D = downset_algebra(F.algebra)
    return D.of_mask(sum(1 << F.algebra.index(n) for n in names))


def test_gamma_examples(fx):
    sep, nsh = fx("SEP"), fx("NSH")
    assert set(gamma(sep).sizes()) == {1}
    assert len(gamma(nsh).carriers[D_of(nsh, "bot", "a", "b")]) == 1
    assert len(gamma(nsh).carriers[D_of(nsh, "bot", "a", "b", "top")]) == 2
    for F in (sep, nsh, fx("MIS")):
        assert len(gamma(F).carriers[D_of(F)]) == 1


def test_gamma_is_cached(fx):
    assert gamma(fx("NSH")) is gamma(fx("NSH"))


def test_lambda_examples(fx):
    sep, nsh = fx("SEP"), fx("NSH")
    top = sep.algebra.index("top")
    assert len(lambda_(gamma(sep)).carriers[top]) == 1
    assert len(lambda_(gamma(nsh)).carriers[top]) == 2
    ident = identity_transformation(gamma(nsh))
    assert lambda_mor(ident).components == identity_transformation(lambda_(gamma(nsh))).components


def test_lambda_needs_a_downset_algebra(fx):
    with pytest.raises(TypeError):
        lambda_(fx("SEP"))


@pytest.mark.parametrize("name", ["SEP", "NSH", "MIS"])
def test_comparison_on_fixtures(fx, name):
    F = fx(name)
    checks = comparison_check(F, gamma(F))
    assert checks and all(c.passed for c in checks)


def test_comparison_requires_a_sheaf(fx):
    D = downset_algebra(fx("B4"))
    bad = make_presheaf(D, {D.bottom: ["u", "v"]}, {})
    with pytest.raises(NotASheaf):
        comparison_check(fx("SEP"), bad)


def test_gamma_identity(fx):
    F = fx("NSH")
    assert gamma_mor(identity_transformation(F)).components == identity_transformation(gamma(F)).components


@given(presheaves(max_h=4, max_carrier=3))
@settings(max_examples=25, deadline=None)
def test_gamma_lands_in_sheaves_and_comparison_holds(F):
    G = gamma(F)
    assert is_sheaf(G)
    assert lemma_dagger_injective(G) is None
    assert all(c.passed for c in comparison_check(F, G))


@given(chains(max_h=4, max_carrier=3))
@settings(max_examples=20, deadline=None)
def test_gamma_is_a_functor(chain):
    _, (s, t) = chain
    gs, gt = gamma_mor(s), gamma_mor(t)
    assert naturality_violation(gs) is None
    assert gamma_mor(compose_transformations(t, s)) == compose_transformations(gt, gs)
    assert naturality_violation(lambda_mor(gs)) is None


def test_psi_on_the_empty_downset_is_total(fx):
    rng = random.Random(1)
    H = fx("C3")
    A, B = gen.random_carrier(rng, 3, "A", 1), gen.random_carrier(rng, 3, "B", 1)
    tau = gen.random_pretransformation(rng, H, A, B, ORD)
    D = downset_algebra(H)
    assert tau.at(H.bottom) is not None
    assert psi(tau).at(D.bottom).pairs == {(b, a) for b in B for a in A}


def test_mode_errors(fx):
    H = fx("B4")
    rng = random.Random(3)
    A = gen.random_carrier(rng, 2, "A", 1)
    from relsheaf.pretrans import PreTransformation
    bad = PreTransformation(H, A, A, [[1 << H.index("a")] * len(A)] * len(A))
    with pytest.raises(ModeError):
        psi(bad)
    with pytest.raises(ModeError):
        phi(from_entries(H, A, A, [[H.top] * len(A)] * len(A)))
    D = downset_algebra(H)
    with pytest.raises(ModeError):
        phi(PreTransformation(D, A, A, [[0] * len(A)] * len(A)))


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_psi_phi_roundtrips_and_composition(seed):
    rng = random.Random(seed)
    H = gen.random_lattice(rng, 4)
    D = downset_algebra(H)
    A, B, C = (gen.random_carrier(rng, 3, x) for x in "ABC")
    tau = gen.random_pretransformation(rng, H, A, B, ORD)
    sigma = gen.random_pretransformation(rng, H, B, C, ORD)
    rho = gen.random_pretransformation(rng, D, A, B, INF)
    pi = gen.random_pretransformation(rng, D, B, C, INF)
    assert psi(tau).infima_preserving and phi(rho).order_preserving
    assert phi(psi(tau)) == tau
    assert psi(phi(rho)) == rho
    assert psi(compose_ord(sigma, tau)) == compose_inf(psi(sigma), psi(tau))
    assert phi(compose_inf(pi, rho)) == compose_ord(phi(pi), phi(rho))


def test_roundtrip_over_c3_by_hand(fx):
    H = fx("C3")
    rng = random.Random(11)
    for _ in range(20):
        A, B = gen.random_carrier(rng, 3, "A"), gen.random_carrier(rng, 3, "B")
        tau = gen.random_pretransformation(rng, H, A, B, ORD)
        p = psi(tau)
        D = p.algebra
        # the defining property: X in the fiber iff X lies inside tau's fiber
        for j, row in enumerate(tau.fibers):
            for i, m in enumerate(row):
                for X in D.elements:
                    assert bool(p.fibers[j][i] >> X & 1) == (D.sets[X] & ~m == 0)
        assert phi(p) == tau
