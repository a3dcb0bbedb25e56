from itertools import product

import pytest
from hypothesis import given, settings

from relsheaf.functors.adjunction import (a_shv, act, adjunction_check, delta_inf_mor, delta_inf_obj, epsilon_component,
                                          eta, flatten_singleton, representability_checks, sheaf_iff_eta_iso,
                                          theta_inf_mor, theta_inf_obj)
from relsheaf.functors.singletons import enumerate_singletons, representable_singleton
from relsheaf.oracles import delta_home_levels
from relsheaf.presheaf import (Transformation, compose_transformations, identity_transformation, is_sheaf,
                               make_presheaf, naturality_violation)
from relsheaf.pretrans import Mode, RelObject, compose_inf, involution

from strategies import chains, inf_objects, presheaves


def collapse(F, T):
    return Transformation(F, T, [{x: T.carriers[h][0] for x in F.carriers[h]} for h in F.algebra.elements])


def test_delta_examples(fx):
    sep, nsh = fx("SEP"), fx("NSH")
    H = sep.algebra
    D = delta_inf_obj(sep)
    for (l, y) in D.carrier:
        for (k, x) in D.carrier:
            assert D.entry((l, y), (k, x)) == H.meet(k, l)
    N = delta_inf_obj(nsh)
    top = H.top
    assert N.entry((top, "x"), (top, "y")) == top
    for F in (sep, nsh, fx("MIS")):
        D = delta_inf_obj(F)
        for (k, x) in D.carrier:
            assert D.entry((k, x), (k, x)) == k


def test_delta_entries_against_a_direct_search(fx):
    # independent route: join of every m below both levels where restrictions agree
    for F in (fx("SEP"), fx("NSH"), fx("MIS")):
        H = F.algebra
        D = delta_inf_obj(F)
        for (l, y) in D.carrier:
            for (k, x) in D.carrier:
                good = [m for m in H.elements if H.leq(m, k) and H.leq(m, l)
                        and F.restrict(x, k, m) == F.restrict(y, l, m)]
                assert D.entry((l, y), (k, x)) == H.sup(good)


def test_home_level_reading_is_not_idempotent(fx):
    nsh = fx("NSH")
    narrow = delta_home_levels(nsh)
    assert compose_inf(narrow, narrow) != narrow
    full = delta_inf_obj(nsh).relation
    assert compose_inf(full, full) == full
    H = nsh.algebra
    pos = narrow.source.position
    assert narrow.entries[pos((H.top, "x"))][pos((H.top, "y"))] == H.bottom


def test_theta_examples(fx):
    for name in ("NSH", "MIS"):
        T = theta_inf_obj(delta_inf_obj(fx(name)))
        assert len(T.carriers[T.algebra.top]) == 1
        assert len(T.carriers[T.algebra.bottom]) == 1


def test_eta_examples(fx):
    sep, nsh, mis = fx("SEP"), fx("NSH"), fx("MIS")
    top = sep.algebra.top
    assert all(len(set(c.values())) == len(c) == len(eta(sep).cod.carriers[h])
               for h, c in enumerate(eta(sep).components))
    comp = eta(nsh).components[top]
    assert comp["x"] == comp["y"]
    assert not eta(mis).components[top] and len(eta(mis).cod.carriers[top]) == 1


@pytest.mark.parametrize("name", ["SEP", "NSH", "MIS"])
def test_epsilon_is_an_isomorphism(fx, name):
    F = delta_inf_obj(fx(name))
    eps = epsilon_component(F)
    assert eps.violation() is None
    star = involution(eps.arrow)
    assert compose_inf(star, eps.arrow) == eps.domain.relation
    assert compose_inf(eps.arrow, star) == F.relation


def test_epsilon_on_a_point(fx):
    from relsheaf.functors.singletons import point_object
    H = fx("B4")
    P = point_object(H, H.top)
    eps = epsilon_component(P)
    assert len(eps.domain.carrier) == sum(1 for _ in H.elements)
    assert compose_inf(eps.arrow, involution(eps.arrow)) == P.relation


def test_fixture_adjunction_laws(fx):
    sep, nsh, mis = fx("SEP"), fx("NSH"), fx("MIS")
    maps = [collapse(nsh, sep), collapse(mis, sep), identity_transformation(sep)]
    checks = adjunction_check([sep, nsh, mis], [delta_inf_obj(F) for F in (sep, nsh, mis)] + [
        RelObject(fx("PER"), Mode.INF)], maps, [(maps[2], maps[0]), (maps[2], maps[1])],
        [delta_inf_mor(t) for t in maps])
    bad = [c for c in checks if not c.passed]
    assert not bad, bad


def test_empty_presheaf(fx):
    H = fx("B4")
    E = make_presheaf(H, {H.bottom: ["s"]}, {})
    assert all(c.passed for c in adjunction_check([E], [delta_inf_obj(E)]))


def test_all_small_presheaves_over_h2(fx):
    H = fx("H2")
    for n_top in range(3):
        for n_bot in range(1, 3):
            tops = [f"t{i}" for i in range(n_top)]
            bots = [f"b{i}" for i in range(n_bot)]
            for images in product(bots, repeat=n_top):
                F = make_presheaf(H, {H.top: tops, H.bottom: bots},
                                  {(H.top, H.bottom): dict(zip(tops, images))})
                assert all(c.passed for c in adjunction_check([F], [delta_inf_obj(F)])), F


def test_act_rejects_foreign_singletons(fx):
    D = delta_inf_obj(fx("SEP"))
    other = delta_inf_obj(fx("NSH"))
    alpha = enumerate_singletons(other, other.algebra.top)[0]
    with pytest.raises(ValueError):
        act(epsilon_component(D), alpha)


def test_flatten_examples(fx):
    F = delta_inf_obj(fx("SEP"))
    glued = delta_inf_obj(theta_inf_obj(F))
    H = F.algebra
    for h in H.elements:
        for gamma in theta_inf_obj(F).carriers[h]:
            A = representable_singleton(glued, (h, gamma))
            assert flatten_singleton(F, A) == gamma
        for A in enumerate_singletons(glued, h):
            flat = flatten_singleton(F, A)
            assert representable_singleton(glued, (h, flat)) == A
    bottom = enumerate_singletons(glued, H.bottom)[0]
    assert set(flatten_singleton(F, bottom).extent) == {H.bottom}
    with pytest.raises(ValueError):
        flatten_singleton(F, enumerate_singletons(F, H.top)[0])


@pytest.mark.parametrize("name,sheaf", [("SEP", True), ("NSH", False), ("MIS", False)])
def test_sheaf_iff_eta_iso_examples(fx, name, sheaf):
    r = sheaf_iff_eta_iso(fx(name))
    assert r.sheaf is sheaf and r.eta_iso is sheaf and r.agrees


def test_a_shv_examples(fx):
    for name in ("MIS", "NSH"):
        S = a_shv(fx(name))
        assert is_sheaf(S)
        assert len(S.carriers[S.algebra.top]) == 1
    assert a_shv(fx("SEP")).sizes() == fx("SEP").sizes()


@given(presheaves(max_h=4, max_carrier=3))
@settings(max_examples=25, deadline=None)
def test_sheafification_and_representability(F):
    assert sheaf_iff_eta_iso(F).agrees
    assert is_sheaf(a_shv(F))
    D = delta_inf_obj(F)
    assert D.violation() is None
    assert D.relation == involution(D.relation)
    assert all(c.passed for c in representability_checks(D))


@given(chains(max_h=4, max_carrier=3))
@settings(max_examples=20, deadline=None)
def test_adjunction_on_chains(chain):
    ps, maps = chain
    s, t = maps
    checks = adjunction_check(ps, [delta_inf_obj(F) for F in ps], maps, [(t, s)],
                              [delta_inf_mor(m) for m in maps])
    bad = [c for c in checks if not c.passed]
    assert not bad, bad
    composite = compose_transformations(t, s)
    assert delta_inf_mor(composite).arrow == compose_inf(delta_inf_mor(t).arrow, delta_inf_mor(s).arrow)
    assert naturality_violation(theta_inf_mor(delta_inf_mor(s))) is None


@given(inf_objects(max_h=4, max_carrier=3))
@settings(max_examples=25, deadline=None)
def test_counit_laws_on_random_objects(G):
    checks = adjunction_check(objects=[G])
    assert all(c.passed for c in checks)
    assert all(c.passed for c in representability_checks(G))
    assert is_sheaf(theta_inf_obj(G))
