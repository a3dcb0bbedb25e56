import pytest
from hypothesis import given, settings

from relsheaf.functors.comparison import gamma, phi, psi
from relsheaf.functors.equivalence import (a_rel, delta_pre, equivalence_checks, lift, presheaf_roundtrip_map,
                                           relational_roundtrip_map, theta_pre)
from relsheaf.functors.adjunction import delta_inf_obj
from relsheaf.presheaf import is_natural_iso
from relsheaf.pretrans import Mode

from strategies import ord_objects, presheaves


@pytest.mark.parametrize("name", ["SEP", "NSH", "MIS"])
def test_fixture_roundtrips(fx, name):
    F = fx(name)
    rel = delta_pre(F)
    assert rel.mode is Mode.ORD and rel.violation() is None
    assert is_natural_iso(presheaf_roundtrip_map(F))
    checks = equivalence_checks([F], [rel])
    assert checks and all(c.passed for c in checks)


def test_delta_pre_is_the_composite_through_downsets(fx):
    F = fx("NSH")
    assert delta_pre(F).relation == phi(delta_inf_obj(gamma(F)).relation)
    assert lift(delta_pre(F)).relation == psi(delta_pre(F).relation)
    assert psi(delta_pre(F).relation) == delta_inf_obj(gamma(F)).relation


def test_theta_pre_is_a_presheaf_over_the_base(fx):
    F = fx("MIS")
    P = theta_pre(delta_pre(F))
    assert P.algebra is F.algebra
    # the round trip is an equivalence, so nothing is adjoined at top
    assert P.sizes() == F.sizes()


def test_a_rel_is_an_inf_object(fx):
    tau = delta_pre(fx("NSH"))
    out = a_rel(tau)
    assert out.mode is Mode.INF and out.violation() is None


def test_relational_roundtrip_has_the_right_type(fx):
    tau = delta_pre(fx("SEP"))
    theta = relational_roundtrip_map(tau)
    assert theta.target is tau.carrier
    assert theta.source is delta_pre(theta_pre(tau)).carrier


@given(presheaves(max_h=3, max_carrier=2))
@settings(max_examples=15, deadline=None)
def test_presheaf_side_is_an_equivalence(F):
    assert is_natural_iso(presheaf_roundtrip_map(F))
    assert all(c.passed for c in equivalence_checks([F]))


@given(ord_objects(max_h=3, max_carrier=2))
@settings(max_examples=15, deadline=None)
def test_relational_side_is_an_equivalence(tau):
    checks = equivalence_checks(objects=[tau])
    bad = [c for c in checks if not c.passed]
    assert not bad, bad
