from itertools import product

import pytest
from hypothesis import given, settings

from relsheaf.errors import NoBounds, NotALattice, NotAPoset, NotHeyting, UnknownElement
from relsheaf.heyting import (DownSet, adjunction_violation, bi_implication, build_algebra, down_closure,
                              downset_algebra, frame_law_violation, implication, is_principal, iter_bits,
                              sup_dagger_adjunction, sup_dagger_violation)

from strategies import lattices


def e(H, *names):
    return [H.index(n) for n in names]


def brute_implication(H, x, z):
    return H.sup(y for y in H.elements if H.leq(H.meet(y, x), z))


def test_two_chain(fx):
    H = fx("H2")
    assert H.names == ("bot", "top")
    assert H.leq(H.bottom, H.top) and not H.leq(H.top, H.bottom)


def test_pentagon_is_rejected_with_witness():
    with pytest.raises(NotHeyting) as info:
        build_algebra(["bot", "a", "b", "c", "top"],
                      [("bot", "a"), ("a", "c"), ("c", "top"), ("bot", "b"), ("b", "top")])
    assert len(info.value.witness) == 3
    # the witness really breaks the adjunction
    H_names = ["bot", "a", "b", "c", "top"]
    assert all(w in H_names for w in info.value.witness)


def test_pentagon_fails_distributivity_by_hand():
    # c /\ (a \/ b) = c but (c /\ a) \/ (c /\ b) = a, computed without the algebra class
    le = {("bot", x) for x in "abc"} | {("a", "c"), ("a", "top"), ("b", "top"), ("c", "top"), ("bot", "top")}
    le |= {(x, x) for x in ["bot", "a", "b", "c", "top"]}
    elems = ["bot", "a", "b", "c", "top"]

    def join(x, y):
        ups = [u for u in elems if (x, u) in le and (y, u) in le]
        return next(u for u in ups if all((u, v) in le for v in ups))

    def meet(x, y):
        downs = [d for d in elems if (d, x) in le and (d, y) in le]
        return next(d for d in downs if all((v, d) in le for v in downs))

    assert meet("c", join("a", "b")) == "c"
    assert join(meet("c", "a"), meet("c", "b")) == "a"


def test_diamond_is_boolean(fx):
    H = fx("B4")
    a, b = e(H, "a", "b")
    assert adjunction_violation(H) is None
    assert H.meet(a, b) == H.bottom and H.join(a, b) == H.top


@pytest.mark.parametrize("elements, pairs, error", [
    (["x", "y"], [("x", "y"), ("y", "x")], NotAPoset),
    (["x", "y"], [], NoBounds),
    (["bot", "a", "b", "c", "d", "top"],
     [("bot", "a"), ("bot", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "top"), ("d", "top")],
     NotALattice),
])
def test_structural_rejections(elements, pairs, error):
    with pytest.raises(error):
        build_algebra(elements, pairs)


def test_unknown_names():
    with pytest.raises(UnknownElement):
        build_algebra(["bot"], [("bot", "nope")])
    with pytest.raises(UnknownElement):
        build_algebra(["bot"], []).index("nope")


def test_closure_is_applied():
    H = build_algebra(["bot", "m", "top"], [("bot", "m"), ("m", "top")])
    assert H.leq(H.index("bot"), H.index("top"))


def test_implication_examples(fx):
    C3, B4 = fx("C3"), fx("B4")
    m, = e(C3, "m")
    a, b = e(B4, "a", "b")
    assert implication(C3, m, C3.bottom) == C3.bottom
    assert implication(B4, a, B4.bottom) == b
    for H in (C3, B4):
        for x in H.elements:
            assert implication(H, x, x) == H.top


def test_bi_implication_examples(fx):
    C3, B4 = fx("C3"), fx("B4")
    a, b = e(B4, "a", "b")
    m, = e(C3, "m")
    assert bi_implication(B4, a, b) == B4.bottom
    assert bi_implication(C3, m, C3.top) == m
    for x in B4.elements:
        assert bi_implication(B4, x, x) == B4.top


def test_down_closure_examples(fx):
    C3, B4 = fx("C3"), fx("B4")
    assert set(down_closure(C3, e(C3, "m"))) == set(e(C3, "bot", "m"))
    assert set(down_closure(B4, [])) == set()
    assert set(down_closure(B4, e(B4, "a", "b"))) == set(e(B4, "bot", "a", "b"))


def test_downset_rejects_non_closed(fx):
    B4 = fx("B4")
    with pytest.raises(ValueError):
        DownSet(B4, frozenset(e(B4, "a")))


def test_principal_examples(fx):
    B4 = fx("B4")
    assert is_principal(down_closure(B4, [B4.bottom]))
    assert not is_principal(down_closure(B4, []))
    assert not is_principal(down_closure(B4, e(B4, "a", "b")))
    for a in B4.elements:
        assert is_principal(down_closure(B4, [a]))


@pytest.mark.parametrize("name, size", [("H2", 3), ("C3", 4), ("B4", 6)])
def test_downset_algebra_size(fx, name, size):
    H = fx(name)
    D = downset_algebra(H)
    brute = [m for m in range(1 << H.n)
             if all(all(m >> b & 1 for b in H.below(a)) for a in iter_bits(m))]
    assert D.n == size == len(brute)
    assert D.sets[D.bottom] == 0 and D.sets[D.top] == (1 << H.n) - 1
    assert adjunction_violation(D) is None


def test_downset_algebra_operations_are_set_operations(fx):
    D = downset_algebra(fx("B4"))
    for X, Y in product(D.elements, repeat=2):
        assert D.sets[D.meet(X, Y)] == D.sets[X] & D.sets[Y]
        assert D.sets[D.join(X, Y)] == D.sets[X] | D.sets[Y]


def test_downset_algebra_is_cached(fx):
    assert downset_algebra(fx("C3")) is downset_algebra(fx("C3"))


@pytest.mark.parametrize("name", ["H2", "C3", "B4", "DC3"])
def test_fixture_laws(fx, name):
    H = fx(name)
    assert adjunction_violation(H) is None
    assert frame_law_violation(H) is None
    assert sup_dagger_adjunction(H)


def test_empty_sup_boundary(fx):
    H = fx("C3")
    assert H.sup([]) == H.bottom
    assert sup_dagger_violation(H) is None


@given(lattices(6))
@settings(max_examples=60)
def test_generated_lattices_are_heyting(H):
    assert adjunction_violation(H) is None
    assert frame_law_violation(H) is None
    assert sup_dagger_violation(H) is None
    for x, z in product(H.elements, repeat=2):
        assert H.implies(x, z) == brute_implication(H, x, z)


@given(lattices(5))
@settings(max_examples=40)
def test_down_closure_is_a_closure_operator(H):
    for m in range(1 << H.n):
        X = set(iter_bits(m))
        c = set(down_closure(H, X))
        assert X <= c
        assert set(down_closure(H, c)) == c
        for m2 in range(1 << H.n):
            if m & ~m2 == 0:
                assert c <= set(down_closure(H, iter_bits(m2)))


@given(lattices(5))
@settings(max_examples=30)
def test_downset_algebra_validates(H):
    D = downset_algebra(H)
    again = build_algebra(D.names, [(D.names[a], D.names[b]) for a, b in D.leq_pairs()])
    assert again.n == D.n
