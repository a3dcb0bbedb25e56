import random

import pytest
from hypothesis import given, settings, strategies as st

from relsheaf.errors import CarrierMismatch
from relsheaf.relations import (FiniteSet, Relation, compose, converse, diagonal, empty, is_symmetric_map, leq,
                                union)


def random_relation(rng, A, B, p=0.4):
    return Relation(A, B, frozenset((b, a) for b in B for a in A if rng.random() < p))


def carriers(rng, n=3):
    return [FiniteSet(f"S{i}", tuple(f"s{i}{j}" for j in range(rng.randint(0, 3)))) for i in range(n)]


def test_compose_examples():
    A, B, C = FiniteSet("A", (1, 2)), FiniteSet("B", ("u",)), FiniteSet("C", ("x",))
    R = Relation(A, B, {("u", 1)})
    S = Relation(B, C, {("x", "u")})
    assert compose(S, R).pairs == {("x", 1)}
    assert compose(diagonal(B), R) == R
    assert compose(empty(B, C), R) == empty(A, C)


def test_compose_checks_carriers():
    A, B = FiniteSet("A", (1,)), FiniteSet("B", (1,))
    with pytest.raises(CarrierMismatch):
        compose(diagonal(A), diagonal(B))


def test_carriers_are_nominal():
    A, B = FiniteSet("A", (1, 2)), FiniteSet("A", (1, 2))
    assert A is not B
    assert diagonal(A) != diagonal(B)
    with pytest.raises(CarrierMismatch):
        leq(diagonal(A), diagonal(B))


def test_pairs_must_lie_in_carriers():
    with pytest.raises(CarrierMismatch):
        Relation(FiniteSet("A", (1,)), FiniteSet("B", ("x",)), {(1, "x")})


def test_members_distinct():
    with pytest.raises(ValueError):
        FiniteSet("A", (1, 1))


def test_converse_examples():
    A, X = FiniteSet("A", (1, 2)), FiniteSet("X", ("x",))
    R = Relation(A, X, {("x", 1), ("x", 2)})
    assert converse(R).pairs == {(1, "x"), (2, "x")}
    assert converse(diagonal(A)) == diagonal(A)
    assert converse(converse(R)) == R


def test_diagonal_examples():
    assert diagonal(FiniteSet("E", ())).pairs == frozenset()
    assert diagonal(FiniteSet("O", (1,))).pairs == {(1, 1)}


def test_leq_examples():
    A, X = FiniteSet("A", (1, 2)), FiniteSet("X", ("x",))
    small, big = Relation(A, X, {("x", 1)}), Relation(A, X, {("x", 1), ("x", 2)})
    assert leq(small, big) and not leq(big, small)
    assert leq(empty(A, X), small) and leq(small, small)


def test_union():
    A = FiniteSet("A", (1, 2))
    R, S = Relation(A, A, {(1, 2)}), Relation(A, A, {(2, 1)})
    assert union([R, S], A, A).pairs == {(1, 2), (2, 1)}


@given(st.integers(0, 10**9))
@settings(max_examples=150)
def test_relation_laws(seed):
    rng = random.Random(seed)
    A, B, C, D = carriers(rng, 4)
    R, S, T = random_relation(rng, A, B), random_relation(rng, B, C), random_relation(rng, C, D)
    assert compose(T, compose(S, R)) == compose(compose(T, S), R)
    assert converse(compose(S, R)) == compose(converse(R), converse(S))
    assert compose(diagonal(B), R) == R == compose(R, diagonal(A))
    R2 = union([R, random_relation(rng, A, B)], A, B)
    S2 = union([S, random_relation(rng, B, C)], B, C)
    assert leq(compose(S, R), compose(S2, R2))


@given(st.integers(0, 10**9))
@settings(max_examples=150)
def test_symmetric_maps_are_rigid(seed):
    # maps are total single-valued relations; enlarging one never gives another map
    rng = random.Random(seed)
    A, B = carriers(rng, 2)
    if not B.members:
        return
    f = Relation(A, B, {(rng.choice(B.members), a) for a in A})
    assert is_symmetric_map(f)
    g = union([f, random_relation(rng, A, B, 0.2)], A, B)
    if is_symmetric_map(g):
        assert f == g
    else:
        assert g != f


def test_symmetric_map_recognises_functions():
    A, B = FiniteSet("A", (1, 2)), FiniteSet("B", ("x", "y"))
    assert is_symmetric_map(Relation(A, B, {("x", 1), ("x", 2)}))
    assert not is_symmetric_map(Relation(A, B, {("x", 1)}))
    assert not is_symmetric_map(Relation(A, B, {("x", 1), ("y", 1), ("x", 2)}))
