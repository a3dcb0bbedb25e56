
import pytest

from relsheaf.functors.two_point import (census_checks, morphism_to_class_function, object_to_per, per_to_object,
                                         two_point_census)
from relsheaf.oracles import class_functions, partial_equivalences, per_classes
from relsheaf.pretrans import Mode, is_rel_object
from relsheaf.relations import FiniteSet


def test_per_counts_are_bell_sums():
    # partial equivalences on n points: sum over subsets of Bell numbers
    assert [len(partial_equivalences(tuple(range(n)))) for n in range(5)] == [1, 2, 5, 15, 52]


def test_class_functions_count():
    A = per_classes(frozenset({(1, 1), (2, 2), (1, 2), (2, 1), (3, 3)}), (1, 2, 3))
    B = per_classes(frozenset({("u", "u"), ("v", "v")}), ("u", "v"))
    assert len(A) == 2 and len(B) == 2
    assert len(class_functions(A, B)) == 4


def test_per_fixture(fx):
    per = fx("PER")
    pairs = object_to_per(per)
    assert sorted(map(sorted, per_classes(pairs, per.source.members))) == [["1", "2"], ["3"]]
    assert per_to_object(per.algebra, per.source, pairs) == per


def test_per_to_object_rejects_other_algebras(fx):
    with pytest.raises(ValueError):
        per_to_object(fx("B4"), FiniteSet("A", ("1",)), frozenset())


def test_every_per_is_an_object(fx):
    H = fx("H2")
    A = FiniteSet("A", ("1", "2", "3"))
    for per in partial_equivalences(A.members):
        assert is_rel_object(per_to_object(H, A, per), Mode.INF)


def test_identity_gives_identity_function(fx):
    per = fx("PER")
    f = morphism_to_class_function(per, object_to_per(per), object_to_per(per))
    assert all(k == v for k, v in f.items())


def test_census_is_exhaustive_and_green(fx):
    census = two_point_census(fx("H2"), max_carrier=2)
    assert {n: len(v) for n, v in census.objects.items()} == {0: 1, 1: 2, 2: 5}
    assert all(c.passed for c in census.checks)
    laws = {c.law for c in census.checks}
    assert laws == {"objects-are-pers", "morphisms-are-class-functions"}
    # one morphism check per ordered pair of objects
    assert sum(c.law == "morphisms-are-class-functions" for c in census.checks) == 8 ** 2


def test_census_rejects_other_algebras(fx):
    with pytest.raises(ValueError):
        census_checks(fx("C3"))
