import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtcoh.exact import GaussianRational
from dtcoh.exp_map import (
    LieEigenvalue,
    check_stabiliser_preservation,
    eig_partition,
    eigenlist_from_json,
    eigenlist_to_json,
    exp_classes,
    exp_equal,
    exp_of,
    exp_partition,
    is_etale,
    random_eigenlist,
    random_etale_eigenlist,
    unit_log,
)
from dtcoh.groups import Partition
from dtcoh.moduli import TorusElem

F = Fraction


def ev(s, a=0):
    return LieEigenvalue(a, F(s))


def test_etale_examples():
    assert not is_etale([ev(0), ev(1)])
    assert is_etale([ev(0), ev(F(1, 2))])
    assert is_etale([ev(0), ev(0)])
    assert is_etale([ev(0, 1), ev(1)])  # different real parts never collide


def test_exp_equal_examples():
    assert exp_equal(ev(0), ev(1))
    assert not exp_equal(ev(0), ev(F(1, 2)))
    assert exp_equal(ev(0, 1), ev(0, 1))
    assert not exp_equal(ev(0, GaussianRational(0, 1)), ev(0))


def test_partitions():
    assert eig_partition([ev(0), ev(0), ev(F(1, 2))]) == Partition.of(2, 1)
    assert eig_partition([ev(k) for k in range(4)]) == Partition.of(1, 1, 1, 1)
    assert exp_partition([ev(k) for k in range(4)]) == Partition.of(4)
    assert exp_classes([ev(0), ev(F(1, 2)), ev(2)]) == [[0, 2], [1]]


def test_stabiliser_examples():
    assert not check_stabiliser_preservation([ev(0), ev(1)])
    assert check_stabiliser_preservation([ev(0), ev(F(1, 3)), ev(F(2, 3))])


def test_unit_log():
    assert unit_log(TorusElem(1, F(1, 3))) == ev(F(1, 3))
    assert unit_log(TorusElem(1, 0)) == ev(0)
    assert unit_log(TorusElem(1, F(1, 2))) == ev(F(1, 2))
    with pytest.raises(ValueError):
        unit_log(TorusElem(2, 0))
    with pytest.raises(ValueError):
        exp_of(ev(0, 1))


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=1, max_size=6))
def test_log_then_exp_is_identity(thetas):
    points = [TorusElem(1, t) for t in thetas]
    logs = [unit_log(p) for p in points]
    assert [exp_of(x) for x in logs] == points
    if len(set(points)) == len(points):
        assert is_etale(logs)


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_etale_implies_preservation(seed, n):
    e = random_eigenlist(random.Random(seed), n)
    if is_etale(e):
        assert check_stabiliser_preservation(e)
    # eigenvalue classes always refine exp classes
    for group in exp_classes(e):
        assert all(exp_equal(e[group[0]], e[i]) for i in group)
    assert sum(eig_partition(e).parts) == sum(exp_partition(e).parts) == n
    assert eig_partition(e).l >= exp_partition(e).l


@given(st.integers(0, 10_000), st.integers(1, 5))
def test_exp_equal_is_an_equivalence(seed, n):
    e = random_eigenlist(random.Random(seed), n)
    for x in e:
        assert exp_equal(x, x)
        for y in e:
            assert exp_equal(x, y) == exp_equal(y, x)
            for z in e:
                if exp_equal(x, y) and exp_equal(y, z):
                    assert exp_equal(x, z)


def test_json_roundtrip():
    e = random_etale_eigenlist(random.Random(2), 4)
    assert eigenlist_from_json(eigenlist_to_json(e)) == e
    assert ev(1, GaussianRational(1, 2)).to_json() == {"a": {"re": "1", "im": "2"}, "s": "1"}
    with pytest.raises(ValueError):
        eigenlist_from_json({"a": 1})
