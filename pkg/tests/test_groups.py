from collections import Counter
from math import factorial, gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtcoh.groups import (
    Kind,
    Partition,
    adjacent_word,
    centre_structure,
    class_multiplier,
    component_action,
    fixed_components,
    levi_descriptor,
    partitions_of,
    weyl_cycle_types,
    weyl_order,
    z_centralizer,
)
from dtcoh.molien import _component_fixed_points, weyl_elements

# p(n) for n = 0..10
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]

partitions_small = st.integers(1, 7).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@pytest.mark.parametrize("n, count", list(enumerate(PARTITION_COUNTS)))
def test_partition_counts(n, count):
    assert len(partitions_of(n)) == count


def test_partition_order_and_validation():
    assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert Partition.of(1, 3, 2).parts == (3, 2, 1)
    with pytest.raises(ValueError):
        Partition.of(2, 0)
    assert Partition.from_json([2, 1]) == Partition.of(2, 1)
    with pytest.raises(ValueError):
        Partition.from_json("21")


def test_kind_parse():
    assert Kind.parse("GL_ADD") is Kind.GL_ADD
    with pytest.raises(ValueError):
        Kind.parse("sp")


def test_levi_descriptor():
    lam = Partition.of(2, 2, 1, 1)
    assert levi_descriptor("gl", lam).dim_centre == 4
    assert levi_descriptor("sl", lam).dim_centre == 3
    assert levi_descriptor("pgl", lam).weyl_order == 4


@given(partitions_small)
def test_class_sizes_match_enumeration(lam):
    types = weyl_cycle_types(lam)
    assert sum(t.class_size for t in types) == weyl_order(lam)
    # count group elements by their cycle structure on each block size
    positions = lam.block_positions()
    seen = Counter()
    for perm in weyl_elements(lam):
        key = []
        for j, pos in positions.items():
            lengths, done = [], set()
            for start in pos:
                if start in done:
                    continue
                c, x = 0, start
                while x not in done:
                    done.add(x)
                    x = perm[x]
                    c += 1
                lengths.append(c)
            key.append((j, tuple(sorted(lengths, reverse=True))))
        seen[tuple(key)] += 1
    assert seen == Counter({t.blocks: t.class_size for t in types})


def test_class_examples():
    types = weyl_cycle_types(Partition.of(2, 2, 1, 1))
    assert len(types) == 4 and all(t.class_size == 1 for t in types)
    sizes = sorted(t.class_size for t in weyl_cycle_types(Partition.of(1, 1, 1)))
    assert sizes == [1, 2, 3]
    assert z_centralizer((2, 1, 1)) == 4
    assert factorial(4) // z_centralizer((2, 2)) == 3


@pytest.mark.parametrize("n", range(1, 11))
def test_sl_centres_by_snf_match_gcd(n):
    for lam in partitions_of(n):
        assert centre_structure(Kind.SL, lam) == (lam.l - 1, gcd(*lam.parts))
        assert centre_structure(Kind.PGL, lam) == (lam.l - 1, 1)
        assert centre_structure(Kind.GL, lam) == (lam.l, 1)


def test_centre_examples():
    assert centre_structure("sl", Partition.of(2, 2)) == (1, 2)
    assert centre_structure("sl", Partition.of(3, 2, 1)) == (2, 1)
    assert centre_structure("sl", Partition.of(3)) == (0, 3)


@pytest.mark.parametrize("lam", [lam for n in range(1, 9) for lam in partitions_of(n)], ids=str)
def test_component_action_is_trivial(lam):
    data = component_action(lam)
    assert data.g == lam.gcd()
    assert data.is_trivial, f"W acts nontrivially on pi_0 of the centre for {lam}"
    for tau in weyl_cycle_types(lam):
        assert class_multiplier(data, tau) % data.g == 1 % data.g
        assert fixed_components(data, tau) == data.g**3
        assert _component_fixed_points(lam, tau.representative()) == data.g**3


def test_adjacent_word_reproduces_permutation():
    perm = (2, 0, 3, 1)
    arr = list(range(4))
    # applying the swaps in reverse to the identity rebuilds perm
    for i, j in reversed(adjacent_word(perm)):
        arr[i], arr[j] = arr[j], arr[i]
    assert tuple(arr) == perm
