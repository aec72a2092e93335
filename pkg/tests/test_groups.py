import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geofix.config import using_caps
from geofix.errors import CapExceeded, DivisibilityViolation, InvalidHom, NotASubgroup
from geofix.groups import (
    FinGroup,
    GroupHom,
    compose,
    conjugacy_classes_of_subgroups,
    cyclic,
    cyclic_quotient_iso,
    direct_product,
    enumerate_homs,
    enumerate_subgroups,
    hom_conjugacy_classes,
    invert,
    named_group,
    small_groups,
    symmetric,
    trivial_group,
    weyl_group,
    wreath,
    wreath_inv,
    wreath_mul,
)

from conftest import subgroup_of_order


def test_subgroups_of_c4(C4):
    assert [H.order for H in enumerate_subgroups(C4)] == [1, 2, 4]


@pytest.mark.parametrize("name,count", [("S3", 4), ("C2", 2), ("S4", 11), ("D4", 8), ("Q8", 6)])
def test_conjugacy_class_counts(name, count):
    assert len(conjugacy_classes_of_subgroups(named_group(name))) == count


def test_subgroup_count_s4():
    assert len(enumerate_subgroups(symmetric(4))) == 30


def test_subgroup_lattice_respects_cap():
    with using_caps(group_order=6):
        with pytest.raises(CapExceeded):
            enumerate_subgroups(symmetric(4))


def test_named_group_cap():
    with pytest.raises(CapExceeded):
        named_group("S40")


def test_weyl_groups(S3):
    A3 = subgroup_of_order(S3, 3)
    assert weyl_group(S3, A3).group.order == 2
    T = subgroup_of_order(S3, 2)
    assert weyl_group(S3, T).group.order == 1
    assert weyl_group(S3, S3.trivial_subgroup()).group.order == 6


def test_hom_counts(C2, S3):
    assert len(enumerate_homs(C2, symmetric(2))) == 2
    assert len(enumerate_homs(S3, trivial_group())) == 1
    homs = enumerate_homs(C2, S3)
    assert len(homs) == 4
    assert sorted(len(c) for c in hom_conjugacy_classes(homs)) == [1, 3]
    assert len(hom_conjugacy_classes(enumerate_homs(C2, symmetric(2)))) == 2


def test_hom_checks_relations(C2):
    with pytest.raises(InvalidHom):
        GroupHom(cyclic(3), C2, [0, 1, 0])


def test_wreath_orders(C2):
    assert wreath(2, trivial_group()).order == 2
    assert wreath(1, cyclic(3)).order == 3
    assert wreath(2, symmetric(2)).order == 8
    assert wreath(3, C2).order == math.factorial(3) * 8


def test_wreath_encoding_is_a_homomorphism(C2):
    Q = cyclic(3)
    W = wreath(2, Q)
    elems = [W.decode(i) for i in range(W.order)]
    for x in elems[:12]:
        for y in elems[:12]:
            assert W.decode(W.mul(W.encode(*x), W.encode(*y))) == wreath_mul(Q, x, y)
        assert wreath_mul(Q, x, wreath_inv(Q, x)) == ((0, 0), (0, 1))


def test_cyclic_quotient_iso():
    h = cyclic_quotient_iso(4, 2, 2)
    assert h.target.order == 2 and h.is_bijective()
    assert cyclic_quotient_iso(2, 1, 2).is_bijective()
    with pytest.raises(DivisibilityViolation):
        cyclic_quotient_iso(6, 4, 4)


def test_not_a_subgroup(S3):
    with pytest.raises(NotASubgroup):
        S3.subgroup([0, S3.index[(1, 2, 0)]])


def test_small_group_library_orders():
    orders = [G.order for _, G in small_groups(12)]
    assert orders == sorted(orders)
    assert len(small_groups(8)) == 14 and len(small_groups(12)) == 24


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_compose_and_invert(p, q):
    p, q = tuple(p), tuple(q)
    assert compose(p, invert(p)) == tuple(range(5))
    assert invert(compose(p, q)) == compose(invert(q), invert(p))


def test_product_group_pairs(C2, S3):
    P = direct_product(C2, S3)
    assert P.order == 12
    for i in range(2):
        for j in range(6):
            assert P.split(P.pair(i, j)) == (i, j)


def test_content_hash_is_stable():
    assert FinGroup.generated(3, [(1, 2, 0)]).content_hash == cyclic(3).content_hash
