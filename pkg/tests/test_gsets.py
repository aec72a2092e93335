import pytest

from geofix.errors import ActionMismatch, GroupMismatch, ValidationError
from geofix.groups import cyclic, symmetric, trivial_group
from geofix.gsets import (
    BasedGSet,
    BiSet,
    GSet,
    all_gsets,
    coset_gset,
    disjoint_union,
    fixed_subspace,
    hhr_diagonal,
    indexed_smash,
    induce,
    is_semiregular,
    orbits,
    plus,
    regular_gset,
    regular_rep,
    smash_union_iso,
    trivial_gset,
    trivial_rep,
)

from conftest import subgroup_of_order


def test_orbits_examples(C2, S3):
    (orb,) = orbits(regular_gset(C2))
    assert orb.stabilizer.order == 1
    two = orbits(trivial_gset(2, C2))
    assert [o.stabilizer.order for o in two] == [2, 2]
    natural = GSet(S3, 3, S3.generator_perms())
    (orb,) = natural.orbits()
    assert len(orb.points) * orb.stabilizer.order == 6


def test_regular_and_trivial_reps(C2):
    R = regular_rep(C2)
    assert R.dim == 2 and len(fixed_subspace(R)) == 1
    assert trivial_rep(3).dim == 3 and len(fixed_subspace(trivial_rep(3))) == 3
    assert regular_rep(trivial_group()).dim == 1


def test_semiregular(C2):
    assert is_semiregular(regular_rep(C2))
    assert not is_semiregular(trivial_rep(2, C2))
    assert is_semiregular(disjoint_union(regular_gset(C2), trivial_gset(1, C2)))


def test_fixed_subspaces(C4, S3):
    C2 = subgroup_of_order(C4, 2)
    assert len(fixed_subspace(regular_gset(C4), C2)) == 2
    X = trivial_gset(3, C4)
    assert len(fixed_subspace(X, C4.trivial_subgroup())) == 3
    A3 = subgroup_of_order(S3, 3)
    cosets = coset_gset(S3, subgroup_of_order(S3, 2))
    assert len(fixed_subspace(cosets, A3)) == 1


def test_fixed_subspace_vectors_are_orbit_sums(C4):
    (v,) = fixed_subspace(regular_gset(C4))
    assert v == (1, 1, 1, 1)


def test_indexed_smash_examples(C2):
    A = plus(regular_gset(C2))
    pt = trivial_gset(1, C2)
    AS, _ = indexed_smash(A, pt)
    assert AS.n == A.n
    S0 = plus(trivial_gset(1, C2))
    free = regular_gset(C2)
    S0S, _ = indexed_smash(S0, free)
    assert S0S.n == 2
    AF, _ = indexed_smash(A, free)
    assert len(AF.fixed_points()) == 3


def test_hhr_diagonal_examples(C2, S3):
    A = plus(regular_gset(C2))
    assert hhr_diagonal(A, trivial_gset(1, C2)).ok
    d = hhr_diagonal(A, regular_gset(C2))
    assert d.ok and len(d.fixed) == 3
    for G in (C2, cyclic(3)):
        S = disjoint_union(regular_gset(G), regular_gset(G))
        for X in all_gsets(G, 3):
            assert hhr_diagonal(plus(X), S).ok


def test_smash_of_union(C2):
    A = plus(disjoint_union(regular_gset(C2), trivial_gset(1, C2)))
    assert smash_union_iso(A, regular_gset(C2), trivial_gset(1, C2))


def test_based_set_needs_fixed_basepoint(C2):
    with pytest.raises(ValidationError):
        BasedGSet(regular_gset(C2), 0)


def test_biset_actions_must_commute(C2):
    S3 = symmetric(3)
    with pytest.raises(ActionMismatch):
        BiSet(S3, S3, 3, S3.generator_perms(), S3.generator_perms())


def test_union_group_mismatch(C2):
    with pytest.raises(GroupMismatch):
        disjoint_union(regular_gset(C2), regular_gset(cyclic(3)))


def test_induce_sizes(S3):
    H = subgroup_of_order(S3, 2)
    Y = regular_gset(H.as_group)
    X = induce(S3, H, Y)
    assert X.n == 6 and len(X.orbits()) == 1


def test_all_gsets_counts(C2):
    # sizes 1..3 over C2: {1}, {2 fixed, free}, {3 fixed, free+fixed}
    assert len(all_gsets(C2, 3)) == 5
