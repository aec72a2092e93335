import random

import pytest

from geofix.acyc import (
    AcycData,
    catalog_cross_check,
    component_catalog,
    faithfulness_shadow,
    free_smash,
    hom_set,
    in_D_ACyc,
    in_D_ACyc_p,
    phi,
    regular_v,
    shadow_via_bundles,
    smash,
    standard_example,
    stretch,
    sym,
    trivial_v,
    unit_data,
    validate,
)
from geofix.errors import FaithfulnessShadowFails, ValidationError
from grids import acyc_suite


def test_validate_reports_divisibility():
    bad = AcycData(3, (0, 1), (2,), (2,), (regular_v(1),), ())
    problems = validate(bad)
    assert any("ℓ∤n" in p for p in problems)
    with pytest.raises(ValidationError):
        hom_set(bad)


def test_hom_counts():
    assert len(hom_set(standard_example())) == 2
    assert len(hom_set(unit_data())) == 1
    narrow = AcycData(2, (0, 2), (2,), (2,), (trivial_v(1),), ((1, 0),))
    assert [len(set(p)) for p in hom_set(narrow).perms()] == [2]
    assert hom_set(narrow).perms() == [(0, 1)]


def test_membership():
    d = standard_example()
    assert in_D_ACyc(d) and in_D_ACyc_p(d, 2)
    only_q0 = AcycData(1, (2, 1), (1,), (1,), (trivial_v(1),), ((1, 0, 2),))
    res = in_D_ACyc(only_q0)
    assert not res and "q_0" in res.reasons[0]
    six = AcycData(2, (0, 2), (6,), (1,), (regular_v(6),), ((1, 0),))
    assert in_D_ACyc(six) and not in_D_ACyc_p(six, 2)
    not_semiregular = AcycData(2, (0, 2), (2,), (1,), (trivial_v(1),), ((1, 0),))
    assert not in_D_ACyc(not_semiregular)


def test_stretch():
    d = standard_example()
    assert stretch(d, 1).data == d
    r = stretch(d, 3)
    assert (r.data.n, r.data.m, r.data.l) == (6, (6,), (3,))
    assert len(r.bijection) == 2 and r.ok
    assert in_D_ACyc_p(stretch(d, 2).data, 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_stretch_preserves_hom_counts(k):
    for d, _ in acyc_suite():
        r = stretch(d, k)
        assert r.ok and len(r.hom_k) == len(hom_set(d))


def test_smash_with_unit_and_lcm():
    d = standard_example()
    u = unit_data()
    s = smash(d, u)
    assert s.q == (0, 2, 1) and s.n == 2 and s.Q.order == d.Q.order
    s2 = smash(u, d)
    assert s2.n == 2 and s2.m[0] == 2 and s2.l[0] == 2


def test_smash_hom_is_compatible_pairs():
    suite = [d for d, _ in acyc_suite()]
    rng = random.Random(7)
    for _ in range(20):
        a, b = rng.choice(suite), rng.choice(suite)
        s = smash(a, b)
        na, nb = s.n // a.n, s.n // b.n
        pairs = len(hom_set(stretch(a, na).data)) * len(hom_set(stretch(b, nb).data))
        assert len(hom_set(s)) == pairs
        assert in_D_ACyc(s)


def test_phi():
    d = standard_example()
    assert phi(d, 1).data == d
    r = phi(d, 2)
    assert r.data.n == 4 and len(hom_set(r.data)) == 2 and r.verified
    assert in_D_ACyc_p(r.data, 2)


def test_phi_refuses_without_shadow():
    bad = AcycData(2, (0, 2), (2,), (1,), (trivial_v(1),), ((1, 0),))
    with pytest.raises(FaithfulnessShadowFails):
        phi(bad, 2)


def test_sym():
    d = standard_example()
    assert sym(d, 1) == d
    s = sym(d, 2)
    assert s.q == (0, 4) and s.Q.order == 8
    assert in_D_ACyc(s)


def test_free_smash():
    d = standard_example()
    e = d
    for _ in range(3):
        e = free_smash(e)
    assert e.q[0] == d.q[0] + 3
    assert in_D_ACyc(e)
    assert len(hom_set(e)) == len(hom_set(d))


def test_catalog_examples():
    unit = component_catalog(unit_data())
    assert [e.fiber_dim for e in unit.entries] == [1]
    cat = component_catalog(standard_example())
    dims = {e.generator_image: e.fiber_dim for e in cat.entries}
    assert dims == {(0, 1): 2, (1, 0): 2}


def test_catalog_invariant_under_stretch():
    for d, _ in acyc_suite():
        base = [e.fiber_dim for e in component_catalog(d).entries]
        for k in (2, 3):
            assert [e.fiber_dim for e in component_catalog(stretch(d, k).data).entries] == base


def test_catalog_matches_finite_model():
    for d, _ in acyc_suite():
        assert catalog_cross_check(d) == []


def test_shadow():
    for d, _ in acyc_suite():
        assert faithfulness_shadow(d)
    bad = AcycData(2, (0, 2), (2,), (1,), (trivial_v(1),), ((1, 0),))
    res = faithfulness_shadow(bad)
    assert not res and res.witness is not None
    assert faithfulness_shadow(unit_data())


def test_shadow_agrees_with_bundle_oracle():
    bad = AcycData(2, (0, 2), (2,), (1,), (trivial_v(1),), ((1, 0),))
    for d in [standard_example(), bad, acyc_suite()[5][0], acyc_suite()[8][0]]:
        for k in (1, 2):
            oracle = all(shadow_via_bundles(d, j)[0] for j in range(1, k + 1))
            assert faithfulness_shadow(d, k_max=k).ok == oracle
