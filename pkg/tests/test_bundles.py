import pytest

from geofix.bundles import (
    BundleData,
    eta_lambda,
    eta_lambda_rel,
    ifcrit_check,
    inheritably_faithful_bruteforce,
    is_q_faithful,
    iterphi_bundle_iso,
    product,
    sym_power,
)
from geofix.errors import FaithfulnessHypothesisFails, NotNested
from geofix.groups import cyclic, direct_product, symmetric, trivial_group
from geofix.gsets import BiSet, regular_gset, trivial_gset

ONE = trivial_group()


def induced_c4_bundle():
    """C4 ×_{C2} ℝ⟨C2⟩ over C4/C2 with Q trivial."""
    C4 = cyclic(4)
    P = direct_product(C4, ONE)
    H = P.generated_subgroup([P.pair(2, 0)])
    return BundleData.induced(C4, ONE, [(H, regular_gset(H.as_group))])


def point_with_regular_q_fiber(gamma):
    S2 = symmetric(2)
    fiber = BiSet(gamma, S2, 2, [(0, 1)] * len(gamma.generators), [(1, 0)])
    return BundleData.point(gamma, S2, fiber)


def test_faithfulness_examples(C2):
    S2 = symmetric(2)
    assert is_q_faithful(point_with_regular_q_fiber(C2)).ok
    bad = is_q_faithful(BundleData.point(C2, S2, 1))
    assert not bad.ok and bad.witness[0] == 0
    P = direct_product(C2, S2)
    free = BundleData.induced(C2, S2, [(P.trivial_subgroup(), 0)])
    assert is_q_faithful(free).ok


def test_product_dims(C2):
    a = BundleData.point(C2, ONE, regular_gset(C2))
    prod = product(a, a)
    assert prod.fiber_dims() == [4]
    zero = BundleData.point(C2, ONE, 0)
    assert product(a, zero).fiber_dims() == [2]


def test_sym_power_examples(C2):
    line = BundleData.point(ONE, ONE, 1)
    assert sym_power(line, 1).fiber_dims() == [1]
    sq = sym_power(line, 2)
    assert sq.fiber_dims() == [2]
    swap = sq.total.rtable[1]
    assert swap == (1, 0)


def test_sym_power_faithful():
    eta = BundleData.point(cyclic(2), ONE, regular_gset(cyclic(2)))
    for q in (1, 2, 3):
        assert is_q_faithful(sym_power(eta, q)).ok


def test_eta_lambda_c4():
    eta = induced_c4_bundle()
    C4 = eta.gamma
    lam = C4.generated_subgroup([2])
    fixed = eta_lambda(eta, lam).bundle
    assert fixed.base.n == 2 and fixed.fiber_dims() == [1, 1]
    assert fixed.base.ltable[1] == (1, 0)


def test_eta_lambda_trivial_subgroup():
    eta = induced_c4_bundle()
    same = eta_lambda(eta, eta.gamma.trivial_subgroup()).bundle
    assert same.fiber_dims() == eta.fiber_dims()


def test_eta_lambda_twisted_summands(C2):
    eta = point_with_regular_q_fiber(C2)
    r = eta_lambda(eta, C2.whole())
    assert len(r.homs) == 2
    assert sorted(r.bundle.fiber_dims()) == [1, 2]


def test_eta_lambda_rel(C2):
    reg = BundleData.point(C2, ONE, regular_gset(C2))
    assert eta_lambda_rel(reg, C2.whole(), C2.whole()).bundle.is_empty
    triv = BundleData.point(C2, ONE, trivial_gset(1, C2))
    assert eta_lambda_rel(triv, C2.whole(), C2.whole()).bundle.base.n == 1
    k1 = eta_lambda_rel(reg, C2.whole(), C2.trivial_subgroup()).bundle
    assert k1.fiber_dims() == eta_lambda(reg, C2.whole()).bundle.fiber_dims()


def test_iterphi_examples():
    eta = induced_c4_bundle()
    C4 = eta.gamma
    e, half, whole = C4.trivial_subgroup(), C4.generated_subgroup([2]), C4.whole()
    for K, L, M in [(e, half, whole), (half, half, whole), (e, half, half), (e, e, half)]:
        assert iterphi_bundle_iso(eta, K, L, M).ok
    with pytest.raises(NotNested):
        iterphi_bundle_iso(eta, whole, half, whole)


def test_iterphi_needs_faithfulness(C2):
    S2 = symmetric(2)
    eta = BundleData.point(C2, S2, 1)
    with pytest.raises(FaithfulnessHypothesisFails):
        iterphi_bundle_iso(eta, C2.trivial_subgroup(), C2.whole(), C2.whole())


def test_ifcrit_examples(C2):
    P = direct_product(C2, ONE)
    eta = BundleData.induced(C2, ONE, [(P.whole(), regular_gset(P))])
    assert ifcrit_check(eta, C2.whole()).ok
    empty_fiber = BundleData.point(C2, ONE, 0)
    r = ifcrit_check(empty_fiber, C2.whole())
    assert not r.conditions["i"] and "i" in r.witnesses
    c4 = induced_c4_bundle()
    assert ifcrit_check(c4, c4.gamma.generated_subgroup([2])).ok


def test_inheritable_q1_is_plain_faithfulness(C2):
    eta = point_with_regular_q_fiber(C2)
    r = inheritably_faithful_bruteforce(eta, C2.whole(), 1)
    assert r.per_q[1] == is_q_faithful(eta_lambda(sym_power(eta, 1), C2.whole()).bundle).ok


def test_inheritable_restricts_to_subgroups_of_symmetric_group():
    eta = induced_c4_bundle()
    lam = eta.gamma.generated_subgroup([2])
    full = inheritably_faithful_bruteforce(eta, lam, 2)
    sub = inheritably_faithful_bruteforce(eta, lam, 2, top=lambda q: cyclic(q) if q > 1 else None)
    assert full.ok and sub.ok


def test_validation_of_equivariance(C2):
    from geofix.errors import ActionMismatch

    base = BiSet(C2, ONE, 2, [(0, 1)], [])
    total = BiSet(C2, ONE, 2, [(1, 0)], [])
    with pytest.raises(ActionMismatch):
        BundleData(C2, ONE, base, total, [0, 1])
