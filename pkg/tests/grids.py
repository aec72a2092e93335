"""Shared generators for the larger checks (unit tests and acceptance both use these)."""

from __future__ import annotations

from geofix.acyc import AcycData, regular_v, standard_example, trivial_v, unit_data


def _swap(deg: int, a: int, b: int) -> tuple:
    p = list(range(deg))
    p[a], p[b] = p[b], p[a]
    return tuple(p)


def _cycle(deg: int, pts: list[int]) -> tuple:
    p = list(range(deg))
    for x, y in zip(pts, pts[1:] + pts[:1]):
        p[x] = y
    return tuple(p)


def acyc_suite() -> list[tuple[AcycData, int | None]]:
    """Ten tuples in D(ACyc); the ones paired with p=2 are also 2-typical."""
    return [
        (standard_example(), 2),
        (unit_data(), 2),
        (AcycData(4, (1, 2), (4,), (2,), (regular_v(2),), (_swap(3, 1, 2),), "A3"), 2),
        (AcycData(2, (0, 1, 1), (2, 4), (1, 2), (regular_v(2), regular_v(2)), (), "A4"), 2),
        (AcycData(2, (0, 2), (2,), (2,), (trivial_v(1),), (_swap(2, 0, 1),), "A5"), 2),
        (AcycData(3, (0, 3), (3,), (1,), (regular_v(3),), (_cycle(3, [0, 1, 2]),), "A6"), None),
        (AcycData(6, (0, 2), (6,), (3,), (regular_v(2),), (_swap(2, 0, 1),), "A7"), None),
        (AcycData(1, (2, 1), (1,), (1,), (trivial_v(1),), (), "A8"), None),
        (AcycData(3, (0, 1, 2), (3, 6), (1, 3), (regular_v(3), regular_v(2)), (_swap(3, 1, 2),), "A9"),
         None),
        (AcycData(2, (0, 3), (6,), (2,), (regular_v(3),), (_swap(3, 0, 1), _cycle(3, [0, 1, 2])), "A10"),
         None),
    ]


# twisted fixed point grid ------------------------------------------------------------

import random
from dataclasses import dataclass, field

from geofix.bundles import BundleData, biset_from_product, is_q_faithful
from geofix.config import using_caps
from geofix.errors import CapExceeded
from geofix.geosym import count_n_vectors, irreducible_catalog, n_vectors, tau_of
from geofix.groups import (
    conjugacy_classes_of_subgroups,
    direct_product,
    enumerate_homs,
    enumerate_subgroups,
    named_group,
    small_groups,
    wreath,
)
from geofix.gsets import GSet, all_gsets, coset_gset, disjoint_union, regular_gset, trivial_gset
from geofix.twisted import WreathHom

SIGMA_BUDGET = 40
CLASS_BUDGET = 24
X_BUDGET = 16
CANDIDATE_BUDGET = 20_000
Q_NAMES = ["1", "C2", "C3", "C4", "C2xC2"]


@dataclass
class OracleCell:
    lam_name: str
    q_name: str
    q: int
    sigmas: list
    bisets: list
    sigma_mode: str              # "all homs", "all classes", "class sample"
    x_mode: str                  # "all", "sample"
    notes: list = field(default_factory=list)


def _bisets(L, Q, rng, full):
    P = direct_product(L, Q)
    with using_caps(group_order=max(32, P.order)):
        classes = conjugacy_classes_of_subgroups(P)
        zs = all_gsets(P, 4, classes)
    xs = [biset_from_product(P, [Z]) for Z in zs]
    if full or len(xs) <= X_BUDGET:
        return xs, "all"
    transitive = [x for x, Z in zip(xs, zs) if len(Z.orbits()) == 1]
    rest = [x for x, Z in zip(xs, zs) if len(Z.orbits()) > 1]
    extra = rng.sample(rest, max(0, X_BUDGET - len(transitive)))
    return transitive + extra, "sample"


def _sample_n_vectors(t, q, k, rng):
    """Up to k distinct n⃗ with n⃗·t⃗ = q, drawn by adding random constituents until q is reached."""
    found: set = set()
    for _ in range(50 * k):
        if len(found) >= k:
            break
        nv, left = [0] * len(t), q
        while left:
            i = rng.choice([j for j, tj in enumerate(t) if tj <= left])
            nv[i] += 1
            left -= t[i]
        found.add(tuple(nv))
    return sorted(found)


def _sigmas(L, Q, q, catalog, rng, full):
    W = wreath(q, Q)
    homs = None
    try:
        with using_caps(hom_candidates=10 ** 9 if full else CANDIDATE_BUDGET):
            homs = enumerate_homs(L, W)
    except CapExceeded:
        if full:
            raise
    if homs is not None and (full or len(homs) <= SIGMA_BUDGET):
        return [WreathHom.from_hom(h) for h in homs], "all homs"
    if count_n_vectors(catalog.t, q) <= CLASS_BUDGET:
        vecs, mode = n_vectors(catalog.t, q), "all classes"
    else:
        vecs, mode = _sample_n_vectors(catalog.t, q, CLASS_BUDGET, rng), "class sample"
    reps = [tau_of(catalog, nv) for nv in vecs]
    out = list(reps)
    # fill the budget with seeded conjugates of the class representatives
    k = 0
    while len(out) < SIGMA_BUDGET:
        out.append(reps[k % len(reps)].conjugate(W.decode(rng.randrange(W.order))))
        k += 1
    return out, mode


def oracle_cells(full: bool = False, seed: int = 20240229):
    """Cells (Λ, Q, q) with |Λ| ≤ 8, |Q| ≤ 4, q ≤ 4 and their σ and X families."""
    rng = random.Random(seed)
    for lam_name, L in small_groups(8):
        for q_name in Q_NAMES:
            Q = named_group(q_name)
            xs, x_mode = _bisets(L, Q, rng, full)
            catalog = irreducible_catalog(L, Q)
            for q in range(1, 5):
                sigmas, mode = _sigmas(L, Q, q, catalog, rng, full)
                yield OracleCell(lam_name, q_name, q, sigmas, xs, mode, x_mode)


# bundle data for the faithfulness criterion ---------------------------------------------

def _empty_hset(HG):
    return GSet(HG, 0, [()] * len(HG.generators))


def small_bundles(max_order: int = 8, max_fiber: int = 3):
    """(Γ, Q, η) with |Γ×Q| ≤ max_order, one base orbit, fibers every H-set of dim ≤ max_fiber."""
    names = [n for n, _ in small_groups(max_order)]
    for gn in names:
        for qn in names:
            G, Q = named_group(gn), named_group(qn)
            if G.order * Q.order > max_order:
                continue
            P = direct_product(G, Q)
            for c in conjugacy_classes_of_subgroups(P):
                HG = c.rep.as_group
                for F in [_empty_hset(HG)] + all_gsets(HG, max_fiber):
                    yield gn, qn, BundleData.induced(G, Q, [(c.rep, F)])


def two_orbit_bundles(max_order: int = 4, max_fiber: int = 2):
    """Bundles whose base has two orbits, for the smallest groups."""
    names = [n for n, _ in small_groups(max_order)]
    for gn in names:
        for qn in names:
            G, Q = named_group(gn), named_group(qn)
            if G.order * Q.order > max_order:
                continue
            P = direct_product(G, Q)
            pieces = []
            for c in conjugacy_classes_of_subgroups(P):
                HG = c.rep.as_group
                pieces += [(c.rep, F) for F in all_gsets(HG, max_fiber)]
            for i in range(len(pieces)):
                for j in range(i, len(pieces)):
                    yield gn, qn, BundleData.induced(G, Q, [pieces[i], pieces[j]])


def regular_fiber_bundles(max_order: int = 8):
    """Instances of the regular-isotropy sufficient condition: E_b ⊇ the regular rep of (Γ×Q)_b."""
    names = [n for n, _ in small_groups(max_order)]
    for gn in names:
        for qn in names:
            G, Q = named_group(gn), named_group(qn)
            if G.order * Q.order > max_order:
                continue
            P = direct_product(G, Q)
            for c in conjugacy_classes_of_subgroups(P):
                HG = c.rep.as_group
                reg = regular_gset(HG)
                for extra in (None, trivial_gset(1, HG)):
                    F = reg if extra is None else disjoint_union(reg, extra)
                    yield gn, qn, BundleData.induced(G, Q, [(c.rep, F)])


def lambda_free_bundles(max_order: int = 8):
    """Instances of the Q-trivial sufficient condition: E_b restricted to Γ_b ∩ Λ contains a regular rep.

    Base Γ/H, fiber H/K with K ∩ Λ = 1, so the orbit of eK is free for H ∩ Λ.
    """
    one = named_group("1")
    for gn, G in small_groups(max_order):
        P = direct_product(G, one)
        normals = [L for L in enumerate_subgroups(G) if L.is_normal()]
        for c in conjugacy_classes_of_subgroups(P):
            H = c.rep
            HG = H.as_group
            for L in normals:
                for K in enumerate_subgroups(HG):
                    k_gamma = {P.split(H.to_parent(k))[0] for k in K.members}
                    if k_gamma & set(L.members) != {0}:
                        continue
                    yield gn, L, BundleData.induced(G, one, [(H, coset_gset(HG, K))])


def iterphi_bundles(G):
    """Q-faithful test bundles over Γ = G: regular and trivial fibers, Q trivial or C2."""
    out = []
    for qn in ("1", "C2"):
        Q = named_group(qn)
        P = direct_product(G, Q)
        for c in conjugacy_classes_of_subgroups(P):
            HG = c.rep.as_group
            for F in (regular_gset(HG), trivial_gset(1, HG)):
                eta = BundleData.induced(G, Q, [(c.rep, F)])
                if is_q_faithful(eta):
                    out.append((qn, eta))
    return out


def literal_grid_size():
    """Exact (σ, X) pair count of the exhaustive grid, without enumerating homs.

    |Hom(Λ, Σ_q ≀ Q)| is summed class by class as |Σ_q ≀ Q| / |C(τ(n⃗))|, with
    |C(τ(n⃗))| = ∏ n_i!·|C(τ_i)|^{n_i} (the formula criterion 7 verifies).
    Returns the total and the largest cell as (pairs, Λ, Q, q, homs, bi-sets).
    """
    from math import factorial, prod

    from geofix.groups import wreath_order

    total, largest = 0, (0,)
    for lam_name, L in small_groups(8):
        for q_name in Q_NAMES:
            Q = named_group(q_name)
            P = direct_product(L, Q)
            with using_caps(group_order=max(32, P.order)):
                n_x = len(all_gsets(P, 4, conjugacy_classes_of_subgroups(P)))
            catalog = irreducible_catalog(L, Q)
            cents = [len(c) for c in catalog.centralizers]
            for q in range(1, 5):
                w = wreath_order(q, Q)
                homs = sum(w // prod(factorial(k) * c ** k for k, c in zip(nv, cents))
                           for nv in n_vectors(catalog.t, q))
                total += homs * n_x
                largest = max(largest, (homs * n_x, lam_name, q_name, q, homs, n_x))
    return total, largest
