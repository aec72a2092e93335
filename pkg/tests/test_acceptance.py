"""Acceptance checks, one test per criterion.

Every comparison is exact (integers, rationals, set equality); no tolerance is
applied anywhere.  Each test records a single PASS/FAIL line, printed again
in pytest's terminal summary.  Run on its own with

    pytest tests/test_acceptance.py -v

Setting GEOFIX_FULL_GRID=1 additionally runs the literal twisted fixed point
grid (every σ and every X), which is far beyond a laptop budget.
"""

import itertools
import json
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

import grids
from geofix.acyc import (
    faithfulness_shadow,
    free_smash,
    in_D_ACyc,
    phi,
    smash,
    stretch,
    sym,
)
from geofix.bundles import ifcrit_check, inheritably_faithful_bruteforce, iterphi_bundle_iso
from geofix.cli import splitting_catalog_json
from geofix.errors import CapExceeded, FaithfulnessHypothesisFails
from geofix.geosym import (
    ENUMERATE_LIMIT,
    centralizer_product_check,
    hom_count_identity,
    irreducibility_scan,
    irreducible_catalog,
    n_vectors,
)
from geofix.groups import enumerate_subgroups, named_group, small_groups
from geofix.gsets import GSet, all_gsets, hhr_diagonal, plus
from geofix.linalg import same_span
from geofix.tomdieck import aut_gset, count_hom_classes, gset_iso_classes, splitting_catalog
from geofix.twisted import all_transporter_choices, brute_force_twisted_fixed, twisted_fixed
from report import record

TESTS = Path(__file__).parent
EXACT = "exact, 0 mismatches allowed"


@pytest.fixture(scope="module")
def oracle_grid():
    return list(grids.oracle_cells())


def _grid_summary(cells):
    modes = {}
    for c in cells:
        modes[c.sigma_mode] = modes.get(c.sigma_mode, 0) + 1
    return ", ".join(f"{v} cells {k}" for k, v in sorted(modes.items()))


# 1 -------------------------------------------------------------------------------------

def test_criterion_1_twisted_oracle(oracle_grid):
    pairs, bad = 0, []
    for cell in oracle_grid:
        for sigma in cell.sigmas:
            for X in cell.bisets:
                pairs += 1
                fast = twisted_fixed(X, sigma).dim
                slow = brute_force_twisted_fixed(X, sigma)
                if fast != slow:
                    bad.append((cell.lam_name, cell.q_name, cell.q, sigma.key, X.n, fast, slow))
    record(1, "twisted fixed dim = linear-algebra oracle (tiered seeded grid)", not bad,
           f"{pairs} (σ, X) pairs over {len(oracle_grid)} cells (|Λ|≤8, |Q|≤4, q≤4, dim X≤4); "
           f"{_grid_summary(oracle_grid)}; mismatches {len(bad)}; tolerance {EXACT}")
    assert not bad, bad[:5]


def test_criterion_1_literal_grid(oracle_grid):
    """The exhaustive grid: sized exactly and timed by default, run only with GEOFIX_FULL_GRID=1."""
    title = "literal grid (every σ, every X) within 5 minutes"
    if os.environ.get("GEOFIX_FULL_GRID") != "1":
        pairs, (big, lam, qn, q, homs, n_x) = grids.literal_grid_size()
        sample = [(X, s) for c in oracle_grid[::7] for s in c.sigmas[:3] for X in c.bisets[:3]]
        start = time.perf_counter()
        for X, s in sample:
            twisted_fixed(X, s)
            brute_force_twisted_fixed(X, s)
        per_pair = (time.perf_counter() - start) / len(sample)
        hours = pairs * per_pair / 3600
        record("1-full", title, False,
               f"not attainable: {pairs} pairs, largest cell Λ={lam}, Q={qn}, q={q} has {homs} homs "
               f"× {n_x} bi-sets; at {per_pair * 1e3:.2f} ms per pair that is about {hours:.0f} h; "
               f"set GEOFIX_FULL_GRID=1 to run it anyway")
        pytest.fail(f"exhaustive grid needs about {hours:.0f} h, budget is 5 min")
    pairs, bad = 0, 0
    for cell in grids.oracle_cells(full=True):
        for sigma in cell.sigmas:
            options = all_transporter_choices(sigma)
            alt = [o[-1] for o in options]
            for X in cell.bisets:
                pairs += 1
                ref = twisted_fixed(X, sigma)
                bad += ref.dim != brute_force_twisted_fixed(X, sigma)
                bad += not same_span(twisted_fixed(X, sigma, alt).basis, ref.basis, sigma.q * X.n)
    record("1-full", title, bad == 0,
           f"{pairs} pairs, oracle and one alternative transporter choice each; mismatches {bad}; "
           f"tolerance {EXACT}")
    assert bad == 0


# 2 -------------------------------------------------------------------------------------

def test_criterion_2_transporter_independence(oracle_grid):
    rng = random.Random(2)
    checks, bad = 0, []
    for cell in oracle_grid:
        for sigma in cell.sigmas:
            options = all_transporter_choices(sigma)
            alternatives = [[rng.choice(o) for o in options] for _ in range(3)]
            for X in cell.bisets:
                ref = twisted_fixed(X, sigma)
                ncols = sigma.q * X.n
                for tr in alternatives:
                    checks += 1
                    alt = twisted_fixed(X, sigma, tr)
                    if alt.dim != ref.dim or not same_span(alt.basis, ref.basis, ncols):
                        bad.append((cell.lam_name, cell.q_name, sigma.key, tr))
    record(2, "fixed subspace independent of transporters", not bad,
           f"{checks} recomputations (3 seeded transporter choices per σ, every X of criterion 1); "
           f"span mismatches {len(bad)}; tolerance {EXACT}")
    assert not bad, bad[:5]


# 3 -------------------------------------------------------------------------------------

def _normals(G):
    return [L for L in enumerate_subgroups(G) if L.is_normal()]


def test_criterion_3_faithfulness_criterion():
    checked = passed = 0
    counter = []
    families = [grids.small_bundles(8, 3), grids.two_orbit_bundles(4, 2)]
    for gn, qn, eta in itertools.chain(*families):
        for L in _normals(eta.gamma):
            checked += 1
            if not ifcrit_check(eta, L):
                continue
            passed += 1
            res = inheritably_faithful_bruteforce(eta, L, 3)
            if not res:
                counter.append((gn, qn, eta.fiber_dims(), L.members, res.witness))
    reg_total = reg_fail = 0
    for gn, qn, eta in grids.regular_fiber_bundles(8):
        for L in _normals(eta.gamma):
            reg_total += 1
            reg_fail += not ifcrit_check(eta, L)
    free_total = free_fail = 0
    for gn, L, eta in grids.lambda_free_bundles(8):
        free_total += 1
        free_fail += not ifcrit_check(eta, L)
    ok = not counter and reg_fail == 0 and free_fail == 0
    record(3, "criterion ⇒ inheritably faithful up to q=3", ok,
           f"{checked} (η, Λ) with |Γ×Q|≤8, fiber dim≤3, one base orbit plus two-orbit bases for "
           f"|Γ×Q|≤4; {passed} satisfy the criterion, counterexamples {len(counter)}; "
           f"regular-isotropy instances {reg_total - reg_fail}/{reg_total} pass, "
           f"Λ-free Q-trivial instances {free_total - free_fail}/{free_total} pass; tolerance {EXACT}")
    assert ok, counter[:3]


# 4 -------------------------------------------------------------------------------------

def test_criterion_4_iterphi():
    verified = hypothesis = 0
    failures = []
    for name in ("C4", "C6", "S3", "D4"):
        G = named_group(name)
        normals = _normals(G)
        chains = [(K, L, M) for K in normals for L in normals for M in normals
                  if K.is_subgroup_of(L) and L.is_subgroup_of(M)]
        for qn, eta in grids.iterphi_bundles(G):
            for K, L, M in chains:
                try:
                    iso = iterphi_bundle_iso(eta, K, L, M)
                except FaithfulnessHypothesisFails:
                    hypothesis += 1
                    continue
                if iso.ok:
                    verified += 1
                else:
                    failures.append((name, qn, K.order, L.order, M.order, iso.problems))
    record(4, "η(M|K) ≅ (η(Λ|K))(M|Λ)", not failures,
           f"{verified} isomorphisms verified over every normal chain in C4, C6, S3, D4; "
           f"{hypothesis} instances excluded because η(Λ|K) is not Q-faithful; "
           f"failures {len(failures)}; tolerance {EXACT}")
    assert not failures, failures[:3]


# 5 -------------------------------------------------------------------------------------

def test_criterion_5_acyc_closure():
    suite = grids.acyc_suite()
    shadow_cache: dict = {}
    shadow_over_cap = []

    def shadow_ok(d):
        if d not in shadow_cache:
            try:
                shadow_cache[d] = faithfulness_shadow(d).ok
            except CapExceeded:
                shadow_cache[d] = None
        return shadow_cache[d]

    def phi_step(d, k):
        ok = shadow_ok(d)
        if ok is False:
            raise AssertionError(f"shadow fails on {d.tag}")
        if ok is None:
            shadow_over_cap.append(d.tag)
        return phi(d, k, check_shadow=False).data

    def ops(p):
        ks = [2] if p else [2, 3]
        out = [(f"stretch{k}", lambda d, k=k: stretch(d, k)) for k in ks]
        out += [(f"phi{k}", lambda d, k=k: phi_step(d, k)) for k in ks]
        out += [("sym2", lambda d: sym(d, 2)), ("free", free_smash)]
        partners = [suite[0][0], suite[1][0]] + ([] if p else [suite[5][0]])
        out += [(f"smash[{b.tag}]", lambda d, b=b: smash(d, b)) for b in partners]
        return out

    composites = stretches = 0
    bad = []
    for d0, p in suite:
        for length in (1, 2, 3):
            for seq in itertools.product(ops(p), repeat=length):
                d = d0
                for name, f in seq:
                    out = f(d)
                    if name.startswith("stretch"):
                        stretches += 1
                        if not out.ok:
                            bad.append(("hom bijection", d0.tag, [s[0] for s in seq]))
                        out = out.data
                    d = out
                composites += 1
                if not in_D_ACyc(d, p):
                    bad.append(("membership", d0.tag, [s[0] for s in seq], in_D_ACyc(d, p).reasons))
    record(5, "D(ACyc) closed under stretch, smash, phi, sym, free smash", not bad,
           f"{composites} composites of ≤3 operations from 10 generators (5 checked 2-typically); "
           f"{stretches} stretch steps with |Hom| preserved; failures {len(bad)}; "
           f"{len(shadow_over_cap)} phi steps applied with the shadow precondition over the "
           f"enumeration cap; tolerance {EXACT}")
    assert not bad, bad[:3]


# 6 -------------------------------------------------------------------------------------

def _lam_q_grid():
    lams = [G for _, G in small_groups(6)]
    qs = [G for _, G in small_groups(3)]
    return [(L, Q) for L in lams for Q in qs]


def test_criterion_6_hom_count_identity():
    cases, bad = 0, []
    for L, Q in _lam_q_grid():
        cat = irreducible_catalog(L, Q)
        for q in range(1, 5):
            cases += 1
            r = hom_count_identity(L, Q, q, cat)
            if not r.ok:
                bad.append((L.name, Q.name, q, r.hom_count, r.index_sum))
    record(6, "|Hom(Λ, Σ_q≀Q)| = Σ [Σ'_q : C(τ(n))]", not bad,
           f"{cases} cases (|Λ|≤6, |Q|≤3, q≤4), each hom also classified to its n; "
           f"failures {len(bad)}; tolerance {EXACT}")
    assert not bad, bad


# 7 -------------------------------------------------------------------------------------

def test_criterion_7_centralizer_formula():
    cases, bad = 0, []
    for L, Q in _lam_q_grid():
        cat = irreducible_catalog(L, Q)
        for q in range(1, 7):
            for nv in n_vectors(cat.t, q):
                cases += 1
                r = centralizer_product_check(cat, nv)
                if not r.ok:
                    bad.append((L.name, Q.name, nv, r))
    record(7, "C(τ(n)) = ∏ Σ_{n_i} ≀ C(τ_i)", not bad,
           f"{cases} vectors n with n·t≤6 on the criterion-6 grid; C(τ(n)) by listing Σ'_q up to "
           f"order {ENUMERATE_LIMIT}, by Schreier-Sims above; failures {len(bad)}; tolerance {EXACT}")
    assert not bad, bad[:3]


# 8 -------------------------------------------------------------------------------------

def test_criterion_8_irreducibility_bound():
    found, skipped, bad = 0, [], []
    for name, L in small_groups(8):
        r = irreducibility_scan(L)
        found += sum(c for q, c in r.counts.items() if q > L.order)
        skipped += [(name, q) for q in r.skipped]
        if not r.ok:
            bad.append(name)
    record(8, "no transitive action of degree > |Λ|", not bad and found == 0,
           f"14 groups of order ≤8 scanned to q=|Λ|+2; irreducibles above |Λ| found {found}; "
           f"subgroup-index check covers every q; direct Hom(Λ, Σ_q) enumeration skipped for "
           f"{len(skipped)} (Λ, q) beyond the Σ_q materialization cap; tolerance {EXACT}")
    assert not bad and found == 0


# 9 -------------------------------------------------------------------------------------

def test_criterion_9_tom_dieck():
    class_cases = aut_cases = 0
    bad = []
    for name, G in small_groups(12):
        for q in range(6):
            classes = gset_iso_classes(G, q, cross_check=True)
            class_cases += 1
            if q and len(classes) != count_hom_classes(G, q):
                bad.append(("classes", name, q))
            for c in classes:
                r = aut_gset(c.representative, verify=True)
                aut_cases += 1
                if not (r.order == r.formula_order and r.isomorphism_verified):
                    bad.append(("aut", name, q, c.multiplicities))
    fixture_ok = True
    for name in ("C2", "S3"):
        G = named_group(name)
        frozen = json.loads((TESTS / "fixtures" / f"{name.lower()}_catalog.json").read_text())["result"]
        fresh = json.loads(json.dumps(splitting_catalog_json(splitting_catalog(G, 1, 3), G)))
        fixture_ok &= fresh == frozen
    ok = not bad and fixture_ok
    record(9, "G-set classes, Aut formula, splitting catalogs", ok,
           f"{class_cases} (G, q) with |G|≤12, q≤5 agree both ways; {aut_cases} automorphism "
           f"groups match ∏ q_i!·|WH_i|^q_i with the isomorphism checked; C2 and S3 catalogs "
           f"{'match' if fixture_ok else 'differ from'} the committed fixtures; tolerance {EXACT}")
    assert ok, bad[:3]


# 10 ------------------------------------------------------------------------------------

def test_criterion_10_hhr_diagonal():
    cases, bad = 0, []
    for name, G in small_groups(8):
        empty = GSet(G, 0, [()] * len(G.generators))
        sets = all_gsets(G, 4)
        for S in sets:
            for X in [empty] + sets:
                cases += 1
                if not hhr_diagonal(plus(X), S).ok:
                    bad.append((name, S.n, X.n))
    record(10, "HHR diagonal is a bijection", not bad,
           f"{cases} (G, S, A) with |G|≤8, 1≤|S|≤4, A = X₊ for every X with |X|≤4 (so |A|≤5) up to "
           f"isomorphism; failures {len(bad)}; tolerance {EXACT}")
    assert not bad, bad[:3]


# 11 ------------------------------------------------------------------------------------

def _run_corpus(seed):
    outputs = {}
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    for path in sorted((TESTS / "cli_corpus").glob("*.json")):
        case = json.loads(path.read_text())
        r = subprocess.run([sys.executable, "-m", "geofix", *case["argv"], "--in", "-"],
                           input=json.dumps(case["input"]).encode(), capture_output=True, env=env)
        outputs[path.stem] = (r.returncode, r.stdout, case["exit"])
    return outputs


def test_criterion_11_cli_determinism():
    first, second = _run_corpus(1), _run_corpus(2)
    differ = [k for k in first if first[k][:2] != second[k][:2]]
    wrong_exit = [k for k, (code, _, want) in first.items() if code != want]
    ok = not differ and not wrong_exit
    record(11, "CLI corpus output byte-identical across runs", ok,
           f"{len(first)} corpus cases run twice in fresh processes with different hash seeds; "
           f"differing outputs {len(differ)}; unexpected exit codes {len(wrong_exit)}; "
           f"tolerance {EXACT}")
    assert ok, (differ, wrong_exit)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
