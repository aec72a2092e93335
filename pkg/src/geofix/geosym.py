"""Irreducible wreath homomorphisms, block-sum classification and centralizers.

Σ'_q denotes Σ_q ≀ Q.  A homomorphism σ: Λ → Σ'_q is irreducible when Λ acts
transitively on {0..q-1}.  Every transitive σ is conjugate to one induced
from a subgroup H ≤ Λ of index q and some α: H → Q, which is how the catalog
is generated.  Conjugacy between two transitive homomorphisms is decided by
a search over the q·|Q| choices of (image of coordinate 0, its cofactor):
equivariance determines the rest of the conjugator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from sympy.combinatorics import Permutation, PermutationGroup

from .bundles import BundleData, is_q_faithful, make_biset, sym_power
from .config import caps
from .errors import (
    CapExceeded,
    FaithfulnessFails,
    InternalError,
    NotNested,
    NotNormal,
    NotPairwiseNonConjugate,
    ValidationError,
)
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    as_subgroup,
    enumerate_homs,
    enumerate_subgroups,
    identity_perm,
    symmetric,
    wreath,
    wreath_identity,
    wreath_mul,
    wreath_order,
    WreathGroup,
)
from .gsets import orbit_partition
from .twisted import WreathHom, block_sum

Wreath = tuple[tuple[int, ...], tuple[int, ...]]


def is_irreducible(sigma: WreathHom) -> bool:
    gens = [sigma.s(g) for g in sigma.source.generators]
    return len(orbit_partition(sigma.q, gens)) == 1


def induced_hom(lam: FinGroup, H, alpha: GroupHom) -> WreathHom:
    """Ind(H, α): Λ permutes the left cosets of H (ordered by smallest member).

    If λγ_ζ = γ_ζ' h with γ the coset minima, then s(λ)[ζ] = ζ' and the
    cofactor at ζ' is α(h).
    """
    H = as_subgroup(lam, H)
    if alpha.source != H.as_group:
        raise ValidationError("α must be defined on the inducing subgroup")
    Q = alpha.target
    cosets = H.left_cosets()
    reps = [c[0] for c in cosets]
    where = {x: z for z, c in enumerate(cosets) for x in c}
    q = len(cosets)
    images = []
    for x in range(lam.order):
        s = [0] * q
        a = [0] * q
        for z, g in enumerate(reps):
            y = lam.mul(x, g)
            z2 = where[y]
            h = lam.mul(lam.inv(reps[z2]), y)
            s[z] = z2
            a[z2] = alpha(H.from_parent(h))
        images.append((tuple(a), tuple(s)))
    return WreathHom(lam, q, Q, images)


def _transversal(sigma: WreathHom) -> list[int]:
    """For each coordinate i some λ with s(λ)[0] = i (transitive σ)."""
    out: list[int | None] = [None] * sigma.q
    for x in range(sigma.source.order):
        i = sigma.s(x)[0]
        if out[i] is None:
            out[i] = x
    if None in out:
        raise ValidationError("homomorphism is not transitive")
    return out  # type: ignore[return-value]


def _conjugators(sigma: WreathHom, tau: WreathHom, first_only: bool) -> list[Wreath]:
    """All w with w⁻¹σw = τ, for transitive σ and τ of equal cardinality."""
    if sigma.q != tau.q or sigma.Q != tau.Q or sigma.source != tau.source:
        return []
    q, Q, L = sigma.q, sigma.Q, sigma.source
    trans = _transversal(tau)
    out = []
    for j in range(q):
        pi = [sigma.s(x)[j] for x in trans]
        if len(set(pi)) != q:
            continue
        for c0 in range(Q.order):
            c = [0] * q
            for i, x in enumerate(trans):
                # c_{π(i)} = a_{π(i)}(λ) · c_{π(0)} · b_i(λ)⁻¹ where τ's s(λ)[0] = i
                c[pi[i]] = Q.mul(Q.mul(sigma.a(x)[pi[i]], c0), Q.inv(tau.a(x)[i]))
            w = (tuple(c), tuple(pi))
            if all(wreath_mul(Q, sigma(g), w) == wreath_mul(Q, w, tau(g)) for g in L.generators):
                out.append(w)
                if first_only:
                    return out
    return out


def find_conjugator(sigma: WreathHom, tau: WreathHom) -> Wreath | None:
    found = _conjugators(sigma, tau, True)
    return found[0] if found else None


def self_conjugators(tau: WreathHom) -> list[Wreath]:
    """C(τ) for transitive τ, element by element."""
    return _conjugators(tau, tau, False)


@dataclass
class IrreducibleCatalog:
    lam: FinGroup
    Q: FinGroup
    taus: list[WreathHom]

    @property
    def t(self) -> list[int]:
        return [tau.q for tau in self.taus]

    @property
    def T(self) -> int:
        return len(self.taus)

    @cached_property
    def centralizers(self) -> list[list[Wreath]]:
        return [self_conjugators(tau) for tau in self.taus]

    def index_of(self, sigma: WreathHom) -> int | None:
        for i, tau in enumerate(self.taus):
            if tau.q == sigma.q and find_conjugator(sigma, tau) is not None:
                return i
        return None


def irreducible_catalog(lam: FinGroup, Q: FinGroup) -> IrreducibleCatalog:
    """Class representatives of transitive Λ → Σ'_q over all q ≤ |Λ|, ordered by (q, generator images)."""
    found: dict[int, list[WreathHom]] = {}
    for H in enumerate_subgroups(lam):
        for alpha in enumerate_homs(H.as_group, Q):
            tau = induced_hom(lam, H, alpha)
            found.setdefault(tau.q, []).append(tau)
    reps = []
    for q in sorted(found):
        classes: list[WreathHom] = []
        for tau in sorted(found[q], key=lambda t: t.key):
            if not any(find_conjugator(tau, r) is not None for r in classes):
                classes.append(tau)
        reps.extend(classes)
    return IrreducibleCatalog(lam, Q, reps)


# classification ------------------------------------------------------------------------

def _restrict_to_orbit(sigma: WreathHom, orbit: Sequence[int]) -> WreathHom:
    pos = {x: k for k, x in enumerate(orbit)}
    images = []
    for lam in range(sigma.source.order):
        a, s = sigma(lam)
        images.append((tuple(a[x] for x in orbit), tuple(pos[s[x]] for x in orbit)))
    return WreathHom(sigma.source, len(orbit), sigma.Q, images, check=False)


def tau_of(catalog: IrreducibleCatalog, n_vec: Sequence[int]) -> WreathHom:
    """τ(n⃗) = τ_1^{⊕n_1} ⊕ … ⊕ τ_T^{⊕n_T}."""
    parts = [tau for tau, k in zip(catalog.taus, n_vec) for _ in range(k)]
    if not parts:
        raise ValidationError("n⃗ is zero")
    return block_sum(*parts)


@dataclass
class BlockDecomposition:
    n_vec: tuple[int, ...]
    conjugator: Wreath            # u with u⁻¹σu = τ(n⃗)
    constituents: list[int]       # catalog index per s-orbit (orbits ordered by minimum)
    verified: bool


def classify(sigma: WreathHom, catalog: IrreducibleCatalog) -> BlockDecomposition:
    """The unique n⃗ with σ conjugate to τ(n⃗), with an explicit conjugator."""
    if sigma.source != catalog.lam or sigma.Q != catalog.Q:
        raise ValidationError("σ does not match the catalog's groups")
    orbits = orbit_partition(sigma.q, [sigma.s(g) for g in sigma.source.generators])
    ident, local = [], []
    for orb in orbits:
        part = _restrict_to_orbit(sigma, orb)
        hit = None
        for i, tau in enumerate(catalog.taus):
            if tau.q == len(orb):
                w = find_conjugator(part, tau)
                if w is not None:
                    hit = (i, w)
                    break
        if hit is None:
            raise InternalError(f"orbit {orb} matches no catalog entry")
        ident.append(hit[0])
        local.append(hit[1])
    n_vec = [0] * catalog.T
    for i in ident:
        n_vec[i] += 1
    order = sorted(range(len(orbits)), key=lambda k: (ident[k], orbits[k][0]))
    q = sigma.q
    pi = [0] * q
    c = [0] * q
    off = 0
    for k in order:
        orb = orbits[k]
        cl, pl = local[k]
        for x in range(len(orb)):
            pi[off + x] = orb[pl[x]]
            c[orb[pl[x]]] = cl[pl[x]]
        off += len(orb)
    u = (tuple(c), tuple(pi))
    target = tau_of(catalog, n_vec)
    verified = sigma.conjugate(u).images == target.images
    if not verified:
        raise InternalError("assembled conjugator does not carry σ to τ(n⃗)")
    return BlockDecomposition(tuple(n_vec), u, ident, verified)


# centralizers ---------------------------------------------------------------------------

def wreath_generator_perms(q: int, Q: FinGroup) -> list[tuple[int, ...]]:
    gens = [WreathGroup.encode_with(q, Q, (0,) * q, t) for t in symmetric(q).generator_perms()]
    for i in range(q):
        for g in Q.generators:
            a = [0] * q
            a[i] = g
            gens.append(WreathGroup.encode_with(q, Q, tuple(a), identity_perm(q)))
    return gens or [identity_perm(q * Q.degree)]


def _sympy_group(perms, degree: int) -> PermutationGroup:
    perms = list(perms) or [identity_perm(degree)]
    return PermutationGroup([Permutation(list(p), size=degree) for p in perms])


@dataclass
class Centralizer:
    order: int
    generators: list[Wreath]
    elements: list[Wreath] | None = None     # present when computed by brute force


def _decode_perm(q: int, Q: FinGroup, p) -> Wreath:
    d = Q.degree
    s = tuple(p[i * d] // d for i in range(q))
    a = [0] * q
    for i in range(q):
        j = s[i]
        a[j] = Q.index[tuple(p[i * d + x] - j * d for x in range(d))]
    return tuple(a), s


def _greedy_generators(Q: FinGroup, els: list[Wreath]) -> list[Wreath]:
    """Generators for the subgroup listed in els: add any element not yet reached."""
    q = len(els[0][1])
    reached = {wreath_identity(q)}
    gens: list[Wreath] = []
    for x in els:
        if x in reached:
            continue
        gens.append(x)
        todo = list(reached)
        while todo:
            y = todo.pop()
            for g in gens:
                z = wreath_mul(Q, y, g)
                if z not in reached:
                    reached.add(z)
                    todo.append(z)
    return gens


ENUMERATE_LIMIT = 5040


def centralizer(sigma: WreathHom, enumerate_limit: int | None = None) -> Centralizer:
    """C(σ) ≤ Σ'_q: by listing Σ'_q when |Σ'_q| ≤ enumerate_limit, else Schreier–Sims."""
    q, Q = sigma.q, sigma.Q
    imgs = [sigma(g) for g in sigma.source.generators]
    limit = min(ENUMERATE_LIMIT if enumerate_limit is None else enumerate_limit, caps().materialize)
    if wreath_order(q, Q) <= limit:
        W = wreath(q, Q)
        els = []
        for w in range(W.order):
            x = W.decode(w)
            if all(wreath_mul(Q, im, x) == wreath_mul(Q, x, im) for im in imgs):
                els.append(x)
        return Centralizer(len(els), _greedy_generators(Q, els), els)
    deg = q * Q.degree
    W = _sympy_group(wreath_generator_perms(q, Q), deg)
    S = _sympy_group([sigma.perm(g) for g in sigma.source.generators], deg)
    C = W.centralizer(S)
    gens = [_decode_perm(q, Q, p.array_form) for p in C.generators]
    return Centralizer(int(C.order()), gens)


@dataclass
class ProductCheck:
    ok: bool
    expected_order: int
    generated_order: int
    centralizer_order: int
    commutes: bool


def centralizer_product_check(catalog: IrreducibleCatalog, n_vec: Sequence[int],
                              taus: Sequence[WreathHom] | None = None) -> ProductCheck:
    """Embed ∏ Σ_{n_i} ≀ C(τ_i) block-wise and compare with C(τ(n⃗))."""
    taus = list(catalog.taus if taus is None else taus)
    if len(n_vec) != len(taus):
        raise ValidationError("n⃗ must have one entry per constituent")
    used = [i for i, k in enumerate(n_vec) if k]
    for a, b in itertools.combinations(used, 2):
        if taus[a].q == taus[b].q and find_conjugator(taus[a], taus[b]) is not None:
            raise NotPairwiseNonConjugate(f"constituents {a} and {b} are conjugate")
    for i in used:
        if not is_irreducible(taus[i]):
            raise NotPairwiseNonConjugate(f"constituent {i} is not irreducible")
    parts = [taus[i] for i in range(len(taus)) for _ in range(n_vec[i])]
    big = block_sum(*parts)
    q, Q = big.q, big.Q
    gens: list[Wreath] = []
    off = 0
    expected = 1
    for i in range(len(taus)):
        k, t = n_vec[i], taus[i].q
        if not k:
            continue
        C = self_conjugators(taus[i])
        expected *= math.factorial(k) * len(C) ** k
        # C(τ_i) on the first copy, then the copy permutations of Σ_k
        for c, pi in C:
            a = [0] * q
            s = list(range(q))
            for x in range(t):
                s[off + x] = off + pi[x]
                a[off + x] = c[x]
            gens.append((tuple(a), tuple(s)))
        for tp in symmetric(k).generator_perms():
            s = list(range(q))
            for blk in range(k):
                for x in range(t):
                    s[off + blk * t + x] = off + tp[blk] * t + x
            gens.append(((0,) * q, tuple(s)))
        off += k * t
    imgs = [big(g) for g in big.source.generators]
    commutes = all(wreath_mul(Q, im, w) == wreath_mul(Q, w, im) for im in imgs for w in gens)
    deg = q * Q.degree
    generated = int(_sympy_group([WreathGroup.encode_with(q, Q, *w) for w in gens], deg).order())
    cent = centralizer(big).order
    ok = commutes and generated == expected == cent
    return ProductCheck(ok, expected, generated, cent, commutes)


# counting ---------------------------------------------------------------------------------

def n_vectors(t: Sequence[int], q: int) -> list[tuple[int, ...]]:
    """All n⃗ ≥ 0 with n⃗·t⃗ = q, in lexicographic order."""
    out = []
    T = len(t)

    def rec(i: int, left: int, acc: list[int]):
        if left == 0:
            out.append(tuple(acc) + (0,) * (T - i))
            return
        if i == T:
            return
        for k in range(left // t[i] + 1):
            rec(i + 1, left - k * t[i], acc + [k])

    rec(0, q, [])
    return out


def count_n_vectors(t: Sequence[int], q: int) -> int:
    """Number of n⃗ with n⃗·t⃗ = q, i.e. conjugacy classes of Λ → Σ'_q, without listing them."""
    ways = [1] + [0] * q
    for ti in t:
        for x in range(ti, q + 1):
            ways[x] += ways[x - ti]
    return ways[q]


@dataclass
class CountIdentity:
    ok: bool
    hom_count: int
    index_sum: int
    per_n_vec: dict[tuple[int, ...], tuple[int, int]]   # n⃗ ↦ (homs classified there, index)


def hom_count_identity(lam: FinGroup, Q: FinGroup, q: int,
                       catalog: IrreducibleCatalog | None = None) -> CountIdentity:
    """|Hom(Λ, Σ'_q)| = Σ_{n⃗·t⃗=q} [Σ'_q : C(τ(n⃗))], with every hom classified to its n⃗."""
    catalog = catalog or irreducible_catalog(lam, Q)
    W = wreath(q, Q)
    homs = enumerate_homs(lam, W)
    per: dict[tuple[int, ...], list[int]] = {}
    for n_vec in n_vectors(catalog.t, q):
        C = centralizer(tau_of(catalog, n_vec))
        per[n_vec] = [0, W.order // C.order]
    for h in homs:
        dec = classify(WreathHom.from_hom(h), catalog)
        per[dec.n_vec][0] += 1
    index_sum = sum(v[1] for v in per.values())
    ok = len(homs) == index_sum and all(a == b for a, b in per.values())
    return CountIdentity(ok, len(homs), index_sum, {k: (a, b) for k, (a, b) in per.items()})


@dataclass
class IrreducibilityScan:
    ok: bool
    counts: dict[int, int]          # q ↦ transitive homs Λ → Σ_q found by direct enumeration
    subset_indices: list[int]       # indices of all multiplicatively closed subsets containing e
    skipped: list[int]


def irreducibility_scan(lam: FinGroup, q_max: int | None = None) -> IrreducibilityScan:
    """No transitive Λ-action on q > |Λ| points, checked two independent ways.

    Direct: enumerate Hom(Λ, Σ_q) wherever Σ_q can be materialized and count
    transitive ones.  Exhaustive: a transitive action of degree q has a point
    stabilizer of index q; all closed subsets of Λ containing e are listed
    (without the subgroup enumerator) and their indices collected.
    """
    q_max = lam.order + 2 if q_max is None else q_max
    counts, skipped = {}, []
    for q in range(1, q_max + 1):
        if math.factorial(q) > caps().materialize:
            skipped.append(q)
            continue
        S = symmetric(q)
        try:
            homs = enumerate_homs(lam, S)
        except CapExceeded:
            skipped.append(q)
            continue
        counts[q] = sum(
            1 for h in homs
            if len(orbit_partition(q, [S.elements[h(g)] for g in lam.generators])) == 1)
    others = list(range(1, lam.order))
    indices = set()
    if lam.order <= 16:
        for r in range(len(others) + 1):
            for sub in itertools.combinations(others, r):
                members = {0, *sub}
                if all(lam.mul(a, b) in members for a in members for b in members):
                    indices.add(lam.order // len(members))
    ok = all(c == 0 for q, c in counts.items() if q > lam.order) and max(indices, default=1) <= lam.order
    return IrreducibilityScan(ok, counts, sorted(indices), skipped)


# summands of fixed points of symmetric powers ---------------------------------------------------

@dataclass
class SummandEntry:
    q: int
    tau_index: int
    base: list[tuple]              # base points of Sym^q η fixed by τ, as tuples of η base points
    fiber_dims: list[int]
    residual_order: int
    residual_hash: str

    @property
    def fiber_dim(self) -> int | None:
        dims = set(self.fiber_dims)
        return dims.pop() if len(dims) == 1 else None


@dataclass
class SummandCatalog:
    entries: list[SummandEntry]
    q_range: list[int]
    catalog: IrreducibleCatalog


def _component(S: BundleData, lam: Subgroup, tau: WreathHom, Kgens: Sequence[int]):
    """Base points of S fixed by τ (through Λ) and the twisted orbit counts of their fibers."""
    W = S.Q
    B, E = S.base, S.total
    LG = lam.as_group
    lg = [lam.to_parent(g) for g in LG.generators]
    wi = [W.index[tau.perm(g)] for g in LG.generators]
    kmap = {}
    if Kgens:
        for k in Kgens:
            kmap[k] = W.index[tau.perm(lam.from_parent(k))]
    out = []
    for b in range(B.n):
        if any(B.ltable[l][b] != B.rtable[w][b] for l, w in zip(lg, wi)):
            continue
        fib = S.fibers[b]
        if Kgens and not all(E.twisted(k, kmap[k])[e] == e for k in Kgens for e in fib):
            continue
        pos = {e: i for i, e in enumerate(fib)}
        perms = [E.twisted(l, w) for l, w in zip(lg, wi)]
        orbs = orbit_partition(len(fib), [[pos[p[e]] for e in fib] for p in perms])
        out.append((B.labels[b], len(orbs)))
    return out


def xq_catalog(eta: BundleData, lam, K=None, catalog: IrreducibleCatalog | None = None) -> SummandCatalog:
    """For q ≤ |Λ| and each irreducible τ of cardinality q: the τ-component of (Sym^q η)(Λ|K)."""
    f = is_q_faithful(eta)
    if not f:
        raise FaithfulnessFails(f"η is not Q-faithful (witness {f.witness})")
    L = as_subgroup(eta.gamma, lam)
    if not L.is_normal():
        raise NotNormal("Λ is not normal in Γ")
    Kgens: list[int] = []
    if K is not None:
        Ks = as_subgroup(eta.gamma, K)
        if not Ks.is_subgroup_of(L):
            raise NotNested("K is not contained in Λ")
        Kgens = list(Ks.generators)
    catalog = catalog or irreducible_catalog(L.as_group, eta.Q)
    entries = []
    qs = sorted(set(catalog.t))
    for q in qs:
        S = sym_power(eta, q)
        for i, tau in enumerate(catalog.taus):
            if tau.q != q:
                continue
            comp = _component(S, L, tau, Kgens)
            C = catalog.centralizers[i]
            CG = FinGroup(q * eta.Q.degree, [WreathGroup.encode_with(q, eta.Q, *w) for w in C])
            entries.append(SummandEntry(q, i, [c[0] for c in comp], [c[1] for c in comp],
                                        CG.order, CG.content_hash))
    return SummandCatalog(entries, qs, catalog)


def times_points(eta: BundleData, D: int) -> BundleData:
    """η × D for a finite set D with trivial actions: base B × D, fibers pulled back."""
    B, E = eta.base, eta.total
    base = make_biset(eta.gamma, eta.Q, B.n * D, lambda g, x: B.ltable[g][x // D] * D + x % D,
                      lambda x, s: B.rtable[s][x // D] * D + x % D,
                      labels=[(B.labels[b] if B.labels else b, d) for b in range(B.n) for d in range(D)])
    total = make_biset(eta.gamma, eta.Q, E.n * D, lambda g, x: E.ltable[g][x // D] * D + x % D,
                       lambda x, s: E.rtable[s][x // D] * D + x % D)
    return BundleData(eta.gamma, eta.Q, base, total,
                      [eta.projection[x // D] * D + x % D for x in range(E.n * D)])
