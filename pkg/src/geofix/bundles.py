"""Equivariant (Γ, Q) bundles over finite bases, stored by permutation bases.

A bundle is a pair of bi-sets with commuting left Γ and right Q actions: the
base B and the total basis E, plus an equivariant projection E → B.  The fiber
over b is spanned by the basis points projecting to b, so every fiber carries
an invariant permutation basis by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .config import caps
from .errors import (
    ActionMismatch,
    CapExceeded,
    FaithfulnessHypothesisFails,
    GroupMismatch,
    NotNested,
    NotNormal,
    ValidationError,
)
from .groups import (
    FinGroup,
    GroupHom,
    ProductGroup,
    Subgroup,
    as_subgroup,
    direct_product,
    enumerate_homs,
    enumerate_subgroups,
    identity_perm,
    trivial_group,
    wreath,
)
from .gsets import BiSet, GSet, as_biset, coset_gset, induce, orbit_partition


def make_biset(left: FinGroup, right: FinGroup, n: int, lact: Callable, ract: Callable,
               labels=None, check: bool = True) -> BiSet:
    """Bi-set from point functions lact(g, x) and ract(x, s) evaluated on generators."""
    limgs = [tuple(lact(g, x) for x in range(n)) for g in left.generators]
    rimgs = [tuple(ract(x, s) for x in range(n)) for s in right.generators]
    return BiSet(left, right, n, limgs, rimgs, labels, check=check)


class BundleData:
    """(Γ, Q) bundle: base bi-set, total-basis bi-set and projection."""

    def __init__(self, gamma: FinGroup, Q: FinGroup, base: BiSet, total: BiSet,
                 projection: Sequence[int], check: bool = True):
        self.gamma, self.Q = gamma, Q
        self.base, self.total = base, total
        self.projection = tuple(projection)
        if check:
            self.validate()
        fibers: list[list[int]] = [[] for _ in range(base.n)]
        for e, b in enumerate(self.projection):
            fibers[b].append(e)
        self.fibers = [tuple(f) for f in fibers]

    def validate(self) -> None:
        for X in (self.base, self.total):
            if X.left != self.gamma or X.right != self.Q:
                raise GroupMismatch("base and total space must carry the bundle's groups")
        if len(self.projection) != self.total.n:
            raise ValidationError("projection must be defined on every basis point")
        if any(not 0 <= b < self.base.n for b in self.projection):
            raise ValidationError("projection lands outside the base")
        pr = self.projection
        for gi, g in enumerate(self.gamma.generators):
            lb, le = self.base.left_images[gi], self.total.left_images[gi]
            if any(pr[le[e]] != lb[pr[e]] for e in range(self.total.n)):
                raise ActionMismatch(f"projection is not Γ-equivariant at generator {g}")
        for si, s in enumerate(self.Q.generators):
            rb, re = self.base.right_images[si], self.total.right_images[si]
            if any(pr[re[e]] != rb[pr[e]] for e in range(self.total.n)):
                raise ActionMismatch(f"projection is not Q-equivariant at generator {s}")

    def fiber(self, b: int) -> tuple[int, ...]:
        return self.fibers[b]

    def fiber_dim(self, b: int) -> int:
        return len(self.fibers[b])

    def fiber_dims(self) -> list[int]:
        return [len(f) for f in self.fibers]

    def base_orbits(self):
        return self.base.orbits()

    def isotropy(self, b: int) -> Subgroup:
        """(Γ×Q)_b, with (γ,s) acting by x ↦ γ·x·s⁻¹."""
        P = self.base.product_group
        return Subgroup(P, (p for p in range(P.order) if self.base.twisted(*P.split(p))[b] == b),
                        check=False)

    def fiber_rep(self, b: int) -> GSet:
        """The fiber at b as a permutation representation of its isotropy group."""
        H = self.isotropy(b)
        HG = H.as_group
        P = self.base.product_group
        fib = self.fibers[b]
        pos = {e: k for k, e in enumerate(fib)}
        imgs = []
        for h in HG.generators:
            p = self.total.twisted(*P.split(H.to_parent(h)))
            imgs.append(tuple(pos[p[e]] for e in fib))
        return GSet(HG, len(fib), imgs)

    @property
    def is_empty(self) -> bool:
        return self.base.n == 0

    def __repr__(self) -> str:
        return (f"<BundleData base {self.base.n} points, total {self.total.n} points, "
                f"|Γ| {self.gamma.order}, |Q| {self.Q.order}>")

    # constructors ---------------------------------------------------------------

    @classmethod
    def induced(cls, gamma: FinGroup, Q: FinGroup, pieces: Sequence[tuple]) -> "BundleData":
        """Bundle from orbit data: pieces are (isotropy ≤ Γ×Q, fiber set over isotropy).

        Each piece contributes the base orbit (Γ×Q)/H and total space
        (Γ×Q) ×_H fiber; (γ,s) acts on the left by x ↦ γ·x·s⁻¹.
        """
        P = direct_product(gamma, Q)
        base_parts, total_parts, proj = [], [], []
        boff = 0
        for H, Y in pieces:
            H = as_subgroup(P, H)
            if isinstance(Y, int):
                Y = GSet(H.as_group, Y, [identity_perm(Y)] * len(H.as_group.generators))
            B = coset_gset(P, H)
            E = induce(P, H, Y)
            base_parts.append(B)
            total_parts.append(E)
            proj.extend(boff + c for c, _ in E.labels)
            boff += B.n
        base = biset_from_product(P, base_parts)
        total = biset_from_product(P, total_parts)
        return cls(gamma, Q, base, total, proj)

    @classmethod
    def point(cls, gamma: FinGroup, Q: FinGroup, fiber) -> "BundleData":
        """Point base; ``fiber`` is a BiSet over (Γ, Q), a Γ-set (Q trivial) or a size."""
        if isinstance(fiber, int):
            fiber = make_biset(gamma, Q, fiber, lambda g, x: x, lambda x, s: x)
        fiber = as_biset(fiber, Q)
        if fiber.left != gamma or fiber.right != Q:
            raise GroupMismatch("fiber must carry the bundle's groups")
        base = make_biset(gamma, Q, 1, lambda g, x: 0, lambda x, s: 0)
        return cls(gamma, Q, base, fiber, [0] * fiber.n)

    @classmethod
    def empty(cls, gamma: FinGroup, Q: FinGroup) -> "BundleData":
        E = make_biset(gamma, Q, 0, None, None)
        return cls(gamma, Q, E, E, [])

    @classmethod
    def over_gset(cls, X: GSet, fiber_size: int = 1, Q: FinGroup | None = None) -> "BundleData":
        """Base X (Q acting trivially), total X × {0..k-1} with Γ acting on X only."""
        Q = Q or trivial_group()
        G, k = X.group, fiber_size
        base = make_biset(G, Q, X.n, lambda g, x: X.table[g][x], lambda x, s: x)
        total = make_biset(G, Q, X.n * k, lambda g, e: X.table[g][e // k] * k + e % k,
                           lambda e, s: e)
        return cls(G, Q, base, total, [e // k for e in range(X.n * k)])


def biset_from_product(P: ProductGroup, parts: Sequence[GSet]) -> BiSet:
    """The (G, Q) bi-set of a disjoint union of (G × Q)-sets."""
    G, Q = P.left, P.right
    n = sum(X.n for X in parts)
    offs = []
    o = 0
    for X in parts:
        offs.append(o)
        o += X.n

    def act(p):
        out = []
        for X, off in zip(parts, offs):
            out.extend(off + y for y in X.table[p])
        return tuple(out)

    limgs = [act(P.pair(g, 0)) for g in G.generators]
    # x·s = (e, s⁻¹)·x
    rimgs = [act(P.pair(0, Q.inv(s))) for s in Q.generators]
    return BiSet(G, Q, n, limgs, rimgs)


# faithfulness -------------------------------------------------------------------

@dataclass
class FaithfulnessResult:
    ok: bool
    witness: tuple | None = None     # (base point, element of Q_b acting trivially)

    def __bool__(self) -> bool:
        return self.ok


def is_q_faithful(eta: BundleData) -> FaithfulnessResult:
    """Q_b acts faithfully on E_b for every base point b."""
    Q = eta.Q
    for b in range(eta.base.n):
        fib = eta.fibers[b]
        for s in range(1, Q.order):
            if eta.base.rtable[s][b] != b:
                continue
            rt = eta.total.rtable[s]
            if all(rt[e] == e for e in fib):
                return FaithfulnessResult(False, (b, s))
    return FaithfulnessResult(True)


# restriction and products ----------------------------------------------------------

def pullback(eta: BundleData, gamma_hom: GroupHom | None = None,
             q_hom: GroupHom | None = None) -> BundleData:
    """Restrict along Γ' → Γ and Q' → Q (either may be omitted)."""
    G2 = gamma_hom.source if gamma_hom else eta.gamma
    Q2 = q_hom.source if q_hom else eta.Q
    if gamma_hom and gamma_hom.target != eta.gamma:
        raise GroupMismatch("Γ map does not land in the bundle's Γ")
    if q_hom and q_hom.target != eta.Q:
        raise GroupMismatch("Q map does not land in the bundle's Q")
    gm = gamma_hom or (lambda g: g)
    qm = q_hom or (lambda s: s)

    def re(X: BiSet) -> BiSet:
        return make_biset(G2, Q2, X.n, lambda g, x: X.ltable[gm(g)][x],
                          lambda x, s: X.rtable[qm(s)][x], X.labels, check=False)

    return BundleData(G2, Q2, re(eta.base), re(eta.total), eta.projection, check=False)


def restrict_groups(eta: BundleData, gamma_sub=None, q_sub=None) -> BundleData:
    """Pullback to subgroups Γ' ≤ Γ and Q' ≤ Q."""
    gh = qh = None
    if gamma_sub is not None:
        H = as_subgroup(eta.gamma, gamma_sub)
        gh = GroupHom(H.as_group, eta.gamma, [H.to_parent(h) for h in range(H.order)], check=False)
    if q_sub is not None:
        H = as_subgroup(eta.Q, q_sub)
        qh = GroupHom(H.as_group, eta.Q, [H.to_parent(h) for h in range(H.order)], check=False)
    return pullback(eta, gh, qh)


def restrict_base(eta: BundleData, points: Sequence[int]) -> BundleData:
    """Restriction to an invariant sub-bi-set of the base."""
    keep = sorted(set(points))
    bpos = {b: k for k, b in enumerate(keep)}
    for b in keep:
        for p in eta.base.left_images + eta.base.right_images:
            if p[b] not in bpos:
                raise ValidationError("base subset is not invariant")
    epts = [e for b in keep for e in eta.fibers[b]]
    epos = {e: k for k, e in enumerate(epts)}

    def sub(X: BiSet, pts, pos) -> BiSet:
        return make_biset(eta.gamma, eta.Q, len(pts), lambda g, x: pos[X.ltable[g][pts[x]]],
                          lambda x, s: pos[X.rtable[s][pts[x]]], check=False)

    return BundleData(eta.gamma, eta.Q, sub(eta.base, keep, bpos), sub(eta.total, epts, epos),
                      [bpos[eta.projection[e]] for e in epts], check=False)


def product(eta: BundleData, eta2: BundleData) -> BundleData:
    """Exterior product over (Γ, Q×Q'): base B×B', fiber E_b ⊕ E'_{b'}."""
    if eta.gamma != eta2.gamma:
        raise GroupMismatch("product of bundles needs a common Γ")
    G = eta.gamma
    PQ = direct_product(eta.Q, eta2.Q)
    B1, B2, E1, E2 = eta.base, eta2.base, eta.total, eta2.total
    n1, n2 = B1.n, B2.n
    base = make_biset(
        G, PQ, n1 * n2,
        lambda g, x: B1.ltable[g][x // n2] * n2 + B2.ltable[g][x % n2],
        lambda x, s: B1.rtable[PQ.split(s)[0]][x // n2] * n2 + B2.rtable[PQ.split(s)[1]][x % n2],
    )
    k1 = E1.n * n2

    def lt(g, e):
        if e < k1:
            return E1.ltable[g][e // n2] * n2 + B2.ltable[g][e % n2]
        e -= k1
        return k1 + B1.ltable[g][e // E2.n] * E2.n + E2.ltable[g][e % E2.n]

    def rt(e, s):
        a, b = PQ.split(s)
        if e < k1:
            return E1.rtable[a][e // n2] * n2 + B2.rtable[b][e % n2]
        e -= k1
        return k1 + B1.rtable[a][e // E2.n] * E2.n + E2.rtable[b][e % E2.n]

    n = k1 + n1 * E2.n
    total = make_biset(G, PQ, n, lt, rt)
    proj = [eta.projection[e // n2] * n2 + e % n2 for e in range(k1)]
    proj += [(e // E2.n) * n2 + eta2.projection[e % E2.n] for e in range(n1 * E2.n)]
    return BundleData(G, PQ, base, total, proj)


def sym_power(eta: BundleData, q: int, top: FinGroup | None = None) -> BundleData:
    """q-th power over (Γ, Σ≀Q) with Σ = ``top`` ≤ Σ_q (default Σ_q).

    Base points are tuples b ∈ B^q with (b·(a;s))_i = b_{s[i]}·a_{s[i]}; total
    points are (b, k, e) with e over b_k, and (b,k,e)·(a;s) = (b·(a;s), s⁻¹[k], e·a_k).
    """
    if q < 1:
        raise ValidationError("symmetric power needs q ≥ 1")
    B, E = eta.base, eta.total
    npts = B.n ** q
    if npts > caps().bundle_points:
        raise CapExceeded(f"base of the {q}-th power has {npts} points, cap {caps().bundle_points}")
    W = wreath(q, eta.Q, top)
    G = eta.gamma
    tuples = list(itertools.product(range(B.n), repeat=q))
    bidx = {t: i for i, t in enumerate(tuples)}
    tot = [(bi, k, e) for bi, t in enumerate(tuples) for k in range(q) for e in eta.fibers[t[k]]]
    if len(tot) > caps().bundle_points:
        raise CapExceeded(f"total space of the {q}-th power exceeds cap {caps().bundle_points}")
    tidx = {x: i for i, x in enumerate(tot)}
    dec = [W.decode(w) for w in range(W.order)]

    def bright(t, w):
        a, s = dec[w]
        return tuple(B.rtable[a[s[i]]][t[s[i]]] for i in range(q))

    def bleft(g, t):
        return tuple(B.ltable[g][x] for x in t)

    base = make_biset(G, W, npts, lambda g, x: bidx[bleft(g, tuples[x])],
                      lambda x, w: bidx[bright(tuples[x], w)], labels=tuples)

    def tl(g, x):
        bi, k, e = tot[x]
        return tidx[(bidx[bleft(g, tuples[bi])], k, E.ltable[g][e])]

    def tr(x, w):
        bi, k, e = tot[x]
        a, s = dec[w]
        sinv_k = s.index(k)
        return tidx[(bidx[bright(tuples[bi], w)], sinv_k, E.rtable[a[k]][e])]

    total = make_biset(G, W, len(tot), tl, tr, labels=tot)
    return BundleData(G, W, base, total, [bi for bi, _, _ in tot])


# fixed-point bundles ------------------------------------------------------------------

@dataclass
class EtaLambda:
    """η(Λ|K) together with its bookkeeping."""
    bundle: BundleData
    homs: list[GroupHom]                       # Hom(Λ, Q), ordered by generator images
    base_index: dict[tuple[int, int], int]     # (σ index, b) → base point
    orbit_index: dict[tuple[int, int], int] = field(default_factory=dict)  # (σ index, e) → total point
    lam: Subgroup | None = None


def _hom_on_parent(L: Subgroup, sigma: GroupHom, x: int) -> int:
    return sigma(L.from_parent(x))


def eta_lambda(eta: BundleData, lam, K=None) -> EtaLambda:
    """η(Λ) (K omitted) or η(Λ|K): the σ-twisted fixed sub-bundles over all σ: Λ → Q."""
    G, Q = eta.gamma, eta.Q
    L = as_subgroup(G, lam)
    if not L.is_normal():
        raise NotNormal("Λ is not normal in Γ")
    Kg = None
    if K is not None:
        Kg = as_subgroup(G, K)
        if not Kg.is_subgroup_of(L):
            raise NotNested("K is not contained in Λ")
        if not Kg.is_normal():
            raise NotNormal("K is not normal in Γ")
    LG = L.as_group
    homs = sorted(enumerate_homs(LG, Q), key=lambda h: h.key)
    by_key = {h.key: i for i, h in enumerate(homs)}
    lgens = [L.to_parent(g) for g in LG.generators]
    kgens = [] if Kg is None else list(Kg.generators)
    B, E = eta.base, eta.total

    base_pts: list[tuple[int, int]] = []
    tot_pts: list[tuple[int, int, int]] = []
    orbit_index_raw: dict[tuple[int, int], int] = {}
    for si, sig in enumerate(homs):
        simg = [sig(g) for g in LG.generators]
        for b in range(B.n):
            if any(B.ltable[l][b] != B.rtable[s][b] for l, s in zip(lgens, simg)):
                continue
            fib = eta.fibers[b]
            if kgens:
                ok = all(E.twisted(k, _hom_on_parent(L, sig, k))[e] == e for k in kgens for e in fib)
                if not ok:
                    continue
            base_pts.append((si, b))
            perms = [E.twisted(l, s) for l, s in zip(lgens, simg)]
            pos = {e: i for i, e in enumerate(fib)}
            local = orbit_partition(len(fib), [[pos[p[e]] for e in fib] for p in perms])
            for orb in local:
                rep = fib[orb[0]]
                for i in orb:
                    orbit_index_raw[(si, fib[i])] = len(tot_pts)
                tot_pts.append((si, b, rep))
    bidx = {x: i for i, x in enumerate(base_pts)}

    def conj_gamma(si: int, g: int) -> int:
        # σ^γ(λ) = σ(γ⁻¹λγ)
        sig = homs[si]
        gi = G.inv(g)
        key = tuple(_hom_on_parent(L, sig, G.mul(gi, G.mul(l, g))) for l in lgens)
        return by_key[key]

    def conj_q(si: int, s: int) -> int:
        # σ_s = s⁻¹σ s
        sig = homs[si]
        key = tuple(Q.conj(sig(x), s) for x in LG.generators)
        return by_key[key]

    def bl(g, x):
        si, b = base_pts[x]
        return bidx[(conj_gamma(si, g), B.ltable[g][b])]

    def br(x, s):
        si, b = base_pts[x]
        return bidx[(conj_q(si, s), B.rtable[s][b])]

    def tl(g, x):
        si, _, e = tot_pts[x]
        return orbit_index_raw[(conj_gamma(si, g), E.ltable[g][e])]

    def tr(x, s):
        si, _, e = tot_pts[x]
        return orbit_index_raw[(conj_q(si, s), E.rtable[s][e])]

    base = make_biset(G, Q, len(base_pts), bl, br, labels=base_pts)
    total = make_biset(G, Q, len(tot_pts), tl, tr, labels=tot_pts)
    proj = [bidx[(si, b)] for si, b, _ in tot_pts]
    bundle = BundleData(G, Q, base, total, proj)
    return EtaLambda(bundle, homs, bidx, orbit_index_raw, L)


def eta_lambda_rel(eta: BundleData, lam, K) -> EtaLambda:
    return eta_lambda(eta, lam, K)


# iterated fixed points -------------------------------------------------------------------

@dataclass
class BundleIso:
    ok: bool
    base_map: list[int]
    total_map: list[int]
    problems: list[str]

    def __bool__(self) -> bool:
        return self.ok


def check_bundle_map(src: BundleData, dst: BundleData, base_map: Sequence[int | None],
                     total_map: Sequence[int | None]) -> list[str]:
    """Problems preventing (base_map, total_map) from being a bundle isomorphism."""
    problems = []
    if src.gamma != dst.gamma or src.Q != dst.Q:
        return ["bundles carry different groups"]
    for name, m, n_src, n_dst in (("base", base_map, src.base.n, dst.base.n),
                                  ("total", total_map, src.total.n, dst.total.n)):
        if n_src != n_dst or None in m or sorted(m) != list(range(n_dst)):
            problems.append(f"{name} map is not a bijection")
    if problems:
        return problems
    for e in range(src.total.n):
        if dst.projection[total_map[e]] != base_map[src.projection[e]]:
            problems.append("maps do not commute with projection")
            break
    for X, Y, m, name in ((src.base, dst.base, base_map, "base"),
                          (src.total, dst.total, total_map, "total")):
        for g in src.gamma.generators:
            if any(m[X.ltable[g][x]] != Y.ltable[g][m[x]] for x in range(X.n)):
                problems.append(f"{name} map is not Γ-equivariant")
                break
        for s in src.Q.generators:
            if any(m[X.rtable[s][x]] != Y.rtable[s][m[x]] for x in range(X.n)):
                problems.append(f"{name} map is not Q-equivariant")
                break
    return problems


def iterphi_bundle_iso(eta: BundleData, K, lam, M) -> BundleIso:
    """η(M|K) ≅ (η(Λ|K))(M|Λ) for K ≤ Λ ≤ M, all normal in Γ.

    The base map is (σ, b) ↦ (σ, (σ|_Λ, b)); an M-orbit in E_b goes to the
    M-orbit of the Λ-orbits it contains.
    """
    G = eta.gamma
    Kg, Lg, Mg = (as_subgroup(G, X) for X in (K, lam, M))
    if not Kg.is_subgroup_of(Lg) or not Lg.is_subgroup_of(Mg):
        raise NotNested("need K ≤ Λ ≤ M")
    f = is_q_faithful(eta)
    if not f:
        raise FaithfulnessHypothesisFails(f"η is not Q-faithful (witness {f.witness})")
    inner = eta_lambda(eta, Lg, Kg)
    f = is_q_faithful(inner.bundle)
    if not f:
        raise FaithfulnessHypothesisFails(f"η(Λ|K) is not Q-faithful (witness {f.witness})")
    lhs = eta_lambda(eta, Mg, Kg)
    rhs = eta_lambda(inner.bundle, Mg, Lg)
    LG = Lg.as_group
    inner_key = {h.key: i for i, h in enumerate(inner.homs)}

    def restrict_index(si: int) -> int:
        sig = lhs.homs[si]
        key = tuple(sig(Mg.from_parent(Lg.to_parent(g))) for g in LG.generators)
        return inner_key[key]

    base_map: list = [None] * lhs.bundle.base.n
    for (si, b), x in lhs.base_index.items():
        ib = inner.base_index.get((restrict_index(si), b))
        base_map[x] = None if ib is None else rhs.base_index.get((si, ib))
    total_map: list = [None] * lhs.bundle.total.n
    for (si, e), x in lhs.orbit_index.items():
        ie = inner.orbit_index.get((restrict_index(si), e))
        if ie is not None:
            total_map[x] = rhs.orbit_index.get((si, ie))
    problems = check_bundle_map(lhs.bundle, rhs.bundle, base_map, total_map)
    return BundleIso(not problems, base_map, total_map, problems)


# inheritable faithfulness -------------------------------------------------------------------

@dataclass
class IfcritResult:
    conditions: dict[str, bool]
    witnesses: dict[str, tuple]

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def __bool__(self) -> bool:
        return self.ok


def ifcrit_check(eta: BundleData, lam) -> IfcritResult:
    """Evaluate the three fiberwise criteria over every H ≤ Λ, σ: H → Q and b ∈ B^{H,σ}.

    (i) the twisted fixed space of E_b is nonzero; (ii) for λ ∈ Λ∖H and s with
    λb = bs some twisted-fixed vector v has λv ≠ vs; (iii) for s ≠ 1 with
    bs = b commuting with σ(H) some twisted-fixed vector v has vs ≠ v.
    """
    G, Q = eta.gamma, eta.Q
    L = as_subgroup(G, lam)
    B, E = eta.base, eta.total
    conds = {"i": True, "ii": True, "iii": True}
    wit: dict[str, tuple] = {}
    for Hl in enumerate_subgroups(L.as_group):
        H = Subgroup(G, (L.to_parent(h) for h in Hl.members), check=False)
        HG = H.as_group
        hgens = [H.to_parent(g) for g in HG.generators]
        others = [x for x in L.members if x not in H]
        for sig in sorted(enumerate_homs(HG, Q), key=lambda h: h.key):
            simg = [sig(g) for g in HG.generators]
            sig_image = {sig(h) for h in range(HG.order)}
            for b in range(B.n):
                if any(B.ltable[h][b] != B.rtable[s][b] for h, s in zip(hgens, simg)):
                    continue
                fib = eta.fibers[b]
                if not fib:
                    if conds["i"]:
                        conds["i"] = False
                        wit["i"] = (H.members, sig.key, b)
                    continue
                pos = {e: i for i, e in enumerate(fib)}
                perms = [E.twisted(h, s) for h, s in zip(hgens, simg)]
                orbs = [frozenset(fib[i] for i in o)
                        for o in orbit_partition(len(fib), [[pos[p[e]] for e in fib] for p in perms])]
                if conds["ii"]:
                    for lm in others:
                        for s in range(Q.order):
                            if B.ltable[lm][b] != B.rtable[s][b]:
                                continue
                            # λv = vs on all of the fixed space iff λ·O·s⁻¹ = O for every orbit
                            tw = E.twisted(lm, s)
                            if all(frozenset(tw[e] for e in O) == O for O in orbs):
                                conds["ii"] = False
                                wit["ii"] = (H.members, sig.key, b, lm, s)
                                break
                        if not conds["ii"]:
                            break
                if conds["iii"]:
                    for s in range(1, Q.order):
                        if B.rtable[s][b] != b:
                            continue
                        if any(Q.mul(s, t) != Q.mul(t, s) for t in sig_image):
                            continue
                        rt = E.rtable[s]
                        if all(frozenset(rt[e] for e in O) == O for O in orbs):
                            conds["iii"] = False
                            wit["iii"] = (H.members, sig.key, b, s)
                            break
    return IfcritResult(conds, wit)


@dataclass
class InheritableResult:
    ok: bool
    per_q: dict[int, bool]
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def inheritably_faithful_bruteforce(eta: BundleData, lam, q_max: int,
                                    top: Callable[[int], FinGroup] | None = None) -> InheritableResult:
    """Build (Sym^q η)(Λ) for q = 1..q_max and test Σ≀Q-faithfulness of each."""
    per_q: dict[int, bool] = {}
    witness = None
    for q in range(1, q_max + 1):
        S = sym_power(eta, q, top(q) if top else None)
        f = is_q_faithful(eta_lambda(S, lam).bundle)
        per_q[q] = f.ok
        if not f.ok and witness is None:
            witness = (q, f.witness)
    return InheritableResult(all(per_q.values()), per_q, witness)
