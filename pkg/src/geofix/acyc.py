"""Combinatorial data for cyclotomic cells and their closure operations.

A data tuple records n, block sizes q_0..q_r, circle parameters m_i, ℓ_i,
permutation representations V_i of Z/(m_i/ℓ_i) (stored as the image of the
standard generator) and a subgroup Q of Σ_{q_0}×…×Σ_{q_r} acting on
q_0+…+q_r points laid out block after block.  Λ(n) is cyclic of order n, so
a homomorphism σ: Λ(n) → Q is the image g = σ(1).

Circles are opaque: T(n)/C_m(n) is a label.  Wherever a finite check is
needed the circle is replaced by the finite model C_N(n)/C_m(n), which is
exact for the questions asked as long as N is a common multiple of every
subgroup order involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property, reduce

from sympy.combinatorics import Permutation, PermutationGroup

from .bundles import BundleData, eta_lambda, make_biset, product, pullback, sym_power
from .config import caps
from .errors import CapExceeded, FaithfulnessShadowFails, ValidationError
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    compose,
    cyclic,
    direct_product,
    identity_perm,
    invert,
    symmetric,
    trivial_group,
)
from .gsets import GSet, orbit_partition
from .twisted import WreathHom, twisted_fixed_set, twisted_point_perm

Perm = tuple[int, ...]


def _rotation(k: int) -> Perm:
    return tuple((x + 1) % k for x in range(k))


def _perm_pow(p: Perm, e: int) -> Perm:
    out = identity_perm(len(p))
    base = p
    while e:
        if e & 1:
            out = compose(out, base)
        base = compose(base, base)
        e >>= 1
    return out


def _is_perm(p, n) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def _lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def regular_v(k: int, copies: int = 1) -> Perm:
    """Generator image for ``copies`` copies of the regular representation of Z/k."""
    return tuple(c * k + (x + 1) % k for c in range(copies) for x in range(k))


def trivial_v(dim: int = 1) -> Perm:
    return identity_perm(dim)


@dataclass(frozen=True, eq=False)
class AcycData:
    """One data tuple; V[i] is the generator image of Z/(m_i/ℓ_i) on dim V_i points."""

    n: int
    q: tuple[int, ...]                 # (q_0, q_1, ..., q_r)
    m: tuple[int, ...]
    l: tuple[int, ...]
    V: tuple[Perm, ...]
    Q_gens: tuple[Perm, ...]           # on q_0+…+q_r points, block by block
    tag: str = "X"

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "m", tuple(self.m))
        object.__setattr__(self, "l", tuple(self.l))
        object.__setattr__(self, "V", tuple(tuple(v) for v in self.V))
        object.__setattr__(self, "Q_gens", tuple(tuple(g) for g in self.Q_gens))

    @property
    def r(self) -> int:
        return len(self.m)

    @property
    def degree(self) -> int:
        return sum(self.q)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, o = [], 0
        for qi in self.q:
            out.append(o)
            o += qi
        return tuple(out)

    def block(self, p: Perm, i: int) -> Perm:
        off = self.offsets[i]
        return tuple(p[off + x] - off for x in range(self.q[i]))

    @cached_property
    def Q(self) -> FinGroup:
        gens = self.Q_gens or [identity_perm(self.degree)]
        return FinGroup.generated(self.degree, gens, name="Q", cap=caps().materialize)

    def v_gset(self, i: int) -> GSet:
        """V_{i+1} as a set over cyclic(m/ℓ) (block index i counted from the circle blocks)."""
        k = self.m[i] // self.l[i]
        G = cyclic(k)
        v = self.V[i]
        imgs = [_perm_pow(v, G.elements[g][0]) for g in G.generators]
        return GSet(G, len(v), imgs)

    def key(self) -> tuple:
        return (self.n, self.q, self.m, self.l, self.V, tuple(sorted(self.Q.elements)), self.tag)

    def __eq__(self, other) -> bool:
        return isinstance(other, AcycData) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


def unit_data(n: int = 1) -> AcycData:
    """(n, r=1, q=(0,1), m=ℓ=1, V=ℝ, Q trivial)."""
    return AcycData(n, (0, 1), (1,), (1,), (trivial_v(1),), ())


def standard_example() -> AcycData:
    """n=2, q=(0,2), m=2, ℓ=1, V = ℝ⟨C_2⟩, Q = Σ_2."""
    return AcycData(2, (0, 2), (2,), (1,), (regular_v(2),), ((1, 0),))


# validation ---------------------------------------------------------------------

def validate(d: AcycData) -> list[str]:
    """Every violated condition, as readable strings (empty when valid)."""
    out = []
    if d.n < 1:
        out.append("n must be at least 1")
    if d.r < 1:
        out.append("need r ≥ 1 circle blocks")
    if len(d.q) != d.r + 1:
        out.append("need q_0 plus one q_i per circle block")
    if len(d.l) != d.r or len(d.V) != d.r:
        out.append("m, ℓ and V must have one entry per circle block")
    if out:
        return out
    if d.q[0] < 0:
        out.append("q_0 must be non-negative")
    for i in range(d.r):
        qi, mi, li = d.q[i + 1], d.m[i], d.l[i]
        tag = f"block {i + 1}"
        if qi < 1:
            out.append(f"{tag}: q must be at least 1")
        if mi < 1 or li < 1:
            out.append(f"{tag}: m and ℓ must be positive")
            continue
        if d.n % li:
            out.append(f"{tag}: ℓ∤n ({li} does not divide {d.n})")
        if mi % li:
            out.append(f"{tag}: ℓ∤m ({li} does not divide {mi})")
            continue
        v = d.V[i]
        if not _is_perm(v, len(v)):
            out.append(f"{tag}: V is not a permutation representation")
        elif _perm_pow(v, mi // li) != identity_perm(len(v)):
            out.append(f"{tag}: V is not a representation of the cyclic group of order {mi // li}")
    deg = d.degree
    offs = d.offsets
    for g in d.Q_gens:
        if not _is_perm(g, deg):
            out.append(f"Q generator {list(g)} is not a permutation of {deg} points")
            continue
        for i, qi in enumerate(d.q):
            if any(not offs[i] <= g[offs[i] + x] < offs[i] + qi for x in range(qi)):
                out.append(f"Q generator {list(g)} does not preserve block {i}")
                break
    return out


def _require_valid(d: AcycData) -> None:
    problems = validate(d)
    if problems:
        raise ValidationError("; ".join(problems))


# Hom sets -------------------------------------------------------------------------

@dataclass
class HomSetQ:
    data: AcycData
    elements: list[int]        # indices g = σ(1) in data.Q, ascending

    def __len__(self) -> int:
        return len(self.elements)

    def perms(self) -> list[Perm]:
        return [self.data.Q.elements[g] for g in self.elements]


def _legal(d: AcycData, p: Perm, n: int, extra_block0: int | None = None) -> bool:
    if _perm_pow(p, n) != identity_perm(len(p)):
        return False
    for i in range(d.r):
        if _perm_pow(d.block(p, i + 1), n // d.l[i]) != identity_perm(d.q[i + 1]):
            return False
    if extra_block0 is not None and d.q[0]:
        if _perm_pow(d.block(p, 0), extra_block0) != identity_perm(d.q[0]):
            return False
    return True


def hom_set(d: AcycData) -> HomSetQ:
    """σ: Λ(n) → Q whose composite to each circle block Σ_{q_i} kills C_{ℓ_i}(n)."""
    _require_valid(d)
    Q = d.Q
    return HomSetQ(d, [g for g in range(Q.order) if _legal(d, Q.elements[g], d.n)])


def q_action_on_homs(hs: HomSetQ) -> list[tuple[int, ...]]:
    """For each Q generator s, the permutation σ ↦ s⁻¹σs of the Hom-set positions."""
    Q = hs.data.Q
    pos = {g: k for k, g in enumerate(hs.elements)}
    return [tuple(pos[Q.conj(g, s)] for g in hs.elements) for s in Q.generators]


# membership ------------------------------------------------------------------------

@dataclass
class Membership:
    ok: bool
    reasons: list[str]

    def __bool__(self) -> bool:
        return self.ok


def _group_order(degree: int, gens) -> int:
    """|⟨gens⟩| by Schreier-Sims, without listing elements."""
    gens = [Permutation(list(g)) for g in gens] or [Permutation(list(range(max(degree, 1))))]
    return int(PermutationGroup(gens).order())


def _is_prime_power(x: int, p: int) -> bool:
    while x > 1 and x % p == 0:
        x //= p
    return x == 1


def in_D_ACyc(d: AcycData, p: int | None = None) -> Membership:
    """Membership in the domain: Q detected on the circle blocks, V_i semiregular, and optionally p-powers."""
    reasons = validate(d)
    if reasons:
        return Membership(False, reasons)
    start = d.q[0]
    # Q is detected on the circle blocks iff restricting to them is injective
    order = _group_order(d.degree, d.Q_gens)
    circle = [tuple(x - start for x in g[start:]) for g in d.Q_gens]
    if _group_order(d.degree - start, circle) != order:
        if order <= caps().materialize:
            Q = d.Q
            bad = next(Q.elements[g] for g in range(1, Q.order)
                       if Q.elements[g][start:] == identity_perm(d.degree)[start:])
            reasons.append(f"Q element {list(bad)} moves only the q_0 block")
        else:
            reasons.append("some non-identity element of Q moves only the q_0 block")
    for i in range(d.r):
        k = d.m[i] // d.l[i]
        orbs = orbit_partition(len(d.V[i]), [d.V[i]])
        if not any(len(o) == k for o in orbs):
            reasons.append(f"block {i + 1}: V is not semiregular (no free orbit of Z/{k})")
    if p is not None:
        if not _is_prime_power(d.n, p):
            reasons.append(f"n = {d.n} is not a power of {p}")
        for i, mi in enumerate(d.m):
            if not _is_prime_power(mi, p):
                reasons.append(f"block {i + 1}: m = {mi} is not a power of {p}")
    return Membership(not reasons, reasons)


def in_D_ACyc_p(d: AcycData, p: int) -> Membership:
    return in_D_ACyc(d, p)


# stretching --------------------------------------------------------------------------

@dataclass
class StretchResult:
    data: AcycData
    bijection: list[tuple[Perm, Perm]]     # σ(1) in Hom(d) ↔ σ(1) in Hom_k(kd)
    hom_k: list[int]
    ok: bool


def stretch(d: AcycData, k: int) -> StretchResult:
    """kd: n, m_i and ℓ_i multiplied by k; V_i unchanged since the quotient groups agree."""
    if k < 1:
        raise ValidationError("stretch factor must be positive")
    _require_valid(d)
    kd = replace(d, n=k * d.n, m=tuple(k * x for x in d.m), l=tuple(k * x for x in d.l),
                 tag=d.tag if k == 1 else f"{k}({d.tag})")
    Q = kd.Q
    # Hom_k: additionally C_k(kn) = ⟨n⟩ acts trivially through block 0
    hom_k = [g for g in range(Q.order) if _legal(kd, Q.elements[g], kd.n, extra_block0=d.n)]
    base = hom_set(d).elements
    bij = [(Q.elements[g], Q.elements[g]) for g in base]
    ok = base == hom_k and len(hom_set(kd)) >= len(hom_k)
    return StretchResult(kd, bij, hom_k, ok)


def smash(a: AcycData, b: AcycData) -> AcycData:
    """Concatenate the stretches of a and b to n = lcm(n_a, n_b); Q = Q_a × Q_b."""
    _require_valid(a)
    _require_valid(b)
    n = _lcm(a.n, b.n)
    A, B = stretch(a, n // a.n).data, stretch(b, n // b.n).data
    q = (A.q[0] + B.q[0],) + A.q[1:] + B.q[1:]
    deg = sum(q)
    # new layout: [A block 0][B block 0][A circle blocks][B circle blocks]
    a_pos = list(range(A.q[0])) + [A.q[0] + B.q[0] + x for x in range(A.degree - A.q[0])]
    b_pos = ([A.q[0] + x for x in range(B.q[0])]
             + [A.degree + B.q[0] + x for x in range(B.degree - B.q[0])])

    def embed(g: Perm, pos: list[int]) -> Perm:
        out = list(range(deg))
        for x, y in enumerate(g):
            out[pos[x]] = pos[y]
        return tuple(out)

    gens = [embed(g, a_pos) for g in A.Q_gens] + [embed(g, b_pos) for g in B.Q_gens]
    return AcycData(n, q, A.m + B.m, A.l + B.l, A.V + B.V, tuple(gens), f"({a.tag})∧({b.tag})")


def smash_positions(a: AcycData, b: AcycData) -> tuple[list[int], list[int]]:
    """Where the points of a and b land in smash(a, b)."""
    total0 = a.q[0] + b.q[0]
    a_pos = list(range(a.q[0])) + [total0 + x for x in range(a.degree - a.q[0])]
    b_pos = ([a.q[0] + x for x in range(b.q[0])]
             + [a.degree + b.q[0] + x for x in range(b.degree - b.q[0])])
    return a_pos, b_pos


@dataclass
class PhiResult:
    data: AcycData
    restriction: list[tuple[Perm, Perm]]    # σ(1) ↦ σ(1)^k, the generator of the index-k subgroup
    verified: bool


def phi(d: AcycData, k: int, check_shadow: bool = True) -> PhiResult:
    """d(k): n ↦ kn with m, ℓ, q, V, Q unchanged (V read through the k-th root isomorphism)."""
    if k < 1:
        raise ValidationError("k must be positive")
    _require_valid(d)
    if check_shadow:
        sh = faithfulness_shadow(d)
        if not sh.ok:
            raise FaithfulnessShadowFails(f"shadow fails at {sh.witness}")
    dk = replace(d, n=k * d.n, tag=d.tag if k == 1 else f"({d.tag})({k})")
    Q = d.Q
    homs = set(hom_set(d).elements)
    homs_k = set(hom_set(dk).elements)
    restriction, verified = [], True
    for g in range(Q.order):
        gk = Q.pow(g, k)
        if (g in homs_k) != (gk in homs):
            verified = False
        if g in homs_k:
            restriction.append((Q.elements[g], Q.elements[gk]))
    return PhiResult(dk, restriction, verified)


def sym(d: AcycData, k: int) -> AcycData:
    """S^k d: q_i ↦ k·q_i with Q replaced by Σ_k ≀ Q acting on k copies, reindexed block-major."""
    if k < 1:
        raise ValidationError("k must be positive")
    _require_valid(d)
    if k == 1:
        return d
    q = tuple(k * x for x in d.q)
    offs = d.offsets
    block_of = [i for i, qi in enumerate(d.q) for _ in range(qi)]
    deg = d.degree

    def newpos(c: int, p: int) -> int:
        i = block_of[p]
        return k * offs[i] + c * d.q[i] + (p - offs[i])

    gens = []
    for g in d.Q_gens:
        out = list(range(k * deg))
        for p in range(deg):
            out[newpos(0, p)] = newpos(0, g[p])
        gens.append(tuple(out))
    for t in symmetric(k).generator_perms():
        out = list(range(k * deg))
        for c in range(k):
            for p in range(deg):
                out[newpos(c, p)] = newpos(t[c], p)
        gens.append(tuple(out))
    S = AcycData(d.n, q, d.m, d.l, d.V, tuple(gens), f"S^{k}({d.tag})")
    expected = math.factorial(k) * _group_order(deg, d.Q_gens) ** k
    got = _group_order(k * deg, gens)
    if got != expected:
        raise ValidationError(f"wreath subgroup has order {got}, expected {expected}")
    return S


def free_smash(d: AcycData) -> AcycData:
    """q_0 ↦ q_0 + 1; the new point sits at the end of block 0 and Q fixes it."""
    _require_valid(d)
    q0 = d.q[0]

    def shift(x: int) -> int:
        return x if x < q0 else x + 1

    gens = []
    for g in d.Q_gens:
        out = list(range(d.degree + 1))
        for x in range(d.degree):
            out[shift(x)] = shift(g[x])
        gens.append(tuple(out))
    return replace(d, q=(q0 + 1,) + d.q[1:], Q_gens=tuple(gens), tag=f"({d.tag})'")


# component catalog ------------------------------------------------------------------------

@dataclass
class BlockEntry:
    block: int
    orbit_sizes: list[int]
    labels: list[str]          # one circle label per σ-orbit ("pt" for block 0)
    factor_dims: list[int]
    nonempty: bool


@dataclass
class CatalogEntry:
    index: int
    generator_image: Perm
    blocks: list[BlockEntry]
    fiber_dim: int
    nonempty: bool

    @property
    def base_labels(self) -> list[str]:
        return [lab for b in self.blocks for lab in b.labels]


@dataclass
class ComponentCatalog:
    data: AcycData
    entries: list[CatalogEntry]
    q_action: list[tuple[int, ...]] = field(default_factory=list)


def _v_fixed_dim(v: Perm, m: int, l: int, h: int) -> int:
    """dim V^{C_h(n)} where C_h(n) ≤ C_m(n) acts through C_m/C_ℓ ≅ Z/(m/ℓ)."""
    step = (m // h) % (m // l)
    return len(orbit_partition(len(v), [_perm_pow(v, step)]))


def component_catalog(d: AcycData) -> ComponentCatalog:
    """Per σ ∈ Hom(d): circle labels of the twisted-fixed base and the fiber dimension.

    A σ-orbit of size o in a circle block has stabilizer C_{n/o}(n).  It fixes
    points of T(n)/C_m(n) exactly when n/o divides m, and then all of them; the
    fiber there is V^{C_{n/o}(n)}.  Dimensions add over orbits and blocks.
    """
    hs = hom_set(d)
    Q = d.Q
    entries = []
    for idx, g in enumerate(hs.elements):
        p = Q.elements[g]
        blocks = []
        if d.q[0]:
            orbs = orbit_partition(d.q[0], [d.block(p, 0)])
            blocks.append(BlockEntry(0, [len(o) for o in orbs], ["pt"] * len(orbs), [1] * len(orbs), True))
        for i in range(d.r):
            orbs = orbit_partition(d.q[i + 1], [d.block(p, i + 1)])
            sizes = [len(o) for o in orbs]
            mi, li = d.m[i], d.l[i]
            labels, dims, nonempty = [], [], True
            for o in sizes:
                h = d.n // o
                labels.append(f"T({d.n})/C_{mi}({d.n})")
                if mi % h:
                    nonempty = False
                    dims.append(0)
                else:
                    dims.append(_v_fixed_dim(d.V[i], mi, li, h))
            blocks.append(BlockEntry(i + 1, sizes, labels, dims, nonempty))
        nonempty = all(b.nonempty for b in blocks)
        fdim = sum(sum(b.factor_dims) for b in blocks) if nonempty else 0
        entries.append(CatalogEntry(idx, p, blocks, fdim, nonempty))
    return ComponentCatalog(d, entries, q_action_on_homs(hs))


# finite models ------------------------------------------------------------------------------

def _circle_model(G: FinGroup, N: int, m: int, l: int, v: Perm):
    """(base, total) bi-sets of C_N ×_{C_m} V → C_N/C_m over (G = cyclic(N), 1)."""
    T = trivial_group()
    per = N // m                       # circle points 0..per-1
    k = m // l
    d = len(v)
    vpow = [_perm_pow(v, c % k) for c in range(m)]

    def move(a: int, t: int) -> tuple[int, int]:
        u = t + a
        return u % per, (u // per) % m

    base = make_biset(G, T, per, lambda g, t: move(G.elements[g][0], t)[0], lambda x, s: x)

    def tl(g, x):
        t, y = divmod(x, d)
        t2, c = move(G.elements[g][0], t)
        return t2 * d + vpow[c][y]

    total = make_biset(G, T, per * d, tl, lambda x, s: x)
    return base, total


def _model_order(d: AcycData, k: int = 1, generic: int | None = None) -> int:
    generic = max(d.q) if generic is None else generic
    return _lcm(k * d.n, *d.m) * max(1, generic)


def finite_model(d: AcycData, generic: int = 1, k: int = 1) -> tuple[BundleData, Subgroup, GroupHom]:
    """η_d over (C_N, Q) with each circle replaced by C_N/C_m; returns (bundle, C_{kn}(n), Q embedding).

    The bundle is the product of Sym^{q_0} of the trivial line over a point and
    the Sym^{q_i} of the circle bundles, pulled back along Q → Σ_{q_0}×…×Σ_{q_r}.
    """
    _require_valid(d)
    N = _model_order(d, k, generic)
    G = cyclic(N)
    T = trivial_group()
    factors = []
    for i in range(-1, d.r):
        qi = d.q[i + 1]
        if qi == 0:
            continue
        if i < 0:
            eta = BundleData.point(G, T, 1)
        else:
            B, E = _circle_model(G, N, d.m[i], d.l[i], d.V[i])
            eta = BundleData(G, T, B, E, [x // len(d.V[i]) for x in range(E.n)])
        factors.append((i + 1, sym_power(eta, qi)))
    blocks_used = [i for i, _ in factors]
    bundle = factors[0][1]
    for _, f in factors[1:]:
        bundle = product(bundle, f)
    P = bundle.Q

    def to_product(p: Perm) -> int:
        # nested products pair left to right: ((W_a × W_b) × W_c) …
        idx, grp = None, None
        for i, (_, f) in zip(blocks_used, factors):
            W = f.Q
            w = W.encode((0,) * d.q[i], d.block(p, i))
            if idx is None:
                idx, grp = w, W
            else:
                grp = _product_cache(grp, W)
                idx = grp.pair(idx, w)
        return idx

    qh = GroupHom(d.Q, P, [to_product(p) for p in d.Q.elements], check=False)
    lam = G.generated_subgroup([N // (k * d.n) % N])
    return pullback(bundle, None, qh), lam, qh


_PRODUCTS: dict = {}


def _product_cache(A: FinGroup, B: FinGroup):
    key = (A.content_hash, B.content_hash)
    if key not in _PRODUCTS:
        _PRODUCTS[key] = direct_product(A, B)
    return _PRODUCTS[key]


def catalog_cross_check(d: AcycData, generic: int = 1) -> list[str]:
    """Compare component_catalog with the twisted fixed points of the finite model."""
    cat = component_catalog(d)
    eta, lam, _ = finite_model(d, generic)
    el = eta_lambda(eta, lam)
    Q = d.Q
    # 1 ∈ Λ(n) is the rotation by N/n in the model group
    N = lam.parent.order
    gen = lam.from_parent((N // d.n) % N)
    dims: dict[int, set[int]] = {}
    for (si, b), x in el.base_index.items():
        sig = el.homs[si]
        dims.setdefault(sig(gen), set()).add(el.bundle.fiber_dim(x))
    problems = []
    for e in cat.entries:
        g = Q.index[e.generator_image]
        found = dims.get(g, set())
        if e.nonempty and found != {e.fiber_dim}:
            problems.append(f"σ #{e.index}: catalog dim {e.fiber_dim}, model dims {sorted(found)}")
        if not e.nonempty and found:
            problems.append(f"σ #{e.index}: catalog says empty, model has points")
    return problems


# faithfulness shadow --------------------------------------------------------------------------

@dataclass
class ShadowResult:
    ok: bool
    checked_k: list[int]
    witness: tuple | None = None    # (k, σ(1), s)

    def __bool__(self) -> bool:
        return self.ok


def _block_preservers(B, E, sigma: WreathHom, gen: int, candidates: list[Perm], dimv: int) -> set[Perm]:
    """Candidates s that, at some twisted-fixed base point b with b·s = b, preserve every twisted orbit."""
    q = sigma.q
    nE = E.n
    out: set[Perm] = set()
    perm = twisted_point_perm(E, sigma, gen)
    for b in twisted_fixed_set(B, sigma):
        pts = [c * nE + t * dimv + y for c in range(q) for t in [b[c]] for y in range(dimv)]
        where = {x: i for i, x in enumerate(pts)}
        orbs = orbit_partition(len(pts), [[where[perm[x]] for x in pts]])
        label = [0] * len(pts)
        for j, o in enumerate(orbs):
            for i in o:
                label[i] = j
        for s in candidates:
            if s in out or any(b[s[c]] != b[c] for c in range(q)):
                continue
            sinv = invert(s)
            # (c, e)·s = (s⁻¹[c], e)
            if all(label[where[sinv[x // nE] * nE + x % nE]] == label[i] for i, x in enumerate(pts)):
                out.add(s)
    return out


def _class_reps(Q: FinGroup) -> list[int]:
    """Smallest element of each conjugacy class.

    Legality of g and the existence of a failing s commuting with g are both
    invariant under conjugation in Q, so one g per class is enough.
    """
    seen: set[int] = set()
    reps = []
    for g in range(Q.order):
        if g in seen:
            continue
        reps.append(g)
        todo = [g]
        seen.add(g)
        for x in todo:
            for t in Q.generators:
                y = Q.conj(x, t)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return reps


def faithfulness_shadow(d: AcycData, k_max: int | None = None) -> ShadowResult:
    """Q-faithfulness of ⊔_{σ ∈ H_k} η_d^{C_{kn}(n),σ} for k = 1..k_max, on finite circle models.

    H_k holds σ: C_{kn}(n) → Q with g = σ(gen) satisfying g^{kn} = 1 and
    g_i^{kn/ℓ_i} = 1 on every circle block.  A component point fails when
    some s ≠ 1 commuting with g fixes it and preserves every twisted orbit of
    its fiber; since fibers split over blocks this is checked block by block.
    """
    _require_valid(d)
    k_max = caps().shadow_k if k_max is None else k_max
    Q = d.Q
    checked = []
    for k in range(1, k_max + 1):
        K = k * d.n
        N = _model_order(d, k)
        if N > caps().bundle_points:
            raise CapExceeded(f"finite circle model of order {N} exceeds cap")
        G = cyclic(N)
        C = cyclic(K)
        models = [_circle_model(G, N, d.m[i], d.l[i], d.V[i]) for i in range(d.r)]
        step = N // K

        def restrict_model(X):
            return make_biset(C, trivial_group(), X.n,
                              lambda c, x: X.ltable[(C.elements[c][0] * step) % N][x],
                              lambda x, s: x, check=False)

        cmodels = [(restrict_model(B), restrict_model(E)) for B, E in models]
        gen = C.index[_rotation(K)] if K > 1 else 0
        for g in _class_reps(Q):
            p = Q.elements[g]
            if not _legal(d, p, K):
                continue
            comm = [s for s in range(1, Q.order) if Q.mul(s, g) == Q.mul(g, s)]
            if not comm:
                continue
            # block 0: s preserves every ⟨g_0⟩-orbit
            allowed = set(comm)
            if d.q[0]:
                orbs = orbit_partition(d.q[0], [d.block(p, 0)])
                keep = set()
                for s in allowed:
                    s0 = d.block(Q.elements[s], 0)
                    if all({s0[x] for x in o} == set(o) for o in orbs):
                        keep.add(s)
                allowed = keep
            for i in range(d.r):
                if not allowed:
                    break
                qi = d.q[i + 1]
                gi = d.block(p, i + 1)
                sigma = WreathHom.from_generators(C, qi, trivial_group(),
                                                  [_perm_pow(gi, C.elements[c][0]) for c in C.generators],
                                                  [(0,) * qi for _ in C.generators])
                cands = sorted({d.block(Q.elements[s], i + 1) for s in allowed})
                B, E = cmodels[i]
                good = _block_preservers(B, E, sigma, gen, cands, len(d.V[i]))
                allowed = {s for s in allowed if d.block(Q.elements[s], i + 1) in good}
            if allowed:
                s = min(allowed)
                return ShadowResult(False, checked + [k], (k, p, Q.elements[s]))
        checked.append(k)
    return ShadowResult(True, checked)


def shadow_via_bundles(d: AcycData, k: int, generic: int | None = None) -> tuple[bool, tuple | None]:
    """Oracle for one k: build η_d(C_{kn}(n)) on the finite model, keep the H_k components, test faithfulness."""
    from .bundles import is_q_faithful, restrict_base
    eta, lam, _ = finite_model(d, max(d.q) if generic is None else generic, k)
    el = eta_lambda(eta, lam)
    N = lam.parent.order
    gen = lam.from_parent((N // (k * d.n)) % N)
    Q = d.Q
    keep = [x for (si, _), x in el.base_index.items()
            if _legal(d, Q.elements[el.homs[si](gen)], k * d.n)]
    res = is_q_faithful(restrict_base(el.bundle, keep))
    return res.ok, res.witness
