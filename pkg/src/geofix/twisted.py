"""Twisted fixed points of wreath-indexed powers.

A :class:`WreathHom` σ: Λ → Σ_q≀Q sends λ to (a_1(λ),…,a_q(λ); s(λ)).  Λ acts
on X^q by λ·x·σ(λ)⁻¹, where the right action of (a;s) on X^q is
(x·(a;s))_i = x_{s[i]}·a_{s[i]}.  The fixed subspace splits over the orbits of
s on {0..q-1}; :func:`twisted_fixed` builds the orbit-sum basis through that
splitting and :func:`brute_force_twisted_fixed` solves the linear system
directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import linalg
from .config import caps
from .errors import (
    ActionMismatch,
    CapExceeded,
    EnumerationCapExceeded,
    InvalidWreathHom,
    NotCentralizing,
    ValidationError,
)
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    WreathGroup,
    identity_perm,
    invert,
    symmetric,
    wreath_inv,
    wreath_mul,
)
from .gsets import BiSet, as_biset, orbit_partition, orbit_sum_vectors


class WreathHom:
    """σ: Λ → Σ_q≀Q stored elementwise as (cofactor tuple, permutation)."""

    def __init__(self, source: FinGroup, q: int, Q: FinGroup, images: Sequence, check: bool = True):
        self.source, self.q, self.Q = source, q, Q
        self.images = tuple((tuple(a), tuple(s)) for a, s in images)
        if check:
            self._check()

    def _check(self) -> None:
        L, Q, q = self.source, self.Q, self.q
        if len(self.images) != L.order:
            raise InvalidWreathHom("image table has the wrong length")
        for a, s in self.images:
            if len(a) != q or sorted(s) != list(range(q)) or any(not 0 <= x < Q.order for x in a):
                raise InvalidWreathHom("malformed wreath element")
        if self.images[0] != ((0,) * q, identity_perm(q)):
            raise InvalidWreathHom("identity is not sent to the identity")
        for x in range(L.order):
            for g in L.generators:
                if self.images[L.mul(x, g)] != wreath_mul(Q, self.images[x], self.images[g]):
                    raise InvalidWreathHom("map does not preserve multiplication")

    def check_cocycle(self) -> bool:
        """a_i(λμ) = a_i(λ)·a_{s(λ⁻¹)[i]}(μ) for all λ, μ, i."""
        L, Q = self.source, self.Q
        for lam in range(L.order):
            a, _ = self.images[lam]
            sinv = self.images[L.inv(lam)][1]
            for mu in range(L.order):
                b, _ = self.images[mu]
                c, _ = self.images[L.mul(lam, mu)]
                for i in range(self.q):
                    if c[i] != Q.mul(a[i], b[sinv[i]]):
                        return False
        return True

    @classmethod
    def from_generators(cls, source: FinGroup, q: int, Q: FinGroup, s_gens: Sequence, a_gens: Sequence) -> "WreathHom":
        """Complete generator data (permutations, cofactor index tuples) to all of Λ."""
        gens = source.generators
        if len(s_gens) != len(gens) or len(a_gens) != len(gens):
            raise InvalidWreathHom(f"expected data for {len(gens)} generators")
        gimg = [(tuple(a), tuple(s)) for a, s in zip(a_gens, s_gens)]
        for a, s in gimg:
            if len(a) != q or sorted(s) != list(range(q)) or any(not 0 <= x < Q.order for x in a):
                raise InvalidWreathHom("malformed generator image")
        table: list = [None] * source.order
        table[0] = ((0,) * q, identity_perm(q))
        todo = [0]
        for x in todo:
            for g, im in zip(gens, gimg):
                y = source.mul(x, g)
                v = wreath_mul(Q, table[x], im)
                if table[y] is None:
                    table[y] = v
                    todo.append(y)
                elif table[y] != v:
                    raise InvalidWreathHom("generator data violates a relation of the source group")
        return cls(source, q, Q, table, check=False)

    @classmethod
    def from_hom(cls, hom: GroupHom) -> "WreathHom":
        W = hom.target
        if not isinstance(W, WreathGroup):
            raise InvalidWreathHom("target is not a wreath product")
        return cls(hom.source, W.q, W.base, [W.decode(i) for i in hom.images], check=False)

    @classmethod
    def from_qhom(cls, hom: GroupHom) -> "WreathHom":
        """q = 1: a plain homomorphism Λ → Q."""
        return cls(hom.source, 1, hom.target, [((x,), (0,)) for x in hom.images], check=False)

    @classmethod
    def from_perm_hom(cls, hom: GroupHom, Q: FinGroup) -> "WreathHom":
        """Trivial cofactors over a permutation hom Λ → Σ_q."""
        q = hom.target.degree
        return cls(hom.source, q, Q, [((0,) * q, hom.target.elements[x]) for x in hom.images],
                   check=False)

    @classmethod
    def trivial(cls, source: FinGroup, q: int, Q: FinGroup) -> "WreathHom":
        e = ((0,) * q, identity_perm(q))
        return cls(source, q, Q, [e] * source.order, check=False)

    def __call__(self, lam: int):
        return self.images[lam]

    def s(self, lam: int) -> tuple:
        return self.images[lam][1]

    def a(self, lam: int) -> tuple:
        return self.images[lam][0]

    @cached_property
    def key(self) -> tuple:
        return tuple(self.images[g] for g in self.source.generators)

    def perm(self, lam: int) -> tuple:
        a, s = self.images[lam]
        return WreathGroup.encode_with(self.q, self.Q, a, s)

    def to_hom(self, W: WreathGroup) -> GroupHom:
        if W.q != self.q or W.base != self.Q:
            raise InvalidWreathHom("wreath group does not match")
        return GroupHom(self.source, W, [W.index[self.perm(x)] for x in range(self.source.order)],
                        check=False)

    def s_hom(self) -> GroupHom:
        S = symmetric(self.q)
        return GroupHom(self.source, S, [S.index[s] for _, s in self.images], check=False)

    def conjugate(self, w) -> "WreathHom":
        """λ ↦ w⁻¹σ(λ)w for w = (a;s) in Σ_q≀Q."""
        Q = self.Q
        wi = wreath_inv(Q, w)
        return WreathHom(self.source, self.q, Q,
                         [wreath_mul(Q, wi, wreath_mul(Q, im, w)) for im in self.images], check=False)

    def restrict(self, H: Subgroup) -> "WreathHom":
        return WreathHom(H.as_group, self.q, self.Q, [self.images[h] for h in H.members], check=False)

    def is_trivial(self) -> bool:
        return all(im == self.images[0] for im in self.images)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WreathHom) and self.q == other.q and self.Q == other.Q
                and self.source == other.source and self.images == other.images)

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"<WreathHom q={self.q} key={self.key}>"


def block_sum(*homs: WreathHom) -> WreathHom:
    """σ₁⊕…⊕σ_k: the blocks placed one after another."""
    if not homs:
        raise ValidationError("block sum of nothing")
    L, Q = homs[0].source, homs[0].Q
    if any(h.source != L or h.Q != Q for h in homs):
        raise ValidationError("block sum needs a common source and cofactor group")
    q = sum(h.q for h in homs)
    images = []
    for lam in range(L.order):
        a: list[int] = []
        s: list[int] = []
        for h in homs:
            off = len(s)
            ha, hs = h.images[lam]
            a.extend(ha)
            s.extend(off + x for x in hs)
        images.append((tuple(a), tuple(s)))
    return WreathHom(L, q, Q, images, check=False)


# decomposition ---------------------------------------------------------------

@dataclass
class TwistedDecomposition:
    orbits: list[tuple[int, ...]]
    reps: list[int]
    stabilizers: list[Subgroup]
    alphas: list[GroupHom]          # α_j: H_j → Q, out of ``stabilizers[j].as_group``
    transporters: tuple[int, ...]   # ℓ_i with s(ℓ_i)[m_{j_i}] = i
    orbit_of: tuple[int, ...]       # j_i


def decompose(sigma: WreathHom, transporters: Sequence[int] | None = None) -> TwistedDecomposition:
    L, Q, q = sigma.source, sigma.Q, sigma.q
    orbs = orbit_partition(q, [sigma.s(g) for g in L.generators])
    reps = [o[0] for o in orbs]
    orbit_of = [0] * q
    for j, o in enumerate(orbs):
        for i in o:
            orbit_of[i] = j
    stabs, alphas = [], []
    for m in reps:
        H = Subgroup(L, (x for x in range(L.order) if sigma.s(x)[m] == m), check=False)
        HG = H.as_group
        alpha = [sigma.a(H.to_parent(h))[m] for h in range(HG.order)]
        try:
            alphas.append(GroupHom(HG, Q, alpha))
        except ValidationError as exc:
            raise InvalidWreathHom(f"restricted cofactor at {m} is not a homomorphism") from exc
        stabs.append(H)
    if transporters is None:
        ell = [None] * q
        for x in range(L.order):
            s = sigma.s(x)
            for m in reps:
                i = s[m]
                if ell[i] is None and orbit_of[i] == orbit_of[m]:
                    ell[i] = x
        transporters = ell
    else:
        transporters = list(transporters)
        if len(transporters) != q:
            raise ValidationError("need one transporter per coordinate")
        for i, x in enumerate(transporters):
            if sigma.s(x)[reps[orbit_of[i]]] != i:
                raise ValidationError(f"transporter for {i} does not carry its orbit representative there")
    return TwistedDecomposition(orbs, reps, stabs, alphas, tuple(transporters), tuple(orbit_of))


def _check_space(X: BiSet, sigma: WreathHom) -> None:
    if X.left != sigma.source:
        raise ActionMismatch("left group of X is not the source of σ")
    if X.right != sigma.Q:
        raise ActionMismatch("right group of X is not the cofactor group of σ")


def _coerce(X, sigma: WreathHom) -> BiSet:
    X = as_biset(X, sigma.Q if sigma.Q.order == 1 else None)
    if X.right.order == 1 and sigma.Q.order == 1 and X.right != sigma.Q:
        X = BiSet(X.left, sigma.Q, X.n, X.left_images, [identity_perm(X.n)] * len(sigma.Q.generators),
                  X.labels)
    _check_space(X, sigma)
    return X


def factor_orbits(X: BiSet, H: Subgroup, alpha: GroupHom) -> list[tuple[int, ...]]:
    """Orbits of h·x·α(h)⁻¹ on the basis of X (H a subgroup of X's left group)."""
    HG = H.as_group
    perms = [X.twisted(H.to_parent(h), alpha(h)) for h in HG.generators]
    return orbit_partition(X.n, perms)


@dataclass
class TwistedFixed:
    dim: int
    basis: list[tuple[int, ...]]
    squared_norms: list[int]        # of each basis vector
    orbit_sizes: list[int]          # #O_j for the factor each vector came from
    factor_dims: list[int]
    decomposition: TwistedDecomposition


def twisted_fixed(X, sigma: WreathHom, transporters: Sequence[int] | None = None) -> TwistedFixed:
    """Orbit-sum basis of (X^q)^{Λ,σ}, built factor by factor.

    Factor j contributes X^{H_j,α_j}; a factor vector x is placed at every
    coordinate i of its orbit as ℓ_i·x·a_{m_j}(ℓ_i⁻¹).  Dimensions add.
    """
    X = _coerce(X, sigma)
    L, n, q = sigma.source, X.n, sigma.q
    dec = decompose(sigma, transporters)
    basis, norms, osizes, fdims = [], [], [], []
    for j, (orb, m, H, alpha) in enumerate(zip(dec.orbits, dec.reps, dec.stabilizers, dec.alphas)):
        forbs = factor_orbits(X, H, alpha)
        fdims.append(len(forbs))
        for fo in forbs:
            v = [0] * (q * n)
            for i in orb:
                ell = dec.transporters[i]
                c = sigma.a(L.inv(ell))[m]
                lp, rp = X.ltable[ell], X.rtable[c]
                for x in fo:
                    v[i * n + lp[rp[x]]] += 1
            basis.append(tuple(v))
            norms.append(len(orb) * len(fo))
            osizes.append(len(orb))
    return TwistedFixed(len(basis), basis, norms, osizes, fdims, dec)


def twisted_fixed_dim(X, sigma: WreathHom) -> int:
    return twisted_fixed(X, sigma).dim


def twisted_point_perm(X: BiSet, sigma: WreathHom, lam: int) -> tuple:
    """λ acting on the q·n points (k, x) of X^q by (k,x) ↦ (s(λ)[k], λ·x·a_k(λ⁻¹))."""
    L, n, q = sigma.source, X.n, sigma.q
    s = sigma.s(lam)
    ainv = sigma.a(L.inv(lam))
    lp = X.ltable[lam]
    out = [0] * (q * n)
    for k in range(q):
        rp = X.rtable[ainv[k]]
        base = s[k] * n
        for x in range(n):
            out[k * n + x] = base + lp[rp[x]]
    return tuple(out)


def brute_force_twisted_fixed(X, sigma: WreathHom, with_basis: bool = False):
    """Solve λ·_σ v = v over the rationals for every generator λ (oracle)."""
    X = _coerce(X, sigma)
    N = sigma.q * X.n
    if N > caps().linear_size:
        raise CapExceeded(f"linear system with {N} unknowns exceeds cap {caps().linear_size}")
    if N == 0:
        return (0, []) if with_basis else 0
    rows = []
    for g in sigma.source.generators:
        p = twisted_point_perm(X, sigma, g)
        for k in range(N):
            if p[k] != k:
                r = [0] * N
                r[p[k]] += 1
                r[k] -= 1
                rows.append(r)
    if with_basis:
        ns = linalg.nullspace(rows, N)
        return len(ns), ns
    return N - linalg.rank(rows, N)


def twisted_fixed_set(X, sigma: WreathHom) -> list[tuple[int, ...]]:
    """Set-level twisted fixed points of X^q, via the factor decomposition."""
    X = _coerce(X, sigma)
    L = sigma.source
    dec = decompose(sigma)
    choices = []
    for H, alpha in zip(dec.stabilizers, dec.alphas):
        HG = H.as_group
        perms = [X.twisted(H.to_parent(h), alpha(h)) for h in HG.generators]
        choices.append([x for x in range(X.n) if all(p[x] == x for p in perms)])
    total = 1
    for c in choices:
        total *= len(c)
    if total > caps().materialize:
        raise EnumerationCapExceeded(f"{total} twisted fixed points exceed the materialization cap")
    out = []
    for combo in itertools.product(*choices):
        pt = [0] * sigma.q
        for i in range(sigma.q):
            j = dec.orbit_of[i]
            ell = dec.transporters[i]
            c = sigma.a(L.inv(ell))[dec.reps[j]]
            pt[i] = X.ltable[ell][X.rtable[c][combo[j]]]
        out.append(tuple(pt))
    return sorted(out)


def brute_force_twisted_fixed_set(X, sigma: WreathHom) -> list[tuple[int, ...]]:
    X = _coerce(X, sigma)
    q, n = sigma.q, X.n
    perms = [twisted_point_perm(X, sigma, g) for g in sigma.source.generators]
    out = []
    for pt in itertools.product(range(n), repeat=q):
        # a point of X^q is fixed iff each of its coordinates lands on the matching one
        if all(all(p[k * n + pt[k]] == sigma.s(g)[k] * n + pt[sigma.s(g)[k]] for k in range(q))
               for p, g in zip(perms, sigma.source.generators)):
            out.append(pt)
    return out


# residual symmetry ---------------------------------------------------------------

def right_point_perm(X: BiSet, Q: FinGroup, w) -> tuple:
    """(a;s) acting on the right of X^q points: (k,x) ↦ (s⁻¹[k], x·a_k)."""
    a, s = w
    n, q = X.n, len(s)
    sinv = invert(s)
    out = [0] * (q * n)
    for k in range(q):
        rp = X.rtable[a[k]]
        base = sinv[k] * n
        for x in range(n):
            out[k * n + x] = base + rp[x]
    return tuple(out)


@dataclass
class PermutedBasis:
    basis: list[tuple[int, ...]]
    squared_norms: list[int]
    action: list[tuple[int, ...]]   # one permutation of basis indices per element of P


def permuted_basis(X, sigma: WreathHom, P: Sequence) -> PermutedBasis:
    """A basis of (X^q)^{Λ,σ} permuted by P ≤ C(σ), with the induced permutations.

    P is a list of wreath elements (a;s).  The basis is the orbit sums of Λ on
    the q·n basis points; P commutes with Λ, hence permutes those orbits.
    """
    X = _coerce(X, sigma)
    Q = sigma.Q
    for w in P:
        w = (tuple(w[0]), tuple(w[1]))
        if sigma.conjugate(w).images != sigma.images:
            raise NotCentralizing(f"{w} does not fix σ under conjugation")
    N = sigma.q * X.n
    orbs = orbit_partition(N, [twisted_point_perm(X, sigma, g) for g in sigma.source.generators])
    where = {x: k for k, o in enumerate(orbs) for x in o}
    action = []
    for w in P:
        rp = right_point_perm(X, Q, (tuple(w[0]), tuple(w[1])))
        img = []
        for o in orbs:
            tgt = {rp[x] for x in o}
            k = where[rp[o[0]]]
            if set(orbs[k]) != tgt:
                raise NotCentralizing("residual element does not permute the orbit basis")
            img.append(k)
        action.append(tuple(img))
    return PermutedBasis(orbit_sum_vectors(N, orbs), [len(o) for o in orbs], action)


def act_on_vector(X: BiSet, Q: FinGroup, w, v: Sequence[int]) -> tuple[int, ...]:
    rp = right_point_perm(X, Q, w)
    out = [0] * len(v)
    for k, c in enumerate(v):
        out[rp[k]] += c
    return tuple(out)


def all_transporter_choices(sigma: WreathHom) -> list[list[int]]:
    """For each coordinate i, every λ with s(λ)[m_{j_i}] = i."""
    dec = decompose(sigma)
    L = sigma.source
    out = []
    for i in range(sigma.q):
        m = dec.reps[dec.orbit_of[i]]
        out.append([x for x in range(L.order) if sigma.s(x)[m] == i])
    return out

