"""Finite G-sets, bi-sets, permutation representations and indexed smash powers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ActionMismatch, BadDecomposition, GroupMismatch, ValidationError
from .groups import (
    FinGroup,
    ProductGroup,
    Subgroup,
    as_subgroup,
    compose,
    direct_product,
    identity_perm,
    is_perm,
    trivial_group,
)


def _action_table(G: FinGroup, n: int, gen_images: Sequence, right: bool) -> list[tuple]:
    """Extend generator images to the whole group, checking every Cayley edge."""
    gens = G.generators
    if len(gen_images) != len(gens):
        raise ActionMismatch(f"expected {len(gens)} generator images, got {len(gen_images)}")
    for p in gen_images:
        if not is_perm(p, n):
            raise ActionMismatch(f"{list(p)} is not a permutation of {n} points")
    table: list = [None] * G.order
    table[0] = identity_perm(n)
    todo = [0]
    for x in todo:
        for g, p in zip(gens, gen_images):
            y = G.mul(x, g)
            img = compose(p, table[x]) if right else compose(table[x], p)
            if table[y] is None:
                table[y] = img
                todo.append(y)
            elif table[y] != img:
                raise ActionMismatch("generator images violate a group relation")
    return table


class GSet:
    """A left action of ``group`` on the points 0..n-1."""

    def __init__(self, group: FinGroup, n: int, gen_images: Sequence, labels: Sequence | None = None):
        self.group = group
        self.n = n
        self.gen_images = tuple(tuple(p) for p in gen_images)
        self.table = _action_table(group, n, self.gen_images, right=False)
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_function(cls, group: FinGroup, n: int, act, labels=None) -> "GSet":
        imgs = [tuple(act(g, x) for x in range(n)) for g in group.generators]
        return cls(group, n, imgs, labels)

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    def perm(self, g: int) -> tuple:
        return self.table[g]

    def orbits(self) -> list["Orbit"]:
        return _orbits(self.group, self.n, self.gen_images, self.table)

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.group, (g for g in range(self.group.order) if self.table[g][x] == x),
                        check=False)

    def fixed_points(self, H=None) -> list[int]:
        gens = _gens(self.group, H)
        return [x for x in range(self.n) if all(self.table[g][x] == x for g in gens)]

    def restrict(self, H) -> "GSet":
        H = as_subgroup(self.group, H)
        HG = H.as_group
        return GSet(HG, self.n, [self.table[H.to_parent(g)] for g in HG.generators], self.labels)

    def __repr__(self) -> str:
        return f"<GSet {self.n} points over order {self.group.order}>"


def _gens(G: FinGroup, H) -> tuple[int, ...]:
    if H is None:
        return G.generators
    return as_subgroup(G, H).generators


@dataclass
class Orbit:
    points: tuple[int, ...]
    rep: int
    stabilizer: Subgroup


def _orbits(G: FinGroup, n: int, gen_images, table) -> list[Orbit]:
    seen = [False] * n
    out = []
    for x in range(n):
        if seen[x]:
            continue
        pts = {x}
        todo = [x]
        for y in todo:
            for p in gen_images:
                z = p[y]
                if z not in pts:
                    pts.add(z)
                    todo.append(z)
        for y in pts:
            seen[y] = True
        stab = Subgroup(G, (g for g in range(G.order) if table[g][x] == x), check=False)
        out.append(Orbit(tuple(sorted(pts)), x, stab))
    return out


class BiSet:
    """Commuting left Γ and right Q actions on points 0..n-1."""

    def __init__(self, left: FinGroup, right: FinGroup, n: int, left_images: Sequence,
                 right_images: Sequence, labels: Sequence | None = None, check: bool = True):
        self.left, self.right, self.n = left, right, n
        self.left_images = tuple(tuple(p) for p in left_images)
        self.right_images = tuple(tuple(p) for p in right_images)
        self.ltable = _action_table(left, n, self.left_images, right=False)
        self.rtable = _action_table(right, n, self.right_images, right=True)
        self.labels = tuple(labels) if labels is not None else None
        if check:
            for a in self.left_images:
                for b in self.right_images:
                    if compose(a, b) != compose(b, a):
                        raise ActionMismatch("left and right actions do not commute")

    @classmethod
    def from_gset(cls, X: GSet, right: FinGroup | None = None) -> "BiSet":
        right = right or trivial_group()
        ident = identity_perm(X.n)
        return cls(X.group, right, X.n, X.gen_images, [ident] * len(right.generators), X.labels)

    def lact(self, g: int, x: int) -> int:
        return self.ltable[g][x]

    def ract(self, x: int, s: int) -> int:
        return self.rtable[s][x]

    def twisted(self, g: int, s: int) -> tuple:
        """The permutation x ↦ g·x·s^-1."""
        return compose(self.ltable[g], self.rtable[self.right.inv(s)])

    @cached_property
    def product_group(self) -> ProductGroup:
        return direct_product(self.left, self.right)

    def as_gset(self) -> GSet:
        """Γ×Q acting on the left by (γ,s)·x = γ·x·s^-1."""
        P = self.product_group
        imgs = []
        for g in P.generators:
            i, j = P.split(g)
            imgs.append(self.twisted(i, j))
        return GSet(P, self.n, imgs, self.labels)

    def orbits(self) -> list[Orbit]:
        return self.as_gset().orbits()

    def left_gset(self) -> GSet:
        return GSet(self.left, self.n, self.left_images, self.labels)

    def q_isotropy(self, x: int) -> list[int]:
        return [s for s in range(self.right.order) if self.rtable[s][x] == x]

    def __repr__(self) -> str:
        return f"<BiSet {self.n} points, |left| {self.left.order}, |right| {self.right.order}>"


def as_biset(X, right: FinGroup | None = None) -> BiSet:
    if isinstance(X, PermRep):
        X = X.basis
    if isinstance(X, BiSet):
        return X
    if isinstance(X, GSet):
        return BiSet.from_gset(X, right)
    raise ActionMismatch(f"expected a GSet, BiSet or PermRep, got {type(X).__name__}")


class PermRep:
    """A permutation representation: the named basis is a G-set or bi-set."""

    def __init__(self, basis):
        if not isinstance(basis, (GSet, BiSet)):
            raise ActionMismatch("a permutation representation needs a GSet or BiSet basis")
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.n

    @property
    def group(self) -> FinGroup:
        return self.basis.group if isinstance(self.basis, GSet) else self.basis.left

    def __repr__(self) -> str:
        return f"<PermRep dim {self.dim}>"


def orbits(X) -> list[Orbit]:
    if isinstance(X, PermRep):
        X = X.basis
    return X.orbits()


def regular_gset(G: FinGroup) -> GSet:
    return GSet(G, G.order, [tuple(G.mul(g, x) for x in range(G.order)) for g in G.generators])


def regular_rep(G: FinGroup) -> PermRep:
    return PermRep(regular_gset(G))


def trivial_gset(k: int, G: FinGroup | None = None) -> GSet:
    G = G or trivial_group()
    return GSet(G, k, [identity_perm(k)] * len(G.generators))


def trivial_rep(k: int, G: FinGroup | None = None) -> PermRep:
    return PermRep(trivial_gset(k, G))


def coset_gset(G: FinGroup, H) -> GSet:
    """G/H with cosets ordered by smallest member."""
    H = as_subgroup(G, H)
    cosets = H.left_cosets()
    where = {x: c for c, members in enumerate(cosets) for x in members}
    imgs = [tuple(where[G.mul(g, c[0])] for c in cosets) for g in G.generators]
    return GSet(G, len(cosets), imgs)


def disjoint_union(*sets: GSet) -> GSet:
    if not sets:
        raise ValidationError("empty disjoint union needs a group")
    G = sets[0].group
    if any(S.group != G for S in sets):
        raise GroupMismatch("disjoint union of G-sets over different groups")
    imgs = []
    for j in range(len(G.generators)):
        p: list[int] = []
        for S in sets:
            off = len(p)
            p.extend(off + x for x in S.gen_images[j])
        imgs.append(tuple(p))
    return GSet(G, sum(S.n for S in sets), imgs)


def _fixed_gens(X, H):
    if isinstance(X, PermRep):
        X = X.basis
    if isinstance(X, BiSet):
        X = X.left_gset()
    return X, _gens(X.group, H)


def fixed_points(X, H=None) -> list[int]:
    X, gens = _fixed_gens(X, H)
    return [x for x in range(X.n) if all(X.table[g][x] == x for g in gens)]


def orbit_partition(n: int, perms: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Orbits of the group generated by ``perms``, each sorted, ordered by minimum."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in range(n):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return [tuple(v) for _, v in sorted(groups.items())]


def orbit_sum_vectors(n: int, orbit_list) -> list[tuple[int, ...]]:
    out = []
    for orb in orbit_list:
        v = [0] * n
        for x in orb:
            v[x] = 1
        out.append(tuple(v))
    return out


def fixed_subspace(V, H=None) -> list[tuple[int, ...]]:
    """Orbit-sum basis of V^H (integer vectors, unnormalized)."""
    X, gens = _fixed_gens(V, H)
    return orbit_sum_vectors(X.n, orbit_partition(X.n, [X.table[g] for g in gens]))


def is_semiregular(V, H=None) -> bool:
    """True iff H has a free orbit on the basis of V."""
    X, _ = _fixed_gens(V, None)
    Hs = X.group.whole() if H is None else as_subgroup(X.group, H)
    gens = Hs.generators
    for orb in orbit_partition(X.n, [X.table[g] for g in gens]):
        if len(orb) == Hs.order:
            return True
    return False


def induce(G: FinGroup, H, Y: GSet) -> GSet:
    """G ×_H Y for a G-subgroup H and an H-set Y (over ``H.as_group``).

    Points are (coset, y) with cosets ordered by smallest member and the
    smallest member used as coset representative.
    """
    H = as_subgroup(G, H)
    if Y.group != H.as_group:
        raise GroupMismatch("fiber set is not over the inducing subgroup")
    cosets = H.left_cosets()
    reps = [c[0] for c in cosets]
    where = {x: c for c, members in enumerate(cosets) for x in members}
    m = Y.n
    imgs = []
    for g in G.generators:
        p = [0] * (len(cosets) * m)
        for c, t in enumerate(reps):
            gt = G.mul(g, t)
            c2 = where[gt]
            h = G.mul(G.inv(reps[c2]), gt)
            hy = Y.table[H.from_parent(h)]
            for y in range(m):
                p[c * m + y] = c2 * m + hy[y]
        imgs.append(tuple(p))
    labels = [(c, y) for c in range(len(cosets)) for y in range(m)]
    return GSet(G, len(cosets) * m, imgs, labels)


# based G-sets -------------------------------------------------------------------

class BasedGSet:
    def __init__(self, gset: GSet, base: int):
        if any(gset.table[g][base] != base for g in gset.group.generators):
            raise ValidationError("basepoint is not fixed by the group")
        self.gset, self.base = gset, base

    @property
    def group(self) -> FinGroup:
        return self.gset.group

    @property
    def n(self) -> int:
        return self.gset.n

    def nonbase(self) -> list[int]:
        return [x for x in range(self.n) if x != self.base]

    def fixed_points(self, H=None) -> list[int]:
        return self.gset.fixed_points(H)


def plus(X: GSet) -> BasedGSet:
    """X₊: X with a disjoint basepoint appended."""
    imgs = [tuple(p) + (X.n,) for p in X.gen_images]
    return BasedGSet(GSet(X.group, X.n + 1, imgs), X.n)


def indexed_smash(A: BasedGSet, S: GSet) -> tuple[BasedGSet, list]:
    """A^(S): functions S → A with every basepoint-touching function collapsed.

    Point 0 is the basepoint; the others are functions avoiding the basepoint,
    as tuples of A-points in lex order.  G acts by (g·f)(ζ) = g·f(g⁻¹ζ).
    """
    G = A.group
    if S.group != G:
        raise GroupMismatch("indexed smash over different groups")
    funcs = list(itertools.product(A.nonbase(), repeat=S.n))
    labels: list = [None] + funcs
    pos = {f: i + 1 for i, f in enumerate(funcs)}
    imgs = []
    for g in G.generators:
        ginv = G.inv(g)
        sinv = S.table[ginv]
        ag = A.gset.table[g]
        p = [0]
        for f in funcs:
            p.append(pos[tuple(ag[f[sinv[z]]] for z in range(S.n))])
        imgs.append(tuple(p))
    return BasedGSet(GSet(G, len(labels), imgs, labels), 0), labels


def smash(A: BasedGSet, B: BasedGSet) -> tuple[BasedGSet, list]:
    """A ∧ B with diagonal action; point 0 is the basepoint, then pairs (a, b)."""
    G = A.group
    if B.group != G:
        raise GroupMismatch("smash over different groups")
    pairs = [(a, b) for a in A.nonbase() for b in B.nonbase()]
    pos = {pr: i + 1 for i, pr in enumerate(pairs)}
    imgs = []
    for k in range(len(G.generators)):
        pa, pb = A.gset.gen_images[k], B.gset.gen_images[k]
        imgs.append((0,) + tuple(pos[(pa[a], pb[b])] for a, b in pairs))
    return BasedGSet(GSet(G, len(pairs) + 1, imgs, [None] + pairs), 0), [None] + pairs


def smash_union_iso(A: BasedGSet, S: GSet, T: GSet) -> bool:
    """Check A^(S⊔T) ≅ A^(S) ∧ A^(T) via restriction f ↦ (f|S, f|T)."""
    U = disjoint_union(S, T)
    AU, lu = indexed_smash(A, U)
    AS, ls = indexed_smash(A, S)
    AT, lt = indexed_smash(A, T)
    ST, lst = smash(AS, AT)
    ps = {f: i for i, f in enumerate(ls) if f is not None}
    pt = {f: i for i, f in enumerate(lt) if f is not None}
    pst = {pr: i for i, pr in enumerate(lst) if pr is not None}
    phi = [0] * AU.n
    for i, f in enumerate(lu):
        if f is None:
            continue
        phi[i] = pst[(ps[f[: S.n]], pt[f[S.n:]])]
    if sorted(phi) != list(range(ST.n)):
        return False
    G = A.group
    for k in range(len(G.generators)):
        pu, pst_ = AU.gset.gen_images[k], ST.gset.gen_images[k]
        if any(phi[pu[i]] != pst_[phi[i]] for i in range(AU.n)):
            return False
    return True


@dataclass
class HHRDiagonal:
    domain: list            # tuples (a_1..a_r) of non-base fixed points; None for the basepoint
    images: list            # image point in A^(S) for each domain entry
    fixed: list[int]        # (A^(S))^G
    well_defined: bool
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.well_defined and self.bijective


def canonical_decomposition(S: GSet) -> list[tuple[int, dict[int, int]]]:
    """Orbit representatives with lex-minimal coset representatives g_ζ."""
    G = S.group
    out = []
    for orb in S.orbits():
        reps: dict[int, int] = {}
        for g in range(G.order):
            z = S.table[g][orb.rep]
            reps.setdefault(z, g)
        out.append((orb.rep, reps))
    return out


def hhr_diagonal(A: BasedGSet, S: GSet, decomposition=None) -> HHRDiagonal:
    """a₁∧…∧a_r ↦ (ζ ↦ g_ζ a_i) from ⋀ A^{H_i} to the G-fixed points of A^(S)."""
    G = A.group
    if S.group != G:
        raise GroupMismatch("diagonal over different groups")
    dec = canonical_decomposition(S) if decomposition is None else decomposition
    owner: dict[int, tuple[int, int]] = {}
    for i, (rep, reps) in enumerate(dec):
        for z, g in reps.items():
            if S.table[g][rep] != z:
                raise BadDecomposition(f"g_ζ does not carry the representative {rep} to {z}")
            if z in owner:
                raise BadDecomposition(f"point {z} appears in two orbits")
            owner[z] = (i, g)
    if sorted(owner) != list(range(S.n)):
        raise BadDecomposition("decomposition does not cover S")
    stabs = [S.stabilizer(rep) for rep, _ in dec]
    fixed_sets = [[a for a in A.nonbase() if all(A.gset.table[h][a] == a for h in H.generators)]
                  for H in stabs]
    AS, labels = indexed_smash(A, S)
    pos = {f: i for i, f in enumerate(labels) if f is not None}
    domain: list = [None]
    images = [0]
    well = True
    for combo in itertools.product(*fixed_sets):
        f = tuple(A.gset.table[owner[z][1]][combo[owner[z][0]]] for z in range(S.n))
        # independence from the coset representative chosen
        for z in range(S.n):
            i = owner[z][0]
            rep = dec[i][0]
            for g in range(G.order):
                if S.table[g][rep] == z and A.gset.table[g][combo[i]] != f[z]:
                    well = False
        domain.append(combo)
        images.append(pos[f])
    fixed = AS.fixed_points()
    well = well and all(i in set(fixed) for i in images)
    bij = len(set(images)) == len(images) and sorted(images) == sorted(fixed)
    return HHRDiagonal(domain, images, fixed, well, bij)


def all_gsets(G: FinGroup, max_size: int, classes=None) -> list[GSet]:
    """One G-set per isomorphism class of size 1..max_size (sums of G/H over subgroup classes)."""
    from .groups import conjugacy_classes_of_subgroups

    classes = classes or conjugacy_classes_of_subgroups(G)
    trans = [(c.rep.index(), coset_gset(G, c.rep)) for c in classes]
    out = []

    def rec(start: int, size: int, chosen: list[GSet]):
        if chosen:
            out.append(disjoint_union(*chosen))
        for k in range(start, len(trans)):
            sz, X = trans[k]
            if size + sz <= max_size:
                rec(k, size + sz, chosen + [X])

    rec(0, 0, [])
    return out
