"""Finite G-set bookkeeping behind the multiplicative tom Dieck splitting.

Everything here is indexing data: isomorphism classes of G-sets, their
automorphism groups, and the dimensions of the cells whose geometric fixed
points make up each smash factor. No homotopy types are modeled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .config import caps
from .errors import EnumerationCapExceeded, InternalError, ValidationError
from .groups import (
    FinGroup,
    GroupHom,
    SubgroupClass,
    compose,
    conjugacy_classes_of_subgroups,
    enumerate_homs,
    hom_conjugacy_classes,
    identity_perm,
    symmetric,
    trivial_group,
    weyl_group,
    wreath,
)
from .gsets import GSet, coset_gset, disjoint_union, regular_gset, trivial_gset
from .twisted import WreathHom, twisted_fixed_dim

TRUNCATION_NOTE = ("summands listed for q <= q_max only; the full smash factor is an "
                   "infinite wedge over q >= 0")
SCOPE_NOTE = ("indexing data only: the equivalences relating these summands to "
              "geometric fixed points hold in the homotopy category and are not modeled")


def _empty_gset(G: FinGroup) -> GSet:
    return GSet(G, 0, [()] * len(G.generators))


def orbit_type(Z: GSet, classes: list[SubgroupClass]) -> tuple[int, ...]:
    """Multiplicity of each subgroup conjugacy class among the orbits of Z."""
    lookup = {}
    for i, c in enumerate(classes):
        for member in c.members:
            lookup[member.members] = i
    counts = [0] * len(classes)
    for orb in Z.orbits():
        counts[lookup[orb.stabilizer.members]] += 1
    return tuple(counts)


@dataclass
class GSetClass:
    size: int
    representative: GSet
    multiplicities: tuple[int, ...]
    classes: list[SubgroupClass] = field(repr=False)

    @property
    def orbit_types(self) -> list[tuple[int, int]]:
        """Nonzero (class index, multiplicity) pairs."""
        return [(i, k) for i, k in enumerate(self.multiplicities) if k]


def _multisets(indices: list[int], q: int) -> list[tuple[int, ...]]:
    out = []
    r = len(indices)

    def rec(i: int, left: int, acc: list[int]):
        if i == r:
            if left == 0:
                out.append(tuple(acc))
            return
        for k in range(left // indices[i] + 1):
            rec(i + 1, left - k * indices[i], acc + [k])

    rec(0, q, [])
    return out


def _standard_gset(G: FinGroup, classes: list[SubgroupClass], mult) -> GSet:
    parts = [coset_gset(G, c.rep) for c, k in zip(classes, mult) for _ in range(k)]
    return disjoint_union(*parts) if parts else _empty_gset(G)


def _gset_of_hom(h: GroupHom, q: int) -> GSet:
    G = h.source
    return GSet(G, q, [h.target.elements[h(g)] for g in G.generators])


def gset_iso_classes(G: FinGroup, q: int, cross_check: bool = True) -> list[GSetClass]:
    """Isomorphism classes of G-sets with q points.

    Built from orbit-type multisets; with ``cross_check`` the count and the
    orbit types are compared against Σ_q-conjugacy classes of homs G → Σ_q.
    """
    if q < 0:
        raise ValidationError("q must be non-negative")
    classes = conjugacy_classes_of_subgroups(G)
    indices = [c.rep.index() for c in classes]
    out = [GSetClass(q, _standard_gset(G, classes, m), m, classes)
           for m in _multisets(indices, q)]
    out.sort(key=lambda c: tuple(-k for k in c.multiplicities))
    if cross_check and q > 0:
        via_homs = hom_gset_classes(G, q)
        types = sorted(orbit_type(_gset_of_hom(hc.rep, q), classes) for hc in via_homs)
        if types != sorted(c.multiplicities for c in out):
            raise InternalError("G-set classification disagrees with hom conjugacy classes")
    return out


def hom_gset_classes(G: FinGroup, q: int):
    """Σ_q-conjugacy classes of homomorphisms G → Σ_q."""
    if q == 0:
        return []
    S = symmetric(q)
    homs = enumerate_homs(G, S, cap=caps().hom_candidates)
    return hom_conjugacy_classes(homs)


def count_hom_classes(G: FinGroup, q: int) -> int:
    return 1 if q == 0 else len(hom_gset_classes(G, q))


# automorphisms ----------------------------------------------------------------

def _equivariant_extensions(Z: GSet, reps: list[int], targets: list[int]) -> tuple | None:
    G = Z.group
    img = [-1] * Z.n
    for x, y in zip(reps, targets):
        for g in range(G.order):
            gx, gy = Z.act(g, x), Z.act(g, y)
            if img[gx] == -1:
                img[gx] = gy
            elif img[gx] != gy:
                return None
    if len(set(img)) != Z.n:
        return None
    return tuple(img)


def brute_force_automorphisms(Z: GSet) -> list[tuple]:
    """All G-equivariant bijections of Z, as permutations of its points."""
    if Z.n == 0:
        return [()]
    orbs = Z.orbits()
    reps = [o.rep for o in orbs]
    # the image of a representative must have a stabilizer containing its own
    options = []
    for o in orbs:
        stab = o.stabilizer.member_set
        options.append([y for y in range(Z.n) if all(Z.act(g, y) == y for g in stab)])
    total = prod(len(opt) for opt in options)
    if total > caps().hom_candidates:
        raise EnumerationCapExceeded(f"{total} candidate automorphisms exceed the cap")
    found = []

    def rec(i: int, chosen: list[int]):
        if i == len(reps):
            f = _equivariant_extensions(Z, reps, chosen)
            if f is not None:
                found.append(f)
            return
        for y in options[i]:
            if y not in chosen:
                rec(i + 1, chosen + [y])

    rec(0, [])
    return sorted(found)


@dataclass
class WreathFactor:
    class_index: int
    copies: int
    weyl_order: int
    group: FinGroup


@dataclass
class AutResult:
    group: FinGroup
    order: int
    formula_order: int
    factors: list[WreathFactor]
    isomorphism_verified: bool
    image: dict = field(repr=False, default_factory=dict)


def aut_gset(Z: GSet, verify: bool = True) -> AutResult:
    """G-automorphisms of Z, matched against the product of Σ_{q_i} ≀ WH_i.

    The wreath factor for orbit type G/H_i acts by permuting the copies and
    letting nH ∈ WH_i act on each copy through gH ↦ g n⁻¹ H.
    """
    G = Z.group
    classes = conjugacy_classes_of_subgroups(G)
    mult = orbit_type(Z, classes)
    autos = brute_force_automorphisms(Z)
    degree = max(Z.n, 1)
    group = FinGroup(degree, autos if Z.n else [identity_perm(1)])

    factors = []
    layout = []  # per factor: list of copies, each a list of Z points in coset order
    actions = []  # per factor: WH element -> permutation of coset indices
    for i, (c, k) in enumerate(zip(classes, mult)):
        if not k:
            continue
        H = c.rep
        wd = weyl_group(G, H)
        W = wd.group
        N = wd.normalizer
        reps_of = {}
        for nn in range(N.order):
            w = wd.projection(nn)
            reps_of.setdefault(w, N.to_parent(nn))
        cosets = H.left_cosets()
        where = {x: j for j, cos in enumerate(cosets) for x in cos}
        actions.append([tuple(where[G.mul(cos[0], G.inv(reps_of[w]))] for cos in cosets)
                        for w in range(W.order)])
        copies = []
        for orb in Z.orbits():
            if orb.stabilizer.members not in {m.members for m in c.members}:
                continue
            base = next(y for y in orb.points if Z.stabilizer(y).members == H.members)
            copies.append([Z.act(cos[0], base) for cos in cosets])
        layout.append(copies)
        factors.append(WreathFactor(i, k, W.order, W))
    formula = prod(factorial(f.copies) * f.weyl_order ** f.copies for f in factors)

    ok = len(autos) == formula
    image: dict = {}
    if verify and ok:
        wgroups = [wreath(f.copies, f.group) for f in factors]
        total = prod(w.order for w in wgroups)
        if total > caps().materialize:
            raise EnumerationCapExceeded(f"wreath product of order {total} exceeds the cap")

        def phi(elems):
            img = list(range(Z.n))
            for f_i, (Wr, e) in enumerate(zip(wgroups, elems)):
                a, s = Wr.decode(e)
                for cpy, pts in enumerate(layout[f_i]):
                    tgt = layout[f_i][s[cpy]]
                    move = actions[f_i][a[s[cpy]]]
                    for p, z in enumerate(pts):
                        img[z] = tgt[move[p]]
            return tuple(img)

        def all_tuples(i=0):
            if i == len(wgroups):
                yield ()
                return
            for e in range(wgroups[i].order):
                for rest in all_tuples(i + 1):
                    yield (e,) + rest

        for t in all_tuples():
            image[t] = phi(t)
        auto_set = set(autos) if Z.n else {()}
        ok = len(set(image.values())) == formula and set(image.values()) == auto_set
        if ok:
            gens = [tuple(g if j == i else 0 for j in range(len(wgroups)))
                    for i, Wr in enumerate(wgroups) for g in Wr.generators]
            for t, img in image.items():
                for gt in gens:
                    prod_t = tuple(Wr.mul(x, y) for Wr, x, y in zip(wgroups, t, gt))
                    if image[prod_t] != compose(img, image[gt]):
                        ok = False
                        break
                if not ok:
                    break
    return AutResult(group, len(autos), formula, factors, ok, image)


@dataclass
class ExponentialCheck:
    q: int
    class_sum: Fraction
    hom_count: int
    ok: bool
    orbit_sizes_ok: bool


def exponential_identity(G: FinGroup, q: int) -> ExponentialCheck:
    """Σ_[Z] 1/|Aut Z| over G-sets of size q against |Hom(G, Σ_q)|/q!.

    Also checks that each conjugacy class of homs has q!/|Aut Z| members.
    """
    classes = gset_iso_classes(G, q, cross_check=False)
    total = Fraction(0)
    auts = {}
    for c in classes:
        a = aut_gset(c.representative, verify=False).order
        auts[c.multiplicities] = a
        total += Fraction(1, a)
    if q == 0:
        return ExponentialCheck(0, total, 1, total == 1, True)
    hc = hom_gset_classes(G, q)
    count = sum(len(h) for h in hc)
    subgroup_classes = conjugacy_classes_of_subgroups(G)
    sizes_ok = all(len(h) * auts[orbit_type(_gset_of_hom(h.rep, q), subgroup_classes)]
                   == factorial(q) for h in hc)
    return ExponentialCheck(q, total, count, total == Fraction(count, factorial(q)), sizes_ok)


# splitting catalog ---------------------------------------------------------------

@dataclass
class SplittingSummand:
    q: int
    cell_dim: int
    suspension_dim: int
    sym_group: str
    sym_order: int


@dataclass
class SplittingClass:
    subgroup: tuple[int, ...]
    subgroup_order: int
    index: int
    weyl_order: int
    weyl_hash: str
    summands: list[SplittingSummand]
    transfer_marker: int = 1


@dataclass
class SplittingCatalog:
    group_hash: str
    m: int
    q_max: int
    classes: list[SplittingClass]
    notes: tuple[str, ...] = (TRUNCATION_NOTE, SCOPE_NOTE)


def splitting_catalog(G: FinGroup, m: int, q_max: int | None = None) -> SplittingCatalog:
    if m < 0:
        raise ValidationError("m must be non-negative")
    q_max = caps().qmax if q_max is None else q_max
    if q_max < 0:
        raise ValidationError("q_max must be non-negative")
    out = []
    for i, c in enumerate(conjugacy_classes_of_subgroups(G)):
        H = c.rep
        idx = H.index()
        W = weyl_group(G, H).group
        summands = [SplittingSummand(q, (m + idx) * q, idx * q, f"S{q} wr W[{i}]",
                                     factorial(q) * W.order ** q)
                    for q in range(q_max + 1)]
        out.append(SplittingClass(H.members, H.order, idx, W.order, W.content_hash,
                                  summands))
    return SplittingCatalog(G.content_hash, m, q_max, out)


# fixed point bookkeeping -----------------------------------------------------------

@dataclass
class FixedBookkeeping:
    cell_dim: int
    suspension_dim: int
    cell_dim_twisted: int
    suspension_dim_twisted: int

    @property
    def ok(self) -> bool:
        return (self.cell_dim == self.cell_dim_twisted
                and self.suspension_dim == self.suspension_dim_twisted)


def _as_gset(G: FinGroup, sigma) -> GSet:
    if isinstance(sigma, GSet):
        return sigma
    if isinstance(sigma, GroupHom):
        return _gset_of_hom(sigma, sigma.target.degree)
    raise ValidationError("expected a G-set or a homomorphism into a symmetric group")


def fixed_point_bookkeeping(G: FinGroup, m: int, sigma) -> FixedBookkeeping:
    """Fixed dimensions of (ℝ^m ⊕ ℝ⟨G⟩) ⊗ ℝ⟨Z⟩ and ℝ⟨G⟩ ⊗ ℝ⟨Z⟩.

    Orbit counting gives m·|Z/G| + |Z| and |Z|; both are recomputed as
    twisted fixed points of the q-fold power under Z's permutation action.
    """
    Z = _as_gset(G, sigma)
    if Z.group != G:
        raise ValidationError("the G-set is over a different group")
    q = Z.n
    cell = m * len(Z.orbits()) + q
    susp = q
    if q == 0:
        return FixedBookkeeping(0, 0, 0, 0)
    reg = regular_gset(G)
    fixed = trivial_gset(m, G) if m else None
    X_cell = disjoint_union(fixed, reg) if fixed else reg
    S = symmetric(q)
    hom = GroupHom(G, S, [S.index[Z.perm(g)] for g in range(G.order)])
    sig = WreathHom.from_perm_hom(hom, trivial_group())
    return FixedBookkeeping(cell, susp, twisted_fixed_dim(X_cell, sig), twisted_fixed_dim(reg, sig))
