"""Finite permutation groups, subgroups, homomorphisms and wreath products.

Permutations are tuples in 0-based one-line notation.  Composition acts on
the left: ``compose(p, q)[i] == p[q[i]]``, so ``p*q`` means "first q, then p".
Group elements are addressed by their index in the sorted element list.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .config import caps
from .errors import (
    DivisibilityViolation,
    EnumerationCapExceeded,
    InvalidHom,
    MixedSignature,
    NotASubgroup,
    OrderCapExceeded,
    ValidationError,
)

Perm = tuple


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple([p[i] for i in q])


def invert(p: Perm) -> Perm:
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        out = out * n // math.gcd(out, n)
    return out


def is_perm(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def _closure(degree: int, gens: Iterable[Perm], cap: int | None) -> list[Perm]:
    gens = [tuple(g) for g in gens]
    for g in gens:
        if not is_perm(g, degree):
            raise ValidationError(f"{list(g)} is not a permutation of {degree} points")
    e = identity_perm(degree)
    seen = {e}
    todo = [e]
    for x in todo:
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
                if cap is not None and len(seen) > cap:
                    raise OrderCapExceeded(f"group order exceeds materialization cap {cap}")
    return sorted(seen)


class FinGroup:
    """A finite group given by a faithful action on ``degree`` points."""

    TABLE_LIMIT = 160

    def __init__(self, degree: int, elements: Iterable[Perm], name: str | None = None):
        self.degree = degree
        self.elements = tuple(sorted(tuple(p) for p in elements))
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.name = name
        if self.elements[0] != identity_perm(degree):
            raise ValidationError("element list does not contain the identity")

    @classmethod
    def generated(cls, degree: int, gens: Iterable[Perm], name: str | None = None,
                  cap: int | None = None) -> "FinGroup":
        cap = caps().materialize if cap is None else cap
        return cls(degree, _closure(degree, gens, cap), name=name)

    # basic arithmetic -----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    identity = 0

    @cached_property
    def _table(self):
        if self.order > self.TABLE_LIMIT:
            return None
        el, ix = self.elements, self.index
        return [[ix[compose(a, b)] for b in el] for a in el]

    def mul(self, a: int, b: int) -> int:
        t = self._table
        if t is not None:
            return t[a][b]
        return self.index[compose(self.elements[a], self.elements[b])]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(self.index[invert(p)] for p in self.elements)

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out, base = 0, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def conj(self, a: int, g: int) -> int:
        """g^-1 a g"""
        return self.mul(self.inv(g), self.mul(a, g))

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(perm_order(p) for p in self.elements)

    def element_order(self, a: int) -> int:
        return self.orders[a]

    def lookup(self, p: Sequence[int]) -> int:
        try:
            return self.index[tuple(p)]
        except KeyError:
            raise ValidationError(f"{list(p)} is not an element of the group") from None

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    # generation -----------------------------------------------------------
    def closure(self, idxs: Iterable[int]) -> frozenset[int]:
        gens = list(dict.fromkeys(idxs))
        seen = {0}
        todo = [0]
        for x in todo:
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Canonical generating set: greedily add the smallest missing element."""
        gens: list[int] = []
        span = frozenset([0])
        for i in range(1, self.order):
            if i not in span:
                gens.append(i)
                span = self.closure(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def generator_perms(self) -> list[Perm]:
        return [self.elements[g] for g in self.generators]

    # subgroups ------------------------------------------------------------
    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, members)

    def generated_subgroup(self, idxs: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.closure(idxs), check=False)

    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order), check=False)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [0], check=False)

    # identity -------------------------------------------------------------
    @cached_property
    def content_hash(self) -> str:
        blob = json.dumps([self.degree, self.elements], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __eq__(self, other) -> bool:
        return (isinstance(other, FinGroup) and self.degree == other.degree
                and self.elements == other.elements)

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"<FinGroup {label}, order {self.order}>"


class Subgroup:
    """A subgroup of ``parent`` given by sorted member indices."""

    def __init__(self, parent: FinGroup, members: Iterable[int], check: bool = True):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self._set = frozenset(self.members)
        if check:
            if 0 not in self._set:
                raise NotASubgroup("member set lacks the identity")
            for a in self.members:
                for b in self.members:
                    if parent.mul(a, b) not in self._set:
                        raise NotASubgroup("member set is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self._set

    def __iter__(self):
        return iter(self.members)

    @property
    def member_set(self) -> frozenset[int]:
        return self._set

    @cached_property
    def generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        span = frozenset([0])
        for i in self.members:
            if i not in span:
                gens.append(i)
                span = self.parent.closure(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    @cached_property
    def as_group(self) -> FinGroup:
        G = self.parent
        return FinGroup(G.degree, [G.elements[i] for i in self.members])

    def to_parent(self, i: int) -> int:
        """Index in the parent of element ``i`` of :attr:`as_group`."""
        return self.members[i]

    def from_parent(self, a: int) -> int:
        return self.as_group.index[self.parent.elements[a]]

    def conjugate(self, g: int) -> "Subgroup":
        """g^-1 H g"""
        G = self.parent
        return Subgroup(G, (G.conj(h, g) for h in self.members), check=False)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def is_normal(self, in_group: "Subgroup | None" = None) -> bool:
        gens = in_group.generators if in_group is not None else self.parent.generators
        return all(self.conjugate(g)._set == self._set for g in gens)

    def normalizer(self) -> "Subgroup":
        G = self.parent
        return Subgroup(G, (g for g in range(G.order) if self.conjugate(g)._set == self._set),
                        check=False)

    def left_cosets(self) -> list[tuple[int, ...]]:
        """Left cosets gH, sorted by smallest member."""
        G = self.parent
        seen: set[int] = set()
        out = []
        for g in range(G.order):
            if g in seen:
                continue
            c = tuple(sorted(G.mul(g, h) for h in self.members))
            seen.update(c)
            out.append(c)
        return out

    def index(self) -> int:
        return self.parent.order // self.order

    def sort_key(self):
        return (self.order, self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.parent == other.parent
                and self.members == other.members)

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"<Subgroup order {self.order} of {self.parent!r}>"


def as_subgroup(G: FinGroup, H) -> Subgroup:
    """Accept a Subgroup of G or a FinGroup whose elements lie in G."""
    if isinstance(H, Subgroup):
        if H.parent != G:
            raise NotASubgroup("subgroup belongs to a different parent group")
        return H
    if isinstance(H, FinGroup):
        if H.degree != G.degree or any(p not in G.index for p in H.elements):
            raise NotASubgroup("group is not contained in the ambient group")
        return Subgroup(G, (G.index[p] for p in H.elements), check=False)
    return Subgroup(G, H)


# homomorphisms ----------------------------------------------------------------

class GroupHom:
    """A homomorphism given by the image index of every source element."""

    def __init__(self, source: FinGroup, target: FinGroup, images: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if check:
            if len(self.images) != source.order or self.images[0] != 0:
                raise InvalidHom("image table has wrong length or moves the identity")
            for a in range(source.order):
                for b in range(source.order):
                    if self.images[source.mul(a, b)] != target.mul(self.images[a], self.images[b]):
                        raise InvalidHom("map does not preserve multiplication")

    @classmethod
    def from_generator_images(cls, source: FinGroup, target: FinGroup,
                              gen_images: Sequence[int]) -> "GroupHom":
        gens = source.generators
        if len(gen_images) != len(gens):
            raise InvalidHom(f"expected {len(gens)} generator images, got {len(gen_images)}")
        images = _extend(source, target, gens, list(gen_images))
        if images is None:
            raise InvalidHom("generator images do not extend to a homomorphism")
        return cls(source, target, images, check=False)

    def __call__(self, a: int) -> int:
        return self.images[a]

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(self.images[g] for g in self.source.generators)

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, (a for a, b in enumerate(self.images) if b == 0), check=False)

    def image(self) -> Subgroup:
        return Subgroup(self.target, set(self.images), check=False)

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.source.order == self.target.order

    def restrict(self, H: Subgroup) -> "GroupHom":
        """Restriction to H, as a hom out of ``H.as_group``."""
        return GroupHom(H.as_group, self.target, [self.images[a] for a in H.members], check=False)

    def conjugate(self, b: int) -> "GroupHom":
        """The hom λ ↦ b^-1 σ(λ) b."""
        T = self.target
        return GroupHom(self.source, T, [T.conj(x, b) for x in self.images], check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupHom) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"<GroupHom key={self.key}>"


class _Tree:
    """BFS spanning tree of the subgroup generated by a prefix of generators."""

    def __init__(self, A: FinGroup, gens: Sequence[int]):
        pos = {0: 0}
        order = [0]
        steps = []  # (child position, parent position, generator slot)
        for x in order:
            for j, g in enumerate(gens):
                y = A.mul(x, g)
                if y not in pos:
                    pos[y] = len(order)
                    order.append(y)
                    steps.append((pos[y], pos[x], j))
        self.elements = order
        self.steps = steps
        self.edges = [(pos[x], j, pos[A.mul(x, g)]) for x in order for j, g in enumerate(gens)]


def _fill(B: FinGroup, tree: _Tree, gen_images: Sequence[int]) -> list[int] | None:
    img = [0] * len(tree.elements)
    for c, p, j in tree.steps:
        img[c] = B.mul(img[p], gen_images[j])
    for x, j, y in tree.edges:
        if img[y] != B.mul(img[x], gen_images[j]):
            return None
    return img


def _extend(A: FinGroup, B: FinGroup, gens: Sequence[int], gen_images: Sequence[int]):
    tree = _Tree(A, gens)
    if len(tree.elements) != A.order:
        raise InvalidHom("generators do not generate the source")
    img = _fill(B, tree, gen_images)
    if img is None:
        return None
    out = [0] * A.order
    for p, x in enumerate(tree.elements):
        out[x] = img[p]
    return out


def enumerate_homs(A: FinGroup, B: FinGroup, cap: int | None = None) -> list[GroupHom]:
    """All homomorphisms A → B, sorted lexicographically by generator images.

    Backtracks over generator images; a partial assignment is kept only if it
    already defines a homomorphism on the subgroup generated so far.
    """
    cap = caps().hom_candidates if cap is None else cap
    gens = A.generators
    if not gens:
        return [GroupHom(A, B, [0], check=False)]
    trees = [_Tree(A, gens[: t + 1]) for t in range(len(gens))]
    cands = [[b for b in range(B.order) if A.element_order(g) % B.element_order(b) == 0]
             for g in gens]
    tried = 0
    found: list[list[int]] = []
    chosen: list[int] = []

    def rec(t: int) -> None:
        nonlocal tried
        for b in cands[t]:
            tried += 1
            if tried > cap:
                raise EnumerationCapExceeded(
                    f"more than {cap} candidate generator images for Hom(|A|={A.order}, |B|={B.order})")
            chosen.append(b)
            img = _fill(B, trees[t], chosen)
            if img is not None:
                if t + 1 == len(gens):
                    full = [0] * A.order
                    for p, x in enumerate(trees[t].elements):
                        full[x] = img[p]
                    found.append(full)
                else:
                    rec(t + 1)
            chosen.pop()

    rec(0)
    return [GroupHom(A, B, f, check=False) for f in found]


class HomClass:
    def __init__(self, rep: GroupHom, members: list[GroupHom]):
        self.rep = rep
        self.members = members

    def __len__(self) -> int:
        return len(self.members)


def hom_conjugacy_classes(homs: Sequence[GroupHom], acting: FinGroup | None = None) -> list[HomClass]:
    """Partition homs into orbits of conjugation by the target (or ``acting`` ≤ target)."""
    if not homs:
        return []
    A, B = homs[0].source, homs[0].target
    if any(h.source != A or h.target != B for h in homs):
        raise MixedSignature("homomorphisms do not share source and target")
    if acting is not None and acting.degree != B.degree:
        raise MixedSignature("acting group does not act on the target's points")
    act_gens = [B.index[p] for p in (acting.generator_perms() if acting else B.generator_perms())]
    by_key = {h.key: h for h in homs}
    done: set = set()
    classes = []
    for h in homs:
        if h.key in done:
            continue
        orbit = {h.key}
        todo = [h.key]
        for k in todo:
            for g in act_gens:
                k2 = tuple(B.conj(x, g) for x in k)
                if k2 not in orbit:
                    orbit.add(k2)
                    todo.append(k2)
        members = sorted((by_key[k] for k in orbit if k in by_key), key=lambda x: x.key)
        done |= orbit
        classes.append(HomClass(members[0], members))
    classes.sort(key=lambda c: c.rep.key)
    return classes


def find_isomorphism(A: FinGroup, B: FinGroup) -> GroupHom | None:
    if A.order != B.order:
        return None
    for h in enumerate_homs(A, B):
        if h.is_injective():
            return h
    return None


# subgroup lattice ------------------------------------------------------------

def _check_cap(G: FinGroup) -> None:
    cap = caps().group_order
    if G.order > cap:
        raise OrderCapExceeded(f"|G| = {G.order} exceeds the subgroup-lattice cap {cap}")


def enumerate_subgroups(G: FinGroup) -> list[Subgroup]:
    """All subgroups, sorted by (order, member indices)."""
    _check_cap(G)
    cyclic = {G.closure([g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = G.closure(H | C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    subs = [Subgroup(G, s, check=False) for s in found]
    subs.sort(key=Subgroup.sort_key)
    return subs


class SubgroupClass:
    def __init__(self, rep: Subgroup, members: list[Subgroup]):
        self.rep = rep
        self.members = members

    def __len__(self) -> int:
        return len(self.members)


def conjugacy_classes_of_subgroups(G: FinGroup) -> list[SubgroupClass]:
    subs = enumerate_subgroups(G)
    seen: set = set()
    out = []
    for H in subs:
        if H.members in seen:
            continue
        cls = {H.conjugate(g).members for g in range(G.order)}
        seen |= cls
        members = sorted((Subgroup(G, m, check=False) for m in cls), key=Subgroup.sort_key)
        out.append(SubgroupClass(members[0], members))
    out.sort(key=lambda c: c.rep.sort_key())
    return out


def quotient(N: FinGroup, K: Subgroup) -> tuple[FinGroup, GroupHom]:
    """N/K acting on the left cosets of K (faithful when K is normal)."""
    if K.parent != N:
        raise NotASubgroup("kernel is not a subgroup of the given group")
    if not K.is_normal():
        raise NotASubgroup("cannot form a quotient by a non-normal subgroup")
    cosets = K.left_cosets()
    where = {}
    for c, members in enumerate(cosets):
        for x in members:
            where[x] = c
    perms = []
    for g in range(N.order):
        perms.append(tuple(where[N.mul(g, cos[0])] for cos in cosets))
    Wq = FinGroup(len(cosets), set(perms))
    proj = GroupHom(N, Wq, [Wq.index[p] for p in perms], check=False)
    return Wq, proj


class WeylData:
    def __init__(self, group: FinGroup, projection: GroupHom, normalizer: Subgroup):
        self.group = group
        self.projection = projection
        self.normalizer = normalizer


def weyl_group(G: FinGroup, H) -> WeylData:
    """WH = N_G(H)/H acting on the cosets of H in its normalizer."""
    H = as_subgroup(G, H)
    N = H.normalizer()
    NG = N.as_group
    Hin = Subgroup(NG, (N.from_parent(h) for h in H.members), check=False)
    Wq, proj = quotient(NG, Hin)
    return WeylData(Wq, proj, N)


# wreath products ---------------------------------------------------------------

def wreath_mul(Q: FinGroup, x, y):
    """Product (a;s)(b;t) = (a_j b_{s^-1(j)}; s∘t)."""
    a, s = x
    b, t = y
    sinv = invert(s)
    return tuple(Q.mul(a[j], b[sinv[j]]) for j in range(len(s))), compose(s, t)


def wreath_inv(Q: FinGroup, x):
    a, s = x
    return tuple(Q.inv(a[s[i]]) for i in range(len(s))), invert(s)


def wreath_identity(q: int):
    return (0,) * q, identity_perm(q)


class WreathGroup(FinGroup):
    """Σ≀Q for Σ ≤ Σ_q, realized on q·deg(Q) points by (a;s)(i,x) = (s[i], a_{s[i]}(x))."""

    def __init__(self, q: int, base: FinGroup, top: FinGroup | None, elements):
        super().__init__(q * base.degree, elements)
        self.q = q
        self.base = base
        self.top = top if top is not None else symmetric(q)

    @staticmethod
    def encode_with(q: int, Q: FinGroup, a, s) -> Perm:
        d = Q.degree
        out = [0] * (q * d)
        for i in range(q):
            j = s[i]
            qa = Q.elements[a[j]]
            for x in range(d):
                out[i * d + x] = j * d + qa[x]
        return tuple(out)

    def encode(self, a, s) -> int:
        return self.index[self.encode_with(self.q, self.base, a, s)]

    def decode(self, idx: int):
        p = self.elements[idx]
        d = self.base.degree
        s = tuple(p[i * d] // d for i in range(self.q))
        a = [0] * self.q
        for i in range(self.q):
            j = s[i]
            a[j] = self.base.index[tuple(p[i * d + x] - j * d for x in range(d))]
        return tuple(a), s


def wreath_order(q: int, Q: FinGroup, top: FinGroup | None = None) -> int:
    t = math.factorial(q) if top is None else top.order
    return t * Q.order ** q


def wreath(q: int, Q: FinGroup, top: FinGroup | None = None, cap: int | None = None) -> WreathGroup:
    """Σ_q≀Q (or Σ≀Q for a given top group Σ ≤ Σ_q), materialized."""
    if q < 1:
        raise ValidationError("wreath product needs q ≥ 1")
    cap = caps().materialize if cap is None else cap
    if wreath_order(q, Q, top) > cap:
        raise OrderCapExceeded(f"|Σ≀Q| = {wreath_order(q, Q, top)} exceeds materialization cap {cap}")
    topg = top if top is not None else symmetric(q)
    if topg.degree != q:
        raise ValidationError("top group must act on q points")
    e = (0,) * q
    gens = [WreathGroup.encode_with(q, Q, e, topg.elements[s]) for s in topg.generators]
    for i in range(q):
        for g in Q.generators:
            a = [0] * q
            a[i] = g
            gens.append(WreathGroup.encode_with(q, Q, a, identity_perm(q)))
    elements = _closure(q * Q.degree, gens, None)
    W = WreathGroup(q, Q, top, elements)
    W.name = f"wreath({q},{Q.name or Q.content_hash})"
    return W


# products --------------------------------------------------------------------

class ProductGroup(FinGroup):
    """G×H acting on the disjoint union of points; element (i,j) has index i*|H|+j."""

    def __init__(self, G: FinGroup, H: FinGroup):
        shift = G.degree
        els = [g + tuple(x + shift for x in h) for g in G.elements for h in H.elements]
        super().__init__(G.degree + H.degree, els)
        self.left, self.right = G, H

    def pair(self, i: int, j: int) -> int:
        return i * self.right.order + j

    def split(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.right.order)


def direct_product(G: FinGroup, H: FinGroup) -> ProductGroup:
    P = ProductGroup(G, H)
    P.name = f"{G.name or G.content_hash}x{H.name or H.content_hash}"
    return P


# named groups -----------------------------------------------------------------

def trivial_group() -> FinGroup:
    return FinGroup(1, [(0,)], name="1")


def cyclic(n: int) -> FinGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be positive")
    return FinGroup(n, [tuple((i + k) % n for i in range(n)) for k in range(n)], name=f"C{n}")


def symmetric(n: int) -> FinGroup:
    if n < 1:
        raise ValidationError("symmetric group degree must be positive")
    gens = []
    if n > 1:
        gens = [(1, 0) + tuple(range(2, n)), tuple(list(range(1, n)) + [0])]
    return FinGroup.generated(n, gens, name=f"S{n}", cap=math.factorial(n))


def alternating(n: int) -> FinGroup:
    gens = [tuple(range(n))]
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return FinGroup.generated(n, gens, name=f"A{n}", cap=max(1, math.factorial(n) // 2))


def dihedral(n: int) -> FinGroup:
    """Symmetries of the regular n-gon, order 2n."""
    if n == 1:
        return FinGroup(2, [(0, 1), (1, 0)], name="D1")
    if n == 2:
        G = FinGroup.generated(4, [(1, 0, 3, 2), (2, 3, 0, 1)], name="D2")
        return G
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FinGroup.generated(n, [rot, ref], name=f"D{n}")


def regular_group(n: int, mul, name: str | None = None, gens: Sequence[int] = ()) -> FinGroup:
    """Left-regular permutation group of an abstract group on labels 0..n-1."""
    perms = [tuple(mul(g, x) for x in range(n)) for g in (gens or range(n))]
    return FinGroup.generated(n, perms, name=name)


def quaternion() -> FinGroup:
    # labels: sign*4 + unit, units 1,i,j,k
    table = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}

    def mul(a, b):
        sa, ua = divmod(a, 4)
        sb, ub = divmod(b, 4)
        sign, u = table[(ua, ub)]
        neg = (sa + sb + (1 if sign < 0 else 0)) % 2
        return neg * 4 + u

    return regular_group(8, mul, name="Q8", gens=[1, 2])


def dicyclic(n: int) -> FinGroup:
    """C_{n} ⋊ C_4 with the generator of C_4 inverting C_n and squaring to the involution (order 4n)."""
    # element (a, b) with a in Z/2n, b in {0,1}; x^b y^a style presentation of Dic_n
    m = 2 * n

    def mul(u, v):
        a1, b1 = divmod(u, 2)
        a2, b2 = divmod(v, 2)
        if b1 == 0:
            a, b = (a1 + a2) % m, b2
        elif b2 == 0:
            a, b = (a1 - a2) % m, 1
        else:
            a, b = (a1 - a2 + n) % m, 0
        return a * 2 + b

    return regular_group(2 * m, mul, name=f"Dic{n}", gens=[2, 1])


_NAME = re.compile(r"^(C|S|A|D|Dic|Q)(\d+)$")


def named_group(name: str) -> FinGroup:
    """Parse names like C4, S3, A4, D4 (order 8), Q8, Dic3, C2xC2, trivial."""
    name = name.strip()
    if name in ("1", "trivial", "C1"):
        return trivial_group()
    if name in ("V4", "Klein"):
        return named_group("C2xC2")
    if "x" in name:
        parts = [named_group(p) for p in name.split("x")]
        G = reduce(direct_product, parts)
        G.name = name
        return G
    m = _NAME.match(name)
    if not m:
        raise ValidationError(f"unknown group name {name!r}")
    kind, k = m.group(1), int(m.group(2))
    cap = caps().materialize
    too_big = {"C": k > cap, "S": k > 12 or math.factorial(k) > cap,
               "A": k > 12 or math.factorial(k) // 2 > cap,
               "D": 2 * k > cap, "Dic": 4 * k > cap, "Q": False}[kind]
    if too_big:
        raise OrderCapExceeded(f"{name} is larger than the materialization cap {cap}")
    if kind == "C":
        return cyclic(k)
    if kind == "S":
        return symmetric(k)
    if kind == "A":
        return alternating(k)
    if kind == "D":
        G = dihedral(k)
        G.name = name
        return G
    if kind == "Dic":
        return dicyclic(k)
    if kind == "Q" and k == 8:
        return quaternion()
    raise ValidationError(f"unknown group name {name!r}")


SMALL_GROUP_NAMES = {
    1: ["1"], 2: ["C2"], 3: ["C3"], 4: ["C4", "C2xC2"], 5: ["C5"], 6: ["C6", "S3"],
    7: ["C7"], 8: ["C8", "C4xC2", "C2xC2xC2", "D4", "Q8"], 9: ["C9", "C3xC3"],
    10: ["C10", "D5"], 11: ["C11"], 12: ["C12", "C2xC6", "A4", "D6", "Dic3"],
}


def small_groups(max_order: int) -> list[tuple[str, FinGroup]]:
    """One group per isomorphism class of order ≤ max_order (max_order ≤ 12)."""
    if max_order > 12:
        raise ValidationError("small group library stops at order 12")
    return [(nm, named_group(nm)) for k in range(1, max_order + 1) for nm in SMALL_GROUP_NAMES[k]]


# cyclic tower -------------------------------------------------------------------

class CyclicTower:
    """C_m(n) < T(n): realized as the cyclic group of order m; n is metadata."""

    def __init__(self, n: int, m: int):
        if n < 1 or m < 1:
            raise ValidationError("tower labels must be positive")
        self.n, self.m = n, m

    @cached_property
    def group(self) -> FinGroup:
        return cyclic(self.m)

    def subgroup(self, l: int) -> Subgroup:
        """C_l(n) inside C_m(n), for l | m."""
        if self.m % l:
            raise DivisibilityViolation(f"{l} does not divide {self.m}")
        G = self.group
        return G.generated_subgroup([G.pow(1, self.m // l)] if G.order > 1 else [])

    def __repr__(self) -> str:
        return f"C_{self.m}({self.n})"


def cyclic_quotient_iso(m: int, l: int, n: int) -> GroupHom:
    """C_m(n)/C_l(n) ≅ C_{m/l}(n/l), sending the coset of n/m to the generator."""
    if m % l or n % l:
        raise DivisibilityViolation(f"need l | m and l | n, got (m, l, n) = ({m}, {l}, {n})")
    T = CyclicTower(n, m)
    G = T.group
    Qg, proj = quotient(G, T.subgroup(l))
    target = CyclicTower(n // l, m // l).group
    gen = 1 if G.order > 1 else 0
    gen_img = proj(gen)
    # send the image of the generator to the standard generator
    images = [0] * Qg.order
    x, k = 0, 0
    tgen = 1 if target.order > 1 else 0
    for _ in range(Qg.order):
        images[x] = target.pow(tgen, k)
        x, k = Qg.mul(x, gen_img), k + 1
    return GroupHom(Qg, target, images)
