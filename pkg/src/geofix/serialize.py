"""JSON <-> library objects.

Group elements are always written as permutations in the group's own degree.
Homomorphisms, actions and wreath homomorphisms are read as images of a list
of elements ("on") that must generate the source; they are extended along
the Cayley graph and every relation is checked on the way.
"""

from __future__ import annotations

from typing import Any, Callable, Sequence

from .acyc import AcycData, standard_example, unit_data
from .bundles import BundleData
from .errors import ValidationError
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    compose,
    direct_product,
    identity_perm,
    named_group,
    wreath_mul,
)
from .gsets import BiSet, GSet, coset_gset, disjoint_union, regular_gset, trivial_gset
from .twisted import WreathHom


class PayloadError(ValidationError):
    """A payload value that passed the schema but does not make sense."""

    def __init__(self, pointer: str, message: str):
        super().__init__(message)
        self.pointer = pointer


def _ptr(base: str, *parts) -> str:
    return base + "".join(f"/{p}" for p in parts)


# reading -----------------------------------------------------------------------

def read_group(spec, at: str = "") -> FinGroup:
    if isinstance(spec, str):
        try:
            return named_group(spec)
        except ValidationError as e:
            raise PayloadError(at, str(e)) from None
    degree = spec["degree"]
    gens = [read_perm(p, degree, _ptr(at, "generators", i)) for i, p in enumerate(spec["generators"])]
    G = FinGroup.generated(degree, gens or [identity_perm(degree)])
    G.name = spec.get("name")
    return G


def read_perm(p: Sequence[int], degree: int, at: str) -> tuple:
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise PayloadError(at, f"not a permutation of {degree} points")
    return tuple(p)


def read_element(G: FinGroup, p, at: str) -> int:
    perm = read_perm(p, G.degree, at)
    if perm not in G.index:
        raise PayloadError(at, "permutation is not an element of the group")
    return G.index[perm]


def read_subgroup(G: FinGroup, spec, at: str = "") -> Subgroup:
    if spec == "whole":
        return G.whole()
    if spec == "trivial":
        return G.trivial_subgroup()
    gens = spec["generators"] if isinstance(spec, dict) else spec
    idx = [read_element(G, p, _ptr(at, "generators", i)) for i, p in enumerate(gens)]
    return G.generated_subgroup(idx)


def _generator_list(G: FinGroup, spec: dict, at: str) -> list[int]:
    if "on" not in spec:
        return list(G.generators)
    return [read_element(G, p, _ptr(at, "on", i)) for i, p in enumerate(spec["on"])]


def extend_map(G: FinGroup, on: Sequence[int], values: Sequence, mul: Callable, identity,
               at: str) -> list:
    """Extend generator values to all of G; mul(f(x), v) must give f(x·g)."""
    if len(values) != len(on):
        raise PayloadError(at, f"expected {len(on)} images, got {len(values)}")
    table: dict[int, Any] = {0: identity}
    todo = [0]
    for x in todo:
        for g, v in zip(on, values):
            y = G.mul(x, g)
            val = mul(table[x], v)
            if y not in table:
                table[y] = val
                todo.append(y)
            elif table[y] != val:
                raise PayloadError(at, "images violate a relation of the group")
    if len(table) != G.order:
        raise PayloadError(at, "the listed elements do not generate the group")
    return [table[x] for x in range(G.order)]


def read_hom(source: FinGroup, target: FinGroup, spec: dict, at: str = "") -> GroupHom:
    on = _generator_list(source, spec, at)
    vals = [read_element(target, p, _ptr(at, "images", i)) for i, p in enumerate(spec["images"])]
    images = extend_map(source, on, vals, target.mul, 0, _ptr(at, "images"))
    return GroupHom(source, target, images, check=False)


def _action(G: FinGroup, n: int, spec: dict, at: str, right: bool) -> list[tuple]:
    """Images of G.generators for a left (or right) action given on the listed elements."""
    on = _generator_list(G, spec, at)
    vals = [read_perm(p, n, _ptr(at, "images", i)) for i, p in enumerate(spec["images"])]
    mul = (lambda f, v: compose(v, f)) if right else compose
    table = extend_map(G, on, vals, mul, identity_perm(n), _ptr(at, "images"))
    return [table[g] for g in G.generators]


def read_gset(G: FinGroup, spec, at: str = "") -> GSet:
    if isinstance(spec, dict) and "regular" in spec:
        return regular_gset(G)
    if isinstance(spec, dict) and "trivial" in spec:
        return trivial_gset(spec["trivial"], G)
    if isinstance(spec, dict) and "cosets" in spec:
        parts = [coset_gset(G, read_subgroup(G, h, _ptr(at, "cosets", i)))
                 for i, h in enumerate(spec["cosets"])]
        return disjoint_union(*parts) if parts else GSet(G, 0, [()] * len(G.generators))
    n = spec["points"]
    if "images" not in spec:
        return trivial_gset(n, G)
    return GSet(G, n, _action(G, n, spec, at, right=False))


def read_biset(left: FinGroup, right: FinGroup, spec, at: str = "") -> BiSet:
    if "points" not in spec or "left" not in spec and "right" not in spec:
        return BiSet.from_gset(read_gset(left, spec, at), right)
    n = spec["points"]
    ident = identity_perm(n)
    limgs = (_action(left, n, spec["left"], _ptr(at, "left"), right=False)
             if "left" in spec else [ident] * len(left.generators))
    rimgs = (_action(right, n, spec["right"], _ptr(at, "right"), right=True)
             if "right" in spec else [ident] * len(right.generators))
    try:
        return BiSet(left, right, n, limgs, rimgs)
    except ValidationError as e:
        raise PayloadError(at, str(e)) from None


def read_wreath_hom(spec: dict, at: str = "") -> WreathHom:
    L = read_group(spec["source"], _ptr(at, "source"))
    Q = read_group(spec.get("Q", "1"), _ptr(at, "Q"))
    q = spec["q"]
    on = _generator_list(L, spec, at)
    vals = []
    for i, img in enumerate(spec["images"]):
        here = _ptr(at, "images", i)
        s = read_perm(img["s"], q, _ptr(here, "s"))
        cof = img.get("a")
        if cof is None:
            a = (0,) * q
        else:
            if len(cof) != q:
                raise PayloadError(_ptr(here, "a"), f"expected {q} cofactors")
            a = tuple(read_element(Q, p, _ptr(here, "a", k)) for k, p in enumerate(cof))
        vals.append((a, s))
    table = extend_map(L, on, vals, lambda x, y: wreath_mul(Q, x, y),
                       ((0,) * q, identity_perm(q)), _ptr(at, "images"))
    return WreathHom(L, q, Q, table, check=False)


def read_bundle(spec: dict, at: str = "") -> BundleData:
    gamma = read_group(spec["gamma"], _ptr(at, "gamma"))
    Q = read_group(spec.get("Q", "1"), _ptr(at, "Q"))
    try:
        if spec.get("empty"):
            return BundleData.empty(gamma, Q)
        if "point" in spec:
            return BundleData.point(gamma, Q, read_biset(gamma, Q, spec["point"], _ptr(at, "point")))
        if "over" in spec:
            X = read_gset(gamma, spec["over"], _ptr(at, "over"))
            return BundleData.over_gset(X, spec.get("fiber", 1), Q)
        P = direct_product(gamma, Q)
        pieces = []
        for i, piece in enumerate(spec["pieces"]):
            here = _ptr(at, "pieces", i)
            members = []
            for k, pair in enumerate(piece["isotropy"]):
                g = read_element(gamma, pair["gamma"], _ptr(here, "isotropy", k, "gamma"))
                s = read_element(Q, pair["q"], _ptr(here, "isotropy", k, "q"))
                members.append(P.pair(g, s))
            H = P.generated_subgroup(members)
            fib = piece.get("fiber", 1)
            if isinstance(fib, dict):
                HG = H.as_group
                on = [HG.index[P.elements[x]] for x in members]
                n = fib["points"]
                vals = [read_perm(p, n, _ptr(here, "fiber", "images", j))
                        for j, p in enumerate(fib["images"])]
                table = extend_map(HG, on, vals, compose, identity_perm(n),
                                   _ptr(here, "fiber", "images"))
                fib = GSet(HG, n, [table[g] for g in HG.generators])
            pieces.append((H, fib))
        return BundleData.induced(gamma, Q, pieces)
    except PayloadError:
        raise
    except ValidationError as e:
        raise PayloadError(at, str(e)) from None


def read_acyc(spec, at: str = "") -> AcycData:
    if spec == "standard":
        return standard_example()
    if spec == "unit":
        return unit_data()
    return AcycData(spec["n"], tuple(spec["q"]), tuple(spec["m"]), tuple(spec["l"]),
                    tuple(tuple(v) for v in spec["V"]),
                    tuple(tuple(g) for g in spec.get("Q_gens", [])), spec.get("tag", "X"))


# writing -----------------------------------------------------------------------

def perm_json(p) -> list[int]:
    return list(p)


def group_json(G: FinGroup) -> dict:
    out = {"hash": G.content_hash, "order": G.order, "degree": G.degree,
           "generators": [perm_json(p) for p in G.generator_perms()]}
    if G.name:
        out["name"] = G.name
    return out


def subgroup_json(H: Subgroup) -> dict:
    G = H.parent
    return {"order": H.order, "index": H.index(),
            "generators": [perm_json(G.elements[H.to_parent(g)]) for g in H.as_group.generators]}


def hom_json(h: GroupHom) -> dict:
    A, B = h.source, h.target
    return {"on": [perm_json(A.elements[g]) for g in A.generators],
            "images": [perm_json(B.elements[h(g)]) for g in A.generators]}


def wreath_element_json(Q: FinGroup, w) -> dict:
    a, s = w
    return {"a": [perm_json(Q.elements[x]) for x in a], "s": perm_json(s)}


def wreath_hom_json(sigma: WreathHom) -> dict:
    L = sigma.source
    return {"q": sigma.q, "source": L.content_hash, "Q": sigma.Q.content_hash,
            "on": [perm_json(L.elements[g]) for g in L.generators],
            "images": [wreath_element_json(sigma.Q, sigma(g)) for g in L.generators]}


def gset_json(Z: GSet) -> dict:
    G = Z.group
    return {"points": Z.n, "on": [perm_json(G.elements[g]) for g in G.generators],
            "images": [perm_json(p) for p in Z.gen_images]}


def bundle_json(eta: BundleData) -> dict:
    from .bundles import is_q_faithful

    orbits = []
    for orb in eta.base.orbits():
        orbits.append({"rep": orb.rep, "size": len(orb.points),
                       "fiber_dim": eta.fiber_dim(orb.rep)})
    return {"gamma": eta.gamma.content_hash, "Q": eta.Q.content_hash,
            "base_points": eta.base.n, "total_points": eta.total.n,
            "fiber_dims": eta.fiber_dims(), "orbits": orbits,
            "q_faithful": is_q_faithful(eta).ok}


def acyc_json(d: AcycData) -> dict:
    return {"n": d.n, "q": list(d.q), "m": list(d.m), "l": list(d.l),
            "V": [perm_json(v) for v in d.V], "Q_gens": [perm_json(g) for g in d.Q_gens],
            "tag": d.tag, "Q_order": d.Q.order}
