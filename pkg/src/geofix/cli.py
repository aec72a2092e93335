"""Command-line front end: ``geofix <area> <command>`` with JSON in and out.

The payload is read from ``--in FILE`` (``-`` for stdin) and/or assembled
from per-field flags such as ``--group S3``; flag values are parsed as JSON
when possible and kept as strings otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Callable

import jsonschema

from . import __version__
from . import acyc, bundles, geosym, groups, tomdieck, twisted
from .config import Caps, caps, using_caps
from .errors import GeofixError
from .serialize import (
    PayloadError,
    acyc_json,
    bundle_json,
    gset_json,
    group_json,
    hom_json,
    perm_json,
    read_acyc,
    read_biset,
    read_bundle,
    read_element,
    read_group,
    read_gset,
    read_subgroup,
    read_wreath_hom,
    subgroup_json,
    wreath_element_json,
    wreath_hom_json,
)

# schemas -----------------------------------------------------------------------

PERM = {"type": "array", "items": {"type": "integer", "minimum": 0}}
GROUP = {"oneOf": [
    {"type": "string"},
    {"type": "object", "required": ["degree", "generators"],
     "properties": {"degree": {"type": "integer", "minimum": 1},
                    "generators": {"type": "array", "items": PERM},
                    "name": {"type": "string"}},
     "additionalProperties": False},
]}
SUBGROUP = {"oneOf": [
    {"enum": ["whole", "trivial"]},
    {"type": "array", "items": PERM},
    {"type": "object", "required": ["generators"],
     "properties": {"generators": {"type": "array", "items": PERM}}},
]}
ACTION = {"type": "object", "required": ["images"],
          "properties": {"on": {"type": "array", "items": PERM},
                         "images": {"type": "array", "items": PERM}}}
GSET = {"type": "object", "anyOf": [
    {"required": ["regular"]}, {"required": ["trivial"]}, {"required": ["cosets"]},
    {"required": ["points", "images"]},
], "properties": {"trivial": {"type": "integer", "minimum": 0},
                  "cosets": {"type": "array", "items": SUBGROUP},
                  "points": {"type": "integer", "minimum": 0},
                  "on": {"type": "array", "items": PERM},
                  "images": {"type": "array", "items": PERM}}}
BISET = {"type": "object", "properties": {
    "points": {"type": "integer", "minimum": 0}, "left": ACTION, "right": ACTION}}
WREATH_HOM = {"type": "object", "required": ["source", "q", "images"], "properties": {
    "source": GROUP, "Q": GROUP, "q": {"type": "integer", "minimum": 1},
    "on": {"type": "array", "items": PERM},
    "images": {"type": "array", "items": {
        "type": "object", "required": ["s"],
        "properties": {"s": PERM, "a": {"type": "array", "items": PERM}}}}}}
PAIR = {"type": "object", "required": ["gamma", "q"], "properties": {"gamma": PERM, "q": PERM}}
BUNDLE = {"type": "object", "required": ["gamma"], "properties": {
    "gamma": GROUP, "Q": GROUP, "empty": {"type": "boolean"}, "point": BISET, "over": GSET,
    "fiber": {"type": "integer", "minimum": 0},
    "pieces": {"type": "array", "items": {
        "type": "object", "required": ["isotropy"],
        "properties": {"isotropy": {"type": "array", "items": PAIR},
                       "fiber": {"oneOf": [
                           {"type": "integer", "minimum": 0},
                           {"type": "object", "required": ["points", "images"],
                            "properties": {"points": {"type": "integer", "minimum": 0},
                                           "images": {"type": "array", "items": PERM}}}]}}}}},
    "anyOf": [{"required": ["empty"]}, {"required": ["point"]}, {"required": ["over"]},
              {"required": ["pieces"]}]}
ACYC = {"oneOf": [
    {"enum": ["standard", "unit"]},
    {"type": "object", "required": ["n", "q", "m", "l", "V"], "properties": {
        "n": {"type": "integer", "minimum": 1},
        "q": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        "m": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "l": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "V": {"type": "array", "items": PERM},
        "Q_gens": {"type": "array", "items": PERM},
        "tag": {"type": "string"}}},
]}
POS = {"type": "integer", "minimum": 1}
NONNEG = {"type": "integer", "minimum": 0}


def _schema(required: list[str], **props) -> dict:
    return {"type": "object", "required": required, "properties": props,
            "additionalProperties": False}


# handlers ------------------------------------------------------------------------

def _group_subgroups(p):
    G = read_group(p["group"], "/group")
    return {"group": group_json(G),
            "subgroups": [dict(subgroup_json(H), normal=H.is_normal())
                          for H in groups.enumerate_subgroups(G)]}


def _group_classes(p):
    G = read_group(p["group"], "/group")
    out = []
    for c in groups.conjugacy_classes_of_subgroups(G):
        W = groups.weyl_group(G, c.rep).group
        out.append({"rep": subgroup_json(c.rep), "size": len(c),
                    "weyl_order": W.order, "weyl_hash": W.content_hash})
    return {"group": group_json(G), "classes": out}


def _group_weyl(p):
    G = read_group(p["group"], "/group")
    H = read_subgroup(G, p["subgroup"], "/subgroup")
    wd = groups.weyl_group(G, H)
    return {"subgroup": subgroup_json(H), "normalizer_order": wd.normalizer.order,
            "weyl": group_json(wd.group)}


def _group_homs(p):
    A = read_group(p["source"], "/source")
    B = read_group(p["target"], "/target")
    homs = groups.enumerate_homs(A, B)
    out = {"source": A.content_hash, "target": B.content_hash, "count": len(homs)}
    if p.get("up_to_conjugacy"):
        cls = groups.hom_conjugacy_classes(homs)
        out["classes"] = [{"rep": hom_json(c.rep), "size": len(c)} for c in cls]
    else:
        out["homs"] = [hom_json(h) for h in homs]
    return out


def _sigma(p):
    return read_wreath_hom(p["sigma"], "/sigma")


def _twisted_decompose(p):
    sigma = _sigma(p)
    L = sigma.source
    chosen = None
    if "transporters" in p:
        chosen = [read_element(L, t, f"/transporters/{i}") for i, t in enumerate(p["transporters"])]
    dec = twisted.decompose(sigma, chosen)
    return {"orbits": [list(o) for o in dec.orbits], "reps": list(dec.reps),
            "stabilizers": [subgroup_json(H) for H in dec.stabilizers],
            "alphas": [hom_json(a) for a in dec.alphas],
            "transporters": [perm_json(L.elements[x]) for x in dec.transporters]}


def _twisted_space(p):
    sigma = _sigma(p)
    X = read_biset(sigma.source, sigma.Q, p["X"], "/X")
    return sigma, X


def _twisted_fixdim(p):
    sigma, X = _twisted_space(p)
    out = {"dim": twisted.twisted_fixed_dim(X, sigma)}
    if p.get("oracle"):
        out["oracle_dim"] = twisted.brute_force_twisted_fixed(X, sigma)
    return out


def _twisted_basis(p):
    sigma, X = _twisted_space(p)
    fx = twisted.twisted_fixed(X, sigma)
    return {"dim": fx.dim, "basis": [list(v) for v in fx.basis],
            "squared_norms": fx.squared_norms, "factor_dims": fx.factor_dims}


def _bundle(p, key="bundle"):
    return read_bundle(p[key], "/" + key)


def _gamma_sub(eta, p, key):
    return read_subgroup(eta.gamma, p[key], "/" + key) if key in p else None


def _bundle_faithful(p):
    eta = _bundle(p)
    r = bundles.is_q_faithful(eta)
    return {"ok": r.ok, "witness": r.witness, "bundle": bundle_json(eta)}


def _bundle_product(p):
    return {"bundle": bundle_json(bundles.product(_bundle(p), _bundle(p, "bundle2")))}


def _bundle_sym(p):
    return {"bundle": bundle_json(bundles.sym_power(_bundle(p), p["q"]))}


def _bundle_eta(p, relative=False):
    eta = _bundle(p)
    lam = _gamma_sub(eta, p, "lam")
    K = _gamma_sub(eta, p, "K")
    r = bundles.eta_lambda_rel(eta, lam, K) if relative else bundles.eta_lambda(eta, lam, K)
    return {"hom_count": len(r.homs), "bundle": bundle_json(r.bundle)}


def _bundle_iterphi(p):
    eta = _bundle(p)
    r = bundles.iterphi_bundle_iso(eta, _gamma_sub(eta, p, "K"), _gamma_sub(eta, p, "lam"),
                                   _gamma_sub(eta, p, "M"))
    return {"ok": r.ok, "base_map": r.base_map, "total_map": r.total_map, "problems": r.problems}


def _bundle_ifcrit(p):
    eta = _bundle(p)
    r = bundles.ifcrit_check(eta, _gamma_sub(eta, p, "lam"))
    out = {"ok": r.ok, "conditions": r.conditions, "witnesses": r.witnesses}
    if "q_max" in p:
        b = bundles.inheritably_faithful_bruteforce(eta, _gamma_sub(eta, p, "lam"), p["q_max"])
        out["inheritable"] = {"ok": b.ok, "per_q": b.per_q, "witness": b.witness}
    return out


def _data(p, key="data"):
    return read_acyc(p[key], "/" + key)


def _acyc_validate(p):
    problems = acyc.validate(_data(p))
    return {"ok": not problems, "problems": problems}


def _acyc_member(p):
    d = _data(p)
    r = acyc.in_D_ACyc(d, p.get("p"))
    return {"ok": r.ok, "reasons": r.reasons, "hom_count": len(acyc.hom_set(d).elements)}


def _acyc_stretch(p):
    r = acyc.stretch(_data(p), p["k"])
    return {"ok": r.ok, "data": acyc_json(r.data), "hom_count": len(r.bijection),
            "hom_k_count": len(r.hom_k)}


def _acyc_smash(p):
    return {"data": acyc_json(acyc.smash(_data(p), _data(p, "data2")))}


def _acyc_phi(p):
    r = acyc.phi(_data(p), p["k"])
    return {"verified": r.verified, "data": acyc_json(r.data)}


def _acyc_sym(p):
    return {"data": acyc_json(acyc.sym(_data(p), p["k"]))}


def _acyc_free(p):
    return {"data": acyc_json(acyc.free_smash(_data(p)))}


def _acyc_catalog(p):
    cat = acyc.component_catalog(_data(p))
    entries = [{"index": e.index, "generator_image": perm_json(e.generator_image),
                "fiber_dim": e.fiber_dim, "nonempty": e.nonempty,
                "blocks": [{"block": b.block, "orbit_sizes": b.orbit_sizes, "labels": b.labels,
                            "factor_dims": b.factor_dims} for b in e.blocks]}
               for e in cat.entries]
    return {"entries": entries, "q_action": [list(x) for x in cat.q_action]}


def _acyc_shadow(p):
    r = acyc.faithfulness_shadow(_data(p), p.get("k_max"))
    return {"ok": r.ok, "checked_k": r.checked_k, "witness": r.witness}


def _geosym_catalog_of(p):
    return geosym.irreducible_catalog(read_group(p["lam"], "/lam"), read_group(p.get("Q", "1"), "/Q"))


def _geosym_catalog(p):
    cat = _geosym_catalog_of(p)
    return {"T": cat.T, "t": cat.t, "taus": [wreath_hom_json(t) for t in cat.taus]}


def _geosym_classify(p):
    sigma = _sigma(p)
    cat = geosym.irreducible_catalog(sigma.source, sigma.Q)
    r = geosym.classify(sigma, cat)
    return {"n_vec": list(r.n_vec), "t": cat.t, "constituents": r.constituents,
            "conjugator": wreath_element_json(sigma.Q, r.conjugator), "verified": r.verified}


def _geosym_centralizer(p):
    sigma = _sigma(p)
    c = geosym.centralizer(sigma)
    return {"order": c.order, "generators": [wreath_element_json(sigma.Q, w) for w in c.generators]}


def _geosym_identity(p):
    lam = read_group(p["lam"], "/lam")
    Q = read_group(p.get("Q", "1"), "/Q")
    r = geosym.hom_count_identity(lam, Q, p["q"])
    return {"ok": r.ok, "hom_count": r.hom_count, "index_sum": r.index_sum,
            "per_n_vec": [{"n_vec": list(k), "homs": v[0], "index": v[1]}
                          for k, v in sorted(r.per_n_vec.items())]}


def _td_classes(p):
    G = read_group(p["group"], "/group")
    cls = tomdieck.gset_iso_classes(G, p["q"])
    subs = groups.conjugacy_classes_of_subgroups(G)
    return {"count": len(cls), "hom_class_count": tomdieck.count_hom_classes(G, p["q"]),
            "classes": [{"orbit_types": [{"subgroup": subgroup_json(subs[i].rep), "count": k}
                                         for i, k in c.orbit_types],
                         "representative": gset_json(c.representative)} for c in cls]}


def _td_aut(p):
    G = read_group(p["group"], "/group")
    Z = read_gset(G, p["gset"], "/gset")
    r = tomdieck.aut_gset(Z)
    return {"order": r.order, "formula_order": r.formula_order,
            "isomorphism_verified": r.isomorphism_verified,
            "factors": [{"copies": f.copies, "weyl_order": f.weyl_order} for f in r.factors],
            "generators": [perm_json(x) for x in r.group.generator_perms()] if Z.n else []}


def _td_catalog(p):
    G = read_group(p["group"], "/group")
    cat = tomdieck.splitting_catalog(G, p["m"], p.get("qmax"))
    return splitting_catalog_json(cat, G)


def splitting_catalog_json(cat: tomdieck.SplittingCatalog, G) -> dict:
    classes = []
    for c in cat.classes:
        H = groups.Subgroup(G, c.subgroup, check=False)
        classes.append({"H": subgroup_json(H), "WH": c.weyl_hash, "WH_order": c.weyl_order,
                        "transfer_marker": c.transfer_marker,
                        "summands": [{"q": s.q, "cell_dim": s.cell_dim,
                                      "suspension_dim": s.suspension_dim,
                                      "sym_group": s.sym_group, "sym_order": s.sym_order}
                                     for s in c.summands]})
    return {"group": cat.group_hash, "m": cat.m, "q_max": cat.q_max, "classes": classes,
            "notes": list(cat.notes)}


SUB = SUBGROUP
COMMANDS: dict[tuple[str, str], tuple[dict, Callable]] = {
    ("group", "subgroups"): (_schema(["group"], group=GROUP), _group_subgroups),
    ("group", "classes"): (_schema(["group"], group=GROUP), _group_classes),
    ("group", "weyl"): (_schema(["group", "subgroup"], group=GROUP, subgroup=SUB), _group_weyl),
    ("group", "homs"): (_schema(["source", "target"], source=GROUP, target=GROUP,
                                up_to_conjugacy={"type": "boolean"}), _group_homs),
    ("twisted", "decompose"): (_schema(["sigma"], sigma=WREATH_HOM,
                                       transporters={"type": "array", "items": PERM}),
                               _twisted_decompose),
    ("twisted", "fix-dim"): (_schema(["sigma", "X"], sigma=WREATH_HOM, X=BISET,
                                     oracle={"type": "boolean"}), _twisted_fixdim),
    ("twisted", "basis"): (_schema(["sigma", "X"], sigma=WREATH_HOM, X=BISET), _twisted_basis),
    ("bundle", "check-faithful"): (_schema(["bundle"], bundle=BUNDLE), _bundle_faithful),
    ("bundle", "product"): (_schema(["bundle", "bundle2"], bundle=BUNDLE, bundle2=BUNDLE),
                            _bundle_product),
    ("bundle", "sym"): (_schema(["bundle", "q"], bundle=BUNDLE, q=POS), _bundle_sym),
    ("bundle", "eta-lambda"): (_schema(["bundle", "lam"], bundle=BUNDLE, lam=SUB, K=SUB),
                               _bundle_eta),
    ("bundle", "eta-lambda-rel"): (_schema(["bundle", "lam", "K"], bundle=BUNDLE, lam=SUB, K=SUB),
                                   lambda p: _bundle_eta(p, relative=True)),
    ("bundle", "iterphi"): (_schema(["bundle", "K", "lam", "M"], bundle=BUNDLE, K=SUB, lam=SUB,
                                    M=SUB), _bundle_iterphi),
    ("bundle", "ifcrit"): (_schema(["bundle", "lam"], bundle=BUNDLE, lam=SUB, q_max=POS),
                           _bundle_ifcrit),
    ("acyc", "validate"): (_schema(["data"], data=ACYC), _acyc_validate),
    ("acyc", "member"): (_schema(["data"], data=ACYC, p=POS), _acyc_member),
    ("acyc", "stretch"): (_schema(["data", "k"], data=ACYC, k=POS), _acyc_stretch),
    ("acyc", "smash"): (_schema(["data", "data2"], data=ACYC, data2=ACYC), _acyc_smash),
    ("acyc", "phi"): (_schema(["data", "k"], data=ACYC, k=POS), _acyc_phi),
    ("acyc", "sym"): (_schema(["data", "k"], data=ACYC, k=POS), _acyc_sym),
    ("acyc", "free"): (_schema(["data"], data=ACYC), _acyc_free),
    ("acyc", "catalog"): (_schema(["data"], data=ACYC), _acyc_catalog),
    ("acyc", "shadow"): (_schema(["data"], data=ACYC, k_max=POS), _acyc_shadow),
    ("geosym", "catalog"): (_schema(["lam"], lam=GROUP, Q=GROUP), _geosym_catalog),
    ("geosym", "classify"): (_schema(["sigma"], sigma=WREATH_HOM), _geosym_classify),
    ("geosym", "centralizer"): (_schema(["sigma"], sigma=WREATH_HOM), _geosym_centralizer),
    ("geosym", "identity"): (_schema(["lam", "q"], lam=GROUP, Q=GROUP, q=POS), _geosym_identity),
    ("tomdieck", "classes"): (_schema(["group", "q"], group=GROUP, q=NONNEG), _td_classes),
    ("tomdieck", "aut"): (_schema(["group", "gset"], group=GROUP, gset=GSET), _td_aut),
    ("tomdieck", "catalog"): (_schema(["group", "m"], group=GROUP, m=NONNEG, qmax=NONNEG),
                              _td_catalog),
}


# plumbing --------------------------------------------------------------------------

def jsonable(x: Any) -> Any:
    """Recursively convert tuples, sets, Fractions and non-string keys for JSON."""
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def schema_errors(schema: dict, payload: Any) -> list[dict]:
    v = jsonschema.Draft202012Validator(schema)
    errs = sorted(v.iter_errors(payload), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    return [{"pointer": "/" + "/".join(map(str, e.absolute_path)), "message": e.message}
            for e in errs]


def run(area: str, command: str, payload: dict) -> tuple[int, dict]:
    """Dispatch one request; returns (exit status, response envelope)."""
    name = f"{area} {command}"
    env: dict[str, Any] = {"command": name, "version": __version__, "diagnostics": []}
    if (area, command) not in COMMANDS:
        env["error"] = {"type": "UnknownCommand", "message": name}
        return 2, env
    schema, handler = COMMANDS[(area, command)]
    errs = schema_errors(schema, payload)
    if errs:
        env["error"] = {"type": "SchemaError", "message": "payload does not match the schema",
                        "details": errs}
        return 2, env
    try:
        env["result"] = jsonable(handler(payload))
    except PayloadError as e:
        env["error"] = {"type": type(e).__name__, "message": str(e), "pointer": e.pointer}
        return e.exit_code, env
    except GeofixError as e:
        env["error"] = {"type": type(e).__name__, "message": str(e)}
        return e.exit_code, env
    except (KeyError, TypeError, ValueError) as e:
        env["error"] = {"type": "InternalError", "message": f"{type(e).__name__}: {e}"}
        return 1, env
    return 0, env


def dumps(obj: Any, fmt: str = "pretty") -> str:
    if fmt == "compact":
        return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _flag_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geofix", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    areas = parser.add_subparsers(dest="area", required=True)
    sub_by_area: dict[str, Any] = {}
    for (area, command), (schema, _) in COMMANDS.items():
        if area not in sub_by_area:
            sub_by_area[area] = areas.add_parser(area).add_subparsers(dest="command", required=True)
        cp = sub_by_area[area].add_parser(command)
        cp.add_argument("--in", dest="infile", help="JSON payload file, '-' for stdin")
        cp.add_argument("--out", dest="outfile", help="write the response here")
        cp.add_argument("--format", choices=["pretty", "compact"], default="pretty")
        for field in Caps.__dataclass_fields__:
            cp.add_argument(f"--cap-{field.replace('_', '-')}", dest=f"cap_{field}", type=int)
        for prop in schema["properties"]:
            cp.add_argument(f"--{prop.replace('_', '-')}", dest=f"field_{prop}", type=_flag_value,
                            metavar="JSON")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    payload: dict = {}
    if args.infile:
        text = sys.stdin.read() if args.infile == "-" else open(args.infile, encoding="utf-8").read()
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            print(dumps({"command": f"{args.area} {args.command}", "version": __version__,
                         "diagnostics": [], "error": {"type": "JSONDecodeError", "message": str(e)}},
                        args.format))
            return 2
    for key, val in vars(args).items():
        if key.startswith("field_") and val is not None:
            payload[key[len("field_"):]] = val
    overrides = {k[len("cap_"):]: v for k, v in vars(args).items()
                 if k.startswith("cap_") and v is not None}
    try:
        caps()
    except GeofixError as e:
        print(dumps({"command": f"{args.area} {args.command}", "version": __version__,
                     "diagnostics": [], "error": {"type": type(e).__name__, "message": str(e)}},
                    args.format))
        return e.exit_code
    with using_caps(**overrides):
        status, env = run(args.area, args.command, payload)
        if overrides:
            env["diagnostics"].append({"caps": vars(caps()).copy()})
    text = dumps(env, args.format) + "\n"
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
