"""
Command-line interface.  Each subcommand is a thin wrapper around a
handler ``params dict -> result dict``; the scenario runner calls the same
handlers by operation name (e.g. ``rdx.pi1``).

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import random
import sys
import warnings

from . import chevalley, components, extensions, galois, levi, root_datum, semisimple
from .ff import GF
from .io import InputError, dumps, find_file, load_json, parse_json_text

DEFAULT_SEED = 20240917


class CheckFailed(Exception):
    def __init__(self, result):
        super().__init__("check failed")
        self.result = result


# ---------------------------------------------------------------------------
# argument resolution


def _datum(a, base=None):
    if a.get("type"):
        return root_datum.GenReductiveDatum(root_datum.parse_type(a["type"]))
    if a.get("datum") is not None:
        return root_datum.datum_from_json(load_json(a["datum"], base))
    raise InputError("a datum is required (type or datum)")


def _field(a, base=None, key="field"):
    if a.get(key) is None:
        raise InputError(f"{key} is required")
    return galois.LocalFieldDesc.from_json(load_json(a[key], base))


def _ext(a, base=None):
    if a.get("ext") is not None:
        return components.GaloisExtDesc.from_json(load_json(a["ext"], base))
    return components.GaloisExtDesc.trivial(_field(a, base))


def _tame(a, key, base=None):
    return galois.TameRep.from_json(load_json(a[key], base))


def _levi_for(d, subset):
    for L in levi.enumerate_standard_levis(d):
        if list(L.subset) == sorted(subset):
            return L
    raise InputError(f"no standard Levi for subset {subset}")


# ---------------------------------------------------------------------------
# handlers


def op_rdx_info(a, base=None):
    d = _datum(a, base)
    b = d.base
    return {
        "rank_X": b.rank_X,
        "semisimple_rank": b.semisimple_rank,
        "num_roots": b.num_roots,
        "dim_G": root_datum.dim_G(d),
        "dim_Z": root_datum.dim_Z(d),
        "cartan": [list(r) for r in b.cartan],
        "pi1": list(root_datum.pi1_derived(d)),
        "component_group_order": d.order,
    }


def op_rdx_pi1(a, base=None):
    d = _datum(a, base)
    out = {"pi1": list(root_datum.pi1_derived(d))}
    if a.get("p") is not None:
        out["etale"] = root_datum.is_pi1_etale(d, int(a["p"]))
    return out


def op_rdx_cover(a, base=None):
    d = _datum(a, base)
    c = root_datum.etale_pi1_cover(d, int(a["p"]))
    return {"datum": c.to_json(), "pi1": list(root_datum.pi1_derived(c))}


def op_levis(a, base=None):
    d = _datum(a, base)
    if a.get("codim2"):
        L = levi.has_codim2_levi(d)
        return {"codim2": None if L is None else L.to_json()}
    return {"levis": [L.to_json() for L in levi.enumerate_standard_levis(d)]}


def op_levi_tasho1(a, base=None):
    d = _datum(a, base)
    L = levi.has_codim2_levi(d)
    if L is None:
        return {"codim2": False}
    split = levi.tasho1_split(d, L)
    out = split.to_json()
    out["codim2"] = True
    return out


def op_lie_coadjoint(a, base=None):
    d = _datum(a, base)
    fn = chevalley.adjoint_invariants_sc if a.get("adjoint") else chevalley.coadjoint_invariants_sc
    dim, count = fn(d, int(a["p"]), detail=True)
    return {"dim": dim, "generators": count}


def op_lie_nilradical(a, base=None):
    d = _datum(a, base)
    p = int(a["p"])
    if a.get("subset") is not None:
        Ls = [_levi_for(d, a["subset"])]
    else:
        Ls = [L for L in levi.enumerate_standard_levis(d) if L.dim_U > 0]
    rows = [{"subset": list(L.subset), "dim": chevalley.nilradical_dual_invariants(d, L, p)} for L in Ls]
    return {"levis": rows, "max": max((r["dim"] for r in rows), default=0)}


def op_galois_h(a, base=None):
    F = _field(a, base)
    rho = _tame(a, "rep", base)
    return galois.cohomology(F, rho)


def op_galois_z1(a, base=None):
    F = _field(a, base)
    rho = _tame(a, "rep", base)
    galois.validate_tame_rep(F, rho)
    return {"z1": galois.z1_dim(F, rho)}


def op_galois_kummer(a, base=None):
    F = _field(a, base)
    rho = galois.TameRep.trivial(GF(F.p))
    return {"h1": galois.h1_via_EP(F, rho), "kummer": galois.kummer_dim(F)}


def op_galois_bip(a, base=None):
    F = _field(a, base)
    K = GF(F.p, int(a.get("k", 1)))
    return galois.borel_pgl2_battery(F, K)


def op_defring_presentation(a, base=None):
    d = _datum(a, base)
    F = _field(a, base)
    ad = _tame(a, "ad", base)
    galois.validate_tame_rep(F, ad)
    if a.get("sub_type"):
        h = root_datum.parse_type(a["sub_type"])
        r, t = galois.relative_presentation(d, h, F, ad)
        return {"r": r, "t": t, "relative_dim": r - t}
    r, s = galois.presentation_numbers(d, F, ad)
    return {"r": r, "s": s, "relative_dim": r - s}


def op_defring_dims(a, base=None):
    d = _datum(a, base)
    dF = int(a["dF"])
    out = components.dim_formulas(d, dF)
    out["special_codim_bound"] = components.special_codim_bound(d, dF)
    if a.get("p") is not None:
        out["factorial"] = components.factoriality_check(d, int(a["p"]), dF)
    return out


def op_components_count(a, base=None):
    E = _ext(a, base)
    if a.get("lattice") is not None:
        obj = load_json(a["lattice"], base)
        M = root_datum.LatticeWithAction(obj["rank"], obj.get("table", [[0]]), obj.get("action"),
                                         obj.get("splitting"))
    else:
        M = root_datum.torus_quotient_lattice(_datum(a, base))
    etale = True
    if a.get("type") or a.get("datum") is not None:
        etale = root_datum.is_pi1_etale(_datum(a, base), E.p)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", components.EtaleWarning)
        out = components.component_count(E, M, etale=etale)
    if a.get("dF") is not None:
        mu, r, s = components.agen_shape(E, M, int(a["dF"]))
        out["agen_shape"] = [mu, r, s]
    return out


def op_components_lgroup(a, base=None):
    E = _ext(a, base)
    L = components.lgroup_datum(_datum(a, base), E)
    return {"datum": L.to_json()}


def op_components_cgroup(a, base=None):
    E = _ext(a, base)
    mu, count = components.cgroup_component_group(_datum(a, base), E)
    return {"mu": list(mu), "count": count}


def op_ext_verify(a, base=None):
    z = extensions.GenTwoCocycle.from_json(load_json(a["cocycle"], base))
    try:
        extensions.validate_cocycle(z)
    except extensions.CocycleError as exc:
        raise CheckFailed({"valid": False, "axiom": exc.axiom, "message": str(exc), "witness": exc.witness})
    return {"valid": True}


def op_ext_build(a, base=None):
    z = extensions.GenTwoCocycle.from_json(load_json(a["cocycle"], base))
    E = extensions.build_extension(z)
    back = extensions.extension_to_cocycle(E)
    G = E.group
    return {"order": G.order, "table": [list(r) for r in G.table], "roundtrip": back == z,
            "element_orders": sorted(G.element_order(x) for x in range(G.order))}


def op_ssim_run(a, base=None):
    rep = semisimple.FqMatrixRep.from_json(load_json(a["rep"], base))
    maxlen = int(a.get("maxlen", 6))
    ss = semisimple.semisimplify(rep)
    verdict = semisimple.brauer_nesbitt_equal(rep, ss, maxlen)
    return {
        "flag": semisimple.composition_flag(rep),
        "blocks": semisimple.block_sizes(rep),
        "semisimplified": [[list(r) for r in g] for g in ss.generators],
        "brauer_nesbitt": verdict,
        "semisimple": semisimple.is_semisimple(rep),
    }


def op_ssim_battery(a, base=None):
    """Random block upper-triangular reps: semisimplification checks on each."""
    F = GF(int(a["p"]), int(a.get("k", 1)))
    rng = random.Random(int(a.get("seed", DEFAULT_SEED)))
    maxlen = int(a.get("maxlen", 6))
    stats = {"reps": 0, "consistent": 0, "idempotent": 0, "blocks_irreducible": 0}
    for _ in range(int(a.get("count", 10))):
        rep = semisimple.random_block_triangular(F, int(a["dim"]), int(a.get("generators", 2)), rng)
        ss = semisimple.semisimplify(rep)
        stats["reps"] += 1
        stats["consistent"] += semisimple.brauer_nesbitt_equal(rep, ss, maxlen)["verdict"] == "consistent_up_to"
        stats["idempotent"] += semisimple.block_fingerprints(semisimple.semisimplify(ss)) == semisimple.block_fingerprints(ss)
        stats["blocks_irreducible"] += all(semisimple.is_irreducible(b) for b in semisimple.graded_pieces(ss))
    return stats


OPS = {
    "rdx.info": op_rdx_info,
    "rdx.pi1": op_rdx_pi1,
    "rdx.cover": op_rdx_cover,
    "levis": op_levis,
    "levis.tasho1": op_levi_tasho1,
    "lie.coadjoint": op_lie_coadjoint,
    "lie.nilradical": op_lie_nilradical,
    "galois.h": op_galois_h,
    "galois.z1": op_galois_z1,
    "galois.kummer": op_galois_kummer,
    "galois.bip_qtwo": op_galois_bip,
    "defring.presentation": op_defring_presentation,
    "defring.dims": op_defring_dims,
    "components.count": op_components_count,
    "components.lgroup": op_components_lgroup,
    "components.cgroup": op_components_cgroup,
    "ext.verify": op_ext_verify,
    "ext.build": op_ext_build,
    "ssim.run": op_ssim_run,
    "ssim.battery": op_ssim_battery,
}


# ---------------------------------------------------------------------------
# scenarios


def _matches(expected, got):
    if isinstance(expected, dict):
        return isinstance(got, dict) and all(k in got and _matches(v, got[k]) for k, v in expected.items())
    if isinstance(expected, list) and isinstance(got, (list, tuple)):
        return len(expected) == len(got) and all(_matches(x, y) for x, y in zip(expected, got))
    return expected == got


def _diff(expected, got):
    if isinstance(expected, dict) and isinstance(got, dict):
        return {k: {"expected": v, "got": got.get(k)} for k, v in expected.items() if not _matches(v, got.get(k))}
    return {"expected": expected, "got": got}


def run_scenario(path: str) -> dict:
    """Run every check in a scenario file; the report lists computed vs expected values."""
    found = find_file(path)
    if found is None:
        raise InputError(f"scenario file not found: {path}")
    doc = parse_json_text(found.read_text(), str(found))
    if isinstance(doc, list):
        doc = {"name": found.stem, "scenarios": doc}
    if not isinstance(doc, dict) or not isinstance(doc.get("scenarios", []), list):
        raise InputError(f"{found}: expected an object with a 'scenarios' list")
    checks = []
    for k, sc in enumerate(doc.get("scenarios", [])):
        op = sc.get("op")
        if op not in OPS:
            raise InputError(f"{found}: scenario {k} names unknown operation {op!r}")
        if "expect" not in sc:
            raise InputError(f"{found}: scenario {k} has no expectation")
        try:
            got = OPS[op](sc.get("inputs", {}), found.parent)
        except CheckFailed as exc:
            got = exc.result
        ok = _matches(sc["expect"], got)
        row = {"name": sc.get("name", f"{op}#{k}"), "op": op, "pass": ok,
               "provenance": sc.get("provenance", "")}
        if not ok:
            row["diff"] = _diff(sc["expect"], got)
        checks.append(row)
    return {"scenario": doc.get("name", found.stem), "checks": checks,
            "passed": sum(c["pass"] for c in checks), "failed": sum(not c["pass"] for c in checks)}


# ---------------------------------------------------------------------------
# argument parsing


def _add_datum_args(p):
    p.add_argument("--type", help="type name such as GL2, PGL6, Sp4, G2, A1xA2")
    p.add_argument("--datum", help="datum JSON (inline or file)")


def build_parser():
    parser = argparse.ArgumentParser(prog="defspace", description="Root data, Lie algebra invariants, "
                                     "local Galois cohomology counts and component groups.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomised batteries")
    sub = parser.add_subparsers(dest="group", required=True)

    rdx = sub.add_parser("rdx", help="root datum invariants").add_subparsers(dest="cmd", required=True)
    for name in ("info", "pi1", "cover"):
        p = rdx.add_parser(name)
        _add_datum_args(p)
        p.add_argument("--p", type=int, required=(name == "cover"))

    p = sub.add_parser("levis", help="standard Levi subgroups")
    _add_datum_args(p)
    p.add_argument("--codim2", action="store_true")
    p.add_argument("--tasho1", action="store_true", help="split along a codimension-2 Levi")

    lie = sub.add_parser("lie", help="Lie algebra invariants").add_subparsers(dest="cmd", required=True)
    p = lie.add_parser("coadjoint")
    _add_datum_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--adjoint", action="store_true", help="use the adjoint module instead of its dual")
    p = lie.add_parser("nilradical")
    _add_datum_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--subset", type=lambda s: [int(x) for x in s.split(",") if x != ""])

    gal = sub.add_parser("galois", help="local Galois cohomology").add_subparsers(dest="cmd", required=True)
    for name in ("h", "z1"):
        p = gal.add_parser(name)
        p.add_argument("--field", required=True)
        p.add_argument("--rep", required=True)
    p = gal.add_parser("bip")
    p.add_argument("--field", default='{"p": 3}')
    p.add_argument("--k", type=int, default=1, help="coefficient field degree")

    dr = sub.add_parser("defring", help="deformation ring numerics").add_subparsers(dest="cmd", required=True)
    p = dr.add_parser("presentation")
    _add_datum_args(p)
    p.add_argument("--field", required=True)
    p.add_argument("--ad", required=True)
    p.add_argument("--sub-type", dest="sub_type")
    p = dr.add_parser("dims")
    _add_datum_args(p)
    p.add_argument("--dF", type=int, required=True)
    p.add_argument("--p", type=int)

    comp = sub.add_parser("components", help="component groups").add_subparsers(dest="cmd", required=True)
    for name in ("count", "lgroup", "cgroup"):
        p = comp.add_parser(name)
        _add_datum_args(p)
        p.add_argument("--ext")
        p.add_argument("--field")
        if name == "count":
            p.add_argument("--lattice")
            p.add_argument("--dF", type=int)

    ext = sub.add_parser("ext", help="group extensions").add_subparsers(dest="cmd", required=True)
    for name in ("build", "verify"):
        ext.add_parser(name).add_argument("--cocycle", required=True)

    ss = sub.add_parser("ssim", help="semisimplification").add_subparsers(dest="cmd", required=True)
    p = ss.add_parser("run")
    p.add_argument("--rep", required=True)
    p.add_argument("--maxlen", type=int, default=6)
    p = ss.add_parser("battery", help="seeded random block-triangular representations")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--generators", type=int, default=2)
    p.add_argument("--maxlen", type=int, default=6)

    sc = sub.add_parser("scenario", help="scenario batteries").add_subparsers(dest="cmd", required=True)
    sc.add_parser("run").add_argument("files", nargs="+")
    return parser


def _op_name(args):
    if args.group == "levis":
        return "levis.tasho1" if args.tasho1 else "levis"
    if args.group == "galois" and args.cmd == "bip":
        return "galois.bip_qtwo"
    return f"{args.group}.{args.cmd}"


def _human(result, out):
    if set(result) == {"pi1"}:
        print("(" + ", ".join(str(x) for x in result["pi1"]) + ")", file=out)
        return
    for k in sorted(result):
        v = result[k]
        print(f"{k}: {dumps(v) if isinstance(v, (dict, list)) and len(str(v)) > 60 else v}", file=out)


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.group == "scenario":
            reports = [run_scenario(f) for f in args.files]
            failed = sum(r["failed"] for r in reports)
            if args.json:
                print(dumps(reports), file=out)
            else:
                for r in reports:
                    for c in r["checks"]:
                        print(f"{'PASS' if c['pass'] else 'FAIL'} {r['scenario']}: {c['name']}", file=out)
                        if not c["pass"]:
                            print("  " + dumps(c["diff"]).replace("\n", "\n  "), file=out)
                    print(f"{r['scenario']}: {r['passed']} passed, {r['failed']} failed", file=out)
            return 1 if failed else 0
        params = {k: v for k, v in vars(args).items() if k not in ("group", "cmd", "json", "tasho1")}
        try:
            result, code = OPS[_op_name(args)](params), 0
        except CheckFailed as exc:
            result, code = exc.result, 1
        print(dumps(result) if args.json else "", file=out, end="\n" if args.json else "")
        if not args.json:
            _human(result, out)
        return code
    except (InputError, ValueError, KeyError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"defspace: error: {msg}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
