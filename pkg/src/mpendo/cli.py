"""Command-line front end: analyze, multiplicity, casebook, validate."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import f2
from .adelic import (
    GlobalParameter,
    character_constraint_set,
    epsilon_psi,
    global_packet_members,
    localize,
    nu_factorization_check,
)
from .casebook import CASES, run_case
from .catalog import load_catalog, validate_cross_constraints
from .components import (
    centralizer,
    component_group,
    component_map_to_phi,
    distinguished_elements,
    enumerate_splittings,
    iota_coefficient,
    splitting_image,
    splitting_to_endoscopic,
)
from .epsilon import SignCharacter, epsilon_minus_part, nu_character, verify_descent
from .errors import InputError, MpendoError, SchemaError
from .packets import PacketModel
from .parameters import ArthurParameter, associated_l_parameter, enumerate_parameters, is_principal

LIST_KEYS = ("quadratic_characters", "constituents", "twists", "rankin_selberg", "global_cuspidals", "places", "sl2_swaps")


def _read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as e:
        raise InputError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e})") from e


def merge_documents(docs) -> dict:
    """Concatenate the entity lists of several catalog documents."""
    out = {k: [] for k in LIST_KEYS if k != "sl2_swaps"}
    for d in docs:
        for k, v in d.items():
            if k in LIST_KEYS:
                out.setdefault(k, []).extend(v)
            else:
                out[k] = v
    return out


def _catalog(paths, scenario: dict | None, base: Path | None):
    docs = [_read_json(p) for p in paths]
    if scenario and "catalog" in scenario:
        ref = scenario["catalog"]
        if isinstance(ref, str):
            docs.append(_read_json((base or Path(".")) / ref))
        else:
            docs.append(ref)
    if not docs:
        raise InputError("no catalog given (use --catalog or a scenario 'catalog' entry)")
    if paths:
        base = Path(paths[0]).parent if base is None else base
    return load_catalog(merge_documents(docs), base_dir=base)


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


def _emit(title: str, lines, data, fmt: str) -> None:
    if fmt == "json":
        print(_dump(data))
        return
    print(f"# {title}\n")
    for line in lines:
        print(line)
    print("\n```json")
    print(_dump(data))
    print("```")


def _key(k) -> str:
    c, b, shift = k
    return f"{c}⊠r({b})" if not shift else f"{c}|·|^{shift}⊠r({b})"


def analyze_data(psi: ArthurParameter) -> dict:
    cls = psi.classify()
    group = component_group(psi)
    x_psi, z = distinguished_elements(psi)
    nu = nu_character(psi)
    rows = []
    for s in enumerate_splittings(psi):
        datum, _, _ = splitting_to_endoscopic(psi, s)
        x = splitting_image(psi, s)
        rows.append(
            {
                "m_minus": {_key(k): m2 for k, _, m2 in s.parts},
                "image": f2.to_str(x),
                "endoscopic": [datum.n_prime, datum.n_dblprime],
                "iota": str(iota_coefficient(datum)),
                "epsilon": epsilon_minus_part(psi, s),
                "nu": nu(x),
            }
        )
    data = {
        "parameter": str(psi),
        "literal": psi.to_literal(),
        "n": psi.n,
        "classification": {
            "buckets": {_key(k): b for k, b in cls.buckets},
            "good_parity": cls.good_parity,
            "discrete": cls.discrete,
            "anti_tempered": cls.anti_tempered,
            "unramified": cls.unramified,
            "in_psi_star": cls.in_psi_star,
            "principal": is_principal(psi),
            "spherical_member_expected": is_principal(psi) and cls.unramified,
        },
        "centralizer": [[_key(f.key), f.kind, f.size] for f in centralizer(psi)],
        "component_group": {"basis": [_key(k) for k in group.basis], "rank": group.rank, "order": group.order},
        "x_psi": f2.to_str(x_psi),
        "z": f2.to_str(z),
        "nu": str(nu),
        "splittings": rows,
    }
    if psi.bounded:
        phi_map = component_map_to_phi(psi)
        data["phi_psi"] = str(associated_l_parameter(psi))
        data["component_map"] = {
            "target": list(phi_map.target),
            "columns": [f2.to_str(c) for c in phi_map.columns],
            "surjective": phi_map.is_surjective,
            "image_of_x_psi": f2.to_str(phi_map(x_psi)),
        }
    report = verify_descent(psi)
    data["descent"] = {
        "good_parity": report.good_parity,
        "ok": report.ok,
        "violations": [list(map(str, v)) for v in report.violations],
        "raw_nonconstant_fibers": report.raw_nonconstant_fibers,
    }
    return data


def _analyze_lines(d: dict) -> list:
    c = d["classification"]
    flags = [k for k in ("good_parity", "discrete", "anti_tempered", "unramified", "in_psi_star", "principal") if c[k]]
    lines = [
        f"- parameter: `{d['parameter']}` (n = {d['n']})",
        f"- flags: {', '.join(flags) or 'none'}",
        f"- 𝒮_ψ: rank {d['component_group']['rank']} over basis {', '.join(d['component_group']['basis']) or '∅'}",
        f"- x_ψ = {d['x_psi'] or '()'}, z = {d['z'] or '()'}, ν_ψ = {d['nu']}",
    ]
    if c["spherical_member_expected"]:
        lines.append("- principal and unramified: a spherical member is expected")
    if "phi_psi" in d:
        lines.append(f"- φ_ψ = {d['phi_psi']}")
    lines.append(f"- descent check: {'ok' if d['descent']['ok'] else 'FAILED'}")
    lines += ["", "| m″ | image | (n′, n″) | ι | ε(ψ^{s=-1}) | ν(x) |", "|---|---|---|---|---|---|"]
    for r in d["splittings"]:
        mm = " ".join(f"{v}" for v in r["m_minus"].values())
        lines.append(f"| {mm} | {r['image'] or '()'} | {tuple(r['endoscopic'])} | {r['iota']} | {r['epsilon']:+d} | {r['nu']:+d} |")
    return lines


def cmd_analyze(args) -> int:
    scenario, base = _scenario(args)
    cat = _catalog(args.catalog, scenario, base)
    if args.parameter:
        try:
            literal = json.loads(args.parameter)
        except json.JSONDecodeError as e:
            raise SchemaError(f"--parameter is not JSON ({e})") from e
    elif scenario and "parameter" in scenario:
        literal = scenario["parameter"]
    else:
        raise InputError("analyze needs --parameter or a scenario with 'parameter'")
    psi = ArthurParameter.from_literal(cat, literal)
    data = analyze_data(psi)
    _emit(f"Analysis of {psi}", _analyze_lines(data), data, args.format)
    return 0


def _scenario(args):
    if not args.scenario:
        return None, None
    return _read_json(args.scenario), Path(args.scenario).parent


def multiplicity_data(cat, scenario: dict) -> dict:
    for key in ("global_parameter", "V"):
        if key not in scenario:
            raise SchemaError(f"scenario lacks {key!r}")
    gp = GlobalParameter.from_literal(cat, scenario["global_parameter"])
    V = tuple(scenario["V"])
    art = scenario.get("eps_art")
    eps_art = SignCharacter(gp.iplus, f2.from_str(art)) if art is not None else None
    packets = {}
    for v, items in sorted(scenario.get("packets", {}).items()):
        psi_v, _ = localize(gp, v)
        packets[v] = PacketModel.from_literal(psi_v, items)
    eps = epsilon_psi(gp, eps_art=eps_art)
    X = character_constraint_set(gp, V, eps_art=eps_art, contributing_only=scenario.get("contributing_only", True))
    members = global_packet_members(gp, packets, V, eps_art=eps_art) if packets or not V else []
    fact = nu_factorization_check(gp, V)
    return {
        "parameter": str(gp),
        "V": list(V),
        "basis": [_key(k) for k in gp.iplus],
        "epsilon_psi": str(eps),
        "X": [[f2.to_str(c) for c in t] for t in X],
        "members": [
            {"members": [[v, label, f2.to_str(ch)] for v, label, ch in m.members], "multiplicity": m.multiplicity}
            for m in members
        ],
        "nu_factorization_ok": fact.ok,
        "offending_places": list(fact.offending_places),
    }


def _multiplicity_lines(d: dict) -> list:
    lines = [
        f"- parameter: `{d['parameter']}` over V = {{{', '.join(d['V'])}}}",
        f"- ε_ψ̇ = {d['epsilon_psi']} on basis {', '.join(d['basis'])}",
        f"- ν factorization: {'ok' if d['nu_factorization_ok'] else 'mismatch at ' + ', '.join(d['offending_places'])}",
        "",
        "| " + " | ".join(d["V"]) + " |",
        "|" + "---|" * len(d["V"]),
    ]
    for t in d["X"]:
        lines.append("| " + " | ".join(b or "()" for b in t) + " |")
    if d["members"]:
        lines += ["", "Members:"]
        for m in d["members"]:
            tup = ", ".join(f"{v}:{label}" for v, label, _ in m["members"])
            lines.append(f"- ({tup}) with multiplicity {m['multiplicity']}")
    return lines


def cmd_multiplicity(args) -> int:
    scenario, base = _scenario(args)
    if scenario is None:
        raise InputError("multiplicity needs --scenario")
    cat = _catalog(args.catalog, scenario, base)
    data = multiplicity_data(cat, scenario)
    _emit(f"Multiplicity for {data['parameter']}", _multiplicity_lines(data), data, args.format)
    return 0


def cmd_casebook(args) -> int:
    ids = CASES if args.case == "all" else (args.case,)
    results = [run_case(c) for c in ids]
    data = {"cases": [r.to_literal() for r in results], "ok": all(r.ok for r in results)}
    lines = []
    for r in results:
        lines.append(f"## {r.case_id}: {'ok' if r.ok else 'FAILED'}")
        for c in r.checks:
            mark = "ok" if c["ok"] else f"FAILED (expected {c['expected']}, got {c['actual']})"
            lines.append(f"- {c['name']}: {mark}")
        lines.append("")
    _emit("Casebook", lines, data, args.format)
    return 0 if data["ok"] else 1


def cmd_validate(args) -> int:
    scenario, base = _scenario(args)
    cat = _catalog(args.catalog, scenario, base)
    violations = [str(v) for v in validate_cross_constraints(cat)]
    data = {"violations": violations, "ok": not violations}
    if args.max_n:
        rng = random.Random(args.seed)
        params = enumerate_parameters(cat, rng.randint(1, args.max_n), "good_parity")
        sample = rng.sample(params, min(len(params), 20))
        bad = [str(p) for p in sample if not verify_descent(p).ok]
        data["descent_sample"] = {"checked": len(sample), "failures": bad}
        data["ok"] = data["ok"] and not bad
    lines = [f"- {v}" for v in violations] or ["- no cross-constraint violations"]
    if "descent_sample" in data:
        lines.append(f"- descent checked on {data['descent_sample']['checked']} sampled parameters")
    _emit("Catalog validation", lines, data, args.format)
    return 0 if data["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mpendo", description="Endoscopic calculus for metaplectic groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", action="append", default=[], metavar="PATH", help="catalog JSON (repeatable)")
    common.add_argument("--scenario", metavar="PATH", help="scenario JSON")
    common.add_argument("--format", choices=("md", "json"), default="md")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-n", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="analyze a local parameter")
    a.add_argument("--parameter", help='JSON list like [{"constituent": "rho2", "b": 1}]')
    a.set_defaults(func=cmd_analyze)
    m = sub.add_parser("multiplicity", parents=[common], help="evaluate the global multiplicity formula")
    m.set_defaults(func=cmd_multiplicity)
    c = sub.add_parser("casebook", parents=[common], help="run a built-in case")
    c.add_argument("case", choices=CASES + ("all",))
    c.set_defaults(func=cmd_casebook)
    v = sub.add_parser("validate", parents=[common], help="check catalog cross-constraints")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MpendoError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except (KeyError, TypeError, ValueError) as e:
        print(f"error: malformed input: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
