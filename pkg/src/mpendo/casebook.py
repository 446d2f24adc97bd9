"""Built-in worked cases with their expected outcomes."""

from __future__ import annotations

from . import f2, fixtures
from .adelic import (
    GlobalParameter,
    character_constraint_set,
    enumerate_global_parameters,
    epsilon_psi,
    global_packet_members,
    nu_global,
)
from .catalog import load_catalog
from .components import distinguished_elements
from .epsilon import arthur_sign_character, mu_tilde, xu_character_anti_tempered
from .packets import build_principal_packet, spherical_contract_holds, t_vector
from .parameters import ArthurParameter, enumerate_parameters, is_principal, is_tempered

CASES = ("principal-local", "principal-global", "waldspurger-n1", "mp4-psi-star", "mp4-sk")


class Case:
    def __init__(self, case_id: str):
        self.case_id = case_id
        self.checks = []
        self.data = {}

    def check(self, name: str, expected, actual) -> None:
        self.checks.append({"name": name, "expected": expected, "actual": actual, "ok": expected == actual})

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_literal(self) -> dict:
        return {"case": self.case_id, "ok": self.ok, "checks": self.checks, "data": self.data}


def _principal_local(case: Case) -> None:
    cat = fixtures.f1()
    rows = []
    for zeta in ("one", "chi_a", "chi_b"):
        for n in (1, 2, 3):
            pm = build_principal_packet(cat, zeta, n)
            _, z = distinguished_elements(pm.parameter)
            plus, minus = f"omega_plus[{zeta}]", f"omega_minus[{zeta}]"
            case.check(f"T at 1, {zeta}, n={n}", {plus: 1, minus: -1}, t_vector(pm, (0,)))
            case.check(f"T at -1, {zeta}, n={n}", {plus: 1, minus: 1}, t_vector(pm, z))
            case.check(f"spherical contract, {zeta}, n={n}", True, spherical_contract_holds(pm))
            spherical = [m.label for m in pm.members if m.spherical]
            case.check(f"spherical member, {zeta}, n={n}", [plus] if zeta == "one" else [], spherical)
            rows.append({"parameter": str(pm.parameter), "members": pm.to_literal()})
    case.data["packets"] = rows


def _principal_global(case: Case) -> None:
    cat = load_catalog(fixtures.principal_global_document())
    gp = GlobalParameter.of(cat, ("zeta_dot", 4))
    V = ("v1", "v2")
    packets = {v: build_principal_packet(cat.place(v).catalog, "chi_a", 2) for v in V}
    members = global_packet_members(gp, packets, V)
    got = sorted(
        ("".join("+" if not any(ch) else "-" for _, _, ch in m.members), m.multiplicity) for m in members
    )
    case.check("member sign tuples", [("++", 1), ("--", 1)], got)
    case.check("ε_ψ̇ trivial", "0", f2.to_str(epsilon_psi(gp).bits))
    wide = character_constraint_set(gp, V + ("v3",))
    case.check("new unramified place forced trivial", True, all(not any(t[2]) for t in wide))
    case.data["parameter"] = str(gp)
    case.data["X"] = [[f2.to_str(c) for c in t] for t in character_constraint_set(gp, V)]


def _waldspurger(case: Case) -> None:
    cat = fixtures.f1_extended()
    found = {str(p) for p in enumerate_parameters(cat, 1)}
    # independent construction of tempered ∪ principal in dimension 2
    expected = set()
    for c in cat.constituents.values():
        if not c.bounded:
            continue
        if c.duality == "symplectic" and c.total_dim == 2:
            expected.add(str(ArthurParameter.of(cat, (c.id, 1))))
        if c.duality == "orthogonal" and c.total_dim == 1:
            expected.add(str(ArthurParameter.of(cat, (c.id, 1, 2))))
            expected.add(str(ArthurParameter.of(cat, (c.id, 2))))
        if c.duality == "non_self_dual" and c.total_dim == 1 and c.id < c.dual:
            expected.add(str(ArthurParameter.of(cat, (c.id, 1), (c.dual, 1))))
    case.check("n=1 enumeration", sorted(expected), sorted(found))
    kinds = [is_tempered(p) or is_principal(p) for p in enumerate_parameters(cat, 1)]
    case.check("each is tempered or principal", True, all(kinds))
    case.data["parameters"] = sorted(found)


def _mp4_psi_star(case: Case) -> None:
    cat = fixtures.f1_extended()
    rows = []
    families = list(fixtures.MP4_PSI_STAR) + [("chi_a ⊠ r(4)", (("chi_a", 4),))]
    for name, terms in families:
        psi = ArthurParameter.of(cat, *terms)
        cls = psi.classify()
        mu = xu_character_anti_tempered(psi)
        mt = mu_tilde(psi, mu)
        case.check(f"{name} in Ψ^⋆", True, cls.in_psi_star)
        case.check(f"{name} μ trivial", True, mu.is_trivial)
        case.check(f"{name} μ̃ = μ", str(mu), str(mt))
        rows.append({"family": name, "parameter": str(psi), "mu": str(mu), "mu_tilde": str(mt)})
    case.data["families"] = rows


def _is_sk(gp) -> bool:
    if len(gp.summands) != 2:
        return False
    shapes = sorted((gp.catalog.cuspidal(s.constituent).duality, gp.catalog.cuspidal(s.constituent).dim, s.b) for s in gp.summands)
    return shapes == [("orthogonal", 1, 2), ("symplectic", 2, 1)]


def _mp4_sk(case: Case) -> None:
    rows = []
    for sign in (1, -1):
        cat = load_catalog(fixtures.mp4_global_document(sign))
        for gp in enumerate_global_parameters(cat, 2, "discrete"):
            art = arthur_sign_character(gp)
            _, z = distinguished_elements(gp)
            if _is_sk(gp):
                r2 = next(k for k in gp.iplus if k[1] == 2)
                bit = art.bits[gp.iplus.index(r2)]
                case.check(f"RS {sign:+d}: {gp} bit at r(2)", 0 if sign == 1 else 1, bit)
                case.check(f"RS {sign:+d}: {gp} trivial on z", 1, f2.pairing(art.bits, z))
            else:
                case.check(f"RS {sign:+d}: {gp} trivial", True, art.is_trivial)
            rows.append({"rs": sign, "parameter": str(gp), "sk": _is_sk(gp), "eps_art": str(art)})
    sk = load_catalog(fixtures.saito_kurokawa_document(-1))
    gp = GlobalParameter.of(sk, ("phi_dot", 1), ("chi_dot", 2))
    eps = epsilon_psi(gp)
    case.check("SK ε_ψ̇ = ε^Art ν", str(arthur_sign_character(gp) * nu_global(gp)), str(eps))
    case.data["fixtures"] = rows
    case.data["sk_epsilon_psi"] = str(eps)


_RUNNERS = {
    "principal-local": _principal_local,
    "principal-global": _principal_global,
    "waldspurger-n1": _waldspurger,
    "mp4-psi-star": _mp4_psi_star,
    "mp4-sk": _mp4_sk,
}


def run_case(case_id: str) -> Case:
    if case_id not in _RUNNERS:
        raise KeyError(case_id)
    case = Case(case_id)
    _RUNNERS[case_id](case)
    return case
