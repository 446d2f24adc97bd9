"""Acceptance gate: one check per criterion, each reporting PASS or FAIL."""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

import conftest
from mpendo import f2, fixtures
from mpendo.adelic import (
    GlobalParameter,
    character_constraint_set,
    enumerate_global_parameters,
    global_packet_members,
    nu_factorization_check,
    nu_global,
    stable_coefficient_table,
)
from mpendo.casebook import run_case
from mpendo.catalog import load_catalog
from mpendo.components import component_map_to_phi, distinguished_elements, enumerate_splittings, splitting_image
from mpendo.epsilon import (
    arthur_sign_character,
    delta_c_character,
    epsilon_minus_part,
    epsilon_phi_psi_minus_part,
    mu_tilde,
    nu_character,
    nu_hat_character,
    verify_descent,
    xu_character_anti_tempered,
)
from mpendo.errors import MissingTwist
from mpendo.packets import (
    Member,
    PacketModel,
    build_principal_packet,
    fourier_pi,
    relabel_variation,
    spherical_contract_holds,
    t_from_pi,
    t_vector,
)
from mpendo.parameters import ArthurParameter, enumerate_parameters, is_principal, is_tempered, twist_parameter

SCEN = Path(__file__).resolve().parent.parent / "scenarios"


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_good_parity_descent():
    t = time.perf_counter()
    f1 = fixtures.f1()
    checked = failures = 0
    for n in range(1, 7):
        for psi in enumerate_parameters(f1, n, "good_parity"):
            rep = verify_descent(psi)
            checked += 1
            failures += (not rep.ok) or bool(rep.raw_nonconstant_fibers)
    rng = random.Random(20240601)
    random_checked = 0
    for _ in range(1000):
        cat = fixtures.random_local_catalog(rng, rng.randint(2, 6))
        for n in (1, 2, 3):
            for psi in enumerate_parameters(cat, n, "good_parity"):
                rep = verify_descent(psi)
                random_checked += 1
                failures += (not rep.ok) or bool(rep.raw_nonconstant_fibers)
    elapsed = time.perf_counter() - t
    report(
        1,
        "good-parity descent ε(ψ^{s=-1}) = ν_ψ(x)",
        failures == 0 and elapsed < 30,
        f"F1 n≤6: {checked} parameters, 1000 random catalogs n≤3: {random_checked} parameters, {elapsed:.1f}s",
    )


def test_criterion_02_epsilon_phi_psi():
    t = time.perf_counter()
    f1 = fixtures.f1()
    pairs = bad = 0
    for n in range(1, 7):
        for psi in enumerate_parameters(f1, n):
            for s in enumerate_splittings(psi):
                pairs += 1
                bad += epsilon_minus_part(psi, s) != epsilon_phi_psi_minus_part(psi, s)
    elapsed = time.perf_counter() - t
    report(2, "ε(ψ^{s=-1}) = ε(φ_ψ^{s=-1}) exhaustively", bad == 0 and elapsed < 30, f"{pairs} pairs, {elapsed:.1f}s")


def test_criterion_03_component_map():
    f1 = fixtures.f1()
    count = bad = 0
    for n in range(1, 7):
        for psi in enumerate_parameters(f1, n):
            if not psi.bounded:
                continue
            m = component_map_to_phi(psi)
            x_psi, _ = distinguished_elements(psi)
            count += 1
            bad += any(m(x_psi)) or not m.is_surjective
    report(3, "x_ψ ↦ 0 and 𝒮_ψ → 𝒮_{φ_ψ} surjective", bad == 0, f"{count} bounded parameters")


def _random_packet(rng, pool):
    psi = rng.choice(pool)
    chars = list(f2.all_vectors(len(psi.iplus)))
    counts = {}
    members = []
    for _ in range(rng.randint(0, 8)):
        label = rng.choice("abcdefg")
        chi = rng.choice(chars)
        counts[(chi, label)] = counts.get((chi, label), 0) + 1
        members.append(Member(label, chi, counts[(chi, label)]))
    return PacketModel(psi, members)


def test_criterion_04_fourier_duality():
    ext = fixtures.f1_extended()
    pool = [p for n in (1, 2, 3) for p in enumerate_parameters(ext, n)]
    rng = random.Random(4)
    bad = 0
    for _ in range(500):
        pm = _random_packet(rng, pool)
        for chi in pm.group.elements():
            if any(not isinstance(v, int) or v < 0 for v in fourier_pi(pm, chi).values()):
                bad += 1
        for x in pm.group.elements():
            bad += t_from_pi(pm, x) != t_vector(pm, x)
    report(4, "T → π → T round trip, nonnegative integer π", bad == 0, "500 random packet models")


def test_criterion_05_principal():
    f1 = fixtures.f1()
    bad = 0
    for zeta in ("one", "chi_a", "chi_b"):
        for n in range(1, 5):
            pm = build_principal_packet(f1, zeta, n)
            plus, minus = f"omega_plus[{zeta}]", f"omega_minus[{zeta}]"
            _, z = distinguished_elements(pm.parameter)
            bad += t_vector(pm, (0,)) != {plus: 1, minus: -1}
            bad += t_vector(pm, z) != {plus: 1, minus: 1}
            bad += not spherical_contract_holds(pm)
            if zeta == "one":
                bad += [m.label for m in pm.members if m.spherical] != [plus]
    report(5, "principal T-vectors and spherical contract", bad == 0, "ζ ∈ {one, chi_a, chi_b}, n ≤ 4")


def test_criterion_06_global_nu():
    t = time.perf_counter()
    rng = random.Random(606)
    bad = corrupted = detected = 0
    for _ in range(200):
        doc, terms, V = fixtures.random_global_fixture(rng)
        gp = GlobalParameter.from_literal(load_catalog(doc), terms)
        rep = nu_factorization_check(gp, V)
        bad += not rep.ok or rep.nu_at_s_psi != 1
        place = fixtures.corrupt_local_root(doc, terms, rng)
        if place is not None:
            corrupted += 1
            rep = nu_factorization_check(GlobalParameter.from_literal(load_catalog(doc, strict=False), terms), V)
            detected += (not rep.ok) and rep.offending_places == (place,)
    elapsed = time.perf_counter() - t
    ok = bad == 0 and corrupted > 0 and detected == corrupted and elapsed < 60
    report(
        6,
        "ν_ψ̇ = ε(ψ̇^{s=-1}) = ∏_v local ε, ν(s_ψ̇) = 1, corruption detected",
        ok,
        f"200 fixtures, {detected}/{corrupted} corruptions localized, {elapsed:.1f}s",
    )


def test_criterion_07_coefficient_identity():
    gps = []
    for sign in (1, -1):
        cat = load_catalog(fixtures.mp4_global_document(sign))
        for n in (1, 2, 3):
            gps += enumerate_global_parameters(cat, n, "discrete")
    gps.append(GlobalParameter.of(load_catalog(fixtures.principal_global_document()), ("zeta_dot", 4)))
    gps.append(GlobalParameter.of(load_catalog(fixtures.saito_kurokawa_document(-1)), ("phi_dot", 1), ("chi_dot", 2)))
    rng = random.Random(7)
    for _ in range(50):
        doc, terms, _ = fixtures.random_global_fixture(rng)
        gps.append(GlobalParameter.from_literal(load_catalog(doc), terms))
    rows = [r for gp in gps for r in stable_coefficient_table(gp)]
    report(7, "ι·|S̄_ψ̇!|^{-1} = |𝒮_ψ̇|^{-1}", all(r.holds for r in rows), f"{len(gps)} fixtures, {len(rows)} splittings")


def _is_sk(gp):
    shapes = sorted((gp.catalog.cuspidal(s.constituent).duality, gp.catalog.cuspidal(s.constituent).dim, s.b) for s in gp.summands)
    return shapes == [("orthogonal", 1, 2), ("symplectic", 2, 1)]


def test_criterion_08_mp4_casebook():
    ext = fixtures.f1_extended()
    bad = []
    for name, terms in fixtures.MP4_PSI_STAR:
        psi = ArthurParameter.of(ext, *terms)
        mu = xu_character_anti_tempered(psi)
        if not (psi.classify().in_psi_star and mu.is_trivial and mu_tilde(psi, mu) == mu):
            bad.append(f"(a) {name}")
        if nu_character(psi) != nu_hat_character(psi):
            bad.append(f"(a) ν at {name}")
    sk_seen = 0
    for sign in (1, -1):
        cat = load_catalog(fixtures.mp4_global_document(sign))
        for gp in enumerate_global_parameters(cat, 2, "discrete"):
            art = arthur_sign_character(gp)
            if _is_sk(gp):
                sk_seen += 1
                r2 = gp.iplus.index(next(k for k in gp.iplus if k[1] == 2))
                _, z = distinguished_elements(gp)
                if art.bits[r2] != (sign == -1) or art(z) != 1:
                    bad.append(f"(b) {gp}")
            elif not art.is_trivial:
                bad.append(f"(b) {gp}")
    for cat in (fixtures.f1(), ext):
        ps = enumerate_parameters(cat, 1)
        if not all(is_tempered(p) or is_principal(p) for p in ps):
            bad.append("(c) extra parameter")
    case = run_case("waldspurger-n1")
    if not case.ok:
        bad.append("(c) casebook")
    report(8, "Mp(4): Ψ^⋆ μ̃ = μ = 1, ε^Art vs RS, n = 1 enumeration", not bad and sk_seen > 0, "; ".join(bad) or f"{sk_seen} SK fixtures")


def test_criterion_09_delta_c():
    ext = fixtures.f1_extended()
    checked = bad = 0
    rng = random.Random(9)
    for n in (1, 2, 3):
        for psi in enumerate_parameters(ext, n):
            for c in ("chi_a", "chi_b", "chi_ab"):
                try:
                    d = delta_c_character(psi, c)
                    twist_parameter(psi, c)
                except MissingTwist:
                    continue
                checked += 1
                x_psi, _ = distinguished_elements(psi)
                bad += d(x_psi) != 1
                pm = _random_packet(random.Random(rng.random()), [psi])
                bad += relabel_variation(relabel_variation(pm, c), c) != pm
    report(9, "δ_c(x_ψ) = +1 and relabel_variation is an involution", bad == 0 and checked > 0, f"{checked} (ψ, c) pairs")


def test_criterion_10_multiplicity():
    cat = load_catalog(fixtures.principal_global_document())
    gp = GlobalParameter.of(cat, ("zeta_dot", 4))
    V = ("v1", "v2")
    packets = {v: build_principal_packet(cat.place(v).catalog, "chi_a", 2) for v in V}
    members = global_packet_members(gp, packets, V)
    tuples = sorted((tuple(ch for _, _, ch in m.members), m.multiplicity) for m in members)
    ok = tuples == [(((0,), (0,)), 1), (((1,), (1,)), 1)]
    wide = character_constraint_set(gp, V + ("v3",))
    ok = ok and len(wide) == 2 and all(t[2] == (0,) for t in wide)
    t = time.perf_counter()
    res = subprocess.run(
        [sys.executable, "-m", "mpendo", "multiplicity", "--scenario", str(SCEN / "principal_global.json"), "--format", "json"],
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - t
    ok = ok and res.returncode == 0 and json.loads(res.stdout)["X"] == [["0", "0"], ["1", "1"]] and elapsed < 5
    report(10, "principal two-place multiplicity, forced trivial at new places, CLI", ok, f"CLI {elapsed:.2f}s")
