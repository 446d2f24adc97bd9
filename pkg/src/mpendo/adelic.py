"""Global parameters, localization and the multiplicity formula."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from . import f2
from .catalog import Catalog
from .components import (
    EndoscopicDatum,
    distinguished_elements,
    enumerate_splittings,
    iota_coefficient,
    make_splitting,
    splitting_image,
    splitting_to_endoscopic,
)
from .epsilon import SignCharacter, arthur_sign_character, epsilon_minus_part, epsilon_of_l_terms, nu_character
from .errors import ConsistencyError, MissingLocalization
from .mu4 import Mu4, product as mu4_product
from .packets import Member, PacketModel
from .parameters import JPAIR, ArthurParameter, Summand, _enumerate_generic, _ParameterBase


class GlobalParameter(_ParameterBase):
    """ψ̇ = ⊕ m_i φ̇_i ⊠ r(b_i) over global cuspidal entries."""

    kind = "GlobalParameter"

    def _atom(self, aid):
        return self.catalog.cuspidal(aid)

    def _atom_dim(self, aid) -> int:
        return self.catalog.cuspidal(aid).dim

    def _validate(self) -> None:
        for s in self.summands:
            if s.shift != 0:
                raise ConsistencyError(self.kind, "global summands carry no shift", str(s))
        super()._validate()

    @classmethod
    def of(cls, cat: Catalog, *terms) -> "GlobalParameter":
        return cls(cat, [Summand(t[0], t[1], Fraction(0), t[2] if len(t) > 2 else 1) for t in terms])

    @classmethod
    def from_literal(cls, cat: Catalog, items: list) -> "GlobalParameter":
        return cls(cat, [Summand(d["cuspidal"], int(d["b"]), Fraction(0), int(d.get("mult", 1))) for d in items])

    def to_literal(self) -> list:
        return [{"cuspidal": s.constituent, "b": s.b, "mult": s.mult} for s in self.summands]

    @property
    def places(self) -> tuple:
        return tuple(sorted(self.catalog.places))


def enumerate_global_parameters(cat: Catalog, n: int, restriction: str = "all", max_b: Optional[int] = None) -> list:
    atoms = [(g.id, g.duality, g.dual, g.dim) for g in sorted(cat.global_cuspidals.values(), key=lambda g: g.id)]
    found = {GlobalParameter.of(cat, *terms) for terms in _enumerate_generic(atoms, n, restriction, max_b)}
    return sorted(found, key=lambda p: p.summands)


@dataclass(frozen=True)
class LocalizationMap:
    place: str
    source: tuple  # global I⁺ keys
    target: tuple  # local I⁺ keys
    columns: tuple

    def __call__(self, x):
        return f2.apply(self.columns, x, len(self.target))

    def pullback(self, chi):
        return f2.transpose_apply(self.columns, chi)


def _contributions(gp: GlobalParameter, v: str) -> dict:
    """key of ψ̇ -> Counter of local keys with multiplicities (per copy)."""
    out = {}
    for s in gp.summands:
        g = gp.catalog.cuspidal(s.constituent)
        terms = g.localization(v)
        if terms is None:
            raise MissingLocalization(f"{g.id} has no localization at {v!r}")
        c = Counter()
        for t in terms:
            c[(t.constituent, s.b, t.shift)] += t.mult
        out[s.key] = c
    return out


def localize(gp: GlobalParameter, v: str):
    """(ψ̇_v, map 𝒮_ψ̇ -> 𝒮_{ψ̇_v})."""
    place = gp.catalog.place(v)
    if place.catalog is None:
        raise MissingLocalization(f"place {v!r} has no local catalog")
    contrib = _contributions(gp, v)
    local = Counter()
    for s in gp.summands:
        for k, m in contrib[s.key].items():
            local[k] += m * s.mult
    psi_v = ArthurParameter(place.catalog, [Summand(*k, m) for k, m in local.items()])
    target = psi_v.iplus
    columns = tuple(tuple(contrib[k].get(t, 0) % 2 for t in target) for k in gp.iplus)
    return psi_v, LocalizationMap(v, gp.iplus, target, columns)


def local_splitting(gp: GlobalParameter, v: str, s, psi_v: Optional[ArthurParameter] = None):
    """Image at v of a global splitting: local m″ adds up the contributions."""
    if psi_v is None:
        psi_v, _ = localize(gp, v)
    contrib = _contributions(gp, v)
    minus = Counter()
    for k, _, m2 in s.parts:
        keys = [k]
        if gp.bucket(k) == JPAIR:
            keys.append(gp.dual_key(k))
        for gk in keys:
            for lk, m in contrib[gk].items():
                minus[lk] += m * m2
    reps = {k for k in psi_v.keys if psi_v.bucket(k) != JPAIR or k in psi_v.jreps}
    return make_splitting(psi_v, {k: m for k, m in minus.items() if k in reps})


@dataclass
class DiagnosticsReport:
    injective: bool
    injectivity_witness: Optional[tuple]
    surjective_at_u: bool
    surjectivity_witness: Optional[tuple]


def localization_diagnostics(gp: GlobalParameter, V0, u: str) -> DiagnosticsReport:
    rank = len(gp.iplus)
    combined = [()] * rank
    for v in V0:
        _, lmap = localize(gp, v)
        combined = [a + b for a, b in zip(combined, lmap.columns)]
    total = len(combined[0]) if combined else 0
    kernel = f2.kernel_basis(combined, total) if rank else []
    _, umap = localize(gp, u)
    witness = None
    for j in range(len(umap.target)):
        e = tuple(1 if i == j else 0 for i in range(len(umap.target)))
        if f2.solve(umap.columns, e) is None:
            witness = e
            break
    return DiagnosticsReport(not kernel, kernel[0] if kernel else None, witness is None, witness)


def nu_global(gp: GlobalParameter) -> SignCharacter:
    """ν_ψ̇ with components ε(φ̇_i)^{b_i}."""
    bits = []
    for c, b, _ in gp.iplus:
        eps = gp.catalog.cuspidal(c).global_root_number
        bits.append(0 if eps ** b == 1 else 1)
    return SignCharacter(gp.iplus, tuple(bits))


def epsilon_global_minus_part(gp: GlobalParameter, s) -> int:
    """Global product ∏_{I⁺ ⊔ I⁻} ε(φ̇_i)^{b_i m″_i}; J pairs contribute ε(φ̇)ε(φ̇∨) = 1."""
    value = 1
    for k, _, m2 in s.parts:
        if gp.bucket(k) == JPAIR:
            continue
        c, b, _ = k
        value *= gp.catalog.cuspidal(c).global_root_number ** (b * m2)
    return value


def local_epsilon_of_entry(cat: Catalog, gid: str, v: str) -> Mu4:
    """ε_v(φ̇_v) for one cuspidal entry at one place."""
    g = cat.cuspidal(gid)
    terms = g.localization(v)
    if terms is None:
        raise MissingLocalization(f"{gid} has no localization at {v!r}")
    local = cat.place(v).catalog
    return epsilon_of_l_terms(local, Counter({(t.constituent, t.shift): t.mult for t in terms}))


@dataclass
class FactorizationReport:
    V: tuple
    splittings: int = 0
    global_mismatches: list = field(default_factory=list)  # ν(x) vs global product
    local_mismatches: list = field(default_factory=list)  # ν(x) vs ∏_v local ε
    place_mismatches: list = field(default_factory=list)  # declared vs computed ε_v(φ̇_v)
    outside_mismatches: list = field(default_factory=list)  # places outside V with ε ≠ 1
    nu_at_s_psi: int = 1

    @property
    def ok(self) -> bool:
        return not (
            self.global_mismatches or self.local_mismatches or self.place_mismatches or self.outside_mismatches
        ) and self.nu_at_s_psi == 1

    @property
    def offending_places(self) -> tuple:
        return tuple(sorted({p for p, *_ in self.place_mismatches} | {p for p, *_ in self.outside_mismatches}))


def nu_factorization_check(gp: GlobalParameter, V) -> FactorizationReport:
    cat = gp.catalog
    V = tuple(V)
    report = FactorizationReport(V)
    nu = nu_global(gp)
    x_psi, _ = distinguished_elements(gp)
    report.nu_at_s_psi = nu(x_psi)
    localized = {v: localize(gp, v)[0] for v in V}
    outside = [p for p in gp.places if p not in V]
    for p in outside:
        if not cat.place(p).unramified:
            raise ConsistencyError("GlobalParameter", "unramified outside V", p)
    for s in enumerate_splittings(gp):
        report.splittings += 1
        x = splitting_image(gp, s)
        expected = nu(x)
        glob = epsilon_global_minus_part(gp, s)
        if glob != expected:
            report.global_mismatches.append((str(s), expected, glob))
        per_place = {v: epsilon_minus_part(localized[v], local_splitting(gp, v, s, localized[v])) for v in V}
        loc = 1
        for val in per_place.values():
            loc *= val
        if loc != expected:
            report.local_mismatches.append((str(s), expected, loc, per_place))
        for p in outside:
            try:
                psi_p, _ = localize(gp, p)
            except MissingLocalization:
                continue
            val = epsilon_minus_part(psi_p, local_splitting(gp, p, s, psi_p))
            if val != 1:
                report.outside_mismatches.append((p, str(s), val))
    for s in gp.summands:
        g = cat.cuspidal(s.constituent)
        for v, declared in g.local_root_numbers:
            if v not in V:
                continue
            computed = local_epsilon_of_entry(cat, g.id, v)
            if computed != declared:
                report.place_mismatches.append((v, g.id, str(declared), str(computed)))
        if g.self_dual and g.local_root_numbers and {v for v, _ in g.local_root_numbers} >= set(V):
            prod = mu4_product(local_epsilon_of_entry(cat, g.id, v) for v in V)
            if prod != Mu4.sign(g.global_root_number) and not report.place_mismatches:
                report.global_mismatches.append((g.id, g.global_root_number, str(prod)))
    return report


def epsilon_psi(gp: GlobalParameter, rs: Optional[Catalog] = None, eps_art: Optional[SignCharacter] = None) -> SignCharacter:
    """ε_ψ̇ = ε^Art ν_ψ̇ (ε^Art may be supplied to override the default rule)."""
    art = eps_art if eps_art is not None else arthur_sign_character(gp, rs)
    return art * nu_global(gp)


def _require_unramified_outside(gp: GlobalParameter, V) -> None:
    for p in gp.places:
        if p not in V and not gp.catalog.place(p).unramified:
            raise ConsistencyError("GlobalParameter", "unramified outside V", p)


def _forced_trivial(gp: GlobalParameter, v: str) -> bool:
    return gp.catalog.place(v).unramified


def character_constraint_set(
    gp: GlobalParameter,
    V,
    rs: Optional[Catalog] = None,
    eps_art: Optional[SignCharacter] = None,
    contributing_only: bool = True,
) -> list:
    """X(ψ̇, V): tuples (χ_v)_{v∈V} with diag*(∏ χ_v) = ε_ψ̇.

    With contributing_only, unramified places in V keep only χ_v = 1 (their
    packet is the spherical singleton).
    """
    V = tuple(V)
    _require_unramified_outside(gp, V)
    target = epsilon_psi(gp, rs, eps_art).bits
    maps = [localize(gp, v)[1] for v in V]
    # unknowns: the bits of every χ_v; diag* is the sum of pullbacks
    columns = []
    owners = []
    for i, (v, lmap) in enumerate(zip(V, maps)):
        if contributing_only and _forced_trivial(gp, v):
            continue
        for j in range(len(lmap.target)):
            columns.append(tuple(col[j] for col in lmap.columns))
            owners.append((i, j))
    rank = len(gp.iplus)
    particular = f2.solve(columns, target) if rank else f2.zero(len(columns))
    if particular is None:
        return []
    kernel = f2.kernel_basis(columns, rank) if rank else [
        tuple(1 if a == b else 0 for a in range(len(columns))) for b in range(len(columns))
    ]
    out = []
    for k in f2.span(kernel, len(columns)):
        sol = f2.add(particular, k)
        chars = [[0] * len(m.target) for m in maps]
        for bit, (i, j) in zip(sol, owners):
            chars[i][j] = bit
        out.append(tuple(tuple(c) for c in chars))
    return sorted(out)


def diag_pullback(gp: GlobalParameter, V, chars) -> tuple:
    """diag*_V(∏ χ_v) as bits over 𝒮_ψ̇."""
    total = f2.zero(len(gp.iplus))
    for v, chi in zip(V, chars):
        _, lmap = localize(gp, v)
        total = f2.add(total, lmap.pullback(chi))
    return total


@dataclass(frozen=True)
class GlobalMember:
    members: tuple  # (place, label, character bits)
    multiplicity: int


def spherical_packet(psi_v: ArthurParameter, v: str) -> PacketModel:
    return PacketModel(psi_v, [Member(f"spherical[{v}]", f2.zero(len(psi_v.iplus)), 1, spherical=True)])


def global_packet_members(
    gp: GlobalParameter,
    local_packets: dict,
    V,
    rs: Optional[Catalog] = None,
    eps_art: Optional[SignCharacter] = None,
) -> list:
    """Tuples of local members whose characters lie in X(ψ̇, V)."""
    V = tuple(V)
    allowed = set(character_constraint_set(gp, V, rs, eps_art, contributing_only=False))
    choices = []
    for v in V:
        psi_v, _ = localize(gp, v)
        pm = local_packets.get(v)
        if pm is None:
            if not gp.catalog.place(v).unramified:
                raise ConsistencyError("global_packet_members", "packet supplied at ramified places", v)
            pm = spherical_packet(psi_v, v)
        if pm.parameter != psi_v:
            raise ConsistencyError("global_packet_members", "local packet parameter is the localization", v)
        grouped = Counter((m.label, m.character) for m in pm.members)
        choices.append(sorted(grouped.items()))
    out = []
    for combo in product(*choices):
        chars = tuple(ch for (_, ch), _ in combo)
        if chars not in allowed:
            continue
        mult = 1
        for _, c in combo:
            mult *= c
        out.append(GlobalMember(tuple((v, label, ch) for v, ((label, ch), _) in zip(V, combo)), mult))
    return out


@dataclass(frozen=True)
class CoefficientRow:
    splitting: str
    datum: EndoscopicDatum
    order_S: int
    order_Z: int
    order_S_bar: int
    iota: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def stable_coefficient_table(gp: GlobalParameter) -> list:
    """ι(G̃, G!)·|S̄_ψ̇!|^{-1} against |𝒮_ψ̇|^{-1} for every splitting."""
    if not gp.classify().discrete:
        raise ConsistencyError("GlobalParameter", "discrete parameter", str(gp))
    rows = []
    order_cal_s = 2 ** len(gp.iplus)
    for s in enumerate_splittings(gp):
        datum, p1, p2 = splitting_to_endoscopic(gp, s)
        order_s_bang = 2 ** len(p1.iplus) * 2 ** len(p2.iplus)
        order_z = 2 ** sum(1 for v in (datum.n_prime, datum.n_dblprime) if v)
        s_bar = Fraction(order_s_bang, order_z)
        iota = iota_coefficient(datum)
        rows.append(
            CoefficientRow(str(s), datum, order_s_bang, order_z, int(s_bar), iota, iota / s_bar, Fraction(1, order_cal_s))
        )
    return rows
