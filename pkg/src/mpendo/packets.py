"""Finite packet models over 𝒮_ψ^∨ and their coefficient vectors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction

from . import f2
from .components import component_group, component_map_to_phi, distinguished_elements, splitting_image
from .errors import ConsistencyError
from .epsilon import SignCharacter, delta_c_character, epsilon_minus_part, mu_tilde, transport
from .parameters import ArthurParameter, dual_with_map, twist_parameter

DUAL_MARK = "^"


@dataclass(frozen=True, order=True)
class Member:
    label: str
    character: tuple
    copy: int = 1
    spherical: bool = False
    in_l_packet: bool = False

    def to_literal(self) -> dict:
        flags = [f for f in ("spherical", "in_l_packet") if getattr(self, f)]
        return {"label": self.label, "character": f2.to_str(self.character), "copy": self.copy, "flags": flags}


class PacketModel:
    """A parameter with labeled members (χ, π, k)."""

    def __init__(self, parameter: ArthurParameter, members=(), check_flags: bool = True):
        # check_flags=False keeps spherical / L-packet flags of relabeled
        # members without re-deriving them for the new parameter
        self.parameter = parameter
        self.members = tuple(sorted(members))
        self.group = component_group(parameter)
        self._validate(check_flags)

    @classmethod
    def from_literal(cls, parameter, items) -> "PacketModel":
        members = []
        for d in items:
            flags = set(d.get("flags", []))
            unknown = flags - {"spherical", "in_l_packet"}
            if unknown:
                raise ConsistencyError("PacketModel", "known member flags", ", ".join(sorted(unknown)))
            members.append(
                Member(
                    d["label"],
                    f2.from_str(d["character"]),
                    int(d.get("copy", 1)),
                    "spherical" in flags,
                    "in_l_packet" in flags,
                )
            )
        return cls(parameter, members)

    def to_literal(self) -> list:
        return [m.to_literal() for m in self.members]

    def __eq__(self, other) -> bool:
        return isinstance(other, PacketModel) and (self.parameter, self.members) == (other.parameter, other.members)

    def __hash__(self):
        return hash((self.parameter, self.members))

    def __repr__(self) -> str:
        return f"PacketModel({self.parameter}, {len(self.members)} members)"

    def _validate(self, check_flags: bool) -> None:
        ent = "PacketModel"
        rank = self.group.rank
        seen = set()
        copies = Counter()
        for m in self.members:
            if len(m.character) != rank:
                raise ConsistencyError(ent, "characters live on 𝒮_ψ", f"{m.label}: {len(m.character)} bits vs {rank}")
            key = (m.character, m.label, m.copy)
            if key in seen:
                raise ConsistencyError(ent, "triples (χ, π, k) are distinct", m.label)
            seen.add(key)
            copies[(m.character, m.label)] += 1
        for (chi, label), count in copies.items():
            got = sorted(m.copy for m in self.members if (m.character, m.label) == (chi, label))
            if got != list(range(1, count + 1)):
                raise ConsistencyError(ent, "copy indices run through 1..m", label)
        spherical = [m for m in self.members if m.spherical]
        if len(spherical) > 1:
            raise ConsistencyError(ent, "at most one spherical member")
        if spherical:
            if any(spherical[0].character):
                raise ConsistencyError(ent, "the spherical member has trivial character")
            if check_flags and not self.parameter.classify().unramified:
                raise ConsistencyError(ent, "spherical member only for unramified parameters")
        lmembers = [m for m in self.members if m.in_l_packet]
        if lmembers and check_flags:
            chars = [m.character for m in lmembers]
            if len(set(chars)) != len(chars):
                raise ConsistencyError(ent, "L-packet members have distinct characters")
            if any(copies[(m.character, m.label)] != 1 for m in lmembers):
                raise ConsistencyError(ent, "L-packet members have multiplicity 1")
            phi_map = component_map_to_phi(self.parameter)
            image = {phi_map.pullback(c) for c in f2.all_vectors(len(phi_map.target))}
            for m in lmembers:
                if m.character not in image:
                    raise ConsistencyError(ent, "L-packet characters pull back from 𝒮_{φ_ψ}", m.label)

    @property
    def labels(self) -> tuple:
        return tuple(sorted({m.label for m in self.members}))

    @property
    def multiplicity_free(self) -> bool:
        return len({m.label for m in self.members}) == len(self.members)


def _vector(entries) -> dict:
    out = Counter()
    for label, coeff in entries:
        out[label] += coeff
    return {k: v for k, v in sorted(out.items()) if v}


def t_vector(pm: PacketModel, x) -> dict:
    """T_{ψ,x}: member (χ, π, k) gets χ(x_ψ x)."""
    x_psi, _ = distinguished_elements(pm.parameter)
    y = f2.add(x_psi, x)
    return _vector((m.label, f2.pairing(m.character, y)) for m in pm.members)


def fourier_pi(pm: PacketModel, chi) -> dict:
    """π_{ψ,χ} = |𝒮_ψ|^{-1} Σ_x χ(x_ψ x) T_{ψ,x}."""
    x_psi, _ = distinguished_elements(pm.parameter)
    acc = Counter()
    for x in pm.group.elements():
        sign = f2.pairing(chi, f2.add(x_psi, x))
        for label, coeff in t_vector(pm, x).items():
            acc[label] += sign * coeff
    out = {}
    for label, total in sorted(acc.items()):
        value = Fraction(total, pm.group.order)
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {value} at {label}")
        if value:
            out[label] = int(value)
    return out


def t_from_pi(pm: PacketModel, x) -> dict:
    """Inverse relation T_{ψ,x} = Σ_χ χ(x_ψ x) π_{ψ,χ}."""
    x_psi, _ = distinguished_elements(pm.parameter)
    y = f2.add(x_psi, x)
    acc = Counter()
    for chi in pm.group.elements():
        sign = f2.pairing(chi, y)
        for label, coeff in fourier_pi(pm, chi).items():
            acc[label] += sign * coeff
    return _vector(acc.items())


def transfer_vector(pm: PacketModel, s) -> dict:
    """ε(ψ^{s=-1})^{-1} T_{ψ,x} with x the image of s."""
    psi = pm.parameter
    eps = epsilon_minus_part(psi, s)
    return {k: eps * v for k, v in t_vector(pm, splitting_image(psi, s)).items()}


def build_principal_packet(cat, zeta: str, n: int) -> PacketModel:
    """Packet {ω⁺, ω⁻} of ζ ⊠ r(2n)."""
    cid = cat.constituent_for_character(zeta)
    psi = ArthurParameter.of(cat, (cid, 2 * n))
    spherical = cat.character(zeta).is_unramified
    return PacketModel(
        psi,
        [
            Member(f"omega_plus[{zeta}]", (0,), 1, spherical=spherical),
            Member(f"omega_minus[{zeta}]", (1,)),
        ],
    )


def spherical_contract_holds(pm: PacketModel) -> bool:
    has = any(m.spherical for m in pm.members)
    return not has or pm.parameter.classify().unramified


def relabel_variation(pm: PacketModel, c: str) -> PacketModel:
    """ψ ↦ ψζ, χ ↦ χ δ_c (characters transported to the basis of ψζ)."""
    psi = pm.parameter
    delta = delta_c_character(psi, c)
    twisted, keymap = twist_parameter(psi, c)
    basis = component_group(twisted).basis
    members = []
    for m in pm.members:
        chi = SignCharacter(psi.iplus, m.character) * delta
        members.append(replace(m, character=transport(chi, keymap, basis).bits))
    return PacketModel(twisted, members, check_flags=False)


def relabel_anti_tempered(pm_tempered: PacketModel, psi: ArthurParameter, mu=None) -> PacketModel:
    """Relabel the L-packet of φ = ψ̂ as a packet of ψ.

    The member with character χμ̃ receives character χ; labels get a dual mark.
    """
    hat, keymap = dual_with_map(psi)
    if pm_tempered.parameter != hat:
        raise ConsistencyError("relabel_anti_tempered", "packet parameter is ψ̂", str(pm_tempered.parameter))
    inverse = {v: k for k, v in keymap.items()}
    mt = mu_tilde(psi, mu)
    members = []
    for m in pm_tempered.members:
        chi_hat = SignCharacter(hat.iplus, m.character)
        chi = transport(chi_hat, inverse, psi.iplus) * mt
        members.append(Member(m.label + DUAL_MARK, chi.bits, m.copy))
    return PacketModel(psi, members)
