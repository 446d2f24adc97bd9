"""Root-number calculus and the sign characters ν, δ_c, μ, μ̃ and ε^Art."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import f2
from .catalog import ORTHOGONAL, SYMPLECTIC, Catalog, twist_constituent
from .components import (
    distinguished_elements,
    enumerate_splittings,
    full_splitting,
    splitting_image,
)
from .errors import MissingFrobenius, NotSelfDual, UnsupportedXuCase
from .mu4 import ONE, Mu4, product
from .parameters import IMINUS, JPAIR, dual_with_map


def epsilon_sl(cat: Catalog, cid: str, a: int) -> Mu4:
    """ε(ρ ⊠ r(a)) from ε(ρ) for a self-dual constituent ρ."""
    c = cat.constituent(cid)
    if not c.self_dual:
        raise NotSelfDual(f"{cid} is not self-dual")
    value = c.root_number ** a
    if c.is_unramified_character:
        frob = cat.frobenius(cid)
        if frob is None:
            raise MissingFrobenius(f"{cid} has no Frobenius value")
        value = value * Mu4.sign(-frob) ** (a - 1)
    return value


def _root(cat: Catalog, cid: str) -> Mu4:
    c = cat.constituent(cid)
    if not c.self_dual:
        raise NotSelfDual(f"{cid} is not self-dual")
    return c.root_number


def _det(cat: Catalog, cid: str) -> Mu4:
    return Mu4.sign(cat.constituent(cid).det_at_minus_one)


def epsilon_minus_part_mu4(psi, s) -> Mu4:
    cat = psi.catalog
    factors = []
    for k, _, m2 in s.parts:
        c, b, _shift = k
        if psi.bucket(k) == JPAIR:
            factors.append(_det(cat, c) ** (b * m2))
        else:
            factors.append(_root(cat, c) ** (b * m2))
    return product(factors)


def epsilon_minus_part(psi, s) -> int:
    """ε(ψ^{s=-1}) by the closed product over I⁺ ⊔ I⁻ and J."""
    return epsilon_minus_part_mu4(psi, s).to_sign(f"ε(ψ^(s=-1)) for {psi}")


def minus_part_l_terms(psi, s) -> Counter:
    """The L-parameter φ_ψ^{s=-1} as a multiset of (constituent, shift)."""
    terms = Counter()
    for k, _, m2 in s.parts:
        if not m2:
            continue
        keys = [k]
        if psi.bucket(k) == JPAIR:
            keys.append(psi.dual_key(k))
        for c, b, shift in keys:
            for h in range(b):
                terms[(c, shift + Fraction(b - 1, 2) - h)] += m2
    return terms


def epsilon_of_l_terms(cat: Catalog, terms: Counter) -> Mu4:
    """ε of a self-dual L-parameter given as a multiset of shifted constituents.

    Each term is matched with its dual (φ∨, -k); matched pairs contribute
    det φ(-1), unmatched self-dual middle terms contribute ε(φ).
    """
    value = ONE
    seen = set()
    for (c, k), m in sorted(terms.items()):
        if (c, k) in seen:
            continue
        con = cat.constituent(c)
        if con.self_dual and k == 0:
            value = value * con.root_number ** m
            seen.add((c, k))
            continue
        partner = (con.dual, -k)
        if terms.get(partner, 0) != m:
            raise NotSelfDual(f"term {c}|·|^{k} is unmatched in a self-dual parameter")
        value = value * _det(cat, c) ** m
        seen.add((c, k))
        seen.add(partner)
    return value


def epsilon_phi_psi_minus_part(psi, s) -> int:
    """ε(φ_ψ^{s=-1}), computed on the L-parameter side."""
    return epsilon_of_l_terms(psi.catalog, minus_part_l_terms(psi, s)).to_sign(f"ε(φ_ψ^(s=-1)) for {psi}")


@dataclass(frozen=True)
class SignCharacter:
    basis: tuple
    bits: tuple

    def __call__(self, x) -> int:
        return f2.pairing(self.bits, x)

    def __mul__(self, other: "SignCharacter") -> "SignCharacter":
        if self.basis != other.basis:
            raise ValueError("characters live on different bases")
        return SignCharacter(self.basis, f2.add(self.bits, other.bits))

    @property
    def is_trivial(self) -> bool:
        return not any(self.bits)

    def __str__(self) -> str:
        return f2.to_str(self.bits) if self.bits else "()"

    @classmethod
    def trivial(cls, basis) -> "SignCharacter":
        return cls(tuple(basis), f2.zero(len(basis)))


def _bit(sign: int) -> int:
    return 0 if sign == 1 else 1


def nu_character(psi) -> SignCharacter:
    """ν_ψ with components ε(φ_i)^{b_i} on I⁺."""
    cat = psi.catalog
    bits = tuple(_bit((_root(cat, c) ** b).to_sign(f"ν at {c}")) for c, b, _ in psi.iplus)
    return SignCharacter(psi.iplus, bits)


def descent_correction(psi, s) -> Mu4:
    """c(s) = ∏_{I⁻} det^{b m″/2} ∏_J det^{b m″}; ε(ψ^{s=-1})·c(s) depends only on the image of s."""
    cat = psi.catalog
    factors = []
    for k, _, m2 in s.parts:
        c, b, _ = k
        bucket = psi.bucket(k)
        if bucket == IMINUS:
            factors.append(_det(cat, c) ** (b * m2 // 2))
        elif bucket == JPAIR:
            factors.append(_det(cat, c) ** (b * m2))
    return product(factors)


@dataclass
class DescentReport:
    parameter: str
    good_parity: bool
    splittings: int = 0
    violations: list = field(default_factory=list)
    raw_nonconstant_fibers: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_descent(psi) -> DescentReport:
    """Check that ε(ψ^{s=-1}) (corrected off I⁺) descends to ν_ψ on 𝒮_ψ."""
    nu = nu_character(psi)
    report = DescentReport(str(psi), psi.classify().good_parity)
    fibers = {}
    for s in enumerate_splittings(psi):
        report.splittings += 1
        x = splitting_image(psi, s)
        raw = epsilon_minus_part(psi, s)
        corrected = (Mu4.sign(raw) * descent_correction(psi, s)).to_sign("corrected ε")
        fibers.setdefault(x, []).append((s, raw))
        if corrected != nu(x):
            report.violations.append((str(s), f2.to_str(x), corrected, nu(x)))
        if report.good_parity and raw != corrected:
            report.violations.append((str(s), f2.to_str(x), raw, corrected))
    for x, items in sorted(fibers.items()):
        if len({raw for _, raw in items}) > 1:
            report.raw_nonconstant_fibers.append(f2.to_str(x))
    return report


def epsilon_restriction(psi) -> int:
    """ε(ψ|_{L_F})."""
    return epsilon_minus_part(psi, full_splitting(psi))


def central_sign(psi, chi) -> int:
    _, z = distinguished_elements(psi)
    return f2.pairing(chi, z) * epsilon_restriction(psi)


def delta_c_character(psi, c: str) -> SignCharacter:
    """δ_c for the quadratic character ζ attached to the square class c."""
    cat = psi.catalog
    zeta = cat.character(c)
    bits = []
    for cid, b, _ in psi.iplus:
        if b % 2 == 0:
            bits.append(0)
            continue
        con = cat.constituent(cid)
        twisted = twist_constituent(cat, cid, c)
        value = Mu4.sign(zeta.value_at_minus_one) ** (con.total_dim // 2) * con.root_number / _root(cat, twisted)
        bits.append(_bit(value.to_sign(f"δ_c at {cid}")))
    return SignCharacter(psi.iplus, tuple(bits))


def transport(chi: SignCharacter, keymap: dict, basis) -> SignCharacter:
    """Move a character along a summand correspondence onto a new basis."""
    values = {keymap[k]: b for k, b in zip(chi.basis, chi.bits)}
    return SignCharacter(tuple(basis), tuple(values[k] for k in basis))


def nu_hat_character(psi) -> SignCharacter:
    """ν_{ψ̂} pulled back to the basis of 𝒮_ψ."""
    hat, keymap = dual_with_map(psi)
    inverse = {v: k for k, v in keymap.items()}
    nu = nu_character(hat)
    return transport(nu, inverse, psi.iplus)


def xu_character_anti_tempered(psi) -> SignCharacter:
    """μ_ψ on the anti-tempered good-parity shapes where the values are known.

    Covered: every Jordan triple (ρ, 1, b) with b even, and the shape
    ρ0 ⊠ r(1) ⊕ ζ ⊠ r(2) with ρ0 two-dimensional symplectic.
    """
    cls = psi.classify()
    if not (cls.anti_tempered and cls.good_parity):
        raise UnsupportedXuCase(f"μ_ψ needs an anti-tempered good-parity parameter: {psi}")
    trivial = SignCharacter.trivial(psi.iplus)
    odd = [s for s in psi.summands if s.b % 2]
    if not odd:
        return trivial
    cat = psi.catalog
    if len(psi.summands) == 2 and len(odd) == 1:
        rho, other = odd[0], next(s for s in psi.summands if s.b % 2 == 0)
        r, z = cat.constituent(rho.constituent), cat.constituent(other.constituent)
        if (
            rho.b == 1
            and rho.mult == 1
            and r.dim == 2
            and r.duality == SYMPLECTIC
            and other.b == 2
            and other.mult == 1
            and z.dim == 1
            and z.duality == ORTHOGONAL
        ):
            return trivial
    raise UnsupportedXuCase(f"no implemented rule covers {psi}; supply μ_ψ explicitly")


def mu_tilde(psi, mu: SignCharacter | None = None) -> SignCharacter:
    """μ̃ = μ ν_ψ ν_{ψ̂} on the basis of 𝒮_ψ."""
    if mu is None:
        mu = xu_character_anti_tempered(psi)
    return mu * nu_character(psi) * nu_hat_character(psi)


def arthur_sign_character(psi, rs: Catalog | None = None) -> SignCharacter:
    """ε^Art for a discrete parameter (local or global).

    Bit at i counts the j ≠ i with φ_i × φ_j symplectic, min(b_i, b_j) odd and
    ε(1/2, φ_i × φ_j) = -1.
    """
    rs = rs if rs is not None else psi.catalog
    basis = psi.iplus
    bits = []
    for ci, bi, _ in basis:
        count = 0
        ti = psi._atom_duality(ci)
        for cj, bj, _ in basis:
            if (cj, bj) == (ci, bi):
                continue
            tj = psi._atom_duality(cj)
            if (ti == SYMPLECTIC) == (tj == SYMPLECTIC):
                continue
            if min(bi, bj) % 2 == 0:
                continue
            if rs.rs_sign(ci, cj) == -1:
                count += 1
        bits.append(count % 2)
    return SignCharacter(basis, tuple(bits))

