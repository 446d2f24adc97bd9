"""Centralizers, component groups over F2, splittings and endoscopic data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import f2
from .catalog import SYMPLECTIC
from .errors import UnboundedConstituent
from .parameters import IMINUS, IPLUS, JPAIR, associated_l_parameter

KIND = {IPLUS: "O", IMINUS: "Sp", JPAIR: "GL"}


@dataclass(frozen=True)
class CentralizerFactor:
    key: tuple
    kind: str
    size: int


@dataclass(frozen=True)
class ComponentGroup:
    basis: tuple  # I⁺ keys in canonical order

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 2 ** self.rank

    def elements(self):
        return f2.all_vectors(self.rank)

    def identity(self):
        return f2.zero(self.rank)

    def generator(self, key):
        return tuple(1 if k == key else 0 for k in self.basis)

    def __str__(self) -> str:
        return "1" if not self.basis else "μ₂" + ("" if self.rank == 1 else f"^{self.rank}")


def centralizer(psi) -> tuple:
    """S_ψ as a product of O(m), Sp(m), GL(m) factors."""
    out = []
    for k in psi.keys:
        bucket = psi.bucket(k)
        if bucket == JPAIR and k not in psi.jreps:
            continue
        out.append(CentralizerFactor(k, KIND[bucket], psi.mult(k)))
    return tuple(out)


def component_group(psi) -> ComponentGroup:
    return ComponentGroup(psi.iplus)


def distinguished_elements(psi):
    """(x_ψ, z) as bit vectors.

    s_ψ acts as -1 on the multiplicity space of an even-b summand, so its
    class in π0(O(m)) is det(-Id_m): x_ψ has bit 1 at even b with m odd.
    z is the image of -1, with bit m mod 2.
    """
    basis = psi.iplus
    x = tuple(1 if k[1] % 2 == 0 and psi.mult(k) % 2 else 0 for k in basis)
    z = tuple(psi.mult(k) % 2 for k in basis)
    return x, z


@dataclass(frozen=True)
class Splitting:
    """A class in S_{ψ,2}/conj: per key the eigenvalue multiplicities (m′, m″)."""

    parts: tuple  # (key, m1, m2) in canonical key order

    def minus(self, key) -> int:
        for k, _, m2 in self.parts:
            if k == key:
                return m2
        return 0

    def plus(self, key) -> int:
        for k, m1, _ in self.parts:
            if k == key:
                return m1
        return 0

    def as_dict(self) -> dict:
        return {k: (m1, m2) for k, m1, m2 in self.parts}

    def __str__(self) -> str:
        return " ".join(f"({m1},{m2})" for _, m1, m2 in self.parts) or "()"


def splitting_keys(psi) -> tuple:
    return tuple(k for k in psi.keys if psi.bucket(k) != JPAIR or k in psi.jreps)


def make_splitting(psi, minus: dict) -> Splitting:
    """Splitting from m″ per key; keys absent from minus get m″ = 0."""
    parts = []
    for k in splitting_keys(psi):
        m = psi.mult(k)
        m2 = minus.get(k, 0)
        if not 0 <= m2 <= m:
            raise ValueError(f"m'' out of range at {k}")
        if psi.bucket(k) == IMINUS and m2 % 2:
            raise ValueError(f"m'' must be even on orthogonal-type key {k}")
        parts.append((k, m - m2, m2))
    return Splitting(tuple(parts))


def trivial_splitting(psi) -> Splitting:
    return make_splitting(psi, {})


def full_splitting(psi) -> Splitting:
    return make_splitting(psi, {k: psi.mult(k) for k in splitting_keys(psi)})


def enumerate_splittings(psi) -> list:
    keys = splitting_keys(psi)
    ranges = []
    for k in keys:
        m = psi.mult(k)
        step = 2 if psi.bucket(k) == IMINUS else 1
        ranges.append(range(0, m + 1, step))
    return [Splitting(tuple((k, psi.mult(k) - m2, m2) for k, m2 in zip(keys, combo))) for combo in product(*ranges)]


def splitting_image(psi, s: Splitting):
    return tuple(s.minus(k) % 2 for k in psi.iplus)


@dataclass(frozen=True, order=True)
class EndoscopicDatum:
    n_prime: int
    n_dblprime: int

    @property
    def n(self) -> int:
        return self.n_prime + self.n_dblprime

    def __str__(self) -> str:
        return f"[{self.n_prime}, {self.n_dblprime}]"


def _part(psi, s: Splitting, side: int):
    mults = {}
    for k, m1, m2 in s.parts:
        m = m1 if side == 0 else m2
        mults[k] = m
        if psi.bucket(k) == JPAIR:
            mults[psi.dual_key(k)] = m
    return psi.sub(mults)


def splitting_to_endoscopic(psi, s: Splitting):
    """(n′, n″), ψ′ (the +1 eigenpart) and ψ″ (the -1 eigenpart)."""
    p1 = _part(psi, s, 0)
    p2 = _part(psi, s, 1)
    return EndoscopicDatum(p1.dim // 2, p2.dim // 2), p1, p2


def splitting_from_parts(psi, p1, p2) -> Splitting:
    """Inverse of splitting_to_endoscopic."""
    if p1 + p2 != psi:
        raise ValueError("parts do not merge to ψ")
    return make_splitting(psi, {k: p2.mult(k) for k in splitting_keys(psi)})


def iota_coefficient(e: EndoscopicDatum) -> Fraction:
    nonzero = sum(1 for v in (e.n_prime, e.n_dblprime) if v)
    return Fraction(1, 2 ** nonzero)


@dataclass(frozen=True)
class PhiComponentMap:
    """Linear map 𝒮_ψ -> 𝒮_{φ_ψ}; columns[i] is the image of generator i."""

    source: tuple
    target: tuple  # symplectic constituent ids of φ_ψ at shift 0
    columns: tuple

    def __call__(self, x):
        return f2.apply(self.columns, x, len(self.target))

    @property
    def is_surjective(self) -> bool:
        return f2.rank(list(self.columns)) == len(self.target)

    def pullback(self, chi):
        return f2.transpose_apply(self.columns, chi)


def component_map_to_phi(psi) -> PhiComponentMap:
    """The map 𝒮_ψ -> 𝒮_{φ_ψ}.

    Computed from the expansion of φ_ψ: one copy of φ_i ⊠ r(b_i) contributes
    to the O-factor of [φ_i] only through its shift-0 term, present iff b_i is
    odd, so the generator at i maps to the parity of that contribution.
    """
    if not psi.bounded:
        raise UnboundedConstituent(f"component map needs a bounded parameter: {psi}")
    cat = psi.catalog
    phi = associated_l_parameter(psi)
    target = tuple(
        c for c, shift, _ in phi.terms if shift == 0 and cat.constituent(c).duality == SYMPLECTIC
    )
    columns = []
    for c, b, _ in psi.iplus:
        middle = sum(1 for h in range(b) if Fraction(b - 1, 2) - h == 0)
        columns.append(tuple((middle % 2) if t == c else 0 for t in target))
    return PhiComponentMap(psi.iplus, target, tuple(columns))
