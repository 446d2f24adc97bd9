"""Local Arthur parameters as canonical multisets of summands φ ⊠ r(b)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .catalog import NON_SELF_DUAL, ORTHOGONAL, SYMPLECTIC, Catalog, twist_constituent
from .errors import ConsistencyError, UnboundedConstituent, UnsupportedSwap

IPLUS = "Iplus"
IMINUS = "Iminus"
JPAIR = "Jpair"

MAX_B = 64

ZERO = Fraction(0)


@dataclass(frozen=True, order=True)
class Summand:
    constituent: str
    b: int
    shift: Fraction = ZERO
    mult: int = 1

    @property
    def key(self) -> tuple:
        return (self.constituent, self.b, self.shift)

    def __str__(self) -> str:
        core = self.constituent
        if self.shift:
            core += f"|·|^{self.shift}"
        s = f"{core}⊠r({self.b})"
        return s if self.mult == 1 else f"{self.mult}({s})"


def _key_str(key) -> str:
    return str(Summand(key[0], key[1], key[2]))


def type_of(duality: str, b: int) -> str:
    """Bucket of a self-dual φ ⊠ r(b) from the duality of φ."""
    if duality == NON_SELF_DUAL:
        return JPAIR
    return IPLUS if (duality == SYMPLECTIC) != (b % 2 == 0) else IMINUS


@dataclass(frozen=True)
class Classification:
    buckets: tuple  # (key, bucket) in canonical order
    good_parity: bool
    discrete: bool
    anti_tempered: bool
    unramified: bool
    in_psi_star: bool

    def bucket(self, key) -> str:
        return dict(self.buckets)[key]


class _ParameterBase:
    """Shared multiset algebra; subclasses resolve atoms (local constituents or
    global cuspidal entries)."""

    kind = "parameter"

    def __init__(self, catalog: Catalog, summands: Iterable = ()):
        merged = Counter()
        for s in summands:
            if not isinstance(s, Summand):
                s = Summand(*s) if len(s) == 4 else Summand(s[0], s[1], ZERO, s[2])
            if s.mult < 1 or s.b < 1:
                raise ConsistencyError(self.kind, "b ≥ 1 and mult ≥ 1", str(s))
            if s.b > MAX_B:
                raise ConsistencyError(self.kind, f"b ≤ {MAX_B}", str(s))
            if s.shift.denominator not in (1, 2):
                raise ConsistencyError(self.kind, "shifts are half-integers", str(s))
            merged[s.key] += s.mult
        self.catalog = catalog
        self.summands = tuple(Summand(k[0], k[1], k[2], m) for k, m in sorted(merged.items()))
        for s in self.summands:
            self._atom(s.constituent)
        self._validate()

    # atom interface

    def _atom(self, aid):
        raise NotImplementedError

    def _atom_dim(self, aid) -> int:
        raise NotImplementedError

    def _atom_duality(self, aid) -> str:
        return self._atom(aid).duality

    def _atom_dual(self, aid) -> str:
        return self._atom(aid).dual

    # structure

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.summands == other.summands

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.summands))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __str__(self) -> str:
        return " ⊕ ".join(str(s) for s in self.summands) or "0"

    def __len__(self) -> int:
        return len(self.summands)

    @property
    def keys(self) -> tuple:
        return tuple(s.key for s in self.summands)

    def mult(self, key) -> int:
        for s in self.summands:
            if s.key == key:
                return s.mult
        return 0

    def summand(self, key) -> Summand:
        for s in self.summands:
            if s.key == key:
                return s
        raise KeyError(key)

    def dual_key(self, key) -> tuple:
        c, b, shift = key
        return (self._atom_dual(c), b, -shift)

    def bucket(self, key) -> str:
        c, b, shift = key
        if shift != 0:
            return JPAIR
        return type_of(self._atom_duality(c), b)

    @property
    def dim(self) -> int:
        return sum(s.mult * s.b * self._atom_dim(s.constituent) for s in self.summands)

    @property
    def n(self) -> int:
        return self.dim // 2

    @property
    def iplus(self) -> tuple:
        return tuple(k for k in self.keys if self.bucket(k) == IPLUS)

    @property
    def iminus(self) -> tuple:
        return tuple(k for k in self.keys if self.bucket(k) == IMINUS)

    @property
    def jreps(self) -> tuple:
        """Representatives of dual pairs: the smaller of the two keys."""
        return tuple(k for k in self.keys if self.bucket(k) == JPAIR and k < self.dual_key(k))

    def _validate(self) -> None:
        for s in self.summands:
            bucket = self.bucket(s.key)
            if bucket == IMINUS and s.mult % 2:
                raise ConsistencyError(self.kind, "orthogonal-type summands have even multiplicity", str(s))
            if bucket == JPAIR:
                dk = self.dual_key(s.key)
                if dk == s.key:
                    raise ConsistencyError(self.kind, "shifted self-dual summand pairs with its negative shift", str(s))
                if self.mult(dk) != s.mult:
                    raise ConsistencyError(
                        self.kind, "non-self-dual summands come with their dual", f"{s} needs {_key_str(dk)}"
                    )
        if self.dim % 2:
            raise ConsistencyError(self.kind, "total dimension is even", str(self.dim))

    def _combine(self, summands):
        return type(self)(self.catalog, summands)

    def __add__(self, other):
        if other.catalog is not self.catalog and other.catalog != self.catalog:
            raise ConsistencyError(self.kind, "summands share a catalog")
        return self._combine(self.summands + other.summands)

    def sub(self, mults: dict):
        """Sub-parameter with the given multiplicity per key (missing keys drop)."""
        return self._combine([Summand(*k, m) for k, m in mults.items() if m > 0])

    def classify(self) -> Classification:
        buckets = tuple((k, self.bucket(k)) for k in self.keys)
        good = all(b == IPLUS for _, b in buckets)
        discrete = good and all(s.mult == 1 for s in self.summands)
        return Classification(
            buckets=buckets,
            good_parity=good,
            discrete=discrete,
            anti_tempered=self._anti_tempered(),
            unramified=self._unramified(),
            in_psi_star=good and self._anti_tempered() and not self._has_unramified_character(),
        )

    def _anti_tempered(self) -> bool:
        return False

    def _unramified(self) -> bool:
        return False

    def _has_unramified_character(self) -> bool:
        return False


class ArthurParameter(_ParameterBase):
    """ψ = ⊕ m_i φ_i ⊠ r(b_i) over a local catalog.

    Summands may carry a half-integral shift (localizations in Ψ⁺); shifted
    summands are non-self-dual with dual (φ∨, b, -shift).
    """

    kind = "ArthurParameter"

    def _atom(self, aid):
        return self.catalog.constituent(aid)

    def _atom_dim(self, aid) -> int:
        return self.catalog.constituent(aid).total_dim

    @classmethod
    def of(cls, cat: Catalog, *terms) -> "ArthurParameter":
        """Build from (constituent, b) or (constituent, b, mult) tuples."""
        out = []
        for t in terms:
            if len(t) == 2:
                out.append(Summand(t[0], t[1]))
            elif len(t) == 3:
                out.append(Summand(t[0], t[1], ZERO, t[2]))
            else:
                out.append(Summand(*t))
        return cls(cat, out)

    @classmethod
    def from_literal(cls, cat: Catalog, items: list) -> "ArthurParameter":
        return cls(
            cat,
            [
                Summand(d["constituent"], int(d["b"]), Fraction(d.get("shift", "0")), int(d.get("mult", 1)))
                for d in items
            ],
        )

    def to_literal(self) -> list:
        out = []
        for s in self.summands:
            d = {"constituent": s.constituent, "b": s.b, "mult": s.mult}
            if s.shift:
                d["shift"] = str(s.shift)
            out.append(d)
        return out

    @property
    def bounded(self) -> bool:
        return all(s.shift == 0 and self.catalog.constituent(s.constituent).bounded for s in self.summands)

    def _anti_tempered(self) -> bool:
        return all(
            s.shift == 0 and self.catalog.constituent(s.constituent).sl2_dim == 1 and self.catalog.constituent(s.constituent).bounded
            for s in self.summands
        )

    def _unramified(self) -> bool:
        return all(self.catalog.constituent(s.constituent).is_unramified_character for s in self.summands)

    def _has_unramified_character(self) -> bool:
        return any(self.catalog.constituent(s.constituent).is_unramified_character for s in self.summands)


def classify(psi: ArthurParameter) -> Classification:
    return psi.classify()


@dataclass(frozen=True)
class LParameter:
    """Canonical multiset of (constituent, shift, mult)."""

    catalog: Catalog
    terms: tuple

    def __post_init__(self):
        merged = Counter()
        for c, shift, m in self.terms:
            merged[(c, Fraction(shift))] += m
        object.__setattr__(self, "terms", tuple((c, s, m) for (c, s), m in sorted(merged.items()) if m))

    def __eq__(self, other) -> bool:
        return isinstance(other, LParameter) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    @property
    def dim(self) -> int:
        return sum(m * self.catalog.constituent(c).total_dim for c, _, m in self.terms)

    def as_dict(self) -> dict:
        return {(c, s): m for c, s, m in self.terms}

    def __str__(self) -> str:
        parts = []
        for c, s, m in self.terms:
            t = c if s == 0 else f"{c}|·|^{s}"
            parts.append(t if m == 1 else f"{m}·{t}")
        return " ⊕ ".join(parts) or "0"


def restriction_to_LF(psi: ArthurParameter) -> LParameter:
    """ψ restricted to L_F: each φ_i appears m_i·b_i times."""
    return LParameter(psi.catalog, tuple((s.constituent, s.shift, s.mult * s.b) for s in psi.summands))


def associated_l_parameter(psi: ArthurParameter) -> LParameter:
    """φ_ψ = ⊕ m_i ⊕_h φ_i |·|^{(b_i - 1)/2 - h}."""
    if not psi.bounded:
        raise UnboundedConstituent(f"φ_ψ is only formed for bounded parameters: {psi}")
    terms = []
    for s in psi.summands:
        for h in range(s.b):
            terms.append((s.constituent, Fraction(s.b - 1, 2) - h, s.mult))
    return LParameter(psi.catalog, tuple(terms))


def dual_with_map(psi: ArthurParameter):
    """ψ̂ together with the summand correspondence key -> key of ψ̂."""
    cat = psi.catalog
    out = []
    keymap = {}
    for s in psi.summands:
        if s.shift != 0:
            raise UnsupportedSwap(f"cannot swap SL(2) factors of a shifted summand {s}")
        core = cat.swap_core(s.constituent)
        if core is None:
            raise UnsupportedSwap(f"{s.constituent} is not declared as core ⊠ r(a)")
        rho, a = core
        target = cat.swap_target(rho, s.b)
        if target is None:
            raise UnsupportedSwap(f"catalog lacks a constituent for {rho} ⊠ r({s.b})")
        new = Summand(target, a, ZERO, s.mult)
        keymap[s.key] = new.key
        out.append(new)
    hat = ArthurParameter(cat, out)
    return hat, keymap


def dual_parameter(psi: ArthurParameter) -> ArthurParameter:
    """Swap the two SL(2) factors."""
    return dual_with_map(psi)[0]


def good_parity_reduction(psi: ArthurParameter):
    """Split ψ into its good-parity part ψ0 and the GL part.

    The GL part is returned as a tuple of Summand: (m/2) ψ_i for I⁻ and m ψ_j
    for each J representative, so that dim ψ0 + 2 dim(GL part) = dim ψ.
    """
    psi0 = psi.sub({k: psi.mult(k) for k in psi.iplus})
    gl = [Summand(*k, psi.mult(k) // 2) for k in psi.iminus]
    gl += [Summand(*k, psi.mult(k)) for k in psi.jreps]
    return psi0, tuple(sorted(gl))


def gl_part_dim(cat: Catalog, gl) -> int:
    return sum(s.mult * s.b * cat.constituent(s.constituent).total_dim for s in gl)


def twist_parameter(psi: ArthurParameter, zeta: str):
    """ψζ and the summand correspondence key -> key of ψζ."""
    out = []
    keymap = {}
    for s in psi.summands:
        t = twist_constituent(psi.catalog, s.constituent, zeta)
        new = Summand(t, s.b, s.shift, s.mult)
        keymap[s.key] = new.key
        out.append(new)
    return ArthurParameter(psi.catalog, out), keymap


# enumeration


def _blocks(atoms, n: int, restriction: str, max_b: int):
    """Admissible building blocks: (summand keys, dimension, step, max count)."""
    blocks = []
    for aid, duality, dual, dim in atoms:
        for b in range(1, max_b + 1):
            d = dim * b
            if d > 2 * n:
                break
            bucket = type_of(duality, b)
            if bucket == IPLUS:
                blocks.append(((aid,), b, d, 1, 1 if restriction == "discrete" else None))
            elif restriction != "all":
                continue
            elif bucket == IMINUS:
                blocks.append(((aid,), b, 2 * d, 2, None))
            elif aid < dual:
                blocks.append(((aid, dual), b, 2 * d, 1, None))
    return blocks


def _enumerate_generic(atoms, n: int, restriction: str, max_b: Optional[int]):
    if restriction not in ("all", "good_parity", "discrete"):
        raise ValueError(f"unknown restriction {restriction!r}")
    max_b = min(max_b or 2 * n, MAX_B)
    blocks = _blocks(atoms, n, restriction, max_b)
    target = 2 * n
    results = []

    def rec(i, remaining, acc):
        if remaining == 0:
            results.append(tuple(acc))
            return
        if i == len(blocks):
            return
        ids, b, unit, step, cap = blocks[i]
        k = 0
        while k * unit <= remaining and (cap is None or k <= cap):
            if k:
                acc.extend((aid, b, k * step) for aid in ids)
            rec(i + 1, remaining - k * unit, acc)
            if k:
                del acc[len(acc) - len(ids):]
            k += 1

    rec(0, target, [])
    return results


def enumerate_parameters(cat: Catalog, n: int, restriction: str = "all", max_b: Optional[int] = None) -> list:
    """All parameters of dimension 2n over the bounded constituents of cat."""
    atoms = [
        (c.id, c.duality, c.dual, c.total_dim)
        for c in sorted(cat.constituents.values(), key=lambda c: c.id)
        if c.bounded
    ]
    found = {ArthurParameter.of(cat, *terms) for terms in _enumerate_generic(atoms, n, restriction, max_b)}
    return sorted(found, key=lambda p: p.summands)


def is_principal(psi: ArthurParameter) -> bool:
    """ζ ⊠ r(2n) with ζ a quadratic character."""
    if len(psi.summands) != 1:
        return False
    s = psi.summands[0]
    c = psi.catalog.constituent(s.constituent)
    return s.mult == 1 and s.shift == 0 and c.dim == 1 and c.sl2_dim == 1 and c.duality == ORTHOGONAL and s.b % 2 == 0


def is_tempered(psi: ArthurParameter) -> bool:
    return all(s.b == 1 and s.shift == 0 for s in psi.summands) and psi.bounded
