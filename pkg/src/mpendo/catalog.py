"""Arithmetic input data: quadratic characters, local constituents, twist and
Rankin-Selberg tables, global cuspidal entries and places."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema

from .errors import (
    ConsistencyError,
    DanglingReference,
    MissingRSEntry,
    MissingTwist,
    SchemaError,
)
from .mu4 import ONE, Mu4

SYMPLECTIC = "symplectic"
ORTHOGONAL = "orthogonal"
NON_SELF_DUAL = "non_self_dual"


@dataclass(frozen=True)
class QuadraticCharacter:
    id: str
    value_at_minus_one: int
    is_trivial: bool = False
    is_unramified: bool = False
    frobenius_value: Optional[int] = None
    square_class_values: tuple = ()  # sorted (token, sign) pairs

    def square_class_value(self, token: str) -> Optional[int]:
        return dict(self.square_class_values).get(token)


@dataclass(frozen=True)
class Constituent:
    id: str
    dim: int
    duality: str
    det_at_minus_one: int
    sl2_dim: int = 1
    dual_id: Optional[str] = None
    root_number: Optional[Mu4] = None
    is_unramified_character: bool = False
    frobenius_value: Optional[int] = None
    det_character: Optional[str] = None
    bounded: bool = True

    @property
    def self_dual(self) -> bool:
        return self.duality != NON_SELF_DUAL

    @property
    def total_dim(self) -> int:
        """Dimension as a representation of L_F."""
        return self.dim * self.sl2_dim

    @property
    def dual(self) -> str:
        return self.id if self.self_dual else self.dual_id


@dataclass(frozen=True, order=True)
class LocalTerm:
    constituent: str
    shift: Fraction = Fraction(0)
    mult: int = 1


@dataclass(frozen=True)
class GlobalCuspidal:
    id: str
    dim: int
    duality: str
    dual_id: Optional[str] = None
    global_root_number: Optional[int] = None
    localizations: tuple = ()  # sorted (place, tuple[LocalTerm]) pairs
    local_root_numbers: tuple = ()  # sorted (place, Mu4) pairs

    @property
    def self_dual(self) -> bool:
        return self.duality != NON_SELF_DUAL

    @property
    def dual(self) -> str:
        return self.id if self.self_dual else self.dual_id

    def localization(self, place: str):
        return dict(self.localizations).get(place)


@dataclass(frozen=True)
class Place:
    id: str
    unramified: bool = False
    archimedean: bool = False
    catalog: Optional["Catalog"] = None


@dataclass(frozen=True)
class Violation:
    entity: str
    invariant: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.entity}: {self.invariant}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True, eq=True)
class Catalog:
    quadratic_characters: dict = field(default_factory=dict)
    constituents: dict = field(default_factory=dict)
    twists: dict = field(default_factory=dict)  # (constituent, character) -> constituent
    rankin_selberg: dict = field(default_factory=dict)  # (id, id) -> sign, as declared
    sl2_swaps: dict = field(default_factory=dict)  # (core, sl2_dim) -> constituent
    global_cuspidals: dict = field(default_factory=dict)
    places: dict = field(default_factory=dict)
    archimedean: bool = False

    def __hash__(self):
        return hash(dumps(self))

    # lookups

    def constituent(self, cid: str) -> Constituent:
        try:
            return self.constituents[cid]
        except KeyError:
            raise DanglingReference(f"unknown constituent {cid!r}") from None

    def character(self, qid: str) -> QuadraticCharacter:
        try:
            return self.quadratic_characters[qid]
        except KeyError:
            raise DanglingReference(f"unknown quadratic character {qid!r}") from None

    def cuspidal(self, gid: str) -> GlobalCuspidal:
        try:
            return self.global_cuspidals[gid]
        except KeyError:
            raise DanglingReference(f"unknown global cuspidal {gid!r}") from None

    def place(self, pid: str) -> Place:
        try:
            return self.places[pid]
        except KeyError:
            raise DanglingReference(f"unknown place {pid!r}") from None

    def rs_sign(self, a: str, b: str) -> int:
        if (a, b) in self.rankin_selberg:
            return self.rankin_selberg[(a, b)]
        if (b, a) in self.rankin_selberg:
            return self.rankin_selberg[(b, a)]
        raise MissingRSEntry(f"no Rankin-Selberg sign for {{{a}, {b}}}")

    def frobenius(self, cid: str) -> Optional[int]:
        c = self.constituent(cid)
        if c.frobenius_value is not None:
            return c.frobenius_value
        if c.det_character is not None:
            return self.character(c.det_character).frobenius_value
        return None

    def swap_target(self, core: str, b: int) -> Optional[str]:
        if b == 1:
            return core
        return self.sl2_swaps.get((core, b))

    def swap_core(self, cid: str) -> Optional[tuple]:
        """Return (core, a) when cid is declared as core ⊠ r(a)."""
        c = self.constituent(cid)
        if c.sl2_dim == 1:
            return cid, 1
        for (core, a), target in self.sl2_swaps.items():
            if target == cid:
                return core, a
        return None

    def constituent_for_character(self, qid: str) -> str:
        """The one-dimensional constituent attached to a quadratic character."""
        self.character(qid)
        for c in sorted(self.constituents.values(), key=lambda c: c.id):
            if c.dim == 1 and c.sl2_dim == 1 and c.duality == ORTHOGONAL and c.det_character == qid:
                return c.id
        raise DanglingReference(f"no constituent realizes quadratic character {qid!r}")


def twist_constituent(cat: Catalog, cid: str, zeta: str) -> str:
    """Return the id of cid twisted by the quadratic character zeta."""
    cat.constituent(cid)
    q = cat.character(zeta)
    if q.is_trivial:
        return cid
    try:
        return cat.twists[(cid, zeta)]
    except KeyError:
        raise MissingTwist(f"twist of {cid!r} by {zeta!r} is not declared") from None


# loading


def _schema() -> dict:
    text = resources.files("mpendo").joinpath("data/catalog.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


_VALIDATOR = None


def _validator():
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(_schema())
    return _VALIDATOR


def _parse_shift(s: str) -> Fraction:
    f = Fraction(s)
    if f.denominator not in (1, 2):
        raise SchemaError(f"shift {s!r} is not a half-integer")
    return f


def _unique(items, kind):
    out = {}
    for item in items:
        if item["id"] in out:
            raise SchemaError(f"duplicate {kind} id {item['id']!r}")
        out[item["id"]] = item
    return out


def _build_local(doc: dict, archimedean: bool, check_rs: bool = True) -> Catalog:
    chars = {}
    for qid, q in _unique(doc.get("quadratic_characters", []), "quadratic character").items():
        chars[qid] = QuadraticCharacter(
            id=qid,
            value_at_minus_one=q["value_at_minus_one"],
            is_trivial=q["is_trivial"],
            is_unramified=q["is_unramified"],
            frobenius_value=q.get("frobenius_value"),
            square_class_values=tuple(sorted(q.get("square_class_values", {}).items())),
        )
    cons = {}
    for cid, c in _unique(doc.get("constituents", []), "constituent").items():
        root = c.get("root_number")
        cons[cid] = Constituent(
            id=cid,
            dim=c["dim"],
            sl2_dim=c.get("sl2_dim", 1),
            duality=c["duality"],
            dual_id=c.get("dual_id"),
            det_at_minus_one=c["det_at_minus_one"],
            root_number=None if root is None else Mu4.parse(root),
            is_unramified_character=c.get("is_unramified_character", False),
            frobenius_value=c.get("frobenius_value"),
            det_character=c.get("det_character"),
            bounded=c.get("bounded", True),
        )
    twists = {}
    for t in doc.get("twists", []):
        key = (t["constituent"], t["character"])
        if key in twists and twists[key] != t["result"]:
            raise SchemaError(f"conflicting twist entries for {key}")
        twists[key] = t["result"]
    rs = {}
    for e in doc.get("rankin_selberg", []):
        a, b = e["pair"]
        if (a, b) in rs and rs[(a, b)] != e["sign"]:
            raise SchemaError(f"conflicting Rankin-Selberg entries for {(a, b)}")
        rs[(a, b)] = e["sign"]
    swaps = {}
    for s in doc.get("sl2_swaps", []):
        key = (s["core"], s["sl2_dim"])
        if key in swaps and swaps[key] != s["constituent"]:
            raise SchemaError(f"conflicting swap entries for {key}")
        swaps[key] = s["constituent"]
    cat = Catalog(
        quadratic_characters=chars,
        constituents=cons,
        twists=twists,
        rankin_selberg=rs,
        sl2_swaps=swaps,
        archimedean=archimedean,
    )
    cat = _normalize_unramified(cat)
    _check_local_entities(cat)
    _check_local_references(cat, check_rs)
    return cat


def _normalize_unramified(cat: Catalog) -> Catalog:
    # unramified characters of conductor o_F have root number +1
    cons = dict(cat.constituents)
    for cid, c in cat.constituents.items():
        if c.is_unramified_character and c.self_dual:
            if c.root_number is None:
                cons[cid] = Constituent(**{**c.__dict__, "root_number": ONE})
            elif c.root_number != ONE:
                raise ConsistencyError(f"constituent {cid}", "unramified character has root number 1", str(c.root_number))
    return Catalog(**{**cat.__dict__, "constituents": cons})


def _check_local_entities(cat: Catalog) -> None:
    for q in cat.quadratic_characters.values():
        ent = f"quadratic character {q.id}"
        if q.is_trivial:
            if q.value_at_minus_one != 1:
                raise ConsistencyError(ent, "trivial character has value +1 at -1")
            if q.frobenius_value not in (None, 1):
                raise ConsistencyError(ent, "trivial character has Frobenius value +1")
            if any(v != 1 for _, v in q.square_class_values):
                raise ConsistencyError(ent, "trivial character is +1 on all square classes")
        mo = q.square_class_value("minus_one")
        if mo is not None and mo != q.value_at_minus_one:
            raise ConsistencyError(ent, "square class minus_one agrees with value_at_minus_one")
        if q.is_unramified and q.frobenius_value is None:
            raise ConsistencyError(ent, "unramified character declares frobenius_value")
    for c in cat.constituents.values():
        ent = f"constituent {c.id}"
        if cat.archimedean and c.sl2_dim != 1:
            raise ConsistencyError(ent, "archimedean catalogs have sl2_dim = 1")
        if c.self_dual:
            if c.dual_id not in (None, c.id):
                raise ConsistencyError(ent, "self-dual constituent is its own dual", c.dual_id)
            if c.root_number is None:
                raise ConsistencyError(ent, "self-dual constituent carries a root number")
            if c.root_number ** 2 != Mu4.sign(c.det_at_minus_one):
                raise ConsistencyError(
                    ent, "root_number² = det_at_minus_one", f"{c.root_number}² vs {c.det_at_minus_one}"
                )
        else:
            if c.dual_id is None:
                raise ConsistencyError(ent, "non-self-dual constituent names its dual")
            if c.dual_id == c.id:
                raise ConsistencyError(ent, "non-self-dual constituent differs from its dual")
        if c.duality == SYMPLECTIC:
            if c.det_at_minus_one != 1:
                raise ConsistencyError(ent, "symplectic ⇒ det_at_minus_one = +1")
            if not c.root_number.is_real:
                raise ConsistencyError(ent, "symplectic ⇒ root number is ±1")
            if c.total_dim % 2:
                raise ConsistencyError(ent, "symplectic ⇒ dim·sl2_dim even")
        if c.duality == ORTHOGONAL and c.det_character is None:
            raise ConsistencyError(ent, "orthogonal ⇒ det_character declared")
        if c.is_unramified_character:
            if c.dim != 1 or c.sl2_dim != 1:
                raise ConsistencyError(ent, "unramified character has dim = sl2_dim = 1")
            if not c.self_dual:
                raise ConsistencyError(ent, "unramified characters are quadratic (Frobenius ±1)")
            if c.duality != ORTHOGONAL:
                raise ConsistencyError(ent, "unramified self-dual character is orthogonal")


def _check_local_references(cat: Catalog, check_rs: bool = True) -> None:
    for c in cat.constituents.values():
        if not c.self_dual and c.dual_id not in cat.constituents:
            raise DanglingReference(f"constituent {c.id}: unknown dual {c.dual_id!r}")
        if c.det_character is not None:
            q = cat.character(c.det_character)
            if q.value_at_minus_one != c.det_at_minus_one:
                raise ConsistencyError(
                    f"constituent {c.id}", "det_character agrees with det_at_minus_one"
                )
            if c.is_unramified_character and not q.is_unramified:
                raise ConsistencyError(f"constituent {c.id}", "unramified character has unramified det_character")
    for (cid, qid), res in cat.twists.items():
        cat.constituent(cid)
        cat.character(qid)
        cat.constituent(res)
    for a, b in cat.rankin_selberg if check_rs else ():
        for x in (a, b):
            if x not in cat.constituents and x not in cat.global_cuspidals:
                raise DanglingReference(f"Rankin-Selberg entry names unknown id {x!r}")
    for (core, _a), target in cat.sl2_swaps.items():
        cat.constituent(core)
        cat.constituent(target)


def _check_global(cat: Catalog) -> None:
    for g in cat.global_cuspidals.values():
        ent = f"global cuspidal {g.id}"
        if g.self_dual:
            if g.global_root_number is None:
                raise ConsistencyError(ent, "self-dual entry carries a global root number")
            if g.global_root_number ** 2 != 1:
                raise ConsistencyError(ent, "global_root_number² = 1")
        else:
            if g.dual_id is None or g.dual_id == g.id:
                raise ConsistencyError(ent, "non-self-dual entry names a distinct dual")
            if g.dual_id not in cat.global_cuspidals:
                raise DanglingReference(f"{ent}: unknown dual {g.dual_id!r}")
        for pid, terms in g.localizations:
            place = cat.place(pid)
            if place.catalog is None:
                raise ConsistencyError(ent, "localization place carries a local catalog", pid)
            local = place.catalog
            total = 0
            for t in terms:
                c = local.constituent(t.constituent)
                total += t.mult * c.total_dim
                if place.unramified and not c.is_unramified_character:
                    raise ConsistencyError(ent, "unramified place localizes to unramified characters", pid)
            if total != g.dim:
                raise ConsistencyError(ent, "localization dimension equals dim", f"{pid}: {total} vs {g.dim}")
            _check_localization_type(ent, pid, g, terms, local)
        for pid, _ in g.local_root_numbers:
            cat.place(pid)


def _check_localization_type(ent, pid, g, terms, local: Catalog) -> None:
    counts = {}
    for t in terms:
        counts[(t.constituent, t.shift)] = counts.get((t.constituent, t.shift), 0) + t.mult
    for (cid, shift), m in counts.items():
        c = local.constituent(cid)
        if c.self_dual and shift == 0:
            if g.self_dual and c.duality != g.duality and m % 2:
                raise ConsistencyError(
                    ent, "localization has the duality type of the entry", f"{pid}: {cid} has odd multiplicity"
                )
            continue
        if g.self_dual and counts.get((c.dual, -shift), 0) != m:
            raise ConsistencyError(ent, "localization is self-dual", f"{pid}: {cid} shift {shift} lacks its dual")


def _parse_terms(terms) -> tuple:
    merged = {}
    for t in terms:
        key = (t["constituent"], _parse_shift(t.get("shift", "0")))
        merged[key] = merged.get(key, 0) + t.get("mult", 1)
    return tuple(sorted(LocalTerm(c, s, m) for (c, s), m in merged.items()))


def _load_place_catalog(p: dict, base_dir: Optional[Path]) -> Optional[Catalog]:
    doc = p.get("catalog")
    if doc is None and "catalog_path" in p:
        path = Path(p["catalog_path"])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot read place catalog {path}: {exc}") from None
        local_keys = {"archimedean", "quadratic_characters", "constituents", "twists", "rankin_selberg", "sl2_swaps"}
        doc = {k: v for k, v in doc.items() if k in local_keys}
        _validate_schema(doc, "#/$defs/local_catalog")
    if doc is None:
        return None
    arch = doc.get("archimedean", p.get("archimedean", False))
    return _build_local(doc, arch)


def _validate_schema(doc, ref: Optional[str] = None) -> None:
    schema = _schema()
    if ref is not None:
        schema = {"$ref": ref, "$defs": schema["$defs"]}
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.path) or "<root>"
        raise SchemaError(f"schema violation at {where}: {e.message}")


def load_catalog(source, *, base_dir: Optional[Path] = None, strict: bool = True) -> Catalog:
    """Load and validate a catalog from a dict, JSON text or a path.

    With strict=False the cross constraints (twist and dual involutions, RS
    symmetry, swap data) are left for validate_cross_constraints to report.
    """
    if isinstance(source, Path):
        base_dir = base_dir or source.parent
        try:
            source = source.read_text(encoding="utf-8")
        except OSError as exc:
            raise SchemaError(str(exc)) from None
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(source, dict):
        raise SchemaError("catalog document must be an object")
    errors = sorted(_validator().iter_errors(source), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.path) or "<root>"
        raise SchemaError(f"schema violation at {where}: {e.message}")

    places = {}
    for pid, p in _unique(source["places"], "place").items():
        places[pid] = Place(
            id=pid,
            unramified=p.get("unramified", False),
            archimedean=p.get("archimedean", False),
            catalog=_load_place_catalog(p, base_dir),
        )
    cusps = {}
    for gid, g in _unique(source["global_cuspidals"], "global cuspidal").items():
        cusps[gid] = GlobalCuspidal(
            id=gid,
            dim=g["dim"],
            duality=g["duality"],
            dual_id=g.get("dual_id"),
            global_root_number=g.get("global_root_number"),
            localizations=tuple(sorted((pid, _parse_terms(ts)) for pid, ts in g["localizations"].items())),
            local_root_numbers=tuple(
                sorted((pid, Mu4.parse(v)) for pid, v in g.get("local_root_numbers", {}).items())
            ),
        )
    local = _build_local(source, source.get("archimedean", False), check_rs=False)
    cat = Catalog(**{**local.__dict__, "global_cuspidals": cusps, "places": places})
    _check_local_references(cat)
    _check_global(cat)
    if strict:
        report = validate_cross_constraints(cat)
        if report:
            v = report[0]
            raise ConsistencyError(v.entity, v.invariant, v.detail)
    return cat


def validate_cross_constraints(cat: Catalog) -> list:
    """Pairwise constraints; the empty list means consistent."""
    from .epsilon import epsilon_sl

    out = []
    for c in sorted(cat.constituents.values(), key=lambda c: c.id):
        if c.self_dual:
            continue
        d = cat.constituents.get(c.dual_id)
        if d is None:
            out.append(Violation(f"constituent {c.id}", "dual exists", c.dual_id))
            continue
        if d.self_dual or d.dual_id != c.id:
            out.append(Violation(f"constituent {c.id}", "dual pairing is an involution", d.id))
        if (d.dim, d.sl2_dim, d.det_at_minus_one, d.bounded) != (c.dim, c.sl2_dim, c.det_at_minus_one, c.bounded):
            out.append(Violation(f"constituent {c.id}", "dual pair has equal dim, sl2_dim, det(-1)", d.id))

    for (cid, qid), res in sorted(cat.twists.items()):
        c, r, q = cat.constituent(cid), cat.constituent(res), cat.character(qid)
        ent = f"twist ({cid}, {qid})"
        if (c.dim, c.sl2_dim) != (r.dim, r.sl2_dim):
            out.append(Violation(ent, "twisting preserves dim and sl2_dim", res))
        if c.self_dual != r.self_dual or (c.self_dual and c.duality != r.duality):
            out.append(Violation(ent, "twisting preserves the duality type", res))
        if q.is_trivial and res != cid:
            out.append(Violation(ent, "trivial twist is the identity", res))
        back = cat.twists.get((res, qid))
        if back is None and not q.is_trivial:
            out.append(Violation(ent, "twisting twice is the identity", f"({res}, {qid}) missing"))
        elif back is not None and back != cid:
            out.append(Violation(ent, "twisting twice is the identity", f"({res}, {qid}) -> {back}"))

    for (a, b), s in sorted(cat.rankin_selberg.items()):
        if a < b and (b, a) in cat.rankin_selberg and cat.rankin_selberg[(b, a)] != s:
            out.append(Violation(f"rankin_selberg {{{a}, {b}}}", "table is symmetric"))

    for (core, a), target in sorted(cat.sl2_swaps.items()):
        ent = f"sl2 swap ({core}, {a})"
        k, t = cat.constituent(core), cat.constituent(target)
        if k.sl2_dim != 1:
            out.append(Violation(ent, "swap core has sl2_dim 1"))
            continue
        if t.sl2_dim != a or t.dim != k.dim:
            out.append(Violation(ent, "swapped constituent has dim of core and sl2_dim a", target))
        if k.self_dual != t.self_dual:
            out.append(Violation(ent, "swap preserves self-duality", target))
            continue
        if k.self_dual:
            flipped = {SYMPLECTIC: ORTHOGONAL, ORTHOGONAL: SYMPLECTIC}[k.duality]
            expected = k.duality if a % 2 else flipped
            if t.duality != expected:
                out.append(Violation(ent, "duality type of core ⊠ r(a)", t.duality))
            elif t.root_number != epsilon_sl(cat, core, a):
                out.append(Violation(ent, "root number of core ⊠ r(a) follows the SL(2) rule", str(t.root_number)))
        if t.det_at_minus_one != k.det_at_minus_one ** a:
            out.append(Violation(ent, "det(-1) of core ⊠ r(a) is det(-1)^a", target))

    for g in sorted(cat.global_cuspidals.values(), key=lambda g: g.id):
        if g.self_dual:
            continue
        d = cat.global_cuspidals.get(g.dual_id)
        if d is None or d.self_dual or d.dual_id != g.id:
            out.append(Violation(f"global cuspidal {g.id}", "dual pairing is an involution"))
        elif d.dim != g.dim:
            out.append(Violation(f"global cuspidal {g.id}", "dual pair has equal dim"))

    for p in sorted(cat.places.values(), key=lambda p: p.id):
        if p.catalog is not None:
            out.extend(
                Violation(f"place {p.id} / {v.entity}", v.invariant, v.detail)
                for v in validate_cross_constraints(p.catalog)
            )
    return out


# serialization


def _local_document(cat: Catalog) -> dict:
    doc = {
        "quadratic_characters": [],
        "constituents": [],
        "twists": [],
        "rankin_selberg": [],
        "sl2_swaps": [],
    }
    if cat.archimedean:
        doc["archimedean"] = True
    for q in sorted(cat.quadratic_characters.values(), key=lambda q: q.id):
        e = {
            "id": q.id,
            "value_at_minus_one": q.value_at_minus_one,
            "is_trivial": q.is_trivial,
            "is_unramified": q.is_unramified,
        }
        if q.frobenius_value is not None:
            e["frobenius_value"] = q.frobenius_value
        if q.square_class_values:
            e["square_class_values"] = dict(q.square_class_values)
        doc["quadratic_characters"].append(e)
    for c in sorted(cat.constituents.values(), key=lambda c: c.id):
        e = {"id": c.id, "dim": c.dim, "sl2_dim": c.sl2_dim, "duality": c.duality, "det_at_minus_one": c.det_at_minus_one}
        if c.dual_id is not None:
            e["dual_id"] = c.dual_id
        if c.root_number is not None:
            e["root_number"] = str(c.root_number)
        if c.is_unramified_character:
            e["is_unramified_character"] = True
        if c.frobenius_value is not None:
            e["frobenius_value"] = c.frobenius_value
        if c.det_character is not None:
            e["det_character"] = c.det_character
        if not c.bounded:
            e["bounded"] = False
        doc["constituents"].append(e)
    for (cid, qid), res in sorted(cat.twists.items()):
        doc["twists"].append({"constituent": cid, "character": qid, "result": res})
    for (a, b), s in sorted(cat.rankin_selberg.items()):
        doc["rankin_selberg"].append({"pair": [a, b], "sign": s})
    for (core, a), res in sorted(cat.sl2_swaps.items()):
        doc["sl2_swaps"].append({"core": core, "sl2_dim": a, "constituent": res})
    return doc


def to_document(cat: Catalog) -> dict:
    """Canonical JSON-ready document (ordered by id)."""
    doc = _local_document(cat)
    doc["global_cuspidals"] = []
    for g in sorted(cat.global_cuspidals.values(), key=lambda g: g.id):
        e = {"id": g.id, "dim": g.dim, "duality": g.duality}
        if g.dual_id is not None:
            e["dual_id"] = g.dual_id
        if g.global_root_number is not None:
            e["global_root_number"] = g.global_root_number
        e["localizations"] = {
            pid: [{"constituent": t.constituent, "shift": str(t.shift), "mult": t.mult} for t in terms]
            for pid, terms in g.localizations
        }
        if g.local_root_numbers:
            e["local_root_numbers"] = {pid: str(v) for pid, v in g.local_root_numbers}
        doc["global_cuspidals"].append(e)
    doc["places"] = []
    for p in sorted(cat.places.values(), key=lambda p: p.id):
        e = {"id": p.id, "unramified": p.unramified, "archimedean": p.archimedean}
        if p.catalog is not None:
            e["catalog"] = _local_document(p.catalog)
        doc["places"].append(e)
    return doc


def dumps(cat: Catalog) -> str:
    return json.dumps(to_document(cat), indent=2, sort_keys=True, ensure_ascii=False)
