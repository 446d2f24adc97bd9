"""Built-in catalogs and random generators used by the casebook and tests."""

from __future__ import annotations

import copy
import random
from fractions import Fraction

from .catalog import load_catalog
from .mu4 import Mu4


def _char(qid, v, trivial=False, unram=False, frob=None):
    d = {"id": qid, "value_at_minus_one": v, "is_trivial": trivial, "is_unramified": unram}
    if frob is not None:
        d["frobenius_value"] = frob
    return d


def _con(cid, dim, duality, det, root=None, **kw):
    d = {"id": cid, "dim": dim, "duality": duality, "det_at_minus_one": det}
    if root is not None:
        d["root_number"] = root
    d.update(kw)
    return d


def f1_document() -> dict:
    """Fixture catalog F1."""
    return {
        "quadratic_characters": [
            _char("one", 1, trivial=True, unram=True, frob=1),
            _char("chi_a", 1),
            _char("chi_b", -1),
        ],
        "constituents": [
            _con("one", 1, "orthogonal", 1, "1", is_unramified_character=True, det_character="one"),
            _con("chi_a", 1, "orthogonal", 1, "-1", det_character="chi_a"),
            _con("chi_b", 1, "orthogonal", -1, "i", det_character="chi_b"),
            _con("rho2", 2, "symplectic", 1, "-1"),
            _con("tau2", 2, "orthogonal", -1, "i", det_character="chi_b"),
        ],
        "twists": [
            {"constituent": "one", "character": "chi_a", "result": "chi_a"},
            {"constituent": "chi_a", "character": "chi_a", "result": "one"},
            {"constituent": "one", "character": "chi_b", "result": "chi_b"},
            {"constituent": "chi_b", "character": "chi_b", "result": "one"},
        ],
        "rankin_selberg": [],
        "global_cuspidals": [],
        "places": [],
    }


def f1_extended_document() -> dict:
    """F1 plus a non-self-dual pair, more twists and SL(2) swap entries."""
    doc = f1_document()
    doc["quadratic_characters"].append(_char("chi_ab", -1))
    doc["constituents"] += [
        _con("chi_ab", 1, "orthogonal", -1, "-i", det_character="chi_ab"),
        _con("eta", 1, "non_self_dual", -1, dual_id="eta_dual"),
        _con("eta_dual", 1, "non_self_dual", -1, dual_id="eta"),
        _con("rho2a", 2, "symplectic", 1, "1"),
        _con("rho2b", 2, "symplectic", 1, "1"),
        _con("rho2ab", 2, "symplectic", 1, "-1"),
        # SL(2)-swapped constituents: core ⊠ r(a)
        _con("one_r2", 1, "symplectic", 1, "-1", sl2_dim=2),
        _con("chi_a_r2", 1, "symplectic", 1, "1", sl2_dim=2),
        _con("chi_b_r2", 1, "symplectic", 1, "-1", sl2_dim=2),
        _con("chi_ab_r2", 1, "symplectic", 1, "-1", sl2_dim=2),
        _con("chi_a_r4", 1, "symplectic", 1, "1", sl2_dim=4),
        _con("one_r4", 1, "symplectic", 1, "-1", sl2_dim=4),
        _con("tau2_r2", 2, "symplectic", 1, "-1", sl2_dim=2),
        _con("rho2_r2", 2, "orthogonal", 1, "1", sl2_dim=2, det_character="one"),
    ]
    # the quadratic characters form a Klein four group; twisting moves
    # within each family along the group law
    bits = {"one": (0, 0), "chi_a": (1, 0), "chi_b": (0, 1), "chi_ab": (1, 1)}
    names = {v: k for k, v in bits.items()}
    families = [
        {"one": "one", "chi_a": "chi_a", "chi_b": "chi_b", "chi_ab": "chi_ab"},
        {"one": "rho2", "chi_a": "rho2a", "chi_b": "rho2b", "chi_ab": "rho2ab"},
    ]
    twists = []
    for fam in families:
        for g, cid in fam.items():
            for q in ("chi_a", "chi_b", "chi_ab"):
                h = names[tuple((a + b) % 2 for a, b in zip(bits[g], bits[q]))]
                twists.append({"constituent": cid, "character": q, "result": fam[h]})
    doc["twists"] = sorted(twists, key=lambda t: (t["constituent"], t["character"]))
    doc["sl2_swaps"] = [
        {"core": "one", "sl2_dim": 2, "constituent": "one_r2"},
        {"core": "chi_a", "sl2_dim": 2, "constituent": "chi_a_r2"},
        {"core": "chi_b", "sl2_dim": 2, "constituent": "chi_b_r2"},
        {"core": "chi_ab", "sl2_dim": 2, "constituent": "chi_ab_r2"},
        {"core": "chi_a", "sl2_dim": 4, "constituent": "chi_a_r4"},
        {"core": "one", "sl2_dim": 4, "constituent": "one_r4"},
        {"core": "tau2", "sl2_dim": 2, "constituent": "tau2_r2"},
        {"core": "rho2", "sl2_dim": 2, "constituent": "rho2_r2"},
    ]
    return doc


def f1():
    return load_catalog(f1_document())


def f1_extended():
    return load_catalog(f1_extended_document())


def _local(doc):
    return {k: v for k, v in doc.items() if k not in ("global_cuspidals", "places")}


def principal_global_document() -> dict:
    """ζ̇ ramified at v1, v2 (as chi_a) and unramified at v3."""
    doc = f1_document()
    local = _local(f1_document())
    doc["places"] = [
        {"id": "v1", "catalog": copy.deepcopy(local)},
        {"id": "v2", "catalog": copy.deepcopy(local)},
        {"id": "v3", "unramified": True, "catalog": copy.deepcopy(local)},
    ]
    doc["global_cuspidals"] = [
        {
            "id": "zeta_dot",
            "dim": 1,
            "duality": "orthogonal",
            "global_root_number": 1,
            "localizations": {
                "v1": [{"constituent": "chi_a"}],
                "v2": [{"constituent": "chi_a"}],
                "v3": [{"constituent": "one"}],
            },
            "local_root_numbers": {"v1": "-1", "v2": "-1", "v3": "1"},
        }
    ]
    return doc


def saito_kurokawa_document(rs_sign: int = -1) -> dict:
    """φ̇ ⊠ r(1) ⊕ χ̇ ⊠ r(2) data at two ramified places and one unramified place."""
    doc = f1_document()
    local = _local(f1_document())
    doc["places"] = [
        {"id": "v1", "catalog": copy.deepcopy(local)},
        {"id": "v2", "catalog": copy.deepcopy(local)},
        {"id": "v3", "unramified": True, "catalog": copy.deepcopy(local)},
    ]
    doc["global_cuspidals"] = [
        {
            "id": "phi_dot",
            "dim": 2,
            "duality": "symplectic",
            "global_root_number": 1,
            "localizations": {
                "v1": [{"constituent": "rho2"}],
                "v2": [{"constituent": "rho2"}],
                "v3": [{"constituent": "one", "mult": 2}],
            },
            "local_root_numbers": {"v1": "-1", "v2": "-1", "v3": "1"},
        },
        {
            "id": "chi_dot",
            "dim": 1,
            "duality": "orthogonal",
            "global_root_number": 1,
            "localizations": {
                "v1": [{"constituent": "chi_a"}],
                "v2": [{"constituent": "chi_a"}],
                "v3": [{"constituent": "one"}],
            },
            "local_root_numbers": {"v1": "-1", "v2": "-1", "v3": "1"},
        },
    ]
    doc["rankin_selberg"] = [{"pair": ["phi_dot", "chi_dot"], "sign": rs_sign}]
    return doc


def mp4_global_document(rs_sign: int = -1) -> dict:
    """Global entries covering every discrete Mp(4) shape."""
    cusps = [
        ("phi4", 4, "symplectic"),
        ("phi2a", 2, "symplectic"),
        ("phi2b", 2, "symplectic"),
        ("chi_x", 1, "orthogonal"),
        ("chi_y", 1, "orthogonal"),
        ("tau_dot", 2, "orthogonal"),
    ]
    doc = f1_document()
    doc["global_cuspidals"] = [
        {"id": g, "dim": d, "duality": t, "global_root_number": 1, "localizations": {}} for g, d, t in cusps
    ]
    rs = []
    for g, _, t in cusps:
        for h, _, u in cusps:
            if g < h and (t == "symplectic") != (u == "symplectic"):
                rs.append({"pair": [g, h], "sign": rs_sign})
    doc["rankin_selberg"] = rs
    return doc


MP4_PSI_STAR = (
    ("rho0 ⊠ r(1) ⊕ chi_a ⊠ r(2)", (("rho2", 1), ("chi_a", 2))),
    ("chi_a ⊠ r(2) ⊕ chi_b ⊠ r(2)", (("chi_a", 2), ("chi_b", 2))),
    ("rho ⊠ r(2)", (("tau2", 2),)),
    ("2 chi_a ⊠ r(2)", (("chi_a", 2, 2),)),
)


# random catalogs


def random_local_document(rng: random.Random, size: int = 5) -> dict:
    """A consistent random local catalog."""
    chars = [_char("one", 1, trivial=True, unram=True, frob=1), _char("um", 1, unram=True, frob=-1)]
    cons = [
        _con("one", 1, "orthogonal", 1, "1", is_unramified_character=True, det_character="one"),
        _con("um", 1, "orthogonal", 1, "1", is_unramified_character=True, det_character="um"),
    ]
    for i in range(size):
        kind = rng.choice(["qchar", "symp", "orth", "pair"])
        cid = f"c{i}"
        if kind == "qchar":
            v = rng.choice([1, -1])
            chars.append(_char(f"q{i}", v))
            root = rng.choice(["1", "-1"] if v == 1 else ["i", "-i"])
            cons.append(_con(cid, 1, "orthogonal", v, root, det_character=f"q{i}"))
        elif kind == "symp":
            cons.append(_con(cid, rng.choice([2, 4]), "symplectic", 1, rng.choice(["1", "-1"])))
        elif kind == "orth":
            v = rng.choice([1, -1])
            chars.append(_char(f"q{i}", v))
            root = rng.choice(["1", "-1"] if v == 1 else ["i", "-i"])
            cons.append(_con(cid, rng.choice([2, 3]), "orthogonal", v, root, det_character=f"q{i}"))
        else:
            v = rng.choice([1, -1])
            d = rng.choice([1, 2])
            cons.append(_con(cid, d, "non_self_dual", v, dual_id=f"{cid}v"))
            cons.append(_con(f"{cid}v", d, "non_self_dual", v, dual_id=cid))
    return {
        "quadratic_characters": chars,
        "constituents": cons,
        "twists": [],
        "rankin_selberg": [],
        "global_cuspidals": [],
        "places": [],
    }


def random_local_catalog(rng: random.Random, size: int = 5):
    return load_catalog(random_local_document(rng, size))


_RAMIFIED_LOCAL = {
    "quadratic_characters": [
        _char("one", 1, trivial=True, unram=True, frob=1),
        _char("um", 1, unram=True, frob=-1),
        _char("qp", 1),
        _char("qm", -1),
    ],
    "constituents": [
        _con("one", 1, "orthogonal", 1, "1", is_unramified_character=True, det_character="one"),
        _con("um", 1, "orthogonal", 1, "1", is_unramified_character=True, det_character="um"),
        _con("qp", 1, "orthogonal", 1, None, det_character="qp"),
        _con("qm", 1, "orthogonal", -1, None, det_character="qm"),
        _con("rs", 2, "symplectic", 1, None),
        _con("to", 2, "orthogonal", -1, None, det_character="qm"),
        _con("eta", 1, "non_self_dual", -1, dual_id="etav"),
        _con("etav", 1, "non_self_dual", -1, dual_id="eta"),
    ],
}


def _random_ramified_local(rng: random.Random) -> dict:
    doc = copy.deepcopy(_RAMIFIED_LOCAL)
    for c in doc["constituents"]:
        if c["duality"] == "non_self_dual" or c.get("is_unramified_character"):
            continue
        if c["det_at_minus_one"] == 1:
            c["root_number"] = rng.choice(["1", "-1"])
        else:
            c["root_number"] = rng.choice(["i", "-i"])
    return doc


def _unramified_local() -> dict:
    doc = copy.deepcopy(_RAMIFIED_LOCAL)
    doc["constituents"] = [c for c in doc["constituents"] if c.get("is_unramified_character")]
    doc["quadratic_characters"] = doc["quadratic_characters"][:2]
    return doc


_HALF = ["1/2", "-1/2"]

_LOCALIZATIONS = {
    ("symplectic", 2, False): [
        [("rs", "0", 1)],
        [("eta", "0", 1), ("etav", "0", 1)],
        [("qp", "0", 2)],
        [("qm", "0", 2)],
        [("one", "1/2", 1), ("one", "-1/2", 1)],
    ],
    ("orthogonal", 1, False): [[("qp", "0", 1)], [("qm", "0", 1)], [("one", "0", 1)]],
    ("orthogonal", 2, False): [
        [("to", "0", 1)],
        [("qp", "0", 1), ("qm", "0", 1)],
        [("eta", "0", 1), ("etav", "0", 1)],
    ],
    ("symplectic", 2, True): [[("one", "0", 2)], [("um", "0", 2)], [("one", "1/2", 1), ("one", "-1/2", 1)]],
    ("orthogonal", 1, True): [[("one", "0", 1)], [("um", "0", 1)]],
    ("orthogonal", 2, True): [[("one", "0", 1), ("um", "0", 1)], [("one", "0", 2)]],
}


def _local_epsilon(local_doc: dict, terms) -> Mu4:
    cons = {c["id"]: c for c in local_doc["constituents"]}
    counts = {}
    for cid, shift, m in terms:
        counts[(cid, Fraction(shift))] = counts.get((cid, Fraction(shift)), 0) + m
    value = Mu4()
    done = set()
    for (cid, k), m in sorted(counts.items()):
        if (cid, k) in done:
            continue
        c = cons[cid]
        if c["duality"] != "non_self_dual" and k == 0:
            value = value * Mu4.parse(c["root_number"]) ** m
            done.add((cid, k))
        else:
            dual = c.get("dual_id", cid)
            value = value * Mu4.sign(c["det_at_minus_one"]) ** m
            done |= {(cid, k), (dual, -k)}
    return value


def random_global_fixture(rng: random.Random, n_ramified: int = 2, n_cusps: int = 4):
    """(catalog document, global parameter literal, V) with consistent root data."""
    places = [f"p{i}" for i in range(n_ramified)]
    locals_ = {p: _random_ramified_local(rng) for p in places}
    locals_["u0"] = _unramified_local()
    shapes = [("symplectic", 2), ("orthogonal", 1), ("orthogonal", 2)]
    cusps = []
    for i in range(n_cusps):
        duality, dim = rng.choice(shapes)
        for _ in range(100):
            locs = {}
            roots = {}
            for p, ldoc in locals_.items():
                unram = p == "u0"
                terms = rng.choice(_LOCALIZATIONS[(duality, dim, unram)])
                locs[p] = [{"constituent": c, "shift": s, "mult": m} for c, s, m in terms]
                roots[p] = _local_epsilon(ldoc, terms)
            total = Mu4()
            for v in roots.values():
                total = total * v
            if total.is_real:
                break
        cusps.append(
            {
                "id": f"g{i}",
                "dim": dim,
                "duality": duality,
                "global_root_number": total.to_sign(),
                "localizations": locs,
                "local_root_numbers": {p: str(v) for p, v in roots.items()},
            }
        )
    doc = f1_document()
    doc["global_cuspidals"] = cusps
    doc["places"] = [{"id": p, "unramified": p == "u0", "catalog": d} for p, d in sorted(locals_.items())]
    # a discrete parameter: distinct (cuspidal, b) of symplectic type
    terms = []
    used = set()
    for g in cusps:
        if rng.random() < 0.8:
            choices = [1, 3] if g["duality"] == "symplectic" else [2, 4]
            b = rng.choice(choices)
            if (g["id"], b) not in used:
                used.add((g["id"], b))
                terms.append({"cuspidal": g["id"], "b": b})
    if not terms:
        g = cusps[0]
        terms.append({"cuspidal": g["id"], "b": 1 if g["duality"] == "symplectic" else 2})
    return doc, terms, tuple(places)


_NEGATE = {"1": "-1", "-1": "1", "i": "-i", "-i": "i"}


def corrupt_local_root(doc: dict, terms, rng: random.Random):
    """Negate one local root number that enters the parameter to an odd power.

    Returns the corrupted place, or None when no such root exists.
    """
    used = {t["cuspidal"] for t in terms}
    candidates = []
    places = {p["id"]: p for p in doc["places"]}
    for g in doc["global_cuspidals"]:
        if g["id"] not in used:
            continue
        for pid, loc in sorted(g["localizations"].items()):
            if places[pid].get("unramified"):
                continue
            cons = {c["id"]: c for c in places[pid]["catalog"]["constituents"]}
            for t in loc:
                c = cons[t["constituent"]]
                # an even power of a root number is blind to its sign
                odd = t.get("mult", 1) % 2 == 1
                if odd and c["duality"] != "non_self_dual" and Fraction(t.get("shift", "0")) == 0 and "root_number" in c:
                    if not c.get("is_unramified_character"):
                        candidates.append((pid, c["id"]))
    if not candidates:
        return None
    pid, cid = rng.choice(sorted(set(candidates)))
    for c in places[pid]["catalog"]["constituents"]:
        if c["id"] == cid:
            c["root_number"] = _NEGATE[c["root_number"]]
    return pid
