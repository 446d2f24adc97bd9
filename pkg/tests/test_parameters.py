from fractions import Fraction

import pytest

from mpendo.errors import ConsistencyError, UnboundedConstituent, UnsupportedSwap
from mpendo.parameters import (
    IMINUS,
    IPLUS,
    JPAIR,
    ArthurParameter,
    Summand,
    associated_l_parameter,
    dual_parameter,
    enumerate_parameters,
    gl_part_dim,
    good_parity_reduction,
    restriction_to_LF,
    twist_parameter,
)
from oracles import brute_parameters, parameter_as_set

HALF = Fraction(1, 2)


def P(cat, *terms):
    return ArthurParameter.of(cat, *terms)


def test_mp4_classification(f1):
    psi = P(f1, ("rho2", 1), ("chi_a", 2))
    cls = psi.classify()
    assert {b for _, b in cls.buckets} == {IPLUS}
    assert cls.good_parity and cls.discrete and cls.anti_tempered and cls.in_psi_star
    assert psi.n == 2


def test_symplectic_even_b_is_orthogonal_type(f1):
    psi = P(f1, ("rho2", 2, 2))
    assert psi.bucket(("rho2", 2, 0)) == IMINUS
    assert not psi.classify().good_parity


def test_principal_unramified_not_in_psi_star(f1):
    cls = P(f1, ("one", 4)).classify()
    assert cls.good_parity and cls.discrete and cls.anti_tempered and cls.unramified
    assert not cls.in_psi_star


def test_invariants_rejected(f1, ext):
    with pytest.raises(ConsistencyError, match="even multiplicity"):
        P(f1, ("chi_a", 1))
    with pytest.raises(ConsistencyError):
        P(ext, ("eta", 1), ("rho2", 1))
    with pytest.raises(ConsistencyError):
        P(ext, ("eta", 1, 1), ("eta_dual", 1, 2), ("rho2", 1))


def test_equal_keys_merge(f1):
    a = ArthurParameter(f1, [Summand("chi_a", 2), Summand("chi_a", 2)])
    assert a == P(f1, ("chi_a", 2, 2))
    assert a + P(f1, ("rho2", 1)) == P(f1, ("rho2", 1), ("chi_a", 2, 2))


def test_j_pair_bucket(ext):
    psi = P(ext, ("eta", 1), ("eta_dual", 1), ("rho2", 1))
    assert psi.bucket(("eta", 1, 0)) == JPAIR
    assert psi.jreps == (("eta", 1, Fraction(0)),)


def test_restriction_to_lf(f1):
    assert restriction_to_LF(P(f1, ("rho2", 1), ("chi_a", 2))).as_dict() == {("chi_a", 0): 2, ("rho2", 0): 1}
    assert restriction_to_LF(P(f1, ("one", 4))).as_dict() == {("one", 0): 4}
    assert restriction_to_LF(P(f1, ("chi_a", 2, 2))).as_dict() == {("chi_a", 0): 4}


def test_associated_l_parameter(f1):
    phi = associated_l_parameter(P(f1, ("one", 4)))
    assert phi.as_dict() == {("one", Fraction(k, 2)): 1 for k in (-3, -1, 1, 3)}
    phi = associated_l_parameter(P(f1, ("rho2", 1), ("chi_a", 2)))
    assert phi.as_dict() == {("rho2", 0): 1, ("chi_a", HALF): 1, ("chi_a", -HALF): 1}
    phi = associated_l_parameter(P(f1, ("chi_a", 2, 2)))
    assert phi.as_dict() == {("chi_a", HALF): 2, ("chi_a", -HALF): 2}
    assert phi.dim == 4


def test_unbounded_constituent_refused():
    from mpendo.catalog import load_catalog
    from mpendo import fixtures

    doc = fixtures.f1_document()
    doc["constituents"].append({"id": "cx", "dim": 2, "duality": "symplectic", "det_at_minus_one": 1, "root_number": "1", "bounded": False})
    cat = load_catalog(doc)
    with pytest.raises(UnboundedConstituent):
        associated_l_parameter(P(cat, ("cx", 1)))


def test_dual_parameter(ext):
    psi = P(ext, ("rho2", 1), ("chi_a", 2))
    hat = dual_parameter(psi)
    assert hat == P(ext, ("rho2", 1), ("chi_a_r2", 1))
    assert hat.classify().good_parity
    assert dual_parameter(hat) == psi
    tempered = P(ext, ("rho2", 1), ("rho2a", 1))
    assert dual_parameter(tempered) == tempered


def test_dual_parameter_needs_swap_entry(f1):
    with pytest.raises(UnsupportedSwap):
        dual_parameter(P(f1, ("chi_a", 2)))


def test_good_parity_reduction(f1, ext):
    psi = P(f1, ("rho2", 1), ("chi_a", 2))
    assert good_parity_reduction(psi) == (psi, ())
    psi = P(f1, ("rho2", 1), ("rho2", 2, 2))
    psi0, gl = good_parity_reduction(psi)
    assert psi0 == P(f1, ("rho2", 1))
    assert gl == (Summand("rho2", 2, Fraction(0), 1),)
    assert psi0.dim + 2 * gl_part_dim(f1, gl) == psi.dim
    psi = P(ext, ("rho2", 1), ("eta", 1), ("eta_dual", 1))
    _, gl = good_parity_reduction(psi)
    assert gl == (Summand("eta", 1),)


def test_twist_parameter(ext):
    psi = P(ext, ("rho2", 1), ("chi_a", 2))
    tw, keymap = twist_parameter(psi, "chi_a")
    assert tw == P(ext, ("rho2a", 1), ("one", 2))
    assert twist_parameter(tw, "chi_a")[0] == psi
    assert keymap[("rho2", 1, 0)] == ("rho2a", 1, 0)


def test_enumeration_small_catalog():
    from mpendo.catalog import load_catalog
    from mpendo import fixtures

    doc = fixtures.f1_document()
    doc["constituents"] = [c for c in doc["constituents"] if c["id"] in ("one", "chi_a", "rho2")]
    doc["twists"] = [t for t in doc["twists"] if "chi_b" not in (t["constituent"], t["character"], t["result"])]
    doc["quadratic_characters"] = [q for q in doc["quadratic_characters"] if q["id"] != "chi_b"]
    cat = load_catalog(doc)
    names = lambda r: sorted(str(p) for p in enumerate_parameters(cat, 1, r))
    assert names("good_parity") == ["chi_a⊠r(2)", "one⊠r(2)", "rho2⊠r(1)"]
    assert names("discrete") == names("good_parity")
    assert names("all") == sorted(names("good_parity") + ["2(chi_a⊠r(1))", "2(one⊠r(1))"])


# frozen from the brute-force enumeration oracle
F1_COUNTS = {
    "all": [7, 33, 126, 419, 1260, 3509],
    "good_parity": [4, 14, 40, 105, 252, 574],
    "discrete": [4, 10, 24, 51, 100, 190],
}


@pytest.mark.parametrize("restriction", sorted(F1_COUNTS))
def test_enumeration_matches_oracle(f1, restriction):
    for n in range(1, 5):
        got = {parameter_as_set(p) for p in enumerate_parameters(f1, n, restriction)}
        assert got == brute_parameters(f1, n, restriction)


@pytest.mark.parametrize("restriction", sorted(F1_COUNTS))
def test_enumeration_counts_frozen(f1, restriction):
    got = [len(enumerate_parameters(f1, n, restriction)) for n in range(1, 7)]
    assert got == F1_COUNTS[restriction]


def test_enumeration_sorted_and_unique(f1):
    ps = enumerate_parameters(f1, 3)
    assert len(set(ps)) == len(ps)
    assert [p.summands for p in ps] == sorted(p.summands for p in ps)


def test_literal_round_trip(ext):
    psi = P(ext, ("rho2", 1), ("eta", 3), ("eta_dual", 3), ("chi_b", 1, 2))
    assert ArthurParameter.from_literal(ext, psi.to_literal()) == psi
