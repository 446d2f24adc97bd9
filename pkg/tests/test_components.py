from fractions import Fraction

from mpendo.components import (
    EndoscopicDatum,
    centralizer,
    component_group,
    component_map_to_phi,
    distinguished_elements,
    enumerate_splittings,
    full_splitting,
    iota_coefficient,
    make_splitting,
    splitting_from_parts,
    splitting_image,
    splitting_keys,
    splitting_to_endoscopic,
    trivial_splitting,
)
from mpendo.parameters import ArthurParameter
from oracles import minus_one_class, s_psi_class


def P(cat, *terms):
    return ArthurParameter.of(cat, *terms)


def kinds(psi):
    return [(f.kind, f.size) for f in centralizer(psi)]


def test_centralizers(f1, ext):
    assert kinds(P(f1, ("rho2", 1), ("chi_a", 2))) == [("O", 1), ("O", 1)]
    assert kinds(P(f1, ("chi_a", 2, 2))) == [("O", 2)]
    psi = P(ext, ("rho2", 2, 2), ("eta", 1), ("eta_dual", 1))
    assert kinds(psi) == [("GL", 1), ("Sp", 2)]
    assert component_group(psi).order == 1


def test_component_group_rank(f1):
    g = component_group(P(f1, ("rho2", 1), ("chi_a", 2)))
    assert g.rank == 2 and g.order == 4 and str(g) == "μ₂^2"
    assert g.basis == (("chi_a", 2, 0), ("rho2", 1, 0))


def test_distinguished_elements(f1):
    # canonical basis order is (chi_a⊠r(2), rho2⊠r(1))
    assert distinguished_elements(P(f1, ("rho2", 1), ("chi_a", 2))) == ((1, 0), (1, 1))
    assert distinguished_elements(P(f1, ("one", 4))) == ((1,), (1,))
    # s_ψ is -Id on the O(2) factor, a class of determinant +1
    assert distinguished_elements(P(f1, ("chi_a", 2, 2))) == ((0,), (0,))


def test_distinguished_elements_match_determinants(f1):
    from mpendo.parameters import enumerate_parameters

    for n in range(1, 5):
        for psi in enumerate_parameters(f1, n):
            x, z = distinguished_elements(psi)
            assert x == s_psi_class(psi)
            assert z == minus_one_class(psi)


def test_x_psi_is_image_of_s_psi_splitting(f1):
    from mpendo.parameters import enumerate_parameters

    for psi in enumerate_parameters(f1, 4):
        s = make_splitting(psi, {k: psi.mult(k) for k in splitting_keys(psi) if k[1] % 2 == 0})
        assert splitting_image(psi, s) == distinguished_elements(psi)[0]


def test_splittings_o2(f1):
    psi = P(f1, ("chi_a", 2, 2))
    ss = enumerate_splittings(psi)
    assert [(s.plus(("chi_a", 2, 0)), s.minus(("chi_a", 2, 0))) for s in ss] == [(2, 0), (1, 1), (0, 2)]
    assert [splitting_image(psi, s) for s in ss] == [(0,), (1,), (0,)]


def test_splittings_bijective_mp4(f1):
    psi = P(f1, ("rho2", 1), ("chi_a", 2))
    images = sorted(splitting_image(psi, s) for s in enumerate_splittings(psi))
    assert images == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_splittings_even_on_orthogonal_type(f1):
    psi = P(f1, ("rho2", 2, 2))
    ss = enumerate_splittings(psi)
    assert [s.minus(("rho2", 2, 0)) for s in ss] == [0, 2]
    assert all(not any(splitting_image(psi, s)) for s in ss)


def test_endoscopic_mp4(f1):
    psi = P(f1, ("rho2", 1), ("chi_a", 2))
    s = make_splitting(psi, {("chi_a", 2, 0): 1})
    datum, p1, p2 = splitting_to_endoscopic(psi, s)
    assert datum == EndoscopicDatum(1, 1)
    assert p1 == P(f1, ("rho2", 1)) and p2 == P(f1, ("chi_a", 2))
    assert splitting_from_parts(psi, p1, p2) == s
    assert splitting_to_endoscopic(psi, trivial_splitting(psi))[0] == EndoscopicDatum(2, 0)
    assert splitting_to_endoscopic(psi, full_splitting(psi))[0] == EndoscopicDatum(0, 2)


def test_endoscopic_round_trip_exhaustive(f1, ext):
    from mpendo.parameters import enumerate_parameters

    for cat in (f1, ext):
        for psi in enumerate_parameters(cat, 3):
            for s in enumerate_splittings(psi):
                datum, p1, p2 = splitting_to_endoscopic(psi, s)
                assert datum.n == psi.n
                assert splitting_from_parts(psi, p1, p2) == s


def test_iota():
    assert iota_coefficient(EndoscopicDatum(2, 0)) == Fraction(1, 2)
    assert iota_coefficient(EndoscopicDatum(1, 1)) == Fraction(1, 4)
    assert iota_coefficient(EndoscopicDatum(0, 0)) == 1


def test_component_map_mp4(f1):
    psi = P(f1, ("rho2", 1), ("chi_a", 2))
    m = component_map_to_phi(psi)
    assert m.target == ("rho2",)
    assert m((1, 0)) == (0,) and m((0, 1)) == (1,)
    assert m(distinguished_elements(psi)[0]) == (0,)
    assert m.is_surjective


def test_component_map_two_generators_same_target(f1):
    psi = P(f1, ("rho2", 1), ("rho2", 3))
    m = component_map_to_phi(psi)
    assert m.target == ("rho2",)
    assert m((1, 0)) == m((0, 1)) == (1,)


def test_component_map_principal(f1):
    m = component_map_to_phi(P(f1, ("one", 4)))
    assert m.target == ()
    assert m((1,)) == ()
