import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mpendo import f2, fixtures
from mpendo.catalog import dumps, load_catalog
from mpendo.components import (
    distinguished_elements,
    enumerate_splittings,
    splitting_from_parts,
    splitting_image,
    splitting_to_endoscopic,
)
from mpendo.epsilon import epsilon_minus_part, epsilon_phi_psi_minus_part, nu_character, verify_descent
from mpendo.mu4 import Mu4
from mpendo.packets import Member, PacketModel, fourier_pi, t_from_pi, t_vector
from mpendo.parameters import ArthurParameter, enumerate_parameters
from oracles import epsilon_by_phases, full_minus

EXT = fixtures.f1_extended()
POOL = [p for n in (1, 2, 3) for p in enumerate_parameters(EXT, n)]
GOOD = [p for p in POOL if p.classify().good_parity]

mu4s = st.sampled_from(["1", "i", "-1", "-i"]).map(Mu4.parse)
params = st.sampled_from(POOL)
seeds = st.integers(min_value=0, max_value=2**32 - 1)
SLOW = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@given(mu4s, mu4s, mu4s)
def test_mu4_group(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a / b) * b == a
    assert a ** 4 == Mu4.parse("1")


@given(st.lists(st.tuples(*[st.integers(0, 1)] * 4), min_size=1, max_size=6), st.tuples(*[st.integers(0, 1)] * 4))
def test_f2_solve_and_kernel(cols, target):
    sol = f2.solve(cols, target)
    reachable = {f2.apply(cols, x, 4) for x in f2.all_vectors(len(cols))}
    assert (sol is not None) == (target in reachable)
    if sol is not None:
        assert f2.apply(cols, sol, 4) == target
    kernel = f2.kernel_basis(cols, 4)
    assert len(kernel) == len(cols) - f2.rank(cols)
    for k in kernel:
        assert not any(f2.apply(cols, k, 4))


@given(params, params)
def test_parameter_addition(a, b):
    s = a + b
    assert s == b + a
    assert s.dim == a.dim + b.dim
    assert ArthurParameter(EXT, s.summands) == s


@given(params)
def test_distinguished_elements_are_splitting_images(psi):
    x, z = distinguished_elements(psi)
    images = {splitting_image(psi, s) for s in enumerate_splittings(psi)}
    assert z in images and x in images


@given(params)
def test_endoscopic_bijection(psi):
    seen = set()
    for s in enumerate_splittings(psi):
        datum, p1, p2 = splitting_to_endoscopic(psi, s)
        assert datum.n_prime + datum.n_dblprime == psi.n
        assert splitting_from_parts(psi, p1, p2) == s
        seen.add((p1, p2))
    assert len(seen) == len(enumerate_splittings(psi))


@given(params, seeds)
def test_epsilon_formulas_agree_with_phase_oracle(psi, seed):
    rng = random.Random(seed)
    for s in enumerate_splittings(psi):
        e = epsilon_minus_part(psi, s)
        assert e == epsilon_phi_psi_minus_part(psi, s)
        assert e == epsilon_by_phases(psi, full_minus(psi, s), rng)


@given(st.sampled_from(GOOD))
def test_good_parity_descent(psi):
    nu = nu_character(psi)
    for s in enumerate_splittings(psi):
        assert epsilon_minus_part(psi, s) == nu(splitting_image(psi, s))


@SLOW
@given(seeds)
def test_random_catalog_round_trip_and_descent(seed):
    rng = random.Random(seed)
    doc = fixtures.random_local_document(rng, rng.randint(1, 6))
    cat = load_catalog(doc)
    assert load_catalog(dumps(cat)) == cat
    for psi in enumerate_parameters(cat, rng.randint(1, 2), "good_parity"):
        assert verify_descent(psi).ok


@st.composite
def packets(draw):
    psi = draw(params)
    rank = len(psi.iplus)
    chars = list(f2.all_vectors(rank))
    labels = draw(st.lists(st.sampled_from("abcdef"), max_size=6))
    members = []
    counts = {}
    for label in labels:
        chi = draw(st.sampled_from(chars))
        counts[(chi, label)] = counts.get((chi, label), 0) + 1
        members.append(Member(label, chi, counts[(chi, label)]))
    return PacketModel(psi, members)


@given(packets())
def test_fourier_round_trip(pm):
    for chi in pm.group.elements():
        vec = fourier_pi(pm, chi)
        assert all(isinstance(v, int) and v > 0 for v in vec.values())
    for x in pm.group.elements():
        assert t_from_pi(pm, x) == t_vector(pm, x)
