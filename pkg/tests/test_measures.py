import json

import numpy as np
import pytest

import oracles

from steklov.measures import (
    CircleMeasure,
    default_grid_size,
    geronimus_insert,
    inner_product,
    inserted_norm,
    insertion_derivatives,
    lebesgue,
    rakhmanov_multi_insert,
    steklov_margin,
)
from steklov.opuc import cd_kernel, szego_recursion
from steklov.poly import polyval

ATOM_TOL = 1e-12


def test_lebesgue_moments_and_margin():
    mu = lebesgue()
    assert mu.total_mass() == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(mu.moments(5), np.eye(6)[0], atol=1e-12)
    assert steklov_margin(mu, 1.0) == pytest.approx(0.0, abs=1e-14)
    assert steklov_margin(mu, 0.5) == pytest.approx(0.25 / np.pi, abs=1e-14)


def test_atom_moments_are_exact():
    theta, mass = 1.1, 0.25
    mu = CircleMeasure(density=np.zeros(64), atoms=[(theta, mass)])
    s = mu.moments(4)
    assert np.allclose(s, mass * np.exp(1j * np.arange(5) * theta), atol=ATOM_TOL)
    assert mu.total_mass() == pytest.approx(mass)


def test_measure_validation():
    with pytest.raises(ValueError):
        CircleMeasure(density=np.full(16, -1.0))
    mu = lebesgue(num_points=64)
    with pytest.raises(ValueError):
        mu.moments(32)  # needs n < grid/2
    with pytest.raises(ValueError):
        steklov_margin(mu, 2.0)


def test_json_round_trip():
    mu = CircleMeasure(density=np.linspace(0.1, 0.2, 32), atoms=[(0.5, 0.1)])
    doc = json.loads(mu.to_json())
    back = CircleMeasure.from_json(json.dumps(doc))
    assert np.allclose(back.density, mu.density, atol=0)
    assert np.allclose(np.asarray(back.atoms, dtype=float), [(0.5, 0.1)], atol=0)


def test_inner_product_matches_moment_space():
    rng = np.random.default_rng(21)
    density = 0.1 + np.abs(np.fft.ifft(np.concatenate([rng.normal(size=4), np.zeros(60)])) * 64) ** 2
    mu = CircleMeasure(density=density, atoms=[(2.0, 0.3)])
    s = mu.moments(6)
    f = rng.normal(size=4) + 1j * rng.normal(size=4)
    g = rng.normal(size=3) + 1j * rng.normal(size=3)
    assert inner_product(mu, f, g) == pytest.approx(oracles.moment_inner(f, g, s), rel=1e-10)


def test_geronimus_insert_small_case_orthogonality():
    g = np.array([0.3, -0.25 + 0.2j, 0.15j, -0.1])
    n = 4
    system = szego_recursion(g)
    s = oracles.exact_moments(g, n)
    t = 0.35
    mixed = (1.0 - t) * s
    mixed += t  # unit atom at theta = 0
    monic = system.phi[n] * np.prod(system.parameters.rhos[:n])
    new = geronimus_insert(monic, system, t)
    assert new[n] == pytest.approx(1.0)  # stays monic
    for j in range(n):
        e_j = np.eye(j + 1)[j]
        assert abs(oracles.moment_inner(new, e_j, mixed)) < 1e-12


def test_inserted_norm_tracks_moment_space():
    g = np.array([0.2, 0.4j, -0.3])
    n = 3
    system = szego_recursion(g)
    s = oracles.exact_moments(g, n)
    t = 0.5
    mixed = (1.0 - t) * s
    mixed += t
    monic = system.phi[n] * np.prod(system.parameters.rhos[:n])
    new = geronimus_insert(monic, system, t)
    norm_sq = float(np.prod(system.parameters.rhos[:n]) ** 2)
    predicted = inserted_norm(norm_sq, system, n, t)
    assert oracles.moment_inner(new, new, mixed).real == pytest.approx(predicted, rel=1e-12)


def test_insertion_derivative_signs():
    g = np.array([0.3, -0.2, 0.1j])
    system = szego_recursion(g)
    d_monic, d_ortho = insertion_derivatives(system, 3)
    kernel = cd_kernel(system, 2, 1.0, 1.0).real
    monic_at_one = polyval(system.phi[3] * np.prod(system.parameters.rhos[:3]), 1.0)
    assert d_monic == pytest.approx(-2.0 * kernel * abs(monic_at_one) ** 2, rel=1e-12)
    assert d_monic < 0.0  # the atom always pulls the monic value down


def test_multi_insert_decouples_at_kernel_zeros():
    # for Lebesgue, K_{n-1}(xi_j, xi_l) is an n-term geometric sum in
    # conj(xi_j) xi_l, so distinct n-th roots of unity decouple
    n = 4
    system = szego_recursion(np.zeros(n))
    points = np.exp(2j * np.pi * np.arange(1, 3) / n)
    masses = np.array([0.2, 0.4])
    combined = rakhmanov_multi_insert(system, n, points, masses)
    single_0 = rakhmanov_multi_insert(system, n, points[:1], masses[:1])
    single_1 = rakhmanov_multi_insert(system, n, points[1:], masses[1:])
    base = np.zeros(n + 1, dtype=complex)
    base[n] = 1.0
    assert np.allclose(combined, single_0 + single_1 - base, atol=1e-12)


def test_multi_insert_rejects_coupled_points():
    system = szego_recursion(np.zeros(4))
    with pytest.raises(ValueError):
        rakhmanov_multi_insert(system, 4, np.exp(1j * np.array([0.0, 0.01])), [0.1, 0.1])
    with pytest.raises(ValueError):
        rakhmanov_multi_insert(system, 4, [1.0], [-0.5])


def test_default_grid_size_covers_moments():
    for n in (1, 7, 64, 500):
        assert default_grid_size(n) > 2 * n
