import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles

from steklov.opuc import (
    MOMENT_EXTRACTION_CAP,
    OrthogonalSystem,
    VerblunskySequence,
    bernstein_szego_density,
    cd_kernel,
    cd_kernel_poly,
    levinson,
    monic_norm,
    szego_recursion,
    verblunsky_from_moments,
)
from steklov.poly import polyval

ROUND_TRIP_TOL = 1e-8
# density-path quadrature demands zeros stay away from the circle; the
# conditioning of the exact-moment path alone already costs ~1e-9 at
# (16, 0.9), which is why the radii shrink as the degree grows.
EXACT_SCHEDULE = ((8, 0.9), (16, 0.9), (32, 0.7), (64, 0.5))
DENSITY_SCHEDULE = ((8, 0.9), (16, 0.6))


def test_free_parameters_give_monomials():
    system = szego_recursion(np.zeros(5))
    for j in range(6):
        expected = np.zeros(j + 1, dtype=complex)
        expected[j] = 1.0
        assert np.allclose(system.phi[j], expected, atol=0)
        assert np.allclose(system.phi_star[j], np.eye(j + 1)[0], atol=0)


def test_single_parameter_closed_form():
    g = 0.3 - 0.4j
    system = szego_recursion([g])
    rho = np.sqrt(1.0 - abs(g) ** 2)
    # gamma_0 = -conj(Phi_1(0))
    assert np.allclose(system.phi[1] * rho, [-np.conj(g), 1.0], atol=1e-15)
    assert np.allclose(system.psi[1] * rho, [np.conj(g), 1.0], atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(
        st.complex_numbers(max_magnitude=0.8, allow_nan=False, allow_infinity=False),
        min_size=1,
        max_size=6,
    )
)
def test_recursion_is_orthonormal_in_moment_space(gammas):
    n = len(gammas)
    system = szego_recursion(gammas)
    s = oracles.exact_moments(gammas, n)
    for j in range(n + 1):
        for k in range(j + 1):
            inner = oracles.moment_inner(system.phi[j], system.phi[k], s)
            assert inner == pytest.approx(1.0 if j == k else 0.0, abs=1e-9)


def test_monic_norm_matches_moment_space():
    rng = np.random.default_rng(3)
    g = oracles.random_parameters(rng, 10, 0.7, lo=0.1)
    system = szego_recursion(g)
    s = oracles.exact_moments(g, 10)
    monic = system.phi[10] * monic_norm(system.parameters, 10)
    norm = np.sqrt(oracles.moment_inner(monic, monic, s).real)
    assert norm == pytest.approx(monic_norm(system.parameters, 10), rel=1e-10)


@pytest.mark.parametrize("count,radius", EXACT_SCHEDULE)
def test_levinson_inverts_exact_moments(count, radius):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(25):
        g = oracles.random_parameters(rng, count, radius)
        recovered, _, _ = levinson(oracles.exact_moments(g, count))
        worst = max(worst, float(np.max(np.abs(recovered - g))))
    assert worst < ROUND_TRIP_TOL


@pytest.mark.parametrize("count,radius", DENSITY_SCHEDULE)
def test_levinson_inverts_bernstein_szego_moments(count, radius):
    rng = np.random.default_rng(17)
    kept = 0
    while kept < 20:
        g = oracles.random_parameters(rng, count, radius)
        system = szego_recursion(g)
        # resample until the zeros leave room for the quadrature to converge
        if 1.0 - np.max(np.abs(np.roots(system.phi[count][::-1]))) < 5e-4:
            continue
        kept += 1
        recovered, _, _ = levinson(oracles.converged_bs_moments(system.phi[count], count))
        assert float(np.max(np.abs(recovered - g))) < ROUND_TRIP_TOL


def test_verblunsky_from_moments_wraps_levinson():
    g = np.array([0.4, -0.2 + 0.3j, 0.1j])
    seq = verblunsky_from_moments(oracles.exact_moments(g, 3))
    assert isinstance(seq, VerblunskySequence)
    assert np.allclose(seq.gammas, g, atol=1e-12)


def test_levinson_rejects_bad_moments():
    with pytest.raises(ValueError):
        levinson(np.array([-1.0, 0.0]))  # s_0 must be positive
    with pytest.raises(ValueError):
        levinson(np.array([1.0, 1.5]))  # |s_1| > s_0 is not positive definite
    with pytest.raises(ValueError):
        levinson(np.ones(MOMENT_EXTRACTION_CAP + 2))


def test_levinson_normalizes_total_mass():
    g = np.array([0.3 + 0.1j, -0.2])
    s = 2.5 * oracles.exact_moments(g, 2)
    recovered, _, norms = levinson(s)
    assert np.allclose(recovered, g, atol=1e-12)
    assert norms[0] == pytest.approx(2.5)


def test_parameters_must_stay_inside_disk():
    with pytest.raises(ValueError):
        VerblunskySequence([0.5, 1.0])
    with pytest.raises(ValueError):
        szego_recursion([0.2], up_to=3)


def test_bernstein_szego_density_is_a_probability_measure():
    rng = np.random.default_rng(9)
    g = oracles.random_parameters(rng, 6, 0.6, lo=0.1)
    system = szego_recursion(g)
    mu = bernstein_szego_density(system.phi[6])
    assert mu.total_mass() == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(mu.moments(6), oracles.exact_moments(g, 6), atol=1e-9)


def test_bernstein_szego_rejects_circle_zeros():
    with pytest.raises(ValueError):
        bernstein_szego_density(np.array([1.0, -1.0]))


def test_cd_kernel_matches_direct_sum():
    rng = np.random.default_rng(13)
    g = oracles.random_parameters(rng, 5, 0.7, lo=0.1)
    system = szego_recursion(g)
    xi = np.exp(0.4j)
    z = np.exp(-1.1j)
    direct = sum(np.conj(system.phi_at(j, xi)) * system.phi_at(j, z) for j in range(5))
    assert cd_kernel(system, 4, xi, z) == pytest.approx(direct, rel=1e-12)
    assert polyval(cd_kernel_poly(system, 4, xi), z) == pytest.approx(direct, rel=1e-12)


def test_cd_kernel_diagonal_is_squared_norms():
    system = szego_recursion(np.zeros(4))
    # for Lebesgue, K_n(1, 1) = n + 1
    assert cd_kernel(system, 3, 1.0, 1.0) == pytest.approx(4.0, abs=1e-14)


def test_orthogonal_system_shape():
    system = szego_recursion([0.1, 0.2j])
    assert isinstance(system, OrthogonalSystem)
    assert system.size == 2
    assert len(system.phi[2]) == 3
    assert system.phi_star_at(2, 0.0) == pytest.approx(np.conj(system.phi[2][2]))
