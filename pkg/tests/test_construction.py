import numpy as np
import pytest

import bands
import caches

from steklov.construction import (
    ConstructionError,
    ConstructionParams,
    GROWTH_BAND,
    VerificationError,
    build_f_tilde,
    concatenated_measure_check,
    lower_bound_witness,
    verify_lemma_conditions,
)
from steklov.poly import polyval

POINTWISE_TOL = 1e-10


def test_parameter_validation():
    for kwargs in (
        {"n": 3},
        {"n": 128, "alpha": 0.5},
        {"n": 128, "alpha": 1.0},
        {"n": 128, "rho": 0.0},
        {"n": 128, "delta1": 0.5},
        {"n": 128, "upsilon": 2.0},
    ):
        with pytest.raises(ConstructionError):
            ConstructionParams(**kwargs)
    with pytest.raises(ConstructionError):
        # delta1 * n < 1 leaves no room for the outer factor
        lower_bound_witness(16, params=ConstructionParams(n=16, delta1=1.0 / 64.0))


def test_field_has_unit_mean_real_part():
    params = ConstructionParams(n=128)
    field = build_f_tilde(params)
    on_grid = field.on_circle(1 << 14)
    assert on_grid.real.mean() == pytest.approx(1.0, abs=1e-10)
    assert on_grid.real.min() > 0.0  # Herglotz on the closed disk


def test_witness_certificates_and_regression_bands():
    w = caches.witness(128).value
    report = w.report
    assert report.all_pass
    assert report.winding == 0
    assert report.bracket_re_min > -1e-10
    assert report.phi_star_min_modulus > 0.0
    assert report.normalization_residual < 1e-8
    assert GROWTH_BAND[0] <= report.growth_ratio <= GROWTH_BAND[1]
    assert bands.C_N_BAND[0] <= w.out.c_n <= bands.C_N_BAND[1]

    field_scale = abs(w.out.herglotz(1.0)) / 128.0
    assert bands.FIELD_SCALE_BAND[0] <= field_scale <= bands.FIELD_SCALE_BAND[1]

    median = float(np.median(2.0 * np.pi * w.sigma.density))
    assert bands.MEDIAN_DENSITY_BAND[0] <= median <= bands.MEDIAN_DENSITY_BAND[1]

    thetas = w.out.thetas
    window = (np.abs(thetas) > 1.0 / 128.0) & (np.abs(thetas) < 0.3)
    product = np.abs(w.out.herglotz_grid[window]) * np.abs(thetas[window])
    assert bands.FIELD_THETA_BAND[0] <= product.min()
    assert product.max() <= bands.FIELD_THETA_BAND[1]


def test_certificate_growth_decelerates():
    c1 = [caches.witness(n).value.report.c1 for n in caches.WITNESS_DEGREES]
    assert all(bands.C1_BAND[0] <= c <= bands.C1_BAND[1] for c in c1)
    increments = np.diff(c1)
    assert np.all(increments > 0.0)
    assert np.all(increments <= np.array(bands.C1_INCREMENT_CAPS))


def test_reconstructed_density_matches_exact_formula():
    w = caches.witness(128).value
    out = w.out
    # plain cells carry pointwise values of 2 Re F / (pi |blend|^2); compare
    # away from the spike windows where cell averages replace samples
    idx = len(out.thetas) // 7
    z = np.exp(1j * out.thetas[idx])
    ps = out.c_n * polyval(out.f, z)
    ph = out.c_n * z**128 * np.conj(polyval(out.f, z))
    field = out.herglotz(z)
    blend = ph + ps + field * (ps - ph)
    density = 2.0 * field.real / (np.pi * abs(blend) ** 2)
    assert w.sigma.density[idx] == pytest.approx(density, rel=POINTWISE_TOL)


def test_phi_star_value_consistent_with_outer_data():
    w = caches.witness(128).value
    # p(1) = 0 by its (1 - z) factor, so phi*(1) = C_n (Q(1) + conj(Q(1)))
    q_at_one = polyval(w.out.q, 1.0)
    assert w.value == pytest.approx(abs(w.out.c_n * 2.0 * q_at_one.real), rel=1e-12)


def test_lower_bound_witness_rejects_unreachable_floor():
    with pytest.raises(VerificationError):
        lower_bound_witness(128, delta=0.9)
    with pytest.raises(ValueError):
        lower_bound_witness(128, params=ConstructionParams(n=256))


def test_verify_against_explicit_floor_matches_certificate():
    w = caches.witness(128).value
    report = verify_lemma_conditions(w.out, w.report.certified_delta * 0.5)
    assert report.all_pass
    assert report.certified_delta == pytest.approx(w.report.certified_delta)


def test_concatenation_requires_long_tail():
    w = caches.witness(128).value
    with pytest.raises(ValueError):
        concatenated_measure_check(w.out, 64)
