import bands
import caches
import numpy as np
import pytest

from steklov.construction import VerificationError
from steklov.entropy import NORM_TOL, entropy_scaling_report, polynomial_entropy
from steklov.measures import CircleMeasure, lebesgue


def test_unimodular_polynomial_has_zero_entropy():
    # z^n is orthonormal for Lebesgue and |z^n| = 1, so log+ vanishes
    mu = lebesgue(num_points=1024)
    phi = np.zeros(6, dtype=complex)
    phi[5] = 1.0
    assert polynomial_entropy(phi, mu) == pytest.approx(0.0, abs=1e-12)


def test_two_atom_measure_matches_hand_computation():
    # atoms at 1 and -1 with mass 1/2; phi = (1 + z)/sqrt(2) takes the
    # values sqrt(2) and 0, so the entropy is (1/2) * 2 * log sqrt(2)
    mu = CircleMeasure(density=np.zeros(64), atoms=[(0.0, 0.5), (np.pi, 0.5)])
    phi = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert polynomial_entropy(phi, mu) == pytest.approx(0.5 * np.log(2.0), rel=1e-12)


def test_entropy_rejects_unnormalized_input():
    mu = lebesgue(num_points=256)
    with pytest.raises(ValueError, match="not normalized"):
        polynomial_entropy([2.0], mu)
    # right at the tolerance edge the gate stays open
    scale = np.sqrt(1.0 + 0.5 * NORM_TOL)
    assert polynomial_entropy([scale], mu) == pytest.approx(0.0, abs=1e-6)


def test_scaling_report_fits_logarithmic_growth():
    report = caches.entropy_report().value
    assert tuple(report.ns) == caches.ENTROPY_DEGREES
    lo, hi = bands.ENTROPY_SLOPE_BAND
    assert lo <= report.slope <= hi
    level_lo, level_hi = bands.ENTROPY_LEVEL_BAND
    assert np.all(report.entropies >= level_lo)
    assert np.all(report.entropies <= level_hi)
    assert np.all(np.diff(report.entropies) > 0.0)
    assert report.residual < 1e-3  # the log fit captures the growth
    rows = list(report.rows())
    assert len(rows) == len(report.ns)
    assert rows[0][0] == int(report.ns[0])
    assert rows[0][2] == pytest.approx(np.log(report.ns[0]))


def test_scaling_report_rejects_uncertified_floor():
    # no construction certifies a floor anywhere near 0.9
    with pytest.raises(VerificationError):
        entropy_scaling_report([128], delta=0.9)
