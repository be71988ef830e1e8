"""Outer (minimum-phase) factorization of positive trigonometric polynomials.

A strictly positive trig polynomial w of degree m factors as w = |Q|^2 on the
circle with Q a degree-m algebraic polynomial, zero-free in the closed unit
disk and Q(0) > 0.  The factor is computed from the log-magnitude: fold the
cepstrum onto causal indices, exponentiate the analytic completion, read the
Taylor coefficients back off an FFT grid.
"""

from __future__ import annotations

import numpy as np

from .poly import as_poly, circle_grid, eval_on_circle, polyval

__all__ = [
    "FactorizationError",
    "fejer_riesz",
    "phase_on_grid",
    "phase",
    "verify_phase_bound",
]

RESIDUAL_TOL = 1e-8
TRIG_DEGREE_TOL = 1e-10


class FactorizationError(ValueError):
    pass


def _fourier_coefficients(w_samples: np.ndarray) -> np.ndarray:
    return np.fft.fft(w_samples) / len(w_samples)


def fejer_riesz(w_samples, degree: int, grid_size: int | None = None) -> np.ndarray:
    """Outer polynomial Q with |Q|^2 = w on the circle, Q(0) > 0.

    Parameters
    ----------
    w_samples : array_like
        Values of w on a uniform angle grid with more than 2*degree points.
    degree : int
        Trigonometric degree of w; Fourier content beyond it must be noise.
    grid_size : int, optional
        Internal FFT resolution, default the next power of two >=
        max(2048, 64*degree).  Raising it is the remedy when the residual
        check trips on nearly vanishing inputs.

    Returns
    -------
    ndarray
        Coefficients of Q, length degree+1; real when w is even in theta.
    """
    w = np.asarray(w_samples, dtype=float)
    if w.ndim != 1 or len(w) <= 2 * degree:
        raise FactorizationError("need a uniform grid with more than 2*degree samples")
    if w.min() <= 0:
        raise FactorizationError("w must be strictly positive")
    coeff = _fourier_coefficients(w)
    scale = np.abs(coeff).max()
    tail = np.abs(coeff[degree + 1 : len(w) - degree]) if degree + 1 < len(w) - degree else np.array([0.0])
    if tail.size and tail.max() > TRIG_DEGREE_TOL * scale:
        raise FactorizationError("samples exceed the declared trigonometric degree")
    even = np.abs(coeff.imag).max() <= 1e-9 * scale

    num = grid_size or 1 << (max(2048, 64 * max(degree, 1)) - 1).bit_length()
    # resample w exactly on the working grid through its Fourier coefficients
    spectrum = np.zeros(num, dtype=complex)
    spectrum[: degree + 1] = coeff[: degree + 1]
    if degree:
        spectrum[-degree:] = coeff[-degree:]
    w_fine = np.fft.ifft(spectrum * num).real
    if w_fine.min() <= 0:
        raise FactorizationError("w must be strictly positive")

    cepstrum = np.fft.fft(np.log(w_fine)) / num
    folded = np.zeros(num, dtype=complex)
    folded[0] = 0.5 * cepstrum[0]
    folded[1 : num // 2] = cepstrum[1 : num // 2]
    folded[num // 2] = 0.5 * cepstrum[num // 2]
    log_q = np.fft.ifft(folded) * num
    q_fine = np.exp(log_q)
    q = np.fft.fft(q_fine)[: degree + 1] / num

    residual = np.abs(np.abs(eval_on_circle(q, num)) ** 2 - w_fine) / w_fine
    if residual.max() > RESIDUAL_TOL:
        raise FactorizationError(
            f"factorization residual {residual.max():.3e} exceeds {RESIDUAL_TOL:.0e}; "
            "increase grid_size"
        )
    if even:
        q = q.real.astype(float)
    return q


def phase_on_grid(q, thetas) -> np.ndarray:
    """Continuous argument of Q(e^{i theta}) along a dense angle path.

    The path must start at an angle where the branch is anchored: the phase
    at thetas[0] is taken in (-pi, pi].  Consecutive angles must be close
    enough that the true phase increment stays under pi.
    """
    q = as_poly(q)
    values = polyval(q, np.exp(1j * np.asarray(thetas, dtype=float)))
    if np.min(np.abs(values)) == 0:
        raise ValueError("Q vanishes on the path")
    return np.unwrap(np.angle(values))


def phase(q, theta, resolution: int | None = None):
    """Phase of Q at the given angles, continuous in theta with phase(0) = 0.

    Q must be zero-free on the circle with Q(1) real positive (outer factors
    from fejer_riesz qualify).  A dense reference path pins the branch; the
    values at the requested angles are computed exactly and only the 2*pi
    offset is interpolated.
    """
    q = as_poly(q)
    q1 = polyval(q, 1.0)
    if not (abs(q1.imag) <= 1e-9 * abs(q1) and q1.real > 0):
        raise ValueError("phase anchor requires Q(1) real and positive")
    theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
    num = resolution or (1 << (max(4096, 64 * (len(q) - 1)) - 1).bit_length())
    ref_phase = phase_on_grid(q, circle_grid(num))
    # zero-free Q has winding 0, so the phase is 2*pi-periodic in theta and
    # reducing theta mod 2*pi is branch-safe
    wrapped = np.mod(theta_arr, 2.0 * np.pi)
    idx = np.clip((wrapped / (2.0 * np.pi) * num).astype(int), 0, num - 1)
    principal = np.angle(polyval(q, np.exp(1j * wrapped)))
    branch = np.round((ref_phase[idx] - principal) / (2.0 * np.pi))
    values = principal + 2.0 * np.pi * branch
    return float(values[0]) if np.ndim(theta) == 0 else values


def verify_phase_bound(q, m: int, upsilon: float = 0.3) -> float:
    """max over |theta| < upsilon of |phase'(theta)| / m, by central differences.

    The step is 1e-3/m, fine enough that unwrapping on the difference grid is
    exact for the outer factors of degree-m data.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    step = 1e-3 / m
    grid = np.arange(-upsilon - step, upsilon + 2 * step, step)
    values = phase_on_grid(q, grid)
    derivative = (values[2:] - values[:-2]) / (2.0 * step)
    return float(np.max(np.abs(derivative)) / m)
