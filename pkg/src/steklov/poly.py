"""Polynomial helpers on the unit circle.

Polynomials are plain numpy arrays of complex coefficients in the monomial
basis, ascending: ``p[j]`` multiplies ``z**j``.  Trailing zeros are allowed,
the formal degree is ``len(p) - 1``.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_poly",
    "star",
    "polyval",
    "polymul",
    "polyadd",
    "circle_grid",
    "eval_on_circle",
    "coeffs_from_samples",
    "winding_number",
    "min_modulus_on_circle",
    "is_zero_free_in_closed_disk",
]


def as_poly(coeffs) -> np.ndarray:
    p = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    if p.ndim != 1 or p.size == 0:
        raise ValueError("polynomial coefficients must form a nonempty 1-d array")
    return p


def star(coeffs, n: int) -> np.ndarray:
    """Reciprocal polynomial of order n: z**n * conj(p(1/conj(z))).

    Reverses and conjugates the coefficients inside a length-(n+1) frame,
    so star(star(p, n), n) == p whenever deg p <= n.
    """
    p = as_poly(coeffs)
    if len(p) - 1 > n:
        raise ValueError("order n must be at least deg p")
    framed = np.zeros(n + 1, dtype=complex)
    framed[: len(p)] = p
    return np.conj(framed[::-1])


def polyval(coeffs, z):
    """Evaluate p(z) by Horner's rule; z may be scalar or ndarray."""
    return np.polynomial.polynomial.polyval(z, as_poly(coeffs))


def polymul(a, b) -> np.ndarray:
    return np.convolve(as_poly(a), as_poly(b))


def polyadd(a, b) -> np.ndarray:
    a, b = as_poly(a), as_poly(b)
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    return out


def circle_grid(num_points: int) -> np.ndarray:
    """Uniform angles theta_i = 2*pi*i/N, i = 0..N-1."""
    return 2.0 * np.pi * np.arange(num_points) / num_points


def eval_on_circle(coeffs, num_points: int) -> np.ndarray:
    """Values p(exp(i*theta_i)) on the uniform grid, via a single inverse FFT."""
    p = as_poly(coeffs)
    if len(p) > num_points:
        raise ValueError("grid must have at least deg p + 1 points")
    framed = np.zeros(num_points, dtype=complex)
    framed[: len(p)] = p
    return np.fft.ifft(framed) * num_points


def coeffs_from_samples(samples, deg: int) -> np.ndarray:
    """Recover coefficients 0..deg of a polynomial from uniform circle samples.

    Exact when the samples come from a polynomial of degree < len(samples).
    """
    samples = np.asarray(samples, dtype=complex)
    if deg >= len(samples):
        raise ValueError("need more samples than the requested degree")
    return np.fft.fft(samples)[: deg + 1] / len(samples)


def winding_number(samples) -> int:
    """Winding of a closed sampled curve around 0.

    The samples must resolve the curve well enough that consecutive points
    subtend less than pi; for a polynomial of degree d sampled on N uniform
    angles this holds comfortably once N >> d.
    """
    v = np.asarray(samples, dtype=complex)
    if np.any(v == 0):
        raise ValueError("curve passes through 0")
    closed = np.concatenate([v, v[:1]])
    increments = np.angle(closed[1:] / closed[:-1])
    return int(round(increments.sum() / (2.0 * np.pi)))


def min_modulus_on_circle(coeffs, num_points: int = 4096) -> float:
    return float(np.min(np.abs(eval_on_circle(coeffs, num_points))))


def is_zero_free_in_closed_disk(coeffs, num_points: int = 4096, rel_tol: float = 1e-9) -> bool:
    """No zeros in |z| <= 1, decided on the boundary.

    Checks min |p| on a fine boundary grid against rel_tol * max |p| (zeros on
    the circle) and then applies the argument principle (zeros inside).
    """
    values = eval_on_circle(as_poly(coeffs), num_points)
    moduli = np.abs(values)
    if moduli.min() <= rel_tol * moduli.max():
        return False
    return winding_number(values) == 0
