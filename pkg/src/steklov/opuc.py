"""Orthogonal polynomials on the unit circle.

The recursion, the moment-side extraction of its parameters, and the
Christoffel-Darboux kernel.  Conventions used throughout the package:

* moments ``s_j = int exp(i*j*theta) dmu(theta)``, with ``s_{-j} = conj(s_j)``;
* inner product ``<f, g> = int f * conj(g) dmu``;
* monic polynomials satisfy ``Phi_{k+1} = z*Phi_k - conj(gamma_k)*Phi_k^*``,
  so ``gamma_k = -conj(Phi_{k+1}(0))``.
"""

from __future__ import annotations

import numpy as np

from .poly import as_poly, eval_on_circle, polyval

__all__ = [
    "VerblunskySequence",
    "OrthogonalSystem",
    "szego_recursion",
    "levinson",
    "verblunsky_from_moments",
    "monic_norm",
    "cd_kernel",
    "cd_kernel_poly",
    "bernstein_szego_density",
    "MOMENT_EXTRACTION_CAP",
]

# Beyond this size the Toeplitz systems behind the moment extraction are too
# ill-conditioned in double precision to trust blindly.
MOMENT_EXTRACTION_CAP = 1024


class VerblunskySequence:
    """Recursion parameters gamma_0..gamma_{N-1}, all strictly inside the disk."""

    def __init__(self, gammas):
        g = np.atleast_1d(np.asarray(gammas, dtype=complex))
        if g.size and np.max(np.abs(g)) >= 1.0:
            raise ValueError("recursion parameters must satisfy |gamma| < 1")
        self.gammas = g
        self.rhos = np.sqrt(1.0 - np.abs(g) ** 2)

    def __len__(self) -> int:
        return len(self.gammas)

    def __repr__(self) -> str:
        return f"VerblunskySequence(n={len(self)})"


class OrthogonalSystem:
    """First- and second-kind orthonormal polynomials up to a common degree.

    ``phi[j]`` / ``phi_star[j]`` are coefficient arrays of degree j; ``psi``
    runs the same recursion with negated parameters.
    """

    def __init__(self, seq: VerblunskySequence, phi, phi_star, psi, psi_star):
        self.parameters = seq
        self.phi = phi
        self.phi_star = phi_star
        self.psi = psi
        self.psi_star = psi_star

    @property
    def size(self) -> int:
        return len(self.phi) - 1

    def phi_at(self, j: int, z):
        return polyval(self.phi[j], z)

    def phi_star_at(self, j: int, z):
        return polyval(self.phi_star[j], z)


def _run_recursion(gammas: np.ndarray):
    polys = [np.array([1.0 + 0.0j])]
    stars = [np.array([1.0 + 0.0j])]
    for k, g in enumerate(gammas):
        rho = np.sqrt(1.0 - abs(g) ** 2)
        p, ps = polys[k], stars[k]
        shifted = np.concatenate([[0.0 + 0.0j], p])
        nxt = shifted.copy()
        nxt[: k + 1] -= np.conj(g) * ps
        nxt_star = np.concatenate([ps, [0.0 + 0.0j]])
        nxt_star -= g * shifted
        polys.append(nxt / rho)
        stars.append(nxt_star / rho)
    return polys, stars


def szego_recursion(gammas, up_to: int | None = None) -> OrthogonalSystem:
    """Run the circle recursion and return the full orthonormal system.

    Parameters
    ----------
    gammas : array_like or VerblunskySequence
        Recursion parameters; ``up_to`` (default: all of them) limits the
        degree actually built.
    """
    seq = gammas if isinstance(gammas, VerblunskySequence) else VerblunskySequence(gammas)
    n = len(seq) if up_to is None else up_to
    if n > len(seq):
        raise ValueError("not enough parameters for the requested degree")
    g = seq.gammas[:n]
    phi, phi_star = _run_recursion(g)
    psi, psi_star = _run_recursion(-g)
    return OrthogonalSystem(seq, phi, phi_star, psi, psi_star)


def levinson(moments):
    """Monic orthogonal polynomials from trigonometric moments.

    O(n^2) recursion on the Toeplitz structure: each step appends one
    parameter via gamma_k = conj(<z*Phi_k, 1>) / ||Phi_k||^2 and updates
    ||Phi_{k+1}||^2 = ||Phi_k||^2 * (1 - |gamma_k|^2).

    Parameters
    ----------
    moments : array_like
        s_0..s_n with s_0 > 0.

    Returns
    -------
    gammas : ndarray
        Recursion parameters gamma_0..gamma_{n-1}.
    monic : ndarray
        Coefficients of the monic Phi_n.
    norms : ndarray
        Squared norms ||Phi_0||^2 .. ||Phi_n||^2.
    """
    s = np.atleast_1d(np.asarray(moments, dtype=complex))
    n = len(s) - 1
    if n > MOMENT_EXTRACTION_CAP:
        raise ValueError(f"moment extraction capped at n = {MOMENT_EXTRACTION_CAP}")
    if not (s[0].real > 0 and abs(s[0].imag) <= 1e-12 * s[0].real):
        raise ValueError("s_0 must be positive")
    phi = np.array([1.0 + 0.0j])
    norm2 = s[0].real
    gammas = np.zeros(n, dtype=complex)
    norms = np.zeros(n + 1)
    norms[0] = norm2
    for k in range(n):
        gbar = np.dot(phi, s[1 : k + 2]) / norm2
        if abs(gbar) >= 1.0:
            raise ValueError("moment sequence is not positive definite")
        gammas[k] = np.conj(gbar)
        shifted = np.concatenate([[0.0 + 0.0j], phi])
        shifted[: k + 1] -= gbar * np.conj(phi[::-1])
        phi = shifted
        norm2 *= 1.0 - abs(gbar) ** 2
        norms[k + 1] = norm2
    return gammas, phi, norms


def verblunsky_from_moments(moments) -> VerblunskySequence:
    gammas, _, _ = levinson(moments)
    return VerblunskySequence(gammas)


def monic_norm(parameters, n: int) -> float:
    """||Phi_n|| for a probability measure: the product of the rho_j, j < n."""
    seq = parameters if isinstance(parameters, VerblunskySequence) else VerblunskySequence(parameters)
    if n > len(seq):
        raise ValueError("not enough parameters")
    return float(np.prod(seq.rhos[:n])) if n else 1.0


def cd_kernel_poly(system: OrthogonalSystem, n: int, xi: complex) -> np.ndarray:
    """Coefficients in z of K_n(xi, z) = sum_{j<=n} conj(phi_j(xi)) phi_j(z)."""
    if n > system.size:
        raise ValueError("kernel degree exceeds the system")
    out = np.zeros(n + 1, dtype=complex)
    for j in range(n + 1):
        out[: j + 1] += np.conj(polyval(system.phi[j], xi)) * system.phi[j]
    return out


def cd_kernel(system: OrthogonalSystem, n: int, xi: complex, z):
    return polyval(cd_kernel_poly(system, n, xi), z)


def bernstein_szego_density(phi_n, num_points: int | None = None):
    """The measure whose density is 1 / (2*pi*|phi_n|^2) on the circle.

    ``phi_n`` is an orthonormal polynomial (or its reciprocal; only the
    boundary modulus enters).  A zero on the unit circle makes the density
    non-integrable and is rejected.
    """
    from .measures import CircleMeasure, default_grid_size

    p = as_poly(phi_n)
    deg = len(p) - 1
    num = default_grid_size(deg) if num_points is None else num_points
    values = eval_on_circle(p, num)
    moduli = np.abs(values)
    if moduli.min() <= 1e-9 * moduli.max():
        raise ValueError("polynomial vanishes on the unit circle")
    return CircleMeasure(density=1.0 / (2.0 * np.pi * moduli**2))
