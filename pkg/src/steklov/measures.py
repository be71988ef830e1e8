"""Probability measures on the unit circle and mass-insertion formulas.

A measure is an absolutely continuous part, sampled on a uniform angle grid,
plus finitely many point masses.  The density is mass per radian, so the
Lebesgue probability measure has density 1/(2*pi) and the Steklov class with
parameter delta is cut off at delta/(2*pi).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .opuc import OrthogonalSystem, cd_kernel, cd_kernel_poly
from .poly import as_poly, circle_grid, eval_on_circle, polyval

__all__ = [
    "CircleMeasure",
    "default_grid_size",
    "lebesgue",
    "steklov_margin",
    "inner_product",
    "geronimus_insert",
    "inserted_norm",
    "insertion_derivatives",
    "rakhmanov_multi_insert",
]


def default_grid_size(n: int) -> int:
    """Smallest power of two >= max(4096, 32 n)."""
    target = max(4096, 32 * max(n, 1))
    return 1 << (target - 1).bit_length()


@dataclass
class CircleMeasure:
    """Density samples on theta_i = 2*pi*i/N plus atoms [(theta, mass), ...]."""

    density: np.ndarray
    atoms: list[tuple[float, float]] = field(default_factory=list)

    def __post_init__(self):
        self.density = np.asarray(self.density, dtype=float)
        if self.density.ndim != 1 or self.density.size < 2:
            raise ValueError("density must be a 1-d sample array")
        if self.density.min() < -1e-12:
            raise ValueError("density must be nonnegative")
        for _, mass in self.atoms:
            if mass < 0:
                raise ValueError("atom masses must be nonnegative")

    @property
    def grid_size(self) -> int:
        return len(self.density)

    @property
    def thetas(self) -> np.ndarray:
        return circle_grid(self.grid_size)

    def total_mass(self) -> float:
        ac = 2.0 * np.pi * float(np.mean(self.density))
        return ac + sum(m for _, m in self.atoms)

    def moments(self, n: int) -> np.ndarray:
        """s_0..s_n; the a.c. part by spectral quadrature on the grid.

        Exact for trigonometric polynomial densities of degree < N - n.
        """
        if n >= self.grid_size // 2:
            raise ValueError("grid too coarse for the requested moments")
        s = 2.0 * np.pi * np.conj(np.fft.fft(self.density))[: n + 1] / self.grid_size
        for theta, mass in self.atoms:
            s += mass * np.exp(1j * np.arange(n + 1) * theta)
        return s

    def to_json_dict(self) -> dict:
        return {
            "delta_grid": self.density.tolist(),
            "atoms": [[float(t), float(m)] for t, m in self.atoms],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "CircleMeasure":
        return cls(
            density=np.asarray(doc["delta_grid"], dtype=float),
            atoms=[(float(t), float(m)) for t, m in doc["atoms"]],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CircleMeasure":
        return cls.from_json_dict(json.loads(text))

    def density_rows(self):
        """(theta, density) pairs for delimited export."""
        return zip(self.thetas.tolist(), self.density.tolist())


def lebesgue(num_points: int = 4096) -> CircleMeasure:
    return CircleMeasure(density=np.full(num_points, 1.0 / (2.0 * np.pi)))


def steklov_margin(mu: CircleMeasure, delta: float) -> float:
    """min density - delta/(2*pi); nonnegative iff mu lies in the class."""
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    return float(mu.density.min() - delta / (2.0 * np.pi))


def inner_product(mu: CircleMeasure, f, g) -> complex:
    """<f, g> = int f conj(g) dmu by grid quadrature plus exact atom sums."""
    f, g = as_poly(f), as_poly(g)
    num = mu.grid_size
    if max(len(f), len(g)) > num:
        raise ValueError("grid too coarse for these degrees")
    fv = eval_on_circle(f, num)
    gv = eval_on_circle(g, num)
    acc = np.sum(fv * np.conj(gv) * mu.density) * 2.0 * np.pi / num
    for theta, mass in mu.atoms:
        z = np.exp(1j * theta)
        acc += mass * polyval(f, z) * np.conj(polyval(g, z))
    return complex(acc)


def geronimus_insert(monic, system: OrthogonalSystem, t: float) -> np.ndarray:
    """Monic Phi_n after mixing a point mass at theta = 0 into the measure.

    For mu(t) = (1-t) mu + t delta_{theta=0},

        Phi_n(z, mu(t)) = Phi_n(z) - t Phi_n(1) K_{n-1}(1, z)
                          / (1 - t + t K_{n-1}(1, 1)).
    """
    if not 0 <= t < 1:
        raise ValueError("t must lie in [0, 1)")
    monic = as_poly(monic)
    n = len(monic) - 1
    if n < 1 or n > system.size:
        raise ValueError("degree out of range for this system")
    kernel = cd_kernel_poly(system, n - 1, 1.0)
    k11 = polyval(kernel, 1.0).real
    out = monic.astype(complex).copy()
    out[:n] -= t * polyval(monic, 1.0) * kernel / (1.0 - t + t * k11)
    return out


def inserted_norm(norm_sq: float, system: OrthogonalSystem, n: int, t: float) -> float:
    """||Phi_n||^2 under the same point-mass mix, from the kernel at 1."""
    if not 0 <= t < 1:
        raise ValueError("t must lie in [0, 1)")
    kn = cd_kernel(system, n, 1.0, 1.0).real
    knm1 = cd_kernel(system, n - 1, 1.0, 1.0).real if n >= 1 else 0.0
    return norm_sq * (1.0 - t) * (1.0 - t + t * kn) / (1.0 - t + t * knm1)


def insertion_derivatives(system: OrthogonalSystem, n: int) -> tuple[float, float]:
    """d/dt at t=0 of |Phi_n(1)|^2 and of |phi_n(1)|^2 under the mix.

    The monic value always decays; the orthonormal one decays whenever
    K_n(1,1) + K_{n-1}(1,1) > 1, which the returned expression makes explicit:

        (-2 K_{n-1}(1,1) |Phi_n(1)|^2,
         |phi_n(1)|^2 (1 - K_n(1,1) - K_{n-1}(1,1))).
    """
    if n < 1 or n > system.size:
        raise ValueError("degree out of range for this system")
    knm1 = cd_kernel(system, n - 1, 1.0, 1.0).real
    kn = cd_kernel(system, n, 1.0, 1.0).real
    phi1 = abs(system.phi_at(n, 1.0)) ** 2
    monic1 = phi1 * np.prod(system.parameters.rhos[:n] ** 2)
    return (-2.0 * knm1 * monic1, phi1 * (1.0 - kn - knm1))


def rakhmanov_multi_insert(
    system: OrthogonalSystem,
    n: int,
    points,
    masses,
    kernel_tol: float = 1e-8,
) -> np.ndarray:
    """Monic Phi_n after adding raw point masses m_k at circle points xi_k.

    Valid when the insertion points decouple through the kernel,
    K_{n-1}(xi_j, xi_l) = 0 for j != l; then

        Phi_n(z, eta) = Phi_n(z) - sum_k m_k Phi_n(xi_k)
                        K_{n-1}(xi_k, z) / (1 + m_k K_{n-1}(xi_k, xi_k)).

    Masses here are added to the base measure as-is (eta = mu + sum m_k
    delta_k, no renormalization); the single-point convex mix with weight t
    corresponds to m = t/(1-t).
    """
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    masses = np.atleast_1d(np.asarray(masses, dtype=float))
    if len(points) != len(masses):
        raise ValueError("points and masses must pair up")
    if np.any(masses < 0):
        raise ValueError("masses must be nonnegative")
    if n < 1 or n > system.size:
        raise ValueError("degree out of range for this system")
    kernels = [cd_kernel_poly(system, n - 1, xi) for xi in points]
    scale = max(abs(cd_kernel(system, n - 1, xi, xi).real) for xi in points)
    for j, xi_j in enumerate(points):
        for l in range(j + 1, len(points)):
            cross = polyval(kernels[j], points[l])
            if abs(cross) > kernel_tol * scale:
                raise ValueError("insertion points do not decouple through the kernel")
    rho_prod = np.prod(system.parameters.rhos[:n])
    monic = system.phi[n] * rho_prod
    out = monic.astype(complex).copy()
    for xi, m, kern in zip(points, masses, kernels):
        k_diag = polyval(kern, xi).real
        out[:n] -= m * polyval(monic, xi) * kern / (1.0 + m * k_diag)
    return out
