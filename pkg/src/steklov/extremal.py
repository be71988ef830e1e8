"""Upper bound, the sharp small-delta family, and direct extremal search.

Everything here goes through the moment pipeline: a measure's moments feed
the Toeplitz recursion, which yields |phi_n(1)| = |Phi_n(1)| / ||Phi_n||.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import CircleMeasure, default_grid_size
from .opuc import levinson
from .poly import polyval

__all__ = [
    "upper_bound",
    "small_delta_measure",
    "value_at_one",
    "variational_gradient",
    "gradient_at",
    "SearchResult",
    "search_extremal",
]


def upper_bound(n: int, delta: float) -> float:
    """sqrt((n+1)/delta): no unit-mass measure with density floor delta/(2 pi)
    lets its degree-n orthonormal polynomial exceed this at z = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    return float(np.sqrt((n + 1) / delta))


def small_delta_measure(n: int, delta: float, mass: float, grid_size: int | None = None):
    """The equidistant-atom family that saturates the bound as mass grows.

    Flat density delta/(2 pi) plus n atoms of the given mass at the
    (n+1)-th roots of unity other than 1.  In closed form,

        Phi_n = (m/(delta+m)) (1 + z + ... + z^n) + (delta/(delta+m)) z^n,
        Phi_n(1) = 1 + m n/(delta+m),   ||Phi_n||^2 = delta Phi_n(1),

    so |phi_n(1)| = sqrt(Phi_n(1)/delta) -> sqrt((n+1)/delta) as mass -> inf.

    Returns
    -------
    (measure, monic, value) : the measure (total mass delta + n*mass), the
    closed-form monic coefficients, and |phi_n(1)|.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    if mass <= 0:
        raise ValueError("mass must be positive")
    num = grid_size or default_grid_size(n)
    angles = 2.0 * np.pi * np.arange(1, n + 1) / (n + 1)
    measure = CircleMeasure(
        density=np.full(num, delta / (2.0 * np.pi)),
        atoms=[(float(t), float(mass)) for t in angles],
    )
    monic = np.full(n + 1, mass / (delta + mass), dtype=complex)
    monic[n] += delta / (delta + mass)
    at_one = 1.0 + mass * n / (delta + mass)
    value = float(np.sqrt(at_one / delta))
    return measure, monic, value


def value_at_one(moments) -> float:
    """|phi_n(1)| from the moments s_0..s_n of any positive measure."""
    _, monic, norms = levinson(moments)
    return float(abs(polyval(monic, 1.0)) / np.sqrt(norms[-1]))


def _real_coordinates(moments: np.ndarray) -> np.ndarray:
    n = len(moments) - 1
    out = np.empty(2 * n + 1)
    out[0] = moments[0].real
    out[1 : n + 1] = moments[1:].real
    out[n + 1 :] = moments[1:].imag
    return out


def _from_real_coordinates(coords: np.ndarray) -> np.ndarray:
    n = (len(coords) - 1) // 2
    return np.concatenate([[coords[0] + 0.0j], coords[1 : n + 1] + 1j * coords[n + 1 :]])


def variational_gradient(mu: CircleMeasure, n: int, step: float = 1e-6) -> np.ndarray:
    """Gradient of |phi_n(1)|^2 in the moment coordinates, as a trig polynomial.

    Central differences in (s_0, Re s_j, Im s_j); the returned array g packs
    the evaluator

        T_n(theta) = g[0] + sum_j g[j] cos(j theta) + g[n+j] sin(j theta),

    so the derivative of the objective along the mix (1-t) mu + t nu at t = 0
    is int T_n d(nu - mu).  Steps that leave the positive-definite cone are
    retried smaller.
    """
    base = _real_coordinates(mu.moments(n))

    def objective(coords: np.ndarray) -> float:
        return value_at_one(_from_real_coordinates(coords)) ** 2

    grad = np.zeros(2 * n + 1)
    for k in range(2 * n + 1):
        h = step
        while True:
            try:
                fwd, bwd = base.copy(), base.copy()
                fwd[k] += h
                bwd[k] -= h
                grad[k] = (objective(fwd) - objective(bwd)) / (2.0 * h)
                break
            except ValueError:
                h /= 8.0
                if h < 1e-13:
                    raise
    return grad


def gradient_at(grad: np.ndarray, theta) -> np.ndarray:
    """Evaluate the packed trig polynomial from `variational_gradient`."""
    n = (len(grad) - 1) // 2
    theta = np.asarray(theta, dtype=float)
    j = np.arange(1, n + 1)
    angles = np.multiply.outer(theta, j)  # keeps scalars scalar
    return grad[0] + np.cos(angles) @ grad[1 : n + 1] + np.sin(angles) @ grad[n + 1 :]


@dataclass
class SearchResult:
    measure: CircleMeasure
    value: float
    bound: float
    trace: np.ndarray

    @property
    def ratio(self) -> float:
        return self.value / self.bound


def _family_measure(delta: float, angles: np.ndarray, masses: np.ndarray, num: int) -> CircleMeasure:
    flat = (1.0 - masses.sum()) / (2.0 * np.pi)
    return CircleMeasure(
        density=np.full(num, flat),
        atoms=[(float(t), float(m)) for t, m in zip(angles, masses)],
    )


def _family_value(n: int, angles: np.ndarray, masses: np.ndarray) -> float:
    j = np.arange(n + 1)
    s = np.zeros(n + 1, dtype=complex)
    s[0] = 1.0 - masses.sum()
    s += np.exp(1j * np.outer(j, angles)) @ masses
    return value_at_one(s)


def search_extremal(
    n: int,
    delta: float,
    atom_budget: int,
    iterations: int = 60,
    restarts: int = 8,
    seed: int = 0,
    grid_size: int | None = None,
) -> SearchResult:
    """Coordinate ascent for max |phi_n(1)| over the Steklov class.

    The family searched is a flat density plus at most atom_budget atoms;
    the flat level absorbs whatever mass the atoms do not carry and may not
    drop below delta/(2 pi), so every iterate stays in the class and the
    objective never decreases.  Restarts jitter the equidistant initial
    atoms; the best run wins.  Deterministic for a fixed seed.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if atom_budget < 0:
        raise ValueError("atom budget must be nonnegative")
    num = grid_size or default_grid_size(n)
    bound = upper_bound(n, delta)
    if atom_budget == 0:
        measure = CircleMeasure(density=np.full(num, 1.0 / (2.0 * np.pi)))
        value = value_at_one(measure.moments(n))
        return SearchResult(measure, value, bound, np.array([value]))

    rng = np.random.default_rng(seed)
    budget = 1.0 - delta
    best = None
    for restart in range(restarts):
        k = atom_budget
        angles = 2.0 * np.pi * np.arange(1, k + 1) / (k + 1)
        if restart:
            angles = np.mod(angles + rng.normal(scale=0.5 / n, size=k), 2.0 * np.pi)
        masses = np.full(k, budget / k)
        value = _family_value(n, angles, masses)
        trace = [value]
        for _ in range(iterations):
            improved = False
            for j in range(k):
                width = 2.0 * np.pi / (n * (1.0 + len(trace)))
                candidates = angles[j] + width * np.linspace(-1.0, 1.0, 9)
                for cand in candidates:
                    trial = angles.copy()
                    trial[j] = np.mod(cand, 2.0 * np.pi)
                    trial_value = _family_value(n, trial, masses)
                    if trial_value > value * (1.0 + 1e-12):
                        angles, value, improved = trial, trial_value, True
                for scale in (0.95, 1.05):
                    trial_masses = masses.copy()
                    trial_masses[j] = min(masses[j] * scale, budget)
                    other = budget - trial_masses[j]
                    rest = masses.sum() - masses[j]
                    if rest > 0:
                        trial_masses[np.arange(k) != j] *= other / rest
                    trial_value = _family_value(n, angles, trial_masses)
                    if trial_value > value * (1.0 + 1e-12):
                        masses, value, improved = trial_masses, trial_value, True
            trace.append(value)
            if not improved:
                break
        if best is None or value > best[0]:
            best = (value, angles.copy(), masses.copy(), np.array(trace))
    value, angles, masses, trace = best
    measure = _family_measure(delta, angles, masses, num)
    return SearchResult(measure, float(value), bound, trace)
