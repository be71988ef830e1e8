"""Polynomial approximants to (1 - z)**(+beta) and (1 - z)**(-beta).

The two Taylor families, the Fejer kernel and its symmetrized shift, and
grid verification of the size/sign envelopes the construction relies on.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.special import factorial

from .poly import eval_on_circle, polyval

__all__ = [
    "FractionalPowerTaylor",
    "build_A",
    "build_B",
    "fejer_kernel",
    "shifted_fejer",
    "trifle_integrals",
    "BoundRow",
    "BoundReport",
    "verify_appendix_A",
]


@dataclass(frozen=True)
class FractionalPowerTaylor:
    """Truncated Taylor polynomial for a fractional power of (1 - z).

    kind "B" approximates (1 - z)**(-beta): coefficients d_0 = 1,
    d_j = d_{j-1} (beta + j - 1)/j, all positive, d_j ~ j**(beta-1).

    kind "A" approximates (1 - z)**(+beta) through the partial sums
    c_j = beta (1-beta) ... (j-1-beta)/j! of 1 - (1-z)**beta, plus the
    constant regularizer M n**(-beta) that keeps the real part positive:
    A_n(z) = M n**(-beta) + sum_j c_j (1 - z**j).
    """

    kind: str
    beta: float
    degree: int
    coeffs: np.ndarray
    series: np.ndarray
    correction: float = 0.0

    def __call__(self, z):
        return polyval(self.coeffs, z)

    def on_circle(self, num_points: int) -> np.ndarray:
        return eval_on_circle(self.coeffs, num_points)


def build_B(n: int, beta: float) -> FractionalPowerTaylor:
    """Degree-n Taylor polynomial of (1 - z)**(-beta), beta in (0, 1)."""
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")
    d = np.ones(n + 1)
    for j in range(1, n + 1):
        d[j] = d[j - 1] * (beta + j - 1) / j
    return FractionalPowerTaylor(kind="B", beta=beta, degree=n, coeffs=d.astype(complex), series=d)


def build_A(n: int, beta: float, correction: float = 1.0) -> FractionalPowerTaylor:
    """Regularized degree-n approximant to (1 - z)**beta, beta in (0, 1).

    The series coefficients c_j are positive and sum to 1 as n grows; the
    correction M n**(-beta) shifts the constant term.
    """
    if not 0 < beta < 1:
        raise ValueError("beta must lie in (0, 1)")
    if correction <= 0:
        raise ValueError("correction must be positive")
    c = np.zeros(n + 1)
    for j in range(1, n + 1):
        c[j] = beta if j == 1 else c[j - 1] * (j - 1 - beta) / j
    coeffs = -c.astype(complex)
    coeffs[0] = correction * n ** (-beta) + c.sum()
    return FractionalPowerTaylor(
        kind="A", beta=beta, degree=n, coeffs=coeffs, series=c, correction=correction
    )


def fejer_kernel(m: int, theta) -> np.ndarray:
    """F_m(theta) = (1/m) sin^2(m theta/2) / sin^2(theta/2), F_m(0) = m."""
    if m < 1:
        raise ValueError("order must be >= 1")
    theta = np.asarray(theta, dtype=float)
    half = theta / 2.0
    s = np.sin(half)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin(m * half) ** 2 / (m * s**2)
    return np.where(np.isclose(np.abs(s), 0.0, atol=1e-14), float(m), out)


def shifted_fejer(m: int, theta) -> np.ndarray:
    """G_m = F_m + (F_m(. - pi/m) + F_m(. + pi/m)) / 2; positive, mean 2."""
    shift = np.pi / m
    theta = np.asarray(theta, dtype=float)
    return fejer_kernel(m, theta) + 0.5 * (
        fejer_kernel(m, theta - shift) + fejer_kernel(m, theta + shift)
    )


def trifle_integrals(gamma: float, a: float) -> tuple[float, float]:
    """(int_0^a cos(x)/x^gamma dx, int_0^a sin(x)/x^gamma dx).

    The cosine integral is positive for gamma in [1/2, 1), the sine one for
    gamma in (0, 1).  The integrable endpoint singularity is summed as a
    Taylor series on [0, head]; adaptive quadrature with the oscillatory
    weight handles the smooth remainder out to large a.
    """
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    head = min(a, 0.5)
    k = np.arange(16)
    cos_val = float(np.sum(
        (-1.0) ** k * head ** (2 * k + 1 - gamma)
        / (factorial(2 * k) * (2 * k + 1 - gamma))
    ))
    sin_val = float(np.sum(
        (-1.0) ** k * head ** (2 * k + 2 - gamma)
        / (factorial(2 * k + 1) * (2 * k + 2 - gamma))
    ))
    if a > head:
        tail_cos, _ = quad(lambda x: x ** (-gamma), head, a, weight="cos", wvar=1.0, limit=400)
        tail_sin, _ = quad(lambda x: x ** (-gamma), head, a, weight="sin", wvar=1.0, limit=400)
        cos_val += tail_cos
        sin_val += tail_sin
    return float(cos_val), float(sin_val)


@dataclass(frozen=True)
class BoundRow:
    lemma: str
    n: int
    beta: float
    ratio_min: float
    ratio_max: float


@dataclass
class BoundReport:
    rows: list[BoundRow] = field(default_factory=list)

    def add(self, lemma: str, n: int, beta: float, values) -> None:
        values = np.asarray(values, dtype=float)
        self.rows.append(BoundRow(lemma, n, beta, float(values.min()), float(values.max())))

    def extend(self, other: "BoundReport") -> None:
        self.rows.extend(other.rows)

    def by_lemma(self, lemma: str) -> list[BoundRow]:
        return [r for r in self.rows if r.lemma == lemma]

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["lemma", "n", "beta", "ratio_min", "ratio_max"])
            for r in self.rows:
                writer.writerow([r.lemma, r.n, f"{r.beta:.12g}", f"{r.ratio_min:.12g}", f"{r.ratio_max:.12g}"])


def _two_sided_log_grid(lo: float, hi: float, num: int) -> np.ndarray:
    half = np.geomspace(lo, hi, num)
    return np.concatenate([-half[::-1], half])


def verify_appendix_A(
    kind: str,
    n: int,
    beta: float,
    grid_size: int = 512,
    upsilon: float = 0.3,
) -> BoundReport:
    """Ratio envelopes for one approximant family at one (n, beta).

    Each row records min/max of (computed quantity)/(asserted envelope) over
    the relevant angle window; a regression test freezes the bands.  Sign
    assertions enter through the ratios being positive.

    kind "B": real part ~ (1/n + |theta|)**(-beta) and the signed imaginary
    part ~ |theta|**(-beta) away from 0, ~ theta n**(1+beta) near 0 (lemma
    range beta in (0, 1/2)); first and second theta-derivatives obey
    |B'| <~ n**beta/|theta| and |B''| <~ n**beta/theta^2 outside 1/n, with
    n**(1+beta) and n**(2+beta) caps inside (any beta in (0, 1)).

    kind "A": mirrored envelopes for (1 - z)**beta with exponent +beta, and
    |A'| <~ |theta|**(beta-1) outside 1/n, n**(1-beta) inside.

    kind "trifle": positivity of the truncated cos/sin integrals across cutoffs.
    """
    report = BoundReport()
    if kind == "trifle":
        cutoffs = [0.1, 1.0, np.pi, 10.0, 100.0]
        cos_vals = []
        sin_vals = []
        for a in cutoffs:
            c, s = trifle_integrals(beta, a)
            cos_vals.append(c)
            sin_vals.append(s)
        if beta >= 0.5:
            report.add("trifle_cos", 0, beta, cos_vals)
        report.add("trifle_sin", 0, beta, sin_vals)
        return report

    inner = 0.01 / n
    mid = _two_sided_log_grid(inner, upsilon, grid_size)
    small = _two_sided_log_grid(inner / 64.0, inner * 0.999, grid_size // 4)
    full = np.concatenate([small, mid])

    if kind == "B":
        poly = build_B(n, beta)
        vals_full = poly(np.exp(1j * full))
        vals_mid = poly(np.exp(1j * mid))
        vals_small = poly(np.exp(1j * small))
        if beta < 0.5:
            report.add("poly2_re", n, beta, vals_full.real * (1.0 / n + np.abs(full)) ** beta)
            report.add("poly2_im_mid", n, beta, vals_mid.imag * np.sign(mid) * np.abs(mid) ** beta)
            report.add(
                "poly2_im_small", n, beta, vals_small.imag / (small * n ** (1.0 + beta))
            )
        # d/dtheta B(e^{i theta}) = i sum_j j d_j z^j; only moduli enter below
        d1 = polyval(np.arange(n + 1) * poly.coeffs, np.exp(1j * full))
        d2 = polyval(np.arange(n + 1) ** 2 * poly.coeffs, np.exp(1j * full))
        env1 = np.where(np.abs(full) > 1.0 / n, n**beta / np.abs(full), n ** (1.0 + beta))
        env2 = np.where(np.abs(full) > 1.0 / n, n**beta / full**2, n ** (2.0 + beta))
        report.add("derider_d1", n, beta, np.abs(d1) / env1)
        report.add("derider_d2", n, beta, np.abs(d2) / env2)
        return report

    if kind == "A":
        poly = build_A(n, beta)
        vals_full = poly(np.exp(1j * full))
        vals_mid = poly(np.exp(1j * mid))
        vals_small = poly(np.exp(1j * small))
        report.add("poly1_re", n, beta, vals_full.real / (1.0 / n + np.abs(full)) ** beta)
        report.add("poly1_im_mid", n, beta, -vals_mid.imag * np.sign(mid) / np.abs(mid) ** beta)
        report.add(
            "poly1_im_small", n, beta, -vals_small.imag / (small * n ** (1.0 - beta))
        )
        d1 = polyval(np.arange(n + 1) * poly.coeffs, np.exp(1j * full))
        env1 = np.where(np.abs(full) > 0.01 / n, np.abs(full) ** (beta - 1.0), n ** (1.0 - beta))
        report.add("derder_d1", n, beta, np.abs(d1) / env1)
        return report

    raise ValueError("kind must be 'A', 'B' or 'trifle'")
