"""PPT certificates for the half-half partition of the harmonic chain.

Two routes are provided.

Finite n: the half-half log-negativity vanishes when

    lambda_min[W]^{-2} + 2 r(X omega_+) < 1,

where ``X`` keeps only the blocks of ``omega_-`` that couple the two halves
and ``r`` is the spectral radius.

Macroscopic limit: ``omega_pm`` become Laurent operators whose symbols are
``d_pm(x) = Lambda(x)^{pm 1/2} tanh(sqrt(Lambda(x))/2T)`` with
``Lambda(x) = 1 - 2c cos x``. Their Fourier coefficients ``v_l`` are bounded
by ``C_s / (2 pi l^s)`` with ``C_s = int_0^{2 pi} |d^(s)|``. Summing m
coefficients exactly and bounding the rest by a Hurwitz zeta tail gives
upper bounds ``K_pm`` on ``||omega_+||`` and ``||X||`` (max-row-sum norm),
and the state is PPT whenever

    2 K_+ K_- + tanh^2(sqrt(1+2c)/2T) < 1.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import taylor
from .errors import ConvergenceError, PreconditionError
from .gaussian import HarmonicModel, omega
from .numerics import adaptive_simpson, bisect
from .special import hurwitz_zeta

log = logging.getLogger(__name__)

SCAN_POINTS = 2048
CURVE_GRID = 256
CURVE_WINDOW = (0.01, 10.0)
IMAG_TOL = 1e-12


class NonMonotonicCertificateWarning(RuntimeWarning):
    """The macroscopic certificate switched on and off more than once in T."""


@dataclass(frozen=True)
class NormBoundParams:
    m: int = 10
    s: int = 3

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise PreconditionError(f"m must be an integer >= 1, got {self.m}")
        if int(self.s) != self.s or not 2 <= self.s <= taylor.MAX_ORDER:
            raise PreconditionError(f"s must be an integer in [2, {taylor.MAX_ORDER}], got {self.s}")


def _sign(sign) -> int:
    if sign in ("+", 1):
        return 1
    if sign in ("-", -1):
        return -1
    raise PreconditionError(f"sign must be '+' or '-', got {sign!r}")


def _check(c: float, T: float) -> None:
    if not 0.0 <= c < 0.5:
        raise PreconditionError(f"coupling c={c} outside [0, 0.5)")
    if not (T >= 0.0 and math.isfinite(T)):
        raise PreconditionError(f"temperature must be finite and >= 0, got {T}")


def d_continuum(x, c: float, T: float, sign):
    """Symbol ``d_pm(x)`` of ``omega_pm``; T = 0 uses tanh -> 1."""
    _check(c, T)
    p = _sign(sign)
    lam = 1.0 - 2.0 * c * np.cos(np.asarray(x, dtype=float))
    factor = 1.0 if T == 0.0 else np.tanh(np.sqrt(lam) / (2.0 * T))
    return lam ** (0.5 * p) * factor


def d_jet(x, c: float, T: float, sign, order: int) -> taylor.Jet:
    """Taylor jet of ``d_pm`` at the points ``x`` up to ``order``."""
    _check(c, T)
    p = _sign(sign)
    X = taylor.Jet.variable(x, order)
    root = taylor.sqrt(1.0 - 2.0 * c * taylor.cos(X))
    if T == 0.0:
        return root if p > 0 else 1.0 / root
    th = taylor.tanh(root / (2.0 * T))
    return root * th if p > 0 else th / root


def d_derivative(x, s: int, c: float, T: float, sign) -> np.ndarray:
    return d_jet(x, c, T, sign, s).derivative(s)


def fourier_coeffs(ls, sign, c: float, T: float, quad_tol: float = 1e-12) -> np.ndarray:
    """Coefficients ``v_l = (1/2pi) int_0^{2pi} d(x) e^{i l x} dx`` for each ``l`` in ``ls``.

    The symbol is even, so the imaginary parts vanish; they are integrated
    alongside and checked against ``IMAG_TOL``.
    """
    _check(c, T)
    ls = np.atleast_1d(np.asarray(ls, dtype=int))
    if c == 0.0:
        return np.where(ls == 0, float(d_continuum(0.0, c, T, sign)), 0.0)
    lf = ls.astype(float)[:, None]

    def integrand(x):
        d = d_continuum(x, c, T, sign)
        ph = lf * x[None, :]
        return np.concatenate([np.cos(ph) * d, np.sin(ph) * d])

    init = max(16, 8 * (int(np.abs(ls).max()) + 1))
    res = adaptive_simpson(integrand, 0.0, 2.0 * np.pi, tol=2.0 * np.pi * quad_tol,
                           initial_intervals=init)
    vals = np.asarray(res.value) / (2.0 * np.pi)
    re, im = vals[: ls.size], vals[ls.size:]
    worst = float(np.max(np.abs(im)))
    if worst > IMAG_TOL:
        raise ConvergenceError(
            f"Fourier coefficient imaginary part {worst:.3e} exceeds {IMAG_TOL:g} "
            f"(achieved quadrature error {res.error / (2 * np.pi):.3e})"
        )
    return re


def fourier_coeff(l: int, sign, c: float, T: float, quad_tol: float = 1e-12) -> float:
    return float(fourier_coeffs([l], sign, c, T, quad_tol)[0])


def _sign_change_roots(g, grid: np.ndarray, vals: np.ndarray) -> list[float]:
    roots = []
    sg = np.sign(vals)
    for i in np.flatnonzero(sg[:-1] * sg[1:] < 0):
        roots.append(bisect(lambda x: float(g(np.array([x]))[0]), grid[i], grid[i + 1], 1e-14,
                            g_lo=vals[i], g_hi=vals[i + 1]))
    roots.extend(grid[sg == 0].tolist())
    return roots


def c_s_constant(s: int, sign, c: float, T: float, quad_tol: float = 1e-10) -> float:
    """Total absolute mass ``int_0^{2pi} |d^(s)(x)| dx`` of the s-th derivative.

    The derivative comes from Taylor-mode AD. Its zeros are located by
    bisection on sign changes of a 2048-cell scan and ``|d^(s)|`` is
    integrated piecewise, so no kink enters a quadrature panel.
    """
    if int(s) != s or not 1 <= s <= taylor.MAX_ORDER:
        raise PreconditionError(f"s must be an integer in [1, {taylor.MAX_ORDER}], got {s}")
    _check(c, T)
    if c == 0.0:
        return 0.0

    def g(x):
        return d_derivative(x, int(s), c, T, sign)

    grid = np.linspace(0.0, 2.0 * np.pi, SCAN_POINTS + 1)
    vals = g(grid)
    # Odd derivatives vanish exactly at 0, pi, 2pi; suppress roundoff there.
    vals[np.abs(vals) <= 1e-13 * np.max(np.abs(vals))] = 0.0
    cuts = np.unique(np.concatenate([[0.0, 2.0 * np.pi], _sign_change_roots(g, grid, vals)]))
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 0:
            continue
        piece_tol = quad_tol * (b - a) / (2.0 * np.pi)
        init = max(2, int(np.ceil((b - a) / (2.0 * np.pi) * 64)))
        total += abs(adaptive_simpson(lambda x: np.abs(g(x)), a, b, tol=piece_tol,
                                      initial_intervals=init).value)
    return total


@dataclass(frozen=True)
class FourierSide:
    """Everything the norm bound needs for one of ``omega_pm``."""

    sign: int
    c: float
    T: float
    s: int
    v: np.ndarray  # v[l] for l = 0..m
    C_s: float

    @classmethod
    def build(cls, sign, c: float, T: float, params: NormBoundParams,
              quad_tol: float = 1e-12) -> "FourierSide":
        p = _sign(sign)
        v = fourier_coeffs(np.arange(params.m + 1), p, c, T, quad_tol)
        v.setflags(write=False)
        C = c_s_constant(params.s, p, c, T, max(quad_tol, 1e-10))
        return cls(p, c, T, params.s, v, C)

    @property
    def m(self) -> int:
        return self.v.size - 1

    def decay_bound(self, l) -> np.ndarray:
        l = np.asarray(l, dtype=float)
        return self.C_s / (2.0 * np.pi * l**self.s)

    def k_bound(self) -> float:
        zeta = hurwitz_zeta(self.s, self.m + 1)
        av = np.abs(self.v)
        if self.sign > 0:
            return float(av[0] + 2.0 * av[1:].sum() + self.C_s * zeta / np.pi)
        return float(av[1:].sum() + self.C_s * zeta / (2.0 * np.pi))


def k_bound(params: NormBoundParams, sign, c: float, T: float, quad_tol: float = 1e-12) -> float:
    """Upper bound ``K_+ >= ||omega_+||`` or ``K_- >= ||X||`` in the macroscopic limit."""
    return FourierSide.build(sign, c, T, params, quad_tol).k_bound()


def certificate_lhs(c: float, T: float, params: NormBoundParams,
                    quad_tol: float = 1e-12) -> float:
    """``2 K_+ K_- + ((e^a - 1)/(e^a + 1))^2`` with ``a = sqrt(1+2c)/T``."""
    if not T > 0:
        raise PreconditionError("the macroscopic certificate needs T > 0")
    kp = k_bound(params, "+", c, T, quad_tol)
    km = k_bound(params, "-", c, T, quad_tol)
    th = math.tanh(math.sqrt(1.0 + 2.0 * c) / (2.0 * T))
    return 2.0 * kp * km + th * th


def hh_ppt_certified_macro(c: float, T: float, params: NormBoundParams = NormBoundParams(),
                           quad_tol: float = 1e-12) -> bool:
    """True certifies zero half-half log-negativity as n -> infinity."""
    return certificate_lhs(c, T, params, quad_tol) < 1.0


def hh_macro_bound_curve(c: float, params: NormBoundParams = NormBoundParams(),
                         tol: float = 1e-6, t_grid: np.ndarray | None = None,
                         quad_tol: float = 1e-12) -> float:
    """Smallest T above which the macroscopic certificate holds (upper bound on T_hh).

    Scans ``t_grid`` (default 256 log-spaced points on [0.01, 10]) and
    bisects across the highest certified/uncertified switch. Extra switches
    below it are reported with :class:`NonMonotonicCertificateWarning`.

    Raises:
        ConvergenceError: the certificate does not switch on inside the window.
    """
    if not 0.0 < c < 0.5:
        raise PreconditionError(f"coupling c={c} outside (0, 0.5)")
    grid = np.geomspace(*CURVE_WINDOW, CURVE_GRID) if t_grid is None else np.asarray(t_grid)

    def excess(T):
        return certificate_lhs(c, T, params, quad_tol) - 1.0

    vals = np.array([excess(T) for T in grid])
    certified = vals < 0
    if not certified[-1] or certified.all():
        raise ConvergenceError(
            f"certificate for c={c}, m={params.m}, s={params.s} does not switch on "
            f"within T in [{grid[0]:.3g}, {grid[-1]:.3g}] "
            f"({int(certified.sum())}/{grid.size} points certified)"
        )
    i = int(np.flatnonzero(~certified)[-1])
    extra = int(np.count_nonzero(certified[:i]))
    if extra:
        warnings.warn(
            f"non-monotonic certificate for c={c}: {extra} certified grid points below "
            f"T={grid[i]:.4g}", NonMonotonicCertificateWarning, stacklevel=2)
    return bisect(excess, grid[i], grid[i + 1], tol, g_lo=vals[i], g_hi=vals[i + 1])


def lambda_min_w(c: float, T: float) -> float:
    """Smallest eigenvalue of ``W(T)`` for the chain: ``coth(sqrt(1+2c)/2T)``."""
    a = math.sqrt(1.0 + 2.0 * c) / T
    return (math.exp(a) + 1.0) / (math.exp(a) - 1.0) if a < 700 else 1.0


def build_x(model: HarmonicModel, T: float) -> np.ndarray:
    """``omega_-`` restricted to the blocks coupling sites < n/2 with sites >= n/2."""
    n = model.n
    if n % 2:
        raise PreconditionError("half-half blocks need an even n")
    first = np.arange(n) < n // 2
    mask = first[:, None] != first[None, :]
    return np.where(mask, omega(model, T, "-"), 0.0)


def hh_ppt_sufficient_finite(model: HarmonicModel, T: float) -> bool:
    """Finite-n sufficient condition for the half-half partition to be PPT.

    Tries ``r(X omega_+) <= ||X omega_+||_inf`` first; if that is
    inconclusive, computes ``r`` exactly from the symmetric similarity
    ``omega_+^{1/2} X omega_+^{1/2}``.
    """
    if model.coupling is None:
        raise PreconditionError("finite-n certificate needs the circulant nearest-neighbour chain")
    if not T > 0:
        raise PreconditionError("finite-n certificate needs T > 0")
    c = model.coupling
    base = lambda_min_w(c, T) ** -2
    X = build_x(model, T)
    wp = omega(model, T, "+")
    row_sum = float(np.max(np.sum(np.abs(X @ wp), axis=1)))
    if base + 2.0 * row_sum < 1.0:
        return True
    spec = model.spectrum
    lam = spec.eigenvalues
    root = spec.from_values(np.sqrt(np.sqrt(lam) * np.tanh(np.sqrt(lam) / (2.0 * T))))
    m = root @ X @ root
    radius = float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (m + m.T)))))
    return base + 2.0 * radius < 1.0
