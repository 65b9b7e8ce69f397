"""Closed forms for the periodic nearest-neighbour chain ``V = circ(1, -c, 0, ..., 0, -c)``.

The discrete Fourier transform diagonalises ``V`` (eigenvalues
``Lambda_k = 1 - 2c cos(2 pi k / n)``) and maps the even-odd sign matrix to
the shift ``k -> k + n/2``. Hence ``Q`` is diagonal in Fourier space with
entries ``d^-_{k+n/2} d^+_k``; the ones that can exceed 1 are

    f(k) = sqrt(Lambda_{k+n/2} / Lambda_k) tanh(sqrt(Lambda_k)/2T) tanh(sqrt(Lambda_{k+n/2})/2T)

for ``|k| <= n/4``. Multiplicities follow from the ``k <-> -k`` symmetry:
k = 0 is simple, 0 < k <= n/4 appear twice (k and n - k). The value at
k = n/4 equals ``tanh^2 <= 1`` and never contributes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BracketError, DomainError, PreconditionError
from .numerics import adaptive_simpson, bisect

THRESHOLD_BRACKET = (1e-6, 10.0)
MONOTONICITY_GRID = 1024


@dataclass(frozen=True)
class ChainParams:
    n: int
    c: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise PreconditionError(f"n must be a positive integer, got {self.n}")
        if not 0.0 <= self.c < 0.5:
            raise PreconditionError(f"coupling c={self.c} outside [0, 0.5)")

    def require_analytic(self) -> None:
        if self.n < 4 or self.n % 4:
            raise PreconditionError(
                f"analytic even-odd spectrum needs n a multiple of 4 (n >= 4), got n={self.n}; "
                "use gaussian.log_negativity for other sizes"
            )


class EvenOddSpectrum(NamedTuple):
    k: np.ndarray
    values: np.ndarray
    multiplicities: np.ndarray


class EvenOddLogNeg(NamedTuple):
    value: float
    k_bar: int


def lambda_k(params: ChainParams, k) -> np.ndarray | float:
    """Eigenvalues ``1 - 2c cos(2 pi k / n)`` of the chain potential."""
    out = 1.0 - 2.0 * params.c * np.cos(2.0 * np.pi * np.asarray(k, dtype=float) / params.n)
    return float(out) if np.ndim(out) == 0 else out


def _tanh_half(lam, T: float):
    if T == 0.0:
        return np.ones_like(np.asarray(lam, dtype=float))
    return np.tanh(np.sqrt(lam) / (2.0 * T))


def _check_T(T: float) -> float:
    T = float(T)
    if not (T >= 0.0 and math.isfinite(T)):
        raise PreconditionError(f"temperature must be finite and >= 0, got {T}")
    return T


def f_eval(k, params: ChainParams, T: float):
    """Even-odd eigenvalue ``f(k, n, c, T)`` (array-valued for array ``k``)."""
    T = _check_T(T)
    lo = lambda_k(params, k)
    hi = lambda_k(params, np.asarray(k) + params.n / 2)
    out = np.sqrt(hi / lo) * _tanh_half(lo, T) * _tanh_half(hi, T)
    return float(out) if np.ndim(out) == 0 else out


def q_spectrum_analytic(params: ChainParams, T: float) -> np.ndarray:
    """Full ascending spectrum of ``Q`` for the even-odd partition (n even)."""
    if params.n % 2:
        raise PreconditionError("even-odd partition needs even n")
    T = _check_T(T)
    k = np.arange(params.n)
    lam = lambda_k(params, k)
    lam_shift = lambda_k(params, k + params.n // 2)
    d_plus = np.sqrt(lam) * _tanh_half(lam, T)
    d_minus = _tanh_half(lam_shift, T) / np.sqrt(lam_shift)
    return np.sort(d_minus * d_plus)


def even_odd_spectrum_analytic(params: ChainParams, T: float) -> EvenOddSpectrum:
    params.require_analytic()
    k = np.arange(params.n // 4 + 1)
    mult = np.full(k.size, 2, dtype=int)
    mult[0] = 1
    return EvenOddSpectrum(k, np.asarray(f_eval(k, params, T)), mult)


def even_odd_logneg_analytic(params: ChainParams, T: float) -> EvenOddLogNeg:
    """Even-odd log-negativity from the closed-form spectrum.

    Returns the value in bits and ``k_bar``, the largest k with f(k) > 1
    (-1 when the partition is PPT).
    """
    spec = even_odd_spectrum_analytic(params, T)
    contrib = np.log2(np.maximum(1.0, spec.values))
    above = np.flatnonzero(spec.values > 1.0)
    k_bar = int(spec.k[above[-1]]) if above.size else -1
    return EvenOddLogNeg(float(np.sum(spec.multiplicities * contrib)), k_bar)


def eo_threshold_lhs(c: float, T: float) -> float:
    """Left-hand side of the even-odd PPT condition ``f(0) = 1`` (n-independent)."""
    a, b = math.sqrt(1.0 - 2.0 * c), math.sqrt(1.0 + 2.0 * c)
    if T == 0.0:
        return b / a
    return b / a * math.tanh(a / (2.0 * T)) * math.tanh(b / (2.0 * T))


def t_eo_threshold(c: float, tol: float = 1e-10) -> float:
    """Even-odd distillability threshold temperature for coupling ``c``.

    The left-hand side decreases strictly in T from ``sqrt((1+2c)/(1-2c)) > 1``
    to 0, so the root is unique.

    Raises:
        DomainError: for c = 0, where the chain is never even-odd entangled.
    """
    if c == 0.0:
        raise DomainError("c = 0: uncoupled oscillators are PPT at every T, no threshold")
    if not 0.0 < c < 0.5:
        raise PreconditionError(f"coupling c={c} outside (0, 0.5)")
    if not tol > 0:
        raise PreconditionError("tol must be positive")
    scale = math.sqrt(1.0 + 2.0 * c)
    lo, hi = THRESHOLD_BRACKET[0] * scale, THRESHOLD_BRACKET[1] * scale

    def g(T):
        return eo_threshold_lhs(c, T) - 1.0

    for _ in range(3):
        g_lo, g_hi = g(lo), g(hi)
        if g_lo > 0 >= g_hi:
            return bisect(g, lo, hi, tol, g_lo=g_lo, g_hi=g_hi)
        if g_lo <= 0:
            lo /= 10.0
        if g_hi > 0:
            hi *= 10.0
    raise BracketError(f"even-odd threshold for c={c} not bracketed in [{lo:.3g}, {hi:.3g}]")


def f_continuum(x, c: float, T: float):
    """``f`` with ``2 pi k / n`` replaced by a continuous momentum ``x``."""
    cx = np.cos(np.asarray(x, dtype=float))
    lo, hi = 1.0 - 2.0 * c * cx, 1.0 + 2.0 * c * cx
    return np.sqrt(hi / lo) * _tanh_half(lo, T) * _tanh_half(hi, T)


def x_bar(c: float, T: float) -> float:
    """Momentum in ``[0, pi/2]`` where the continuum ``f`` drops to 1.

    Zero at or above the even-odd threshold. A single interval ``[0, x_bar)``
    with f > 1 is assumed; monotonic decrease of f on a fine grid is checked.
    """
    T = _check_T(T)
    if not 0.0 <= c < 0.5:
        raise PreconditionError(f"coupling c={c} outside [0, 0.5)")
    if c == 0.0 or f_continuum(0.0, c, T) <= 1.0:
        return 0.0
    if T == 0.0:
        return math.pi / 2
    grid = np.linspace(0.0, math.pi / 2, MONOTONICITY_GRID)
    vals = f_continuum(grid, c, T)
    if np.any(np.diff(vals) > 1e-14 * vals[:-1]):
        raise DomainError(f"f(x) is not monotone on [0, pi/2] for c={c}, T={T}")
    return bisect(lambda x: float(f_continuum(x, c, T)) - 1.0, 0.0, math.pi / 2, 1e-14)


def macro_logneg_density(c: float, T: float, quad_tol: float = 1e-10) -> float:
    """Large-n even-odd log-negativity per oscillator, ``lim E_N / n``.

    Both momentum branches ``+-k`` contribute, so the density is
    ``(1/pi) * integral_0^x_bar log2 f(x) dx``.
    """
    xb = x_bar(c, T)
    if xb == 0.0:
        return 0.0
    res = adaptive_simpson(lambda x: np.log2(f_continuum(x, c, T)), 0.0, xb, tol=quad_tol)
    return float(res.value) / math.pi
