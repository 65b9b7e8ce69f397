"""Scalar numerics: vectorised adaptive Simpson quadrature and bisection."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .errors import BracketError, ConvergenceError

MAX_INTERVALS = 2**20


class QuadResult(NamedTuple):
    value: np.ndarray | float
    error: float
    intervals: int


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-10,
    initial_intervals: int = 8,
    max_intervals: int = MAX_INTERVALS,
) -> QuadResult:
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson's rule.

    ``f`` is called on 1-D arrays of abscissae and must return an array whose
    last axis matches; leading axes are integrated together (vector-valued
    integrands share one mesh and the error test uses the worst component).

    Intervals are refined level by level so that every call to ``f`` is a
    batch. An interval of width h is accepted when the Simpson/two-half
    Simpson difference is below ``15 * tol * h / (b - a)``; accepted values
    carry the Richardson correction.

    Args:
        f: vectorised integrand.
        a, b: finite integration limits.
        tol: absolute tolerance on the whole integral.
        initial_intervals: uniform pre-split, needed for oscillatory
            integrands whose coarse samples could alias to a constant.
        max_intervals: cap on the total number of subintervals created.

    Returns:
        QuadResult with the integral, the summed error estimate and the
        number of subintervals used.

    Raises:
        ConvergenceError: if the interval budget is exhausted.
    """
    if a == b:
        probe = np.asarray(f(np.array([a], dtype=float)))
        return QuadResult(np.zeros(probe.shape[:-1]) if probe.ndim > 1 else 0.0, 0.0, 0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    edges = np.linspace(a, b, initial_intervals + 1)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    flo, fmid, fhi = (np.asarray(f(x), dtype=float) for x in (lo, mid, hi))
    whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    density = tol / (b - a)
    total = np.zeros(whole.shape[:-1])
    err_total = 0.0
    used = initial_intervals

    while lo.size:
        h = hi - lo
        flm = np.asarray(f(0.5 * (lo + mid)), dtype=float)
        frm = np.asarray(f(0.5 * (mid + hi)), dtype=float)
        left = h / 12.0 * (flo + 4.0 * flm + fmid)
        right = h / 12.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - whole
        err = np.abs(delta)
        if err.ndim > 1:
            err = err.reshape(-1, err.shape[-1]).max(axis=0)
        # Widths at the float resolution cannot be split further.
        tiny = h <= 64 * np.finfo(float).eps * max(abs(a), abs(b), 1.0)
        ok = (err <= 15.0 * density * h) | tiny
        if ok.any():
            total = total + np.sum((left + right + delta / 15.0)[..., ok], axis=-1)
            err_total += float(np.sum(err[ok])) / 15.0
        bad = ~ok
        if not bad.any():
            break
        used += int(bad.sum())
        if used > max_intervals:
            raise ConvergenceError(
                f"adaptive Simpson on [{a}, {b}] exceeded {max_intervals} subintervals; "
                f"achieved error estimate {err_total + float(np.sum(err[bad])) / 15.0:.3e} "
                f"vs tolerance {tol:.3e}"
            )
        lo_b, mid_b, hi_b = lo[bad], mid[bad], hi[bad]
        lo = np.concatenate([lo_b, mid_b])
        hi = np.concatenate([mid_b, hi_b])
        mid = 0.5 * (lo + hi)
        flo = np.concatenate([flo[..., bad], fmid[..., bad]], axis=-1)
        new_mid = np.concatenate([flm[..., bad], frm[..., bad]], axis=-1)
        fhi = np.concatenate([fmid[..., bad], fhi[..., bad]], axis=-1)
        fmid = new_mid
        whole = np.concatenate([left[..., bad], right[..., bad]], axis=-1)

    value = sign * total
    if np.ndim(value) == 0:
        value = float(value)
    return QuadResult(value, err_total, used)


def bisect(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    *,
    g_lo: float | None = None,
    g_hi: float | None = None,
    max_iter: int = 400,
) -> float:
    """Root of ``g`` in ``[lo, hi]`` by bisection; returns the final midpoint.

    The returned point lies in a bracket of width ``<= tol`` that still
    contains a sign change of ``g``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    g_lo = g(lo) if g_lo is None else g_lo
    g_hi = g(hi) if g_hi is None else g_hi
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if np.sign(g_lo) == np.sign(g_hi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: g={g_lo:.3e}, {g_hi:.3e}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid
        if np.sign(g_mid) == np.sign(g_lo):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    else:
        raise ConvergenceError(f"bisection did not reach width {tol} in {max_iter} steps")
    return 0.5 * (lo + hi)
