"""Hurwitz zeta function for integer order."""

from __future__ import annotations

import math

# B_2, B_4, B_6, B_8, B_10
_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0)
_DIRECT_TERMS = 64


def hurwitz_zeta(s: int, a: float) -> float:
    """``zeta(s, a) = sum_{j >= 0} (j + a)^{-s}`` for integer ``s >= 2`` and ``a >= 1``.

    The first N terms are summed directly (smallest first); the remainder
    ``sum_{j >= N} (j + a)^{-s}`` is the integral ``(N+a)^{1-s}/(s-1)`` plus
    the half-term and Euler-Maclaurin corrections through B_10. With
    N = 64 the neglected correction is below 1e-20 for every admissible
    (s, a), well inside the 1e-12 budget.
    """
    if int(s) != s or s < 2:
        raise ValueError(f"s must be an integer >= 2, got {s}")
    if not a >= 1.0:
        raise ValueError(f"a must be >= 1, got {a}")
    s = int(s)
    n_direct = _DIRECT_TERMS
    direct = math.fsum((j + a) ** -s for j in reversed(range(n_direct)))
    x = n_direct + a
    tail = x ** (1 - s) / (s - 1) + 0.5 * x**-s
    # d^{2k-1}/dx^{2k-1} x^{-s} = -(s)(s+1)...(s+2k-2) x^{-s-2k+1}
    rising = float(s)
    for k, b2k in enumerate(_BERNOULLI, start=1):
        tail += b2k / math.factorial(2 * k) * rising * x ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return direct + tail
