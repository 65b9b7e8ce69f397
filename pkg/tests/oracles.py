"""Independent reference computations used only by the tests.

Nothing here imports the package: each routine is a deliberately naive
second route to a quantity the library computes another way.
"""

import math

import numpy as np


def gram_schmidt_qr(a):
    """Modified Gram-Schmidt QR of a square complex matrix."""
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    q = np.zeros_like(a)
    r = np.zeros_like(a)
    for j in range(n):
        v = a[:, j].copy()
        for i in range(j):
            r[i, j] = np.vdot(q[:, i], v)
            v = v - r[i, j] * q[:, i]
        r[j, j] = np.linalg.norm(v)
        q[:, j] = v / r[j, j] if r[j, j] > 1e-300 else 0.0
    return q, r


def naive_qr_eigvalsh(a, tol=1e-14, max_iter=5000):
    """Eigenvalues of a Hermitian matrix by Wilkinson-shifted QR with deflation."""
    a = np.array(a, dtype=complex)
    scale = max(np.abs(a).max(), 1.0)
    out = []
    n = a.shape[0]
    while n > 1:
        for _ in range(max_iter):
            if np.abs(a[n - 1, : n - 1]).max() <= tol * scale:
                break
            p, q_, r_ = a[n - 2, n - 2].real, a[n - 1, n - 1].real, abs(a[n - 1, n - 2])
            d = 0.5 * (p - q_)
            mu = q_ - r_**2 / (d + math.copysign(math.hypot(d, r_), d if d != 0 else 1.0))
            q, r = gram_schmidt_qr(a[:n, :n] - mu * np.eye(n))
            a = r @ q + mu * np.eye(n)
        else:
            raise RuntimeError("naive QR did not converge")
        out.append(a[n - 1, n - 1].real)
        a = a[: n - 1, : n - 1]
        n -= 1
    out.append(a[0, 0].real)
    return np.sort(out)


def circulant_chain(n, c):
    row = np.zeros(n)
    row[0] = 1.0
    row[1 % n] -= c
    row[-1 % n] -= c
    return np.array([np.roll(row, i) for i in range(n)])


def eq5_lhs(c, T):
    a, b = math.sqrt(1 - 2 * c), math.sqrt(1 + 2 * c)
    return b / a * math.tanh(a / (2 * T)) * math.tanh(b / (2 * T))


def eq5_root(c):
    from scipy.optimize import brentq

    return brentq(lambda T: eq5_lhs(c, T) - 1.0, 1e-4, 20.0, xtol=1e-15, rtol=1e-15)


def brute_force_q_eigs(n, c, T, signs):
    """Q spectrum by a general non-symmetric eigensolve (scipy expm/sqrtm route)."""
    from scipy.linalg import sqrtm, expm, inv

    V = circulant_chain(n, c)
    root = np.real(sqrtm(V))
    if T == 0:
        W = np.eye(n)
    else:
        W = np.eye(n) + 2.0 * inv(expm(root / T) - np.eye(n))
    wm = inv(W) @ inv(root)
    wp = inv(W) @ root
    P = np.diag(signs)
    return np.sort(np.linalg.eigvals(P @ wm @ P @ wp).real)


def finite_circulant_row(n, c, T, sign):
    """First row of omega_pm for the finite chain via inverse DFT of its eigenvalues."""
    k = np.arange(n)
    lam = 1 - 2 * c * np.cos(2 * np.pi * k / n)
    d = lam ** (0.5 * sign) * np.tanh(np.sqrt(lam) / (2 * T))
    return np.real(np.fft.ifft(d))
