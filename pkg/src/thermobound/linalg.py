"""Dense symmetric/Hermitian eigendecomposition and spectral calculus.

Every matrix function in the package is evaluated through an eigenbasis:
``g(A) = U diag(g(lambda)) U^T``. Spectra of products of symmetric positive
definite matrices go through the similarity ``B^{1/2} A B^{1/2}`` so that only
symmetric eigensolves are ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, PreconditionError

SYMMETRY_TOL = 1e-12
SPD_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs of a symmetric or Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def apply(self, g: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Return ``U diag(g(lambda)) U^H``."""
        return self.from_values(_apply_scalar(g, self.eigenvalues))

    def from_values(self, values: np.ndarray) -> np.ndarray:
        U = self.eigenvectors
        out = (U * values) @ U.conj().T
        # Remove roundoff asymmetry so results satisfy the symmetry invariant exactly.
        return 0.5 * (out + out.conj().T)

    def reconstruct(self) -> np.ndarray:
        return self.from_values(self.eigenvalues)


def as_symmetric(a, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Validate a real square matrix and return its exactly symmetric part.

    Asymmetry above ``tol * max(1, max|a|)`` is rejected.
    """
    a = np.asarray(a)
    if np.iscomplexobj(a):
        raise PreconditionError("expected a real matrix; use as_hermitian for complex input")
    a = a.astype(float, copy=False)
    _check_square(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    asym = float(np.max(np.abs(a - a.T)))
    if asym > tol * scale:
        raise PreconditionError(f"matrix is not symmetric: max|A - A^T| = {asym:.3e}")
    return 0.5 * (a + a.T)


def as_hermitian(a, tol: float = SYMMETRY_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    _check_square(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    asym = float(np.max(np.abs(a - a.conj().T)))
    if asym > tol * scale:
        raise PreconditionError(f"matrix is not Hermitian: max|A - A^H| = {asym:.3e}")
    return 0.5 * (a + a.conj().T)


def _check_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise PreconditionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise PreconditionError("matrix has non-finite entries")


def _off_diagonal_residual(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _eigh(a: np.ndarray) -> Spectrum:
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(
            f"eigensolver failed to converge for dim {a.shape[0]} "
            f"(off-diagonal residual {_off_diagonal_residual(a):.3e}): {exc}"
        ) from exc
    return Spectrum(w, v)


def eigh_sym(a) -> Spectrum:
    """Eigendecomposition of a real symmetric matrix (ascending eigenvalues)."""
    return _eigh(as_symmetric(a))


def eigh_herm(a) -> Spectrum:
    """Eigendecomposition of a complex Hermitian matrix (ascending eigenvalues)."""
    return _eigh(as_hermitian(a))


def eigvalsh_sym(a) -> np.ndarray:
    """Eigenvalues only; cheaper than :func:`eigh_sym` when vectors are not needed."""
    a = as_symmetric(a)
    try:
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(
            f"eigensolver failed to converge for dim {a.shape[0]} "
            f"(off-diagonal residual {_off_diagonal_residual(a):.3e}): {exc}"
        ) from exc


def _apply_scalar(g: Callable, lam: np.ndarray) -> np.ndarray:
    try:
        with np.errstate(all="ignore"):
            vals = np.asarray(g(lam), dtype=float)
        if vals.shape != lam.shape:
            vals = np.broadcast_to(vals, lam.shape).copy()
    except (ValueError, ArithmeticError, TypeError):
        vals = np.empty_like(lam)
        for i, x in enumerate(lam):
            try:
                vals[i] = g(float(x))
            except (ValueError, ArithmeticError) as exc:
                raise DomainError(f"function undefined at eigenvalue {x!r}: {exc}") from exc
    bad = ~np.isfinite(vals)
    if bad.any():
        raise DomainError(f"function is not finite at eigenvalue {lam[bad][0]!r}")
    return vals


def matrix_function(a, g: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Spectral matrix function ``g(A)`` of a symmetric matrix.

    ``g`` should accept an array of eigenvalues; scalar-only callables are
    tolerated and evaluated elementwise.

    Raises:
        DomainError: if ``g`` is undefined or non-finite at an eigenvalue.
    """
    return eigh_sym(a).apply(g)


def spd_product_spectrum(a, b, *, b_sqrt: np.ndarray | None = None) -> np.ndarray:
    """Ascending eigenvalues of ``A @ B`` for symmetric positive definite A, B.

    Computed as the spectrum of ``B^{1/2} A B^{1/2}``. A caller that already
    holds ``B^{1/2}`` (e.g. from a cached eigenbasis) may pass it; in that case
    ``b`` is not decomposed again and its definiteness is the caller's
    responsibility.

    Raises:
        PreconditionError: if A or B is not positive definite, reporting the
            offending minimum eigenvalue.
    """
    a = as_symmetric(a)
    if b_sqrt is None:
        spec_b = eigh_sym(b)
        lam_b = spec_b.eigenvalues
        if lam_b[0] <= SPD_TOL * max(abs(lam_b[-1]), np.finfo(float).tiny):
            raise PreconditionError(
                f"B is not positive definite: min eigenvalue {lam_b[0]:.3e}"
            )
        b_sqrt = spec_b.from_values(np.sqrt(lam_b))
    m = b_sqrt @ a @ b_sqrt
    w = eigvalsh_sym(0.5 * (m + m.T))
    if w[0] <= SPD_TOL * max(abs(w[-1]), np.finfo(float).tiny):
        raise PreconditionError(
            f"A is not positive definite: min eigenvalue of B^1/2 A B^1/2 is {w[0]:.3e}"
        )
    return w
