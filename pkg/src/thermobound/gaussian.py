"""Thermal states of coupled harmonic oscillators and their log-negativity.

The Hamiltonian is ``H = 1/2 sum p_i^2 + 1/2 sum x_i V_ij x_j`` with unit
masses, hbar = k_B = 1. For a bipartition encoded by a sign vector ``P``, the
log-negativity of the thermal state is

    E_N = sum_k log2 max(1, lambda_k(Q)),   Q = P omega_- P omega_+,

with ``omega_pm = W(T)^{-1} V^{pm 1/2}`` and ``W(T) = coth(V^{1/2} / 2T)``.
Both ``W`` and ``V^{pm 1/2}`` are functions of ``V``, so everything is
evaluated in the (cached) eigenbasis of ``V``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketError, PreconditionError
from .linalg import Spectrum, as_symmetric, eigh_sym, spd_product_spectrum
from .numerics import bisect

log = logging.getLogger(__name__)

PPT_TOL = 1e-10
PRESCAN_POINTS = 32
BRACKET = (1e-6, 10.0)
MAX_WIDENINGS = 2


def circulant_potential(n: int, c: float) -> np.ndarray:
    """Nearest-neighbour periodic potential ``circ(1, -c, 0, ..., 0, -c)``.

    For n <= 2 the two neighbours coincide and their couplings add, which keeps
    the eigenvalues equal to ``1 - 2c cos(2 pi k / n)`` for every n.
    """
    if n < 1:
        raise PreconditionError("n must be positive")
    row = np.zeros(n)
    row[0] += 1.0
    row[1 % n] -= c
    row[-1 % n] -= c
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


@dataclass(frozen=True, eq=False)
class HarmonicModel:
    """``n`` oscillators with symmetric positive definite potential ``V``.

    ``coupling`` is set only for the nearest-neighbour circulant chain; code
    that relies on the chain's closed forms checks it.
    """

    V: np.ndarray
    coupling: float | None = None
    spectrum: Spectrum = field(init=False, repr=False)

    def __post_init__(self):
        V = as_symmetric(self.V)
        V.setflags(write=False)
        spec = eigh_sym(V)
        lam = spec.eigenvalues
        if lam[0] <= 0.0:
            raise PreconditionError(
                f"potential is not positive definite: min eigenvalue {lam[0]:.3e}"
            )
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "spectrum", spec)

    @classmethod
    def chain(cls, n: int, c: float) -> "HarmonicModel":
        if not 0.0 <= c < 0.5:
            raise PreconditionError(f"coupling c={c} outside [0, 0.5)")
        return cls(circulant_potential(n, c), coupling=float(c))

    @property
    def n(self) -> int:
        return self.V.shape[0]

    def __repr__(self) -> str:
        tag = f", c={self.coupling}" if self.coupling is not None else ""
        return f"HarmonicModel(n={self.n}{tag})"


@dataclass(frozen=True, eq=False)
class Partition:
    """Bipartition as a vector of +1 (group A) / -1 (group B) signs."""

    signs: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.signs)
        if s.ndim != 1 or s.size == 0 or not np.all(np.isin(s, (-1, 1))):
            raise PreconditionError("partition signs must be a non-empty vector of +1/-1")
        s = s.astype(np.int8)
        s.setflags(write=False)
        object.__setattr__(self, "signs", s)

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        """Parse strings such as ``"++--"`` or ``"+-+-"``."""
        table = {"+": 1, "-": -1}
        try:
            return cls(np.array([table[ch] for ch in text.strip()]))
        except KeyError as exc:
            raise PreconditionError(f"invalid partition character {exc.args[0]!r}") from None

    @property
    def n(self) -> int:
        return self.signs.size

    @property
    def is_proper(self) -> bool:
        return bool((self.signs == 1).any() and (self.signs == -1).any())

    def flipped(self) -> "Partition":
        return Partition(-self.signs)

    def group_a(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.signs == 1)]

    def __eq__(self, other):
        return isinstance(other, Partition) and np.array_equal(self.signs, other.signs)

    def __hash__(self):
        return hash(self.signs.tobytes())

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


def even_odd_partition(n: int) -> Partition:
    if n < 2 or n % 2:
        raise PreconditionError(f"even-odd partition needs an even n >= 2, got {n}")
    return Partition(np.where(np.arange(n) % 2 == 0, 1, -1))


def half_half_partition(n: int, offset: int = 0) -> Partition:
    """Contiguous block of n/2 sites (wrapping) starting at ``offset``."""
    if n < 2 or n % 2:
        raise PreconditionError(f"half-half partition needs an even n >= 2, got {n}")
    if not 0 <= offset < n:
        raise PreconditionError(f"offset {offset} outside [0, {n})")
    signs = -np.ones(n, dtype=int)
    signs[(offset + np.arange(n // 2)) % n] = 1
    return Partition(signs)


def _check_temperature(T: float) -> float:
    T = float(T)
    if not T >= 0.0 or not np.isfinite(T):
        raise PreconditionError(f"temperature must be finite and >= 0, got {T}")
    return T


def thermal_factor(lam: np.ndarray, T: float) -> np.ndarray:
    """``tanh(sqrt(lam) / 2T)``, with the ground-state limit 1 at T = 0."""
    lam = np.asarray(lam, dtype=float)
    if T == 0.0:
        return np.ones_like(lam)
    return np.tanh(np.sqrt(lam) / (2.0 * T))


def w_matrix(model: HarmonicModel, T: float) -> np.ndarray:
    """``W(T) = 1 + 2 [exp(V^{1/2}/T) - 1]^{-1} = coth(V^{1/2} / 2T)``."""
    T = _check_temperature(T)
    if T == 0.0:
        return np.eye(model.n)
    return model.spectrum.from_values(1.0 / thermal_factor(model.spectrum.eigenvalues, T))


def _sign(sign) -> int:
    if sign in ("+", 1, +1.0):
        return 1
    if sign in ("-", -1, -1.0):
        return -1
    raise PreconditionError(f"sign must be '+' or '-', got {sign!r}")


def omega_eigenvalues(model: HarmonicModel, T: float, sign) -> np.ndarray:
    lam = model.spectrum.eigenvalues
    return lam ** (0.5 * _sign(sign)) * thermal_factor(lam, _check_temperature(T))


def omega(model: HarmonicModel, T: float, sign) -> np.ndarray:
    """``omega_pm = W(T)^{-1} V^{pm 1/2}``, symmetric positive definite."""
    return model.spectrum.from_values(omega_eigenvalues(model, T, sign))


def _check_partition(model: HarmonicModel, partition: Partition) -> None:
    if partition.n != model.n:
        raise PreconditionError(
            f"partition has {partition.n} entries but the model has {model.n} oscillators"
        )


def q_spectrum(model: HarmonicModel, T: float, partition: Partition) -> np.ndarray:
    """Ascending eigenvalues of ``Q = P omega_- P omega_+``."""
    _check_partition(model, partition)
    T = _check_temperature(T)
    spec = model.spectrum
    p = partition.signs.astype(float)
    a = spec.from_values(omega_eigenvalues(model, T, "-")) * np.outer(p, p)
    b_sqrt = spec.from_values(np.sqrt(omega_eigenvalues(model, T, "+")))
    return spd_product_spectrum(a, None, b_sqrt=b_sqrt)


def log_negativity(model: HarmonicModel, T: float, partition: Partition) -> float:
    """Log-negativity (bits) of the thermal state across ``partition``."""
    q = q_spectrum(model, T, partition)
    return float(np.sum(np.log2(np.maximum(1.0, q))))


def is_ppt(model: HarmonicModel, T: float, partition: Partition) -> bool:
    return bool(q_spectrum(model, T, partition)[-1] <= 1.0 + PPT_TOL)


def threshold_temperature(
    model: HarmonicModel,
    partition: Partition,
    t_lo: float | None = None,
    t_hi: float | None = None,
    tol: float = 1e-6,
    *,
    prescan: bool = True,
) -> float:
    """Temperature at which ``partition`` becomes PPT.

    Bisection on ``max lambda(Q) - 1``. The default bracket is
    ``[1e-6, 10] * sqrt(lambda_max(V))``; a bracket whose low end is already
    PPT (or whose high end is still NPPT) is widened tenfold at most twice.
    A single crossing is assumed; with ``prescan`` a 32-point log-spaced scan
    checks the NPPT -> PPT pattern first and narrows the bisection bracket.

    Raises:
        BracketError: no valid bracket after widening, or the pre-scan sees
            more than one PPT crossing.
    """
    _check_partition(model, partition)
    if not partition.is_proper:
        raise PreconditionError("threshold needs a proper bipartition (both groups non-empty)")
    if not tol > 0:
        raise PreconditionError("tol must be positive")
    scale = float(np.sqrt(model.spectrum.eigenvalues[-1]))
    lo = BRACKET[0] * scale if t_lo is None else float(t_lo)
    hi = BRACKET[1] * scale if t_hi is None else float(t_hi)
    if not 0 < lo < hi:
        raise PreconditionError(f"invalid bracket [{lo}, {hi}]")

    def excess(T: float) -> float:
        return float(q_spectrum(model, T, partition)[-1] - 1.0 - PPT_TOL)

    for attempt in range(MAX_WIDENINGS + 1):
        g_lo, g_hi = excess(lo), excess(hi)
        if g_lo > 0 and g_hi <= 0:
            break
        if attempt == MAX_WIDENINGS:
            state = "PPT" if g_lo <= 0 else "NPPT"
            raise BracketError(
                f"no PPT crossing in [{lo:.3g}, {hi:.3g}] (state at both ends: {state}); "
                "widen the bracket or check that the partition is ever entangled"
            )
        if g_lo <= 0:
            lo /= 10.0
        if g_hi > 0:
            hi *= 10.0
        log.debug("widened threshold bracket to [%g, %g]", lo, hi)

    if prescan:
        grid = np.geomspace(lo, hi, PRESCAN_POINTS)
        vals = np.array([g_lo] + [excess(t) for t in grid[1:-1]] + [g_hi])
        nppt = vals > 0
        switches = np.flatnonzero(nppt[:-1] != nppt[1:])
        if switches.size != 1:
            raise BracketError(
                f"non-monotonic PPT pattern on [{lo:.3g}, {hi:.3g}]: "
                f"{switches.size} crossings at T ~ {grid[switches].tolist()}"
            )
        i = int(switches[0])
        lo, hi, g_lo, g_hi = grid[i], grid[i + 1], vals[i], vals[i + 1]

    return bisect(excess, lo, hi, tol, g_lo=g_lo, g_hi=g_hi)
