"""Exact diagonalisation of the thermal XX chain and partial-transpose negativity.

``H = -sum_i (X_i X_{i+1} + Y_i Y_{i+1}) + B sum_i Z_i``. Qubit 0 is the most
significant bit of a basis index (the ``np.kron`` ordering), and ``Z|0> = |0>``.
The hopping term ``XX + YY = 2 (S+S- + S-S+)`` has real matrix elements, so
the Hamiltonian is stored as a real symmetric matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError
from .gaussian import Partition
from .linalg import as_hermitian, eigh_herm, eigh_sym

MAX_SITES = 12
PPT_TOL = 1e-10


@dataclass(frozen=True)
class SpinChainModel:
    """XX chain of ``n`` spins in a field ``B``.

    Open boundaries are the default; ``periodic=True`` adds the bond (n-1, 0).
    For n = 2 the periodic chain counts the single pair twice.
    """

    n: int
    B: float = 1.9
    periodic: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or not 2 <= self.n <= MAX_SITES:
            raise PreconditionError(f"spin chain size must be in [2, {MAX_SITES}], got {self.n}")

    @property
    def dim(self) -> int:
        return 2**self.n

    @property
    def bonds(self) -> list[tuple[int, int]]:
        last = self.n if self.periodic else self.n - 1
        return [(i, (i + 1) % self.n) for i in range(last)]


def _bits(n: int) -> np.ndarray:
    states = np.arange(2**n)
    return (states[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1


def build_xx_hamiltonian(model: SpinChainModel) -> np.ndarray:
    n = model.n
    states = np.arange(model.dim)
    bits = _bits(n)
    H = np.zeros((model.dim, model.dim))
    H[states, states] = model.B * np.sum(1 - 2 * bits, axis=1)
    for i, j in model.bonds:
        hop = bits[:, i] != bits[:, j]
        src = states[hop]
        dst = src ^ ((1 << (n - 1 - i)) | (1 << (n - 1 - j)))
        np.add.at(H, (dst, src), -2.0)
    return H


def total_magnetization(n: int) -> np.ndarray:
    """Diagonal of ``sum_i Z_i``."""
    return np.sum(1 - 2 * _bits(n), axis=1).astype(float)


def _gibbs_weights(energies: np.ndarray, T: float) -> np.ndarray:
    w = np.exp(-(energies - energies.min()) / T)
    return w / w.sum()


def thermal_state(H, T: float) -> np.ndarray:
    """Gibbs state ``exp(-H/T) / Tr exp(-H/T)`` built from the spectrum of ``H``."""
    if not T > 0:
        raise PreconditionError(f"thermal state needs T > 0, got {T}")
    H = np.asarray(H)
    spec = eigh_herm(H) if np.iscomplexobj(H) else eigh_sym(H)
    return spec.from_values(_gibbs_weights(spec.eigenvalues, T))


def thermal_state_blocked(model: SpinChainModel, T: float) -> np.ndarray:
    """Same as :func:`thermal_state` but diagonalising one magnetisation sector at a time."""
    if not T > 0:
        raise PreconditionError(f"thermal state needs T > 0, got {T}")
    H = build_xx_hamiltonian(model)
    mag = total_magnetization(model.n)
    sectors = [np.flatnonzero(mag == m) for m in np.unique(mag)]
    energies, vectors = [], []
    for idx in sectors:
        w, v = np.linalg.eigh(H[np.ix_(idx, idx)])
        energies.append(w)
        vectors.append(v)
    weights = _gibbs_weights(np.concatenate(energies), T)
    rho = np.zeros_like(H)
    start = 0
    for idx, v in zip(sectors, vectors):
        p = weights[start:start + idx.size]
        rho[np.ix_(idx, idx)] = (v * p) @ v.T
        start += idx.size
    return 0.5 * (rho + rho.T)


def _n_qubits(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if rho.ndim != 2 or rho.shape[1] != dim or 2**n != dim:
        raise PreconditionError(f"expected a 2^n x 2^n matrix, got shape {rho.shape}")
    return n


def _subset(subset: Iterable[int], n: int) -> list[int]:
    out = sorted({int(i) for i in subset})
    if any(i < 0 or i >= n for i in out):
        raise PreconditionError(f"qubit indices {out} outside [0, {n})")
    return out


def partial_transpose(rho, subset: Iterable[int]) -> np.ndarray:
    """Transpose the tensor factors of the qubits in ``subset``."""
    rho = np.asarray(rho)
    n = _n_qubits(rho)
    t = rho.reshape((2,) * (2 * n))
    for i in _subset(subset, n):
        t = np.swapaxes(t, i, n + i)
    return t.reshape(rho.shape).copy()


def negativity(rho, subset: Iterable[int]) -> float:
    """Sum of the magnitudes of the negative eigenvalues of the partial transpose."""
    pt = partial_transpose(rho, subset)
    lam = np.linalg.eigvalsh(as_hermitian(pt) if np.iscomplexobj(pt) else 0.5 * (pt + pt.T))
    return max(0.0, float(-np.sum(lam[lam < 0])))


def partition_subset(n: int, partition) -> list[int]:
    """Qubits of group A for ``"even-odd"``, ``"half-half"`` or a :class:`Partition`."""
    if isinstance(partition, Partition):
        if partition.n != n:
            raise PreconditionError(f"partition has {partition.n} sites, chain has {n}")
        return partition.group_a()
    if partition == "even-odd":
        return list(range(0, n, 2))
    if partition == "half-half":
        return list(range(n // 2))
    raise PreconditionError(f"unknown partition {partition!r}")


def spin_sweep(
    ns: Sequence[int],
    T: float,
    B: float = 1.9,
    partitions: Sequence = ("even-odd", "half-half"),
    periodic: bool = False,
) -> list[dict]:
    """Negativity table over chain sizes and partitions at one temperature."""
    rows = []
    for n in ns:
        model = SpinChainModel(n, B, periodic)
        rho = thermal_state_blocked(model, T)
        for part in partitions:
            value = negativity(rho, partition_subset(n, part))
            rows.append({
                "n": n, "B": B, "T": T, "boundary": "periodic" if periodic else "open",
                "partition": str(part), "negativity": value, "ppt": value <= PPT_TOL,
            })
    return rows
