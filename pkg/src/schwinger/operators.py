"""su(2) representation matrices and their Jordan-Schwinger images on a sector.

The map sends an n x n matrix H to the particle-conserving single-body
operator  sum_{ab} H[a,b] adag_a a_b  acting on the fixed-N sector.  All
operators here stay inside one sector and are held as sparse matrices over
the sector's canonical Fock order.

Conventions: the n-dimensional spin matrices are the standard ones with
Lz = diag((n-1)/2, ..., -(n-1)/2) and [Lx, Ly] = i Lz.  Ladder operators
carry the 1/sqrt(2) normalization, L_pm = (Lx pm i Ly)/sqrt(2), so that
[Lz, L_pm] = pm L_pm and L^2 = 2 L_+ L_- + Lz (Lz - 1).  Fermionic
quadratic operators use the Jordan-Wigner sign (-1)^(number of occupied
modes strictly between the two modes involved).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh, expm

from .sector import SectorBasis, Statistics, enumerate_sector

DENSE_DIMENSION_CAP = 4096

HERMITICITY_TOL = 1e-12


class DimensionMismatch(ValueError):
    """Matrix dimension does not match the sector's mode count."""


class DimensionCap(ValueError):
    """Dense operation requested above the configured dimension cap."""


@dataclass(frozen=True)
class RepresentationMatrices:
    """The spin-(n-1)/2 irrep with Lz diagonal and Lx, Ly tridiagonal."""

    lx: np.ndarray
    ly: np.ndarray
    lz: np.ndarray

    @property
    def n(self) -> int:
        return self.lz.shape[0]


def su2_matrices(n: int) -> RepresentationMatrices:
    """Standard spin matrices of dimension n (total spin (n-1)/2)."""
    if n < 2:
        raise ValueError("representation dimension must be >= 2")
    alpha = np.arange(1, n + 1, dtype=float)
    lz = np.diag((n + 1) / 2 - alpha).astype(complex)
    # chi(n, a, a+1) = sqrt(a (n - a)) / 2 on the super/sub diagonals
    chi = np.sqrt(alpha[:-1] * (n - alpha[:-1])) / 2
    lx = np.zeros((n, n), dtype=complex)
    ly = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    lx[idx, idx + 1] = chi
    lx[idx + 1, idx] = chi
    ly[idx, idx + 1] = -1j * chi
    ly[idx + 1, idx] = 1j * chi
    return RepresentationMatrices(lx=lx, ly=ly, lz=lz)


@dataclass
class StateVector:
    """Dense complex amplitudes over a sector's canonical Fock order."""

    sector: SectorBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.sector.dim,):
            raise DimensionMismatch(
                f"amplitude vector of shape {amp.shape} on sector of dim {self.sector.dim}"
            )
        self.amplitudes = amp

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.sector, self.amplitudes / n)

    def overlap(self, other: "StateVector") -> complex:
        if self.sector != other.sector:
            raise DimensionMismatch("overlap between different sectors")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def basis_state(sector: SectorBasis, occupation) -> StateVector:
    """Unit vector on a single Fock state."""
    vec = np.zeros(sector.dim, dtype=complex)
    vec[sector.index_of(occupation)] = 1.0
    return StateVector(sector, vec)


class SparseOperator:
    """Sparse complex operator on one sector, immutable after construction."""

    __slots__ = ("sector", "matrix")

    def __init__(self, sector: SectorBasis, matrix: sp.spmatrix):
        m = sp.csr_matrix(matrix, dtype=complex, copy=False)
        if m.shape != (sector.dim, sector.dim):
            raise DimensionMismatch(
                f"matrix shape {m.shape} on sector of dim {sector.dim}"
            )
        m.sum_duplicates()
        m.sort_indices()
        self.sector = sector
        self.matrix = m

    @property
    def dim(self) -> int:
        return self.sector.dim

    def _check_same_sector(self, other: "SparseOperator"):
        if self.sector != other.sector:
            raise DimensionMismatch("operators live on different sectors")

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_same_sector(other)
        return SparseOperator(self.sector, self.matrix + other.matrix)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_same_sector(other)
        return SparseOperator(self.sector, self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "SparseOperator":
        return SparseOperator(self.sector, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_same_sector(other)
        return SparseOperator(self.sector, self.matrix @ other.matrix)

    def adjoint(self) -> "SparseOperator":
        return SparseOperator(self.sector, self.matrix.conj().T)

    def commutator(self, other: "SparseOperator") -> "SparseOperator":
        self._check_same_sector(other)
        return SparseOperator(
            self.sector, self.matrix @ other.matrix - other.matrix @ self.matrix
        )

    def apply(self, vec) -> np.ndarray:
        if isinstance(vec, StateVector):
            if vec.sector != self.sector:
                raise DimensionMismatch("state lives on a different sector")
            vec = vec.amplitudes
        return self.matrix @ np.asarray(vec, dtype=complex)

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        diff = (self.matrix - self.matrix.conj().T).tocoo()
        if diff.nnz == 0:
            return True
        return float(np.max(np.abs(diff.data))) <= tol

    def max_abs(self) -> float:
        coo = self.matrix.tocoo()
        if coo.nnz == 0:
            return 0.0
        return float(np.max(np.abs(coo.data)))

    def entries(self):
        """Deterministic (row, col, value) triplets sorted by row then column."""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return coo.row[order], coo.col[order], coo.data[order]

    def to_json(self) -> str:
        rows, cols, data = self.entries()
        payload = {
            "sector": {
                "n": self.sector.n_modes,
                "N": self.sector.n_particles,
                "statistics": self.sector.statistics.value,
            },
            "rows": [int(r) for r in rows],
            "cols": [int(c) for c in cols],
            "re": [float(v.real) for v in data],
            "im": [float(v.imag) for v in data],
        }
        return json.dumps(payload, separators=(",", ":"), sort_keys=True)


def identity_operator(sector: SectorBasis) -> SparseOperator:
    return SparseOperator(sector, sp.identity(sector.dim, dtype=complex, format="csr"))


def number_operator(sector: SectorBasis) -> SparseOperator:
    """Image of the identity matrix: N times the sector identity, exactly."""
    return identity_operator(sector) * complex(sector.n_particles)


def _jw_sign(state, a: int, b: int) -> int:
    # (-1)^(occupied modes strictly between a and b), 0-based mode indices
    lo, hi = (a, b) if a < b else (b, a)
    between = sum(state[lo + 1 : hi])
    return -1 if between % 2 else 1


def _transfer_entries(sector: SectorBasis, a: int, b: int):
    """Matrix entries of adag_a a_b within the sector (0-based modes a != b)."""
    fermionic = sector.statistics is Statistics.FERMION
    for col, state in enumerate(sector.states):
        nb = state[b]
        if nb == 0:
            continue
        na = state[a]
        if fermionic and na != 0:
            continue
        target = list(state)
        target[b] -= 1
        target[a] += 1
        row = sector.index_of(tuple(target))
        if fermionic:
            amp = float(_jw_sign(state, a, b))
        else:
            amp = math.sqrt(nb * (na + 1))
        yield row, col, amp


def _jordan_schwinger_unchecked(h: np.ndarray, sector: SectorBasis) -> SparseOperator:
    n = sector.n_modes
    rows, cols, data = [], [], []
    # Diagonal part: sum_a h[a,a] * N_a, exact per Fock state.
    occ = np.array(sector.states, dtype=float).reshape(sector.dim, n)
    diag = occ @ np.asarray(np.diag(h), dtype=complex)
    nz = np.nonzero(diag)[0]
    rows.extend(nz.tolist())
    cols.extend(nz.tolist())
    data.extend(diag[nz].tolist())
    for a in range(n):
        for b in range(n):
            if a == b or h[a, b] == 0:
                continue
            coeff = complex(h[a, b])
            for row, col, amp in _transfer_entries(sector, a, b):
                rows.append(row)
                cols.append(col)
                data.append(coeff * amp)
    m = sp.coo_matrix(
        (data, (rows, cols)), shape=(sector.dim, sector.dim), dtype=complex
    )
    return SparseOperator(sector, m.tocsr())


def jordan_schwinger(h, sector: SectorBasis) -> SparseOperator:
    """Second-quantized image of the Hermitian single-mode matrix ``h``."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (sector.n_modes, sector.n_modes):
        raise DimensionMismatch(
            f"matrix of shape {h.shape} for {sector.n_modes} modes"
        )
    if np.max(np.abs(h - h.conj().T)) > HERMITICITY_TOL:
        raise ValueError("input matrix is not Hermitian within 1e-12")
    return _jordan_schwinger_unchecked(h, sector)


def ladder_operators(sector: SectorBasis) -> tuple[SparseOperator, SparseOperator]:
    """(L_+, L_-) with the 1/sqrt(2) normalization, so [Lz, L_pm] = pm L_pm."""
    n = sector.n_modes
    lplus_mat = np.zeros((n, n), dtype=complex)
    for j in range(1, n):  # 1-based mode j: transfer j+1 -> j raises l_z
        lplus_mat[j - 1, j] = math.sqrt(j * (n - j)) / math.sqrt(2)
    lplus = _jordan_schwinger_unchecked(lplus_mat, sector)
    return lplus, lplus.adjoint()


def spin_component_operators(
    sector: SectorBasis,
) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """Images of the standard Lx, Ly, Lz matrices on the sector."""
    if sector.n_modes < 2:
        # trivial spin-0 representation: all components vanish
        zero = SparseOperator(
            sector, sp.csr_matrix((sector.dim, sector.dim), dtype=complex)
        )
        return zero, zero, zero
    rep = su2_matrices(sector.n_modes)
    return (
        _jordan_schwinger_unchecked(rep.lx, sector),
        _jordan_schwinger_unchecked(rep.ly, sector),
        _jordan_schwinger_unchecked(rep.lz, sector),
    )


def lz_operator(sector: SectorBasis) -> SparseOperator:
    """Diagonal image of Lz; eigenvalue of a Fock state is its l_z score."""
    n = sector.n_modes
    diag = np.array(
        [
            sum(((n + 1) / 2 - j) * occ for j, occ in enumerate(state, start=1))
            for state in sector.states
        ],
        dtype=complex,
    )
    return SparseOperator(sector, sp.diags(diag, format="csr"))


def doubled_lz_score(state, n_modes: int) -> int:
    """Exact 2*l_z of a Fock state (integer for any n, N)."""
    return sum((n_modes + 1 - 2 * j) * occ for j, occ in enumerate(state, start=1))


def total_spin(sector: SectorBasis) -> SparseOperator:
    """Casimir L^2 = Lx^2 + Ly^2 + Lz^2 on the sector."""
    lx, ly, lz = spin_component_operators(sector)
    return lx @ lx + ly @ ly + lz @ lz


def total_spin_from_ladders(sector: SectorBasis) -> SparseOperator:
    """Cross-check form L^2 = 2 L_+ L_- + Lz (Lz - 1)."""
    lplus, lminus = ladder_operators(sector)
    lz = lz_operator(sector)
    ident = identity_operator(sector)
    return 2.0 * (lplus @ lminus) + lz @ (lz - ident)


def annihilation_map(sector: SectorBasis, mode: int) -> tuple[SectorBasis, sp.csr_matrix]:
    """Rectangular matrix of a_mode from ``sector`` into the (N-1)-sector.

    Carries the Jordan-Wigner sign for fermions.  Returns the target sector
    and a matrix of shape (dim(N-1), dim(N)).
    """
    if not 0 <= mode < sector.n_modes:
        raise ValueError(f"mode {mode} outside [0, {sector.n_modes})")
    if sector.n_particles == 0:
        raise ValueError("cannot annihilate on the vacuum sector")
    target = enumerate_sector(
        sector.n_modes, sector.n_particles - 1, sector.statistics
    )
    fermionic = sector.statistics is Statistics.FERMION
    rows, cols, data = [], [], []
    for col, state in enumerate(sector.states):
        occ = state[mode]
        if occ == 0:
            continue
        out = list(state)
        out[mode] -= 1
        rows.append(target.index_of(tuple(out)))
        cols.append(col)
        if fermionic:
            sign = -1 if sum(state[:mode]) % 2 else 1
            data.append(float(sign))
        else:
            data.append(math.sqrt(occ))
    m = sp.coo_matrix((data, (rows, cols)), shape=(target.dim, sector.dim), dtype=complex)
    return target, m.tocsr()


def creation_map(sector: SectorBasis, mode: int) -> tuple[SectorBasis, sp.csr_matrix]:
    """Rectangular matrix of adag_mode from ``sector`` into the (N+1)-sector."""
    if not 0 <= mode < sector.n_modes:
        raise ValueError(f"mode {mode} outside [0, {sector.n_modes})")
    target = enumerate_sector(
        sector.n_modes, sector.n_particles + 1, sector.statistics
    )
    _, a = annihilation_map(target, mode)
    return target, sp.csr_matrix(a.conj().T)


def expm_hermitian(dense: np.ndarray, scale: complex) -> np.ndarray:
    """exp(scale * H) for Hermitian H via the spectral decomposition."""
    w, v = eigh(dense)
    return (v * np.exp(complex(scale) * w)) @ v.conj().T


def matrix_exponential(
    operator: SparseOperator, scale: complex, cap: int = DENSE_DIMENSION_CAP
) -> np.ndarray:
    """Dense exp(scale * A); spectral route for Hermitian A, Pade otherwise."""
    if operator.dim > cap:
        raise DimensionCap(f"dimension {operator.dim} exceeds cap {cap}")
    dense = operator.to_dense()
    if operator.is_hermitian():
        return expm_hermitian(dense, scale)
    return expm(complex(scale) * dense)
