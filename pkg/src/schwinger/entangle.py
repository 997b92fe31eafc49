"""Generalized GHZ/W states, spin-axis rotations, and measurement statistics.

The W and GHZ states generalized to N particles per mode live on three
modes; their spin statistics follow from the basis relations.  Rotations
to the x or y measurement axis act multiplet by multiplet through the
real Wigner small-d matrix at beta = pi/2, built here by exponentiating
the y-generator of the matching irrep.  The rotated rows are genuine
eigenvectors of the corresponding spin component (this is checked by the
test suite); the printed closed-form x-distributions are derived from
that same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

import numpy as np

from .degeneracy import ParityError
from .operators import StateVector, expm_hermitian, su2_matrices
from .sector import FermionOverfill, SectorBasis, Statistics, enumerate_sector
from .spinbasis import DEFAULT_TOL, SpinBasis, SpinLabel, build_spin_basis
from .threemode import double_factorial, lambda_coefficient

# Probabilities at or below this are dropped from distribution supports.
PROB_FLOOR = 1e-12

AXES = ("z", "x", "y")


class SupportMismatch(ValueError):
    """Distributions to compare do not share a common support."""


@dataclass
class MultiSectorState:
    """Superposition across particle-number sectors (one vector per N)."""

    n_modes: int
    statistics: Statistics
    components: dict[int, StateVector]

    def total_norm_squared(self) -> float:
        return sum(c.norm() ** 2 for c in self.components.values())


def w_state(n_per_mode: int, statistics: Statistics | str = Statistics.BOSON) -> MultiSectorState:
    """Equal superposition of all N particles bunched into one of three modes."""
    statistics = Statistics.parse(statistics)
    if n_per_mode < 1:
        raise ValueError("need at least one particle per mode")
    if statistics is Statistics.FERMION and n_per_mode > 1:
        raise FermionOverfill("fermionic W state requires one particle per mode")
    sector = enumerate_sector(3, n_per_mode, statistics)
    vec = np.zeros(sector.dim, dtype=complex)
    for occ in [(n_per_mode, 0, 0), (0, n_per_mode, 0), (0, 0, n_per_mode)]:
        vec[sector.index_of(occ)] = 1 / math.sqrt(3)
    return MultiSectorState(3, statistics, {n_per_mode: StateVector(sector, vec)})


def ghz_state(n_per_mode: int, statistics: Statistics | str = Statistics.BOSON) -> MultiSectorState:
    """Vacuum plus all three modes filled with N particles each, equal weight."""
    statistics = Statistics.parse(statistics)
    if n_per_mode < 1:
        raise ValueError("need at least one particle per mode")
    if statistics is Statistics.FERMION and n_per_mode > 1:
        raise FermionOverfill("fermionic GHZ state requires one particle per mode")
    vacuum = enumerate_sector(3, 0, statistics)
    full = enumerate_sector(3, 3 * n_per_mode, statistics)
    amp = 1 / math.sqrt(2)
    v0 = np.array([amp], dtype=complex)
    v1 = np.zeros(full.dim, dtype=complex)
    v1[full.index_of((n_per_mode,) * 3)] = amp
    return MultiSectorState(
        3,
        statistics,
        {0: StateVector(vacuum, v0), 3 * n_per_mode: StateVector(full, v1)},
    )


def lambda_w(N: int, l: int) -> float:
    """Overlap of |0, N, 0> with the l_z = 0 spin state of total spin l."""
    if not 0 <= l <= N:
        raise ValueError(f"need 0 <= l <= N, got l = {l}, N = {N}")
    if (N - l) % 2:
        raise ParityError(f"N - l must be even, got N = {N}, l = {l}")
    return math.sqrt(
        factorial(N) * (2 * l + 1)
        / (double_factorial(N - l) * double_factorial(N + l + 1))
    )


def lambda_ghz(N: int, l: int) -> float:
    """Overlap of |N, N, N> with the l_z = 0 spin state of total spin l.

    Numerical triple-product sum with f pinned to N - j - e; terms whose
    f falls outside the lowering-power triangle vanish.
    """
    if not 0 <= l <= 3 * N:
        raise ValueError(f"need 0 <= l <= 3N, got l = {l}, N = {N}")
    if (3 * N - l) % 2:
        raise ParityError(f"l = {l} has the wrong parity for 3N = {3 * N}")
    total = 0.0
    for j in range((3 * N - l) // 2 + 1):
        for e in range(l // 2 + 1):
            f = N - j - e
            if f < 0:
                continue
            total += lambda_coefficient(3 * N, l, 0, j, e, f)
    return total


def _doubled_spin(l) -> int:
    if isinstance(l, Fraction):
        doubled = 2 * l
        if doubled.denominator != 1:
            raise ValueError(f"l = {l} is not a half-integer")
        return int(doubled)
    doubled = 2 * l
    rounded = round(doubled)
    if abs(doubled - rounded) > 1e-9:
        raise ValueError(f"l = {l} is not a half-integer")
    return int(rounded)


@lru_cache(maxsize=None)
def _wigner_small_d_doubled(l2: int, beta: float) -> np.ndarray:
    dim = l2 + 1
    if dim == 1:
        return np.ones((1, 1))
    d = expm_hermitian(su2_matrices(dim).ly, -1j * beta)
    if np.max(np.abs(d.imag)) > 1e-12:
        raise AssertionError("Wigner small-d came out non-real")
    return np.ascontiguousarray(d.real)


def wigner_small_d(l, beta: float) -> np.ndarray:
    """Real orthogonal d^l(beta); rows and columns run m = l, l-1, ..., -l."""
    l2 = _doubled_spin(l)
    if l2 < 0:
        raise ValueError("spin must be >= 0")
    return _wigner_small_d_doubled(l2, float(beta)).copy()


def _multiplet_groups(basis: SpinBasis) -> dict[tuple[int, int], dict[int, int]]:
    # (l2, C) -> {lz2: row index}; validates completeness of each multiplet.
    groups: dict[tuple[int, int], dict[int, int]] = {}
    for r, lab in enumerate(basis.labels):
        groups.setdefault((lab.l2, lab.c), {})[lab.lz2] = r
    for (l2, c), rows in groups.items():
        expected = set(range(-l2, l2 + 1, 2))
        if set(rows) != expected:
            raise ValueError(f"incomplete multiplet l = {Fraction(l2, 2)}, C = {c}")
    return groups


def rotate_to_axis(basis: SpinBasis, axis: str) -> SpinBasis:
    """Re-diagonalize the basis along the x or y spin component.

    Rows of the result are eigenvectors of the corresponding component
    with eigenvalue given by the label's third quantum number; N, l and C
    are preserved multiplet by multiplet.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    if basis.axis != "z":
        raise ValueError("can only rotate a z-axis basis")
    if axis == "z":
        return basis
    matrix = np.zeros_like(basis.matrix)
    for (l2, c), rows in _multiplet_groups(basis).items():
        lz2_desc = list(range(l2, -l2 - 1, -2))
        d = _wigner_small_d_doubled(l2, math.pi / 2)
        block = np.vstack([basis.matrix[rows[m2]] for m2 in lz2_desc])
        coeff = d.astype(complex)
        if axis == "y":
            phases = np.exp(-0.5j * math.pi * (np.array(lz2_desc) / 2))
            coeff = phases[:, None] * coeff
        rotated = coeff.T @ block
        for col, m2 in enumerate(lz2_desc):
            matrix[rows[m2]] = rotated[col]
    return SpinBasis(basis.sector, basis.labels, matrix, axis=axis)


@dataclass
class SpinDistribution:
    """Joint probabilities over (l, l_axis), both stored doubled."""

    axis: str
    support: dict[tuple[int, int], float] = field(repr=False)

    def total(self) -> float:
        return sum(self.support.values())

    def probability(self, l2: int, lj2: int) -> float:
        return self.support.get((l2, lj2), 0.0)

    def marginal_l(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for (l2, _), p in self.support.items():
            out[l2] = out.get(l2, 0.0) + p
        return out

    def marginal_lj(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for (_, lj2), p in self.support.items():
            out[lj2] = out.get(lj2, 0.0) + p
        return out

    def items(self):
        return sorted(self.support.items())


def _basis_for(sector: SectorBasis, axis: str, tol: float) -> SpinBasis:
    basis = _cached_z_basis(
        sector.n_modes, sector.n_particles, sector.statistics, tol
    )
    if axis == "z":
        return basis
    return _cached_rotated_basis(
        sector.n_modes, sector.n_particles, sector.statistics, axis, tol
    )


@lru_cache(maxsize=None)
def _cached_z_basis(n: int, N: int, statistics: Statistics, tol: float) -> SpinBasis:
    return build_spin_basis(enumerate_sector(n, N, statistics), tol)


@lru_cache(maxsize=None)
def _cached_rotated_basis(
    n: int, N: int, statistics: Statistics, axis: str, tol: float
) -> SpinBasis:
    return rotate_to_axis(_cached_z_basis(n, N, statistics, tol), axis)


def spin_distribution(
    state: MultiSectorState, axis: str, tol: float = DEFAULT_TOL
) -> SpinDistribution:
    """Joint p(l, l_axis) summed over particle number and counting number."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    support: dict[tuple[int, int], float] = {}
    for _, component in sorted(state.components.items()):
        basis = _basis_for(component.sector, axis, tol)
        amplitudes = basis.matrix.conj() @ component.amplitudes
        for lab, amp in zip(basis.labels, amplitudes):
            p = float(abs(amp) ** 2)
            if p > PROB_FLOOR:
                key = (lab.l2, lab.lz2)
                support[key] = support.get(key, 0.0) + p
    return SpinDistribution(axis, support)


def _w_l_values(N: int) -> list[int]:
    return list(range(N % 2, N + 1, 2))


def _ghz_l_values(N: int) -> list[int]:
    return list(range(N % 2, 3 * N + 1, 2))


def closed_form_distribution(
    n_per_mode: int, which: str, axis: str
) -> SpinDistribution:
    """Direct evaluation of the analytic GHZ/W joint distributions.

    The z-axis forms are delta combs weighted by the squared overlap
    coefficients; the x/y forms contract those coefficients with one
    column of the Wigner small-d matrix at pi/2.
    """
    which = which.lower()
    if which not in ("w", "ghz"):
        raise ValueError("which must be 'w' or 'ghz'")
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    N = n_per_mode
    support: dict[tuple[int, int], float] = {}

    def put(l2: int, lj2: int, p: float):
        if p > PROB_FLOOR:
            support[(l2, lj2)] = support.get((l2, lj2), 0.0) + p

    if which == "w":
        lam = {l: lambda_w(N, l) for l in _w_l_values(N)}
        if axis == "z":
            put(2 * N, 2 * N, 1 / 3)
            put(2 * N, -2 * N, 1 / 3)
            for l, lw in lam.items():
                put(2 * l, 0, lw**2 / 3)
        else:
            # extremal z-components pick up i^N phases along the y axis
            top = 1.0 if axis == "x" else 1j**N
            bot = 1.0 if axis == "x" else (-1j) ** N
            for l, lw in lam.items():
                d = wigner_small_d(l, math.pi / 2)
                for col, m in enumerate(range(l, -l - 1, -1)):
                    amp = d[l, col] * lw + 0j  # row index l is m' = 0
                    if l == N:
                        amp += top * d[0, col] + bot * d[2 * N, col]
                    put(2 * l, 2 * m, float(abs(amp) ** 2) / 3)
    else:
        lam = {l: lambda_ghz(N, l) for l in _ghz_l_values(N)}
        if axis == "z":
            put(0, 0, 1 / 2)
            for l, lg in lam.items():
                put(2 * l, 0, lg**2 / 2)
        else:
            put(0, 0, 1 / 2)
            for l, lg in lam.items():
                d = wigner_small_d(l, math.pi / 2)
                for col, m in enumerate(range(l, -l - 1, -1)):
                    put(2 * l, 2 * m, (d[l, col] * lg) ** 2 / 2)
    return SpinDistribution(axis, support)


def majorization_check(p, q, *, support=None) -> bool:
    """Whether p is majorized by q (sorted prefix sums never exceed q's)."""
    pv = _as_vector(p, support)
    qv = _as_vector(q, support)
    if len(pv) != len(qv):
        raise SupportMismatch(f"supports of size {len(pv)} vs {len(qv)}")
    if abs(sum(pv) - sum(qv)) > 1e-9:
        raise SupportMismatch("distributions have different total mass")
    pv = sorted(pv, reverse=True)
    qv = sorted(qv, reverse=True)
    acc_p = acc_q = 0.0
    for a, b in zip(pv, qv):
        acc_p += a
        acc_q += b
        if acc_p > acc_q + 1e-12:
            return False
    return True


def _as_vector(dist, support) -> list[float]:
    if isinstance(dist, Mapping):
        if support is None:
            raise SupportMismatch(
                "mapping distributions need an explicit common support"
            )
        return [float(dist.get(k, 0.0)) for k in support]
    if support is not None:
        raise SupportMismatch("explicit support only applies to mappings")
    return [float(x) for x in dist]


def w_ghz_lz_majorization(n_per_mode: int) -> bool:
    """The W state's l_z marginal against the GHZ one on [-3N, 3N]."""
    w = closed_form_distribution(n_per_mode, "w", "z").marginal_lj()
    g = closed_form_distribution(n_per_mode, "ghz", "z").marginal_lj()
    grid = range(-6 * n_per_mode, 6 * n_per_mode + 1, 2)
    return majorization_check(w, g, support=grid)
