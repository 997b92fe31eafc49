"""Complete spin eigenbases over Fock sectors.

Rows of a :class:`SpinBasis` are joint eigenvectors of the particle
number, the Casimir L^2 and one spin component, labeled (N, l, l_z, C)
with the counting number C separating degenerate multiplets.  The build
sweeps l_z downward from the unique highest-weight state: each level
first receives the normalized lowering-operator images of the level
above (which inherit l and C), then is completed to its full degeneracy
by Gram-Schmidt over canonical Fock states, each accepted vector opening
a new multiplet with l = l_z and the next free C.

Multiplet-internal phases follow the positive lowering convention
(L_- |l, l_z> is a positive multiple of |l, l_z - 1>), and each new
multiplet head is scaled so its first nonzero amplitude in canonical
Fock order is real positive.  Together these make the basis, and hence
the counting numbers, deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .degeneracy import degeneracy_g, max_doubled_lz
from .operators import StateVector, basis_state, doubled_lz_score, ladder_operators
from .sector import SectorBasis, Statistics

DEFAULT_TOL = 1e-10

# Residual norm above which a Gram-Schmidt candidate counts as a new
# direction, in units of the configured tolerance.
ACCEPT_FACTOR = 100.0

# Amplitudes below this are treated as zero when fixing row phases.
PHASE_CUTOFF = 1e-8


class RankDeficiency(RuntimeError):
    """Gram-Schmidt could not complete a level to its mandated degeneracy."""


class UnknownLabel(KeyError):
    """Label not present in the basis."""


class SpinLabel(NamedTuple):
    """Quantum numbers (N, l, l_z, C); l and l_z are stored doubled."""

    n_particles: int
    l2: int
    lz2: int
    c: int

    @property
    def l(self) -> Fraction:
        return Fraction(self.l2, 2)

    @property
    def lz(self) -> Fraction:
        return Fraction(self.lz2, 2)

    def text(self) -> str:
        def half(x2: int) -> str:
            return str(x2 // 2) if x2 % 2 == 0 else f"{x2}/2"

        return f"|{self.n_particles},{half(self.l2)},{half(self.lz2)};C={self.c}>"


def _phase_fixed(vec: np.ndarray) -> np.ndarray:
    """Scale so the first amplitude above the cutoff is real positive."""
    idx = np.flatnonzero(np.abs(vec) > PHASE_CUTOFF)
    if idx.size == 0:
        return vec
    a = vec[idx[0]]
    return vec * (np.conj(a) / abs(a))


@dataclass(eq=False)
class SpinBasis:
    """Unitary change of basis from the Fock order to spin labels.

    ``matrix[r, k]`` is the amplitude of the sector's k-th Fock state in
    the spin state ``labels[r]``; ``axis`` records which spin component
    the rows diagonalize.
    """

    sector: SectorBasis
    labels: tuple[SpinLabel, ...]
    matrix: np.ndarray
    axis: str = "z"
    _row_of: dict[SpinLabel, int] = field(init=False, repr=False)

    def __post_init__(self):
        if self.matrix.shape != (len(self.labels), self.sector.dim):
            raise ValueError("matrix shape does not match labels and sector")
        self._row_of = {lab: r for r, lab in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return self.sector.dim

    def row(self, label: SpinLabel) -> np.ndarray:
        try:
            return self.matrix[self._row_of[label]]
        except KeyError:
            raise UnknownLabel(str(label)) from None

    def state(self, label: SpinLabel) -> StateVector:
        return StateVector(self.sector, self.row(label).copy())

    def unitarity_defect(self) -> float:
        gram = self.matrix @ self.matrix.conj().T
        return float(np.max(np.abs(gram - np.eye(self.dim))))

    def to_json(self) -> str:
        payload = {
            "sector": {
                "n": self.sector.n_modes,
                "N": self.sector.n_particles,
                "statistics": self.sector.statistics.value,
            },
            "axis": self.axis,
            "labels": [
                [2 * lab.n_particles, lab.l2, lab.lz2, lab.c] for lab in self.labels
            ],
            "matrix": {
                "re": [[float(x) for x in row.real] for row in self.matrix],
                "im": [[float(x) for x in row.imag] for row in self.matrix],
            },
        }
        return json.dumps(payload, separators=(",", ":"), sort_keys=True)


def highest_weight(sector: SectorBasis) -> tuple[SpinLabel, StateVector]:
    """The unique l = l_z = N(n-kappa)/2 state: all particles packed low.

    For N = 0 the vacuum is returned with l = l_z = 0 (there is no proper
    highest-weight state to speak of).
    """
    n, N = sector.n_modes, sector.n_particles
    top = max_doubled_lz(n, N, sector.statistics)
    label = SpinLabel(N, top, top, 0)
    if sector.statistics is Statistics.BOSON:
        occ = (N,) + (0,) * (n - 1)
    else:
        occ = (1,) * N + (0,) * (n - N)
    return label, basis_state(sector, occ)


def build_spin_basis(sector: SectorBasis, tol: float = DEFAULT_TOL) -> SpinBasis:
    """Run the descending-l_z construction over one sector."""
    if not 0 < tol <= 1e-6:
        raise ValueError("tol must lie in (0, 1e-6]")
    if sector.dim == 0:
        raise ValueError("sector is empty")
    n, N = sector.n_modes, sector.n_particles
    stat = sector.statistics

    hw_label, hw_state = highest_weight(sector)
    if N == 0:
        matrix = hw_state.amplitudes.reshape(1, 1)
        return SpinBasis(sector, (hw_label,), matrix, axis="z")

    _, lminus = ladder_operators(sector)
    lm = lminus.matrix

    # Fock ordinals of each l_z eigenspace, in canonical order.
    levels_fock: dict[int, list[int]] = {}
    for ordinal, state in enumerate(sector.states):
        levels_fock.setdefault(doubled_lz_score(state, n), []).append(ordinal)

    top = hw_label.l2
    accept = ACCEPT_FACTOR * tol

    prev_level: list[tuple[SpinLabel, np.ndarray]] = [
        (hw_label, hw_state.amplitudes)
    ]
    all_rows: list[tuple[SpinLabel, np.ndarray]] = list(prev_level)

    for lz2 in range(top - 2, -top - 2, -2):
        level: list[tuple[SpinLabel, np.ndarray]] = []

        # Lowering images of every row above that has not hit l_z = -l.
        for lab, vec in prev_level:
            if lab.lz2 <= -lab.l2:
                continue
            lowered = lm @ vec
            nrm = np.linalg.norm(lowered)
            if nrm <= accept:
                raise RankDeficiency(
                    f"lowering annihilated {lab} unexpectedly (norm {nrm:.3e})"
                )
            lowered = lowered / nrm
            # One re-orthogonalization pass against this level; exact
            # arithmetic would leave the vector untouched.
            for _, prior in level:
                lowered -= np.vdot(prior, lowered) * prior
            lowered /= np.linalg.norm(lowered)
            level.append((SpinLabel(lab.n_particles, lab.l2, lz2, lab.c), lowered))

        expected = degeneracy_g(n, N, Fraction(lz2, 2), stat)
        if lz2 >= 0:
            wanted = expected - len(level)
            fock_here = levels_fock.get(lz2, [])
            next_c = 0
            for ordinal in fock_here:
                if wanted == 0:
                    break
                cand = np.zeros(sector.dim, dtype=complex)
                cand[ordinal] = 1.0
                for _ in range(2):  # modified Gram-Schmidt, one re-orth pass
                    for _, prior in level:
                        cand -= np.vdot(prior, cand) * prior
                residual = np.linalg.norm(cand)
                if residual <= accept:
                    continue
                cand = _phase_fixed(cand / residual)
                level.append((SpinLabel(N, lz2, lz2, next_c), cand))
                next_c += 1
                wanted -= 1
            if wanted:
                raise RankDeficiency(
                    f"level l_z = {Fraction(lz2, 2)} short by {wanted} of "
                    f"{expected} vectors; tolerance likely misconfigured"
                )
        if len(level) != expected:
            raise RankDeficiency(
                f"level l_z = {Fraction(lz2, 2)} built {len(level)} vectors, "
                f"degeneracy demands {expected}"
            )

        all_rows.extend(level)
        prev_level = level

    if len(all_rows) != sector.dim:
        raise RankDeficiency(
            f"built {len(all_rows)} rows on a sector of dimension {sector.dim}"
        )
    labels = tuple(lab for lab, _ in all_rows)
    matrix = np.vstack([vec for _, vec in all_rows])
    return SpinBasis(sector, labels, matrix, axis="z")


def fock_to_spin(basis: SpinBasis, state: StateVector) -> list[tuple[SpinLabel, complex]]:
    """Amplitudes <label|state> for every basis label, in basis order."""
    if state.sector != basis.sector:
        raise ValueError("state lives on a different sector")
    amps = basis.matrix.conj() @ state.amplitudes
    return [(lab, complex(a)) for lab, a in zip(basis.labels, amps)]


def spin_to_fock(
    basis: SpinBasis,
    amplitudes: Mapping[SpinLabel, complex] | Iterable[tuple[SpinLabel, complex]],
) -> StateVector:
    """Assemble a Fock-sector vector from labeled spin amplitudes."""
    if isinstance(amplitudes, Mapping):
        amplitudes = amplitudes.items()
    vec = np.zeros(basis.sector.dim, dtype=complex)
    for label, amp in amplitudes:
        vec += complex(amp) * basis.row(label)
    return StateVector(basis.sector, vec)
