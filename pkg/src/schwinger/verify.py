"""Bounded invariant suite backing the CLI ``verify`` command.

Each check returns (name, passed, detail).  Grids are sized to finish in
seconds; the pytest suite runs the full grids from the module contracts.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .degeneracy import (
    csco_crossover,
    degeneracy_g,
    first_fermionic_crossover_mode,
    gamma_count,
    q_binomial,
    verify_qbinomial_degeneracy_identity,
)
from .entangle import (
    closed_form_distribution,
    ghz_state,
    rotate_to_axis,
    spin_distribution,
    w_ghz_lz_majorization,
    w_state,
    wigner_small_d,
)
from .operators import (
    annihilation_map,
    creation_map,
    doubled_lz_score,
    identity_operator,
    jordan_schwinger,
    ladder_operators,
    lz_operator,
    number_operator,
    spin_component_operators,
    su2_matrices,
    total_spin,
    total_spin_from_ladders,
)
from .sector import Statistics, enumerate_sector, sector_dim
from .spinbasis import SpinLabel, build_spin_basis
from .threemode import admissible_labels, spin_state_3mode

Check = tuple[str, bool, str]


def _grid(n_max: int, cap_particles: int, dim_cap: int = 600):
    for stat in (Statistics.BOSON, Statistics.FERMION):
        for n in range(2, n_max + 1):
            top = min(cap_particles, n) if stat is Statistics.FERMION else cap_particles
            for N in range(0, top + 1):
                if sector_dim(n, N, stat) <= dim_cap:
                    yield n, N, stat


def check_sector() -> list[Check]:
    out = []
    ok, detail = True, ""
    for n, N, stat in _grid(6, 8):
        sec = enumerate_sector(n, N, stat)
        if sec.dim != sector_dim(n, N, stat):
            ok, detail = False, f"count law fails at {n},{N},{stat.value}"
            break
        for i, s in enumerate(sec.states):
            if sec.rank(s) != i or sec.unrank(i) != s:
                ok, detail = False, f"rank/unrank fails at {n},{N},{stat.value}"
                break
        if stat is Statistics.FERMION and any(
            x > 1 for s in sec.states for x in s
        ):
            ok, detail = False, f"Pauli bound violated at {n},{N}"
        if not ok:
            break
    out.append(("sector round-trip and count law", ok, detail))
    return out


def check_operators() -> list[Check]:
    out = []
    eps = np.zeros((3, 3, 3))
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[i, j, k], eps[j, i, k] = 1, -1

    worst = 0.0
    for n, N, stat in _grid(4, 4, dim_cap=260):
        if N == 0:
            continue
        sec = enumerate_sector(n, N, stat)
        ops = spin_component_operators(sec)
        for a in range(3):
            for b in range(3):
                comm = ops[a].commutator(ops[b])
                want = (
                    (1j * eps[a, b, 0]) * ops[0]
                    + (1j * eps[a, b, 1]) * ops[1]
                    + (1j * eps[a, b, 2]) * ops[2]
                )
                worst = max(worst, (comm - want).max_abs())
    out.append(("su(2) commutators on sectors", worst < 1e-10, f"max {worst:.2e}"))

    worst = 0.0
    for n, N, stat in _grid(4, 4, dim_cap=260):
        sec = enumerate_sector(n, N, stat)
        diff = total_spin(sec) - total_spin_from_ladders(sec)
        worst = max(worst, diff.max_abs())
    out.append(("Casimir equals ladder form", worst < 1e-10, f"max {worst:.2e}"))

    rng = np.random.default_rng(20240817)
    worst = 0.0
    for n in (2, 3, 4):
        for N in (1, 2, 3):
            sec = enumerate_sector(n, N, Statistics.BOSON)
            for _ in range(2):
                h1 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                h2 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                h1 = (h1 + h1.conj().T) / 2
                h2 = (h2 + h2.conj().T) / 2
                # i[H1, H2] is Hermitian, so the public map applies
                lhs = jordan_schwinger(1j * (h1 @ h2 - h2 @ h1), sec)
                rhs = 1j * jordan_schwinger(h1, sec).commutator(
                    jordan_schwinger(h2, sec)
                )
                worst = max(worst, (lhs - rhs).max_abs())
    out.append(("Lie-bracket homomorphism", worst < 1e-10, f"max {worst:.2e}"))

    worst = 0.0
    for n, N, stat in _grid(3, 3, dim_cap=120):
        if N == 0:
            continue
        sec = enumerate_sector(n, N, stat)
        num = number_operator(sec)
        _, lminus = ladder_operators(sec)
        comm = lminus.commutator(num)
        worst = max(worst, comm.max_abs())
    out.append(("number conservation", worst == 0.0, f"max {worst:.2e}"))

    worst = 0.0
    for stat in (Statistics.BOSON, Statistics.FERMION):
        for n in (2, 3, 4):
            for N in range(1, (n if stat is Statistics.FERMION else 3) + 1):
                sec = enumerate_sector(n, N, stat)
                for a in range(n):
                    for b in range(n):
                        down_sec, down = annihilation_map(sec, a)
                        _, up_from_down = creation_map(down_sec, b)
                        term1 = up_from_down @ down
                        if stat is Statistics.FERMION and N == n:
                            term2 = 0 * term1
                        else:
                            up_sec, up = creation_map(sec, b)
                            _, down_from_up = annihilation_map(up_sec, a)
                            term2 = down_from_up @ up
                        if stat is Statistics.FERMION:
                            alg = term1 + term2
                        else:
                            alg = term2 - term1
                        want = (1.0 if a == b else 0.0) * np.eye(sec.dim)
                        worst = max(
                            worst, float(np.max(np.abs(alg.toarray() - want)))
                        )
    out.append(
        ("mode (anti)commutators across sectors", worst < 1e-10, f"max {worst:.2e}")
    )
    return out


def check_degeneracy() -> list[Check]:
    out = []
    ok, detail = True, ""
    for n, N, stat in _grid(4, 6):
        sec = enumerate_sector(n, N, stat)
        counts: dict[int, int] = {}
        for s in sec.states:
            lz2 = doubled_lz_score(s, n)
            counts[lz2] = counts.get(lz2, 0) + 1
        for lz2, cnt in counts.items():
            if degeneracy_g(n, N, Fraction(lz2, 2), stat) != cnt:
                ok, detail = False, f"g mismatch at {n},{N},{stat.value},{lz2}"
        if sum(counts.values()) != sec.dim:
            ok, detail = False, f"completeness fails at {n},{N}"
        for lz2 in counts:
            if counts[lz2] != counts.get(-lz2, 0):
                ok, detail = False, f"symmetry fails at {n},{N},{lz2}"
    out.append(("degeneracy against enumeration", ok, detail))

    ok = all(
        verify_qbinomial_degeneracy_identity(j, k).ok
        for j in range(11)
        for k in range(j + 1)
    )
    out.append(("q-binomial degeneracy identity (j <= 10)", ok, ""))

    ok = all(
        q_binomial(j, k)(1) == math.comb(j, k)
        for j in range(16)
        for k in range(j + 1)
    )
    out.append(("q -> 1 binomial limit", ok, ""))

    boson4 = csco_crossover(4, Statistics.BOSON, 100)
    boson3 = csco_crossover(3, Statistics.BOSON, 300)
    fermi = first_fermionic_crossover_mode(13)
    ok = boson4 == 22 and boson3 is None and fermi is not None and fermi[0] == 12
    out.append(
        (
            "CSCO crossovers",
            ok,
            f"boson n=4 at N={boson4}, n=3 none<=300: {boson3 is None}, fermion {fermi}",
        )
    )
    return out


def check_spinbasis() -> list[Check]:
    out = []
    worst_unit = worst_eig = worst_ladder = 0.0
    census_ok = True
    for n, N, stat in _grid(4, 5, dim_cap=130):
        sec = enumerate_sector(n, N, stat)
        basis = build_spin_basis(sec)
        worst_unit = max(worst_unit, basis.unitarity_defect())
        l2op = total_spin(sec)
        lzop = lz_operator(sec)
        _, lminus = ladder_operators(sec)
        seen: dict[int, int] = {}
        for lab, row in zip(basis.labels, basis.matrix):
            l, lz = lab.l, lab.lz
            worst_eig = max(
                worst_eig,
                float(np.linalg.norm(l2op.apply(row) - float(l * (l + 1)) * row)),
                float(np.linalg.norm(lzop.apply(row) - float(lz) * row)),
            )
            seen[lab.lz2] = seen.get(lab.lz2, 0) + 1
            if lab.lz2 > -lab.l2:
                target = basis.row(SpinLabel(lab.n_particles, lab.l2, lab.lz2 - 2, lab.c))
                coeff = math.sqrt(float(l * (l + 1) - lz * (lz - 1)) / 2)
                worst_ladder = max(
                    worst_ladder,
                    float(np.linalg.norm(lminus.apply(row) - coeff * target)),
                )
        for lz2, cnt in seen.items():
            if cnt != degeneracy_g(n, N, Fraction(lz2, 2), stat):
                census_ok = False
    out.append(("spin basis unitarity", worst_unit < 1e-10, f"max {worst_unit:.2e}"))
    out.append(("joint eigensystem residuals", worst_eig < 1e-9, f"max {worst_eig:.2e}"))
    out.append(("lowering-operator consistency", worst_ladder < 1e-9, f"max {worst_ladder:.2e}"))
    out.append(("label census matches degeneracy", census_ok, ""))

    ok = True
    for N in range(0, 7):
        basis = build_spin_basis(enumerate_sector(2, N, Statistics.BOSON))
        for lab, row in zip(basis.labels, basis.matrix):
            nz = np.flatnonzero(np.abs(row) > 1e-10)
            st = basis.sector.states[nz[0]]
            if len(nz) != 1 or (lab.l + lab.lz, lab.l - lab.lz) != st:
                ok = False
    out.append(("two-mode bosonic basis relation", ok, ""))

    ok = all(
        lab.c == 0
        for N in range(0, 7)
        for lab in build_spin_basis(enumerate_sector(3, N, Statistics.BOSON)).labels
    )
    out.append(("counting number vanishes for three modes", ok, ""))
    return out


def check_threemode() -> list[Check]:
    worst = 0.0
    for N in range(0, 9):
        basis = build_spin_basis(enumerate_sector(3, N, Statistics.BOSON))
        for l, lz in admissible_labels(N):
            state = spin_state_3mode(N, l, lz)
            row = basis.row(SpinLabel(N, 2 * l, 2 * lz, 0))
            overlap = abs(np.vdot(row, state.amplitudes))
            worst = max(worst, abs(1 - overlap), abs(1 - state.norm()))
    return [("three-mode closed form vs generic", worst < 1e-9, f"max {worst:.2e}")]


def check_entangle() -> list[Check]:
    out = []
    ok = True
    for l2 in range(0, 13):
        d = _d_of(l2)
        n = l2 + 1
        if float(np.max(np.abs(d.T @ d - np.eye(n)))) > 1e-10:
            ok = False
    out.append(("Wigner small-d orthogonality", ok, ""))

    worst = 0.0
    for N in (1, 2, 3):
        for which, state in (("w", w_state(N)), ("ghz", ghz_state(N))):
            for axis in ("z", "x"):
                got = spin_distribution(state, axis)
                want = closed_form_distribution(N, which, axis)
                keys = set(got.support) | set(want.support)
                worst = max(
                    worst,
                    max(abs(got.probability(*k) - want.probability(*k)) for k in keys),
                    abs(got.total() - 1),
                )
    out.append(("GHZ/W closed forms vs generic", worst < 1e-9, f"max {worst:.2e}"))

    ok = all(w_ghz_lz_majorization(N) for N in range(1, 7))
    out.append(("W majorized by GHZ in l_z", ok, ""))

    worst = 0.0
    for n, N, stat in [(3, 2, Statistics.BOSON), (3, 3, Statistics.BOSON), (4, 2, Statistics.FERMION)]:
        sec = enumerate_sector(n, N, stat)
        basis = build_spin_basis(sec)
        lx, ly, _ = spin_component_operators(sec)
        for axis, op in (("x", lx), ("y", ly)):
            rotated = rotate_to_axis(basis, axis)
            for lab, row in zip(rotated.labels, rotated.matrix):
                worst = max(
                    worst,
                    float(np.linalg.norm(op.apply(row) - float(lab.lz) * row)),
                )
    out.append(("rotated bases diagonalize Lx/Ly", worst < 1e-9, f"max {worst:.2e}"))
    return out


def _d_of(l2: int) -> np.ndarray:
    return wigner_small_d(Fraction(l2, 2), math.pi / 2)


ALL_CHECKS = (
    check_sector,
    check_operators,
    check_degeneracy,
    check_spinbasis,
    check_threemode,
    check_entangle,
)


def run_all() -> list[Check]:
    results: list[Check] = []
    for group in ALL_CHECKS:
        results.extend(group())
    return results
