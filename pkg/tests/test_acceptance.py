"""Acceptance gate: every criterion runs at its stated tolerance and budget.

Each test prints one PASS line with its runtime; run with ``pytest -v -s
tests/test_acceptance.py`` to see the report.
"""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from schwinger.cli import main as cli_main
from schwinger.degeneracy import (
    csco_crossover,
    degeneracy_g,
    first_fermionic_crossover_mode,
    gamma_count,
    q_binomial,
    score_count_h,
    verify_qbinomial_degeneracy_identity,
)
from schwinger.entangle import (
    closed_form_distribution,
    ghz_state,
    lambda_ghz,
    spin_distribution,
    w_ghz_lz_majorization,
    w_state,
)
from schwinger.operators import (
    doubled_lz_score,
    jordan_schwinger,
    ladder_operators,
    spin_component_operators,
    total_spin,
    total_spin_from_ladders,
)
from schwinger.sector import Statistics, enumerate_sector, sector_dim
from schwinger.spinbasis import SpinLabel, build_spin_basis
from schwinger.threemode import admissible_labels, lowering_power_terms, spin_state_3mode

from test_spinbasis import TABLE_BOSONS, TABLE_FERMIONS
from test_threemode import apply_expansion_term


class budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is None:
            print(f"ACCEPTANCE {self.name}: PASS ({elapsed:.2f}s, limit {self.seconds}s)")
            assert elapsed < self.seconds, f"{self.name} exceeded {self.seconds}s"
        else:
            print(f"ACCEPTANCE {self.name}: FAIL after {elapsed:.2f}s")
        return False


def cli_json_basis(capsys, n, N, statistics):
    code = cli_main(
        ["basis", "--n", str(n), "--N", str(N), "--statistics", statistics,
         "--format", "json"]
    )
    assert code == 0
    return json.loads(capsys.readouterr().out)


def test_criterion_1_table_one(capsys):
    with budget("1 (Table I reproduction)", 1.0):
        for N in range(0, 4):
            payload = cli_json_basis(capsys, 3, N, "boson")
            sec = enumerate_sector(3, N, "boson")
            rows = {
                (lab[0] // 2, lab[1], lab[2]): np.array(re) + 1j * np.array(im)
                for lab, re, im in zip(
                    payload["labels"], payload["matrix"]["re"], payload["matrix"]["im"]
                )
            }
            for key, expansion in TABLE_BOSONS.items():
                if key[0] != N:
                    continue
                row = rows[key]
                want = np.zeros(sec.dim, dtype=complex)
                for occ, amp in expansion.items():
                    want[sec.index_of(occ)] = amp
                assert np.max(np.abs(row - want)) < 1e-9, key


def test_criterion_2_table_two(capsys):
    with budget("2 (Table II reproduction)", 1.0):
        for N in range(0, 4):
            payload = cli_json_basis(capsys, 3, N, "fermion")
            sec = enumerate_sector(3, N, "fermion")
            assert len(payload["labels"]) == sec.dim
            for lab, re, im in zip(
                payload["labels"], payload["matrix"]["re"], payload["matrix"]["im"]
            ):
                key = (lab[0] // 2, lab[1], lab[2])
                occ = TABLE_FERMIONS[key]
                row = np.array(re) + 1j * np.array(im)
                want = np.zeros(sec.dim, dtype=complex)
                want[sec.index_of(occ)] = 1.0
                assert np.max(np.abs(row - want)) == 0.0, key


def test_criterion_3_two_mode_law():
    with budget("3 (two-mode law)", 1.0):
        for N in range(0, 9):
            sec = enumerate_sector(2, N, "boson")
            basis = build_spin_basis(sec)
            for lab, row in zip(basis.labels, basis.matrix):
                nz = np.flatnonzero(np.abs(row) > 1e-12)
                assert len(nz) == 1 and abs(row[nz[0]] - 1.0) < 1e-12
                occ = sec.states[nz[0]]
                assert (lab.l + lab.lz, lab.l - lab.lz) == occ
        for N in range(0, 3):
            sec = enumerate_sector(2, N, "fermion")
            basis = build_spin_basis(sec)
            for lab, row in zip(basis.labels, basis.matrix):
                n1, n2 = sec.states[int(np.flatnonzero(np.abs(row) > 1e-12)[0])]
                assert lab.n_particles == n1 + n2
                assert lab.l == Fraction(n1 ^ n2, 2)
                assert lab.lz == Fraction(n1 - n2, 2)


def test_criterion_4_crossovers():
    with budget("4 (crossover numbers)", 5.0):
        assert csco_crossover(4, Statistics.BOSON, 100) == 22
        assert gamma_count(4, 22, "boson") == 2278 < sector_dim(4, 22, "boson") == 2300
        assert csco_crossover(3, Statistics.BOSON, 1000) is None
        hit = first_fermionic_crossover_mode(16)
        assert hit is not None and hit[0] in (12, 13)
        # computed value: first failure at n = 12 (sector N = 5), which is
        # consistent with the paper's wording that twelve modes mark the turn
        assert hit == (12, 5)


def test_criterion_5_qbinomial_identity():
    with budget("5 (q-binomial identity)", 5.0):
        checked = 0
        for j in range(0, 13):
            for k in range(0, j + 1):
                report = verify_qbinomial_degeneracy_identity(j, k)
                assert report.ok, report
                checked += 1
        assert checked == 91


def test_criterion_6_degeneracy_oracle():
    with budget("6 (degeneracy oracle)", 30.0):
        for stat in Statistics:
            for n in range(1, 6):
                for N in range(0, 8):
                    if stat is Statistics.FERMION and N > n:
                        continue
                    counts = {}
                    for s in enumerate_sector(n, N, stat).states:
                        lz2 = doubled_lz_score(s, n)
                        counts[lz2] = counts.get(lz2, 0) + 1
                    total = 0
                    for lz2, want in counts.items():
                        got = degeneracy_g(n, N, Fraction(lz2, 2), stat)
                        assert got == want, (stat, n, N, lz2)
                        total += got
                    assert total == sector_dim(n, N, stat)


def test_criterion_7_three_mode_oracle():
    with budget("7 (three-mode oracle equivalence)", 60.0):
        for N in range(0, 11):
            basis = build_spin_basis(enumerate_sector(3, N, "boson"))
            for l, lz in admissible_labels(N):
                state = spin_state_3mode(N, l, lz)
                row = basis.row(SpinLabel(N, 2 * l, 2 * lz, 0))
                assert abs(np.vdot(row, state.amplitudes)) > 1 - 1e-9
        for N in range(2, 9, 2):
            assert abs(lambda_ghz(N, 2)) < 1e-9


def test_criterion_8_ghz_w_distributions(capsys):
    with budget("8 (GHZ/W distributions)", 60.0):
        for N in range(1, 7):
            ghz_lz = spin_distribution(ghz_state(N), "z").marginal_lj()
            assert set(ghz_lz) == {0} and ghz_lz[0] == pytest.approx(1, abs=1e-10)
            w_lz = spin_distribution(w_state(N), "z").marginal_lj()
            assert set(w_lz) == {-2 * N, 0, 2 * N}
            assert all(p == pytest.approx(1 / 3, abs=1e-10) for p in w_lz.values())
            for which, state in (("w", w_state(N)), ("ghz", ghz_state(N))):
                for axis in ("z", "x"):
                    got = spin_distribution(state, axis)
                    want = closed_form_distribution(N, which, axis)
                    for key in set(got.support) | set(want.support):
                        assert got.probability(*key) == pytest.approx(
                            want.probability(*key), abs=1e-9
                        )
            assert w_ghz_lz_majorization(N)
        # N = 6 CSV support and shape against the closed forms
        for which in ("w", "ghz"):
            for axis in ("z", "x"):
                code = cli_main(
                    ["distribution", "--state", which, "--N", "6", "--axis", axis]
                )
                assert code == 0
                lines = capsys.readouterr().out.strip().splitlines()[1:]
                support = {
                    (int(r.split(",")[0]), int(r.split(",")[2])) for r in lines
                }
                want = closed_form_distribution(6, which, axis)
                assert support == set(want.support)


def test_criterion_9_operator_algebra_suite():
    eps = np.zeros((3, 3, 3))
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[i, j, k], eps[j, i, k] = 1, -1
    with budget("9 (operator algebra suite)", 120.0):
        for stat in Statistics:
            for n in range(2, 6):
                for N in range(0, 7):
                    if stat is Statistics.FERMION and N > n:
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
                            assert (comm - want).max_abs() < 1e-10
                    casimir_gap = (
                        total_spin(sec) - total_spin_from_ladders(sec)
                    ).max_abs()
                    assert casimir_gap < 1e-10
        rng = np.random.default_rng(2718281)
        for n in (2, 3, 4):
            for N in {2: (1, 8), 3: (2, 8), 4: (3, 11)}[n]:
                sec = enumerate_sector(n, N, Statistics.BOSON)
                assert sec.dim <= 500
                for _ in range(2):
                    h1 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                    h2 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                    h1, h2 = (h1 + h1.conj().T) / 2, (h2 + h2.conj().T) / 2
                    lhs = jordan_schwinger(1j * (h1 @ h2 - h2 @ h1), sec)
                    rhs = 1j * jordan_schwinger(h1, sec).commutator(
                        jordan_schwinger(h2, sec)
                    )
                    assert (lhs - rhs).max_abs() < 1e-10
        for N in (6, 8):
            sec = enumerate_sector(3, N, "boson")
            _, lminus = ladder_operators(sec)
            dense = lminus.to_dense()
            for d in range(0, 7):
                expanded = sum(
                    w * apply_expansion_term(sec, d, e, f)
                    for e, f, w in lowering_power_terms(d)
                )
                assert np.max(np.abs(expanded - np.linalg.matrix_power(dense, d))) < 1e-10
