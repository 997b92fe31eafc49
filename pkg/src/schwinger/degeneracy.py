"""Exact counting of occupation configurations by score, and q-binomials.

The central object is the count of configurations of N particles over n
modes whose mode-weighted score  sum_j j*N_j  equals h.  The l_z
degeneracy of a sector follows by the shift  h = N(n+1)/2 - l_z.  Both
counts obey two-term recursions (split on the first mode being empty or
not) and are computed bottom-up with exact integers, so comparisons such
as the CSCO-sufficiency crossovers are decided without rounding.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .sector import Statistics, sector_dim


class ParityError(ValueError):
    """Quantum number has the wrong integer/half-integer parity for (n, N)."""


_CACHE_LOCK = threading.Lock()
_H_TABLES: dict[tuple[str, int, int], dict[int, int]] = {}


def _boson_table(n: int, N: int) -> dict[int, int]:
    key = ("boson", n, N)
    got = _H_TABLES.get(key)
    if got is not None:
        return got
    with _CACHE_LOCK:
        got = _H_TABLES.get(key)
        if got is not None:
            return got
        for nn in range(1, n + 1):
            for pp in range(N + 1):
                k = ("boson", nn, pp)
                if k in _H_TABLES:
                    continue
                if pp == 0:
                    _H_TABLES[k] = {0: 1}
                elif nn == 1:
                    _H_TABLES[k] = {pp: 1}
                else:
                    fewer_modes = _H_TABLES[("boson", nn - 1, pp)]
                    fewer_particles = _H_TABLES[("boson", nn, pp - 1)]
                    table: dict[int, int] = {}
                    for h in range(pp, nn * pp + 1):
                        c = fewer_modes.get(h - pp, 0) + fewer_particles.get(h - 1, 0)
                        if c:
                            table[h] = c
                    _H_TABLES[k] = table
        return _H_TABLES[key]


def _fermion_table(n: int, N: int) -> dict[int, int]:
    key = ("fermion", n, N)
    got = _H_TABLES.get(key)
    if got is not None:
        return got
    with _CACHE_LOCK:
        got = _H_TABLES.get(key)
        if got is not None:
            return got
        for nn in range(n + 1):
            for pp in range(min(nn, N) + 1):
                k = ("fermion", nn, pp)
                if k in _H_TABLES:
                    continue
                if pp == 0:
                    _H_TABLES[k] = {0: 1}
                else:
                    fewer = _H_TABLES[("fermion", nn - 1, pp)] if pp <= nn - 1 else {}
                    fewer_both = _H_TABLES[("fermion", nn - 1, pp - 1)]
                    table = {}
                    lo = pp * (pp + 1) // 2
                    hi = pp * (1 - pp) // 2 + nn * pp
                    for h in range(lo, hi + 1):
                        c = fewer.get(h - pp, 0) + fewer_both.get(h - pp, 0)
                        if c:
                            table[h] = c
                    _H_TABLES[k] = table
        return _H_TABLES[key]


def score_count_h(n: int, N: int, h: int, statistics: Statistics | str) -> int:
    """Number of occupation vectors of N particles on n modes with score h.

    Returns 0 outside the support; exact arbitrary-precision integers.
    """
    statistics = Statistics.parse(statistics)
    if n < 0 or N < 0:
        return 0
    if N == 0:
        return 1 if h == 0 else 0
    if n == 0:
        return 0
    if statistics is Statistics.BOSON:
        if h < N or h > n * N:
            return 0
        return _boson_table(n, N).get(h, 0)
    # Pauli bounds: first N modes filled gives the minimum score,
    # last N modes the maximum; N <= n is required at all.
    if N > n:
        return 0
    if h < N * (N + 1) // 2 or h > N * (1 - N) // 2 + n * N:
        return 0
    return _fermion_table(n, N).get(h, 0)


def _doubled_lz(l_z) -> int:
    if isinstance(l_z, Fraction):
        doubled = 2 * l_z
        if doubled.denominator != 1:
            raise ParityError(f"l_z = {l_z} is not a half-integer")
        return int(doubled)
    doubled = 2 * l_z
    rounded = round(doubled)
    if abs(doubled - rounded) > 1e-9:
        raise ParityError(f"l_z = {l_z} is not a half-integer")
    return int(rounded)


def degeneracy_g(n: int, N: int, l_z, statistics: Statistics | str) -> int:
    """Number of sector states with score l_z, via g(n,N,l_z) = h(n,N,N(n+1)/2 - l_z)."""
    lz2 = _doubled_lz(l_z)
    h2 = N * (n + 1) - lz2
    if h2 % 2:
        raise ParityError(
            f"l_z = {l_z} has the wrong parity for n = {n}, N = {N}"
        )
    h = h2 // 2
    if h < 0:
        return 0
    return score_count_h(n, N, h, statistics)


def max_doubled_lz(n: int, N: int, statistics: Statistics | str) -> int:
    """2*l_z of the highest-weight state: N(n-1) bosons, N(n-N) fermions."""
    statistics = Statistics.parse(statistics)
    kappa = 1 if statistics is Statistics.BOSON else N
    return N * (n - kappa)


@dataclass(frozen=True)
class DegeneracyTable:
    """Degeneracy g over every admissible l_z of one sector (l_z stored doubled)."""

    n_modes: int
    n_particles: int
    statistics: Statistics
    values: dict[int, int] = field(repr=False)

    def total(self) -> int:
        return sum(self.values.values())

    def items(self):
        return sorted(self.values.items())


def degeneracy_table(n: int, N: int, statistics: Statistics | str) -> DegeneracyTable:
    statistics = Statistics.parse(statistics)
    top = max_doubled_lz(n, N, statistics)
    values = {
        lz2: degeneracy_g(n, N, Fraction(lz2, 2), statistics)
        for lz2 in range(-top, top + 1, 2)
    }
    return DegeneracyTable(n, N, statistics, values)


def gamma_count(n: int, N: int, statistics: Statistics | str) -> int:
    """Number of (N, l, l_z) labels with l running to the sector maximum.

    Counts every half-integer step, [1 + (n-kappa)N][2 + (n-kappa)N]/2 with
    kappa = 1 for bosons and kappa = N for fermions.
    """
    statistics = Statistics.parse(statistics)
    if statistics is Statistics.FERMION and N > n:
        raise ValueError("fermions require N <= n")
    m = max_doubled_lz(n, N, statistics)
    return (1 + m) * (2 + m) // 2


def csco_crossover(n: int, statistics: Statistics | str, n_max: int) -> int | None:
    """Smallest N <= n_max with fewer spin labels than sector states, if any."""
    statistics = Statistics.parse(statistics)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    top = min(n_max, n) if statistics is Statistics.FERMION else n_max
    for N in range(1, top + 1):
        if gamma_count(n, N, statistics) < sector_dim(n, N, statistics):
            return N
    return None


def first_fermionic_crossover_mode(n_max: int = 16) -> tuple[int, int] | None:
    """Smallest mode count n <= n_max where some fermionic sector outgrows its labels."""
    for n in range(2, n_max + 1):
        N = csco_crossover(n, Statistics.FERMION, n)
        if N is not None:
            return n, N
    return None


class QPolynomial:
    """Integer-coefficient polynomial in q, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(int(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def coefficient(self, power: int) -> int:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    def shifted(self, k: int) -> "QPolynomial":
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                term = "q" if i == 1 else f"q^{i}"
                parts.append(term if c == 1 else f"{c}*{term}")
        return " + ".join(parts)


_QBINOM_CACHE: dict[tuple[int, int], QPolynomial] = {}


def q_binomial(j: int, k: int) -> QPolynomial:
    """Gaussian polynomial [j k]_q via the q-Pascal recursion."""
    if not 0 <= k <= j:
        raise ValueError(f"need 0 <= k <= j, got j = {j}, k = {k}")
    got = _QBINOM_CACHE.get((j, k))
    if got is not None:
        return got
    one = QPolynomial([1])
    with _CACHE_LOCK:
        for jj in range(j + 1):
            for kk in range(jj + 1):
                if (jj, kk) in _QBINOM_CACHE:
                    continue
                if kk == 0 or kk == jj:
                    _QBINOM_CACHE[(jj, kk)] = one
                else:
                    _QBINOM_CACHE[(jj, kk)] = _QBINOM_CACHE[(jj - 1, kk - 1)] + (
                        _QBINOM_CACHE[(jj - 1, kk)].shifted(kk)
                    )
    return _QBINOM_CACHE[(j, k)]


@dataclass(frozen=True)
class IdentityReport:
    """Coefficientwise comparison of [j k]_q against bosonic score counts."""

    j: int
    k: int
    ok: bool
    mismatches: tuple[tuple[int, int, int], ...]  # (power, q-coeff, score count)


def verify_qbinomial_degeneracy_identity(j: int, k: int) -> IdentityReport:
    """Check coeff of q^i in [j k]_q equals h(j-k+1, k, i+k) for all i."""
    poly = q_binomial(j, k)
    mismatches = []
    for i in range(k * (j - k) + 1):
        lhs = poly.coefficient(i)
        rhs = score_count_h(j - k + 1, k, i + k, Statistics.BOSON)
        if lhs != rhs:
            mismatches.append((i, lhs, rhs))
    if poly.degree > k * (j - k):
        mismatches.append((poly.degree, poly.coefficient(poly.degree), 0))
    return IdentityReport(j, k, not mismatches, tuple(mismatches))


def binomial(j: int, k: int) -> int:
    """Plain binomial, the q -> 1 limit of the Gaussian polynomial."""
    return comb(j, k)
