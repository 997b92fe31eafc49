"""Closed-form spin states for three bosonic modes.

Any three-mode spin state decomposes over Fock states of the form
|l_z + s, N - l_z - 2s, s> with a coefficient that factorizes into four
pieces: the highest-weight coefficients (from the raising-operator
kernel recurrence), the lowering normalization, the expansion of integer
powers of the lowering operator, and the mode-operator factorial ratios.
This is an oracle for the generic construction, independent of any
Gram-Schmidt step.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .degeneracy import ParityError
from .operators import StateVector
from .sector import Statistics, enumerate_sector


def _sqrt_fraction(value: Fraction) -> float:
    """Double-precision sqrt of an exact non-negative rational."""
    if value < 0:
        raise ValueError("negative radicand")
    num, den = value.numerator, value.denominator
    if num < 2**512 and den < 2**512:
        return math.sqrt(num) / math.sqrt(den)
    # Huge integers: go through logarithms (relative error ~1e-15).
    return math.exp((math.log(num) - math.log(den)) / 2)


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial of n < -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _check_highest_weight_args(N: int, l: int):
    if not 0 <= l <= N:
        raise ValueError(f"need 0 <= l <= N, got l = {l}, N = {N}")
    if (N - l) % 2:
        raise ParityError(f"N - l must be even, got N = {N}, l = {l}")


@lru_cache(maxsize=None)
def _lambda1_squares(N: int, l: int) -> tuple[tuple[Fraction, ...], Fraction]:
    # Unnormalized squared recurrence values and their sum, all exact.
    jmax = (N - l) // 2
    squares = [Fraction(1)]
    for j in range(jmax):
        ratio = Fraction(l + j + 1, j + 1) * Fraction(N - l - 2 * j, N - l - 2 * j - 1)
        squares.append(squares[-1] * ratio)
    return tuple(squares), sum(squares, Fraction(0))


def lambda1(N: int, l: int, j: int) -> float:
    """Highest-weight coefficient of the |l+j, N-l-2j, j> Fock component.

    Solves the raising-operator kernel recurrence and normalizes so that
    the squares sum to one, with the j = 0 coefficient positive.
    """
    _check_highest_weight_args(N, l)
    jmax = (N - l) // 2
    if not 0 <= j <= jmax:
        raise ValueError(f"need 0 <= j <= (N-l)/2 = {jmax}, got j = {j}")
    squares, total = _lambda1_squares(N, l)
    value = _sqrt_fraction(squares[j] / total)
    return -value if j % 2 else value


def lambda2(l: int, lz: int) -> float:
    """Normalization of the (l - l_z)-fold lowering of |N, l, l>."""
    if abs(lz) > l:
        raise ValueError(f"need |l_z| <= l, got l = {l}, l_z = {lz}")
    d = l - lz
    return _sqrt_fraction(
        Fraction(2**d * factorial(l + lz), factorial(2 * l) * factorial(d))
    )


def lambda3(d: int, e: int, f: int) -> int:
    """Weight of the p^(d-2e-f) q^f r^e word in the d-th lowering power.

    Exact integer d! / (2^e e! f! (d-2e-f)!); zero outside the index
    triangle 0 <= e <= d/2, 0 <= f <= d - 2e.
    """
    if d < 0 or e < 0 or f < 0 or d - 2 * e - f < 0:
        return 0
    value = Fraction(factorial(d), 2**e * factorial(e) * factorial(f) * factorial(d - 2 * e - f))
    assert value.denominator == 1
    return int(value)


def lowering_power_terms(d: int) -> list[tuple[int, int, int]]:
    """All (e, f, weight) terms of the d-th power of the lowering operator."""
    if d < 0:
        raise ValueError("power must be >= 0")
    return [
        (e, f, lambda3(d, e, f))
        for e in range(d // 2 + 1)
        for f in range(d - 2 * e + 1)
    ]


def lambda4(N: int, l: int, lz: int, j: int, e: int, f: int) -> float:
    """Factorial ratios from applying the mode operators to |l+j, N-l-2j, j>.

    Returns 0 outside the step-function support (mode occupations would
    go negative).
    """
    if lz + j + e + f < 0 or N - l - 2 * j - f < 0:
        return 0.0
    value = Fraction(
        factorial(l + j) * factorial(N - lz - 2 * j - 2 * e - 2 * f),
        factorial(lz + j + e + f) * factorial(N - l - 2 * j - f),
    ) * Fraction(
        factorial(N - l - 2 * j) * factorial(j + e + f),
        factorial(N - l - 2 * j - f) * factorial(j),
    )
    return _sqrt_fraction(value)


def lambda_coefficient(N: int, l: int, lz: int, j: int, e: int, f: int) -> float:
    """Full product coefficient of one (j, e, f) term of a spin state."""
    d = l - lz
    weight = lambda3(d, e, f)
    if weight == 0:
        return 0.0
    return lambda1(N, l, j) * lambda2(l, lz) * weight * lambda4(N, l, lz, j, e, f)


def spin_state_3mode(N: int, l: int, lz: int) -> StateVector:
    """Normalized three-mode bosonic spin state |N, l, l_z> in Fock amplitudes."""
    _check_highest_weight_args(N, l)
    if abs(lz) > l:
        raise ValueError(f"need |l_z| <= l, got l = {l}, l_z = {lz}")
    sector = enumerate_sector(3, N, Statistics.BOSON)
    vec = np.zeros(sector.dim, dtype=complex)
    d = l - lz
    lam2 = lambda2(l, lz)
    for j in range((N - l) // 2 + 1):
        lam1 = lambda1(N, l, j)
        for e in range(d // 2 + 1):
            for f in range(d - 2 * e + 1):
                s = j + e + f
                occ = (lz + s, N - lz - 2 * j - 2 * e - 2 * f, s)
                if occ[0] < 0 or occ[1] < 0:
                    continue
                weight = lambda3(d, e, f)
                amp = lam1 * lam2 * weight * lambda4(N, l, lz, j, e, f)
                if amp:
                    vec[sector.index_of(occ)] += amp
    return StateVector(sector, vec)


def admissible_labels(N: int) -> list[tuple[int, int]]:
    """(l, l_z) pairs realized by N bosons over three modes, table order."""
    out = []
    lz_values = list(range(N, -N - 1, -1))
    for lz in lz_values:
        for l in range(N, abs(lz) - 1, -2):
            out.append((l, lz))
    return out
