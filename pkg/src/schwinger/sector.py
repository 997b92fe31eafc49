"""Fixed-particle-number Fock sectors: enumeration, ranking and unranking.

A sector holds every occupation vector of ``n_modes`` modes with a fixed
total of ``n_particles`` particles, either bosonic (unbounded occupations)
or fermionic (occupations 0 or 1).  States are kept in a canonical order
chosen so that the state with all particles packed into the lowest modes,
``(N, 0, ..., 0)`` for bosons and ``(1, ..., 1, 0, ..., 0)`` for fermions,
is ordinal 0: states are sorted by ascending lexicographic order of the
*reversed* occupation tuple (colexicographic order of the multiset of
occupied modes).
"""

from __future__ import annotations

import json
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Iterator


class Statistics(Enum):
    BOSON = "boson"
    FERMION = "fermion"

    @classmethod
    def parse(cls, value: "Statistics | str") -> "Statistics":
        if isinstance(value, Statistics):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown statistics {value!r}, expected 'boson' or 'fermion'"
            ) from None


class FermionOverfill(ValueError):
    """More fermions requested than modes can hold."""


class NotInSector(ValueError):
    """Occupation vector or ordinal does not belong to the sector."""


Occupation = tuple[int, ...]


def sector_dim(n_modes: int, n_particles: int, statistics: Statistics) -> int:
    """Dimension of the N-particle sector: C(n+N-1, N) bosons, C(n, N) fermions."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    if n_particles < 0:
        raise ValueError("n_particles must be >= 0")
    statistics = Statistics.parse(statistics)
    if statistics is Statistics.BOSON:
        return comb(n_modes + n_particles - 1, n_particles)
    return comb(n_modes, n_particles)


def _suffixes(n_modes: int, total: int, cap: int) -> Iterator[tuple[int, ...]]:
    # Reversed occupation tuples in ascending lexicographic order.
    if n_modes == 1:
        if total <= cap:
            yield (total,)
        return
    for first in range(min(cap, total) + 1):
        for rest in _suffixes(n_modes - 1, total - first, cap):
            yield (first,) + rest


class SectorBasis:
    """Ordered basis of the fixed-N sector with O(n)-ish rank/unrank.

    Immutable after construction; the ``states`` tuple is in canonical
    order and ``rank``/``unrank`` are mutually inverse on it.
    """

    __slots__ = ("n_modes", "n_particles", "statistics", "states", "_index")

    def __init__(self, n_modes: int, n_particles: int, statistics: Statistics):
        statistics = Statistics.parse(statistics)
        if n_modes < 1:
            raise ValueError("n_modes must be >= 1")
        if n_particles < 0:
            raise ValueError("n_particles must be >= 0")
        if statistics is Statistics.FERMION and n_particles > n_modes:
            raise FermionOverfill(
                f"{n_particles} fermions cannot occupy {n_modes} modes"
            )
        self.n_modes = n_modes
        self.n_particles = n_particles
        self.statistics = statistics
        cap = 1 if statistics is Statistics.FERMION else n_particles
        states = tuple(
            tuple(reversed(s)) for s in _suffixes(n_modes, n_particles, cap)
        )
        self.states = states
        self._index = {s: i for i, s in enumerate(states)}

    @property
    def dim(self) -> int:
        return len(self.states)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[Occupation]:
        return iter(self.states)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SectorBasis)
            and self.n_modes == other.n_modes
            and self.n_particles == other.n_particles
            and self.statistics is other.statistics
        )

    def __hash__(self) -> int:
        return hash((self.n_modes, self.n_particles, self.statistics))

    def __repr__(self) -> str:
        return (
            f"SectorBasis(n_modes={self.n_modes}, n_particles={self.n_particles}, "
            f"statistics={self.statistics.value!r}, dim={self.dim})"
        )

    def _validate(self, state: Occupation) -> Occupation:
        state = tuple(int(x) for x in state)
        if len(state) != self.n_modes:
            raise NotInSector(f"expected {self.n_modes} modes, got {len(state)}")
        if any(x < 0 for x in state):
            raise NotInSector(f"negative occupation in {state}")
        if sum(state) != self.n_particles:
            raise NotInSector(
                f"{state} holds {sum(state)} particles, sector has {self.n_particles}"
            )
        if self.statistics is Statistics.FERMION and any(x > 1 for x in state):
            raise NotInSector(f"fermionic occupation above 1 in {state}")
        return state

    def contains(self, state: Occupation) -> bool:
        try:
            self._validate(state)
        except NotInSector:
            return False
        return True

    def rank(self, state: Occupation) -> int:
        """Ordinal of ``state`` via the combinatorial number system (no table scan)."""
        state = self._validate(state)
        # Colex rank of the multiset/set of occupied 1-based mode indices.
        r = 0
        i = 0
        for mode, occ in enumerate(state, start=1):
            for _ in range(occ):
                i += 1
                if self.statistics is Statistics.BOSON:
                    r += comb(mode + i - 2, i)
                else:
                    r += comb(mode - 1, i)
        return r

    def unrank(self, ordinal: int) -> Occupation:
        """Inverse of :meth:`rank`."""
        if not 0 <= ordinal < self.dim:
            raise NotInSector(f"ordinal {ordinal} outside [0, {self.dim})")
        occ = [0] * self.n_modes
        r = ordinal
        m = self.n_modes
        for i in range(self.n_particles, 0, -1):
            if self.statistics is Statistics.BOSON:
                while comb(m + i - 2, i) > r:
                    m -= 1
                r -= comb(m + i - 2, i)
            else:
                while comb(m - 1, i) > r:
                    m -= 1
                r -= comb(m - 1, i)
                m -= 1  # strict decrease under Pauli exclusion
                occ[m] += 1
                continue
            occ[m - 1] += 1
        return tuple(occ)

    def index_of(self, state: Occupation) -> int:
        """Table-lookup ordinal (fallback path, O(1) after construction)."""
        try:
            return self._index[tuple(state)]
        except KeyError:
            raise NotInSector(f"{state} not in sector") from None

    def to_json(self) -> str:
        payload = {
            "n": self.n_modes,
            "N": self.n_particles,
            "statistics": self.statistics.value,
            "states": [list(s) for s in self.states],
        }
        return json.dumps(payload, separators=(",", ":"), sort_keys=True)


@lru_cache(maxsize=None)
def enumerate_sector(
    n_modes: int, n_particles: int, statistics: Statistics | str = Statistics.BOSON
) -> SectorBasis:
    """Materialize the sector basis in canonical order (cached, immutable)."""
    return SectorBasis(n_modes, n_particles, Statistics.parse(statistics))
