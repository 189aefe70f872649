"""Occupation-number bases and second-quantized operators on small lattices.

Fermionic modes are ordered site-major: ``mode(site, spin) = 2*site + spin``
with spin 0 = up and 1 = down, so a basis ket is

    |n> = prod over occupied modes in ascending order of a^dagger_mode |0>.

Operator signs follow from counting occupied modes below the acted-on mode.
With this ordering the two-site spin singlet reads ``(|u,d> - |d,u>)/sqrt 2``
in the ket basis, as in first-quantized spin notation.

Internally a fermionic state is a bit mask (bit ``k`` set when mode ``k`` is
occupied). Spinless bosons are stored as per-site counts.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, InvalidSector


class Statistics(enum.Enum):
    BOSON = "Boson"
    FERMION = "Fermion"


class Spin(enum.IntEnum):
    UP = 0
    DOWN = 1


def mode(site: int, spin: int) -> int:
    return 2 * site + int(spin)


@dataclass(frozen=True)
class FockState:
    """Per-site occupations; ``down`` is empty for spinless bosons."""

    up: tuple
    down: tuple = ()

    @property
    def n_sites(self) -> int:
        return len(self.up)

    @property
    def n_up(self) -> int:
        return sum(self.up)

    @property
    def n_down(self) -> int:
        return sum(self.down)

    def word(self) -> tuple:
        """Fixed-width occupation word used for ordering."""
        if not self.down:
            return tuple(self.up)
        return tuple(x for pair in zip(self.up, self.down) for x in pair)

    def to_bits(self) -> int:
        bits = 0
        for i, (u, d) in enumerate(zip(self.up, self.down)):
            if u:
                bits |= 1 << mode(i, Spin.UP)
            if d:
                bits |= 1 << mode(i, Spin.DOWN)
        return bits

    @classmethod
    def from_bits(cls, bits: int, n_sites: int) -> FockState:
        up = tuple((bits >> mode(i, Spin.UP)) & 1 for i in range(n_sites))
        down = tuple((bits >> mode(i, Spin.DOWN)) & 1 for i in range(n_sites))
        return cls(up, down)

    def __str__(self):
        if not self.down:
            return "|" + ",".join(str(n) for n in self.up) + ">"
        sites = []
        for u, d in zip(self.up, self.down):
            s = ("u" if u else "") + ("d" if d else "")
            sites.append(s or "0")
        return "|" + ",".join(sites) + ">"


class Sector(NamedTuple):
    n_sites: int
    n_up: int
    n_down: int
    statistics: Statistics


@dataclass(frozen=True)
class Basis:
    """Ordered states of one particle-number sector with O(1) index lookup."""

    states: tuple
    sector: Sector
    index: dict = field(init=False, repr=False, compare=False)
    bits: tuple = field(init=False, repr=False, compare=False)
    bit_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {s: i for i, s in enumerate(self.states)}
        if len(index) != len(self.states):
            raise ValueError("basis states must be unique")
        object.__setattr__(self, "index", index)
        if self.sector.statistics is Statistics.FERMION:
            bits = tuple(s.to_bits() for s in self.states)
        else:
            bits = ()
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "bit_index", {b: i for i, b in enumerate(bits)})

    def __len__(self):
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def __iter__(self):
        return iter(self.states)

    @property
    def n_sites(self) -> int:
        return self.sector.n_sites

    @property
    def is_fermionic(self) -> bool:
        return self.sector.statistics is Statistics.FERMION


def _compositions(total, parts):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def enumerate_states(n_sites: int, n_up: int, n_down: int = 0,
                     statistics: Statistics = Statistics.FERMION) -> Basis:
    """Every occupation configuration of a sector, in descending word order.

    For spinless bosons ``n_up`` is the boson number and ``n_down`` must be 0.
    """
    if n_sites < 1:
        raise InvalidSector(f"n_sites must be >= 1, got {n_sites}")
    if n_up < 0 or n_down < 0:
        raise InvalidSector("particle counts must be nonnegative")
    statistics = Statistics(statistics)
    if statistics is Statistics.FERMION:
        if n_up > n_sites or n_down > n_sites:
            raise InvalidSector(
                f"({n_up} up, {n_down} down) fermions do not fit on {n_sites} sites")
        states = []
        for ups in itertools.combinations(range(n_sites), n_up):
            up = tuple(1 if i in ups else 0 for i in range(n_sites))
            for downs in itertools.combinations(range(n_sites), n_down):
                down = tuple(1 if i in downs else 0 for i in range(n_sites))
                states.append(FockState(up, down))
    else:
        if n_down:
            raise InvalidSector("bosons are spinless; n_down must be 0")
        states = [FockState(c) for c in _compositions(n_up, n_sites)]
    states.sort(key=FockState.word, reverse=True)
    return Basis(tuple(states), Sector(n_sites, n_up, n_down, statistics))


def sector_size(n_sites: int, n_up: int, n_down: int = 0,
                statistics: Statistics = Statistics.FERMION) -> int:
    if Statistics(statistics) is Statistics.FERMION:
        return math.comb(n_sites, n_up) * math.comb(n_sites, n_down)
    return math.comb(n_sites + n_up - 1, n_up)


# ---------------------------------------------------------------------------
# bit-level fermionic operators

def _sign_below(bits: int, m: int) -> int:
    return -1 if (bits & ((1 << m) - 1)).bit_count() & 1 else 1


def annihilate(bits: int, m: int):
    if not (bits >> m) & 1:
        return None
    return _sign_below(bits, m), bits & ~(1 << m)


def create(bits: int, m: int):
    if (bits >> m) & 1:
        return None
    return _sign_below(bits, m), bits | (1 << m)


def apply_string(bits: int, ops) -> tuple | None:
    """Apply an operator product written left to right.

    ``ops`` is a sequence of ``(mode, dagger)``; the rightmost acts first.
    Returns ``(sign, bits)`` or None when the product annihilates the state.
    """
    sign = 1
    for m, dagger in reversed(ops):
        res = create(bits, m) if dagger else annihilate(bits, m)
        if res is None:
            return None
        s, bits = res
        sign *= s
    return sign, bits


def hop_bits(bits: int, from_site: int, to_site: int, spin: int):
    """``a^dagger_{to,spin} a_{from,spin}`` on a bit mask."""
    return apply_string(bits, ((mode(to_site, spin), True), (mode(from_site, spin), False)))


def pair_exchange_bits(bits: int, a: int, b: int, sigma: int, sigma_bar: int):
    """``a^dagger_{a,sigma} a^dagger_{b,sigma_bar} a_{b,sigma} a_{a,sigma_bar}``."""
    return apply_string(bits, (
        (mode(a, sigma), True),
        (mode(b, sigma_bar), True),
        (mode(b, sigma), False),
        (mode(a, sigma_bar), False),
    ))


def permute_bits(bits: int, perm, n_sites: int):
    """Relabel sites ``i -> perm[i]``; returns ``(sign, bits)`` of the reordered ket."""
    modes = [m for m in range(2 * n_sites) if (bits >> m) & 1]
    images = [2 * perm[m // 2] + (m % 2) for m in modes]
    inversions = sum(1 for i in range(len(images)) for j in range(i + 1, len(images))
                     if images[i] > images[j])
    out = 0
    for m in images:
        out |= 1 << m
    return (-1 if inversions & 1 else 1), out


# ---------------------------------------------------------------------------
# state-level operators

def apply_hop(s: FockState, from_site: int, to_site: int, spin=Spin.UP,
              statistics: Statistics = Statistics.FERMION):
    """Image of ``a^dagger_{to,spin} a_{from,spin}`` acting on ``s``.

    Returns ``(state, amplitude)`` or None when the move annihilates the state.
    The amplitude is a fermionic sign, or ``sqrt(n_from (n_to + 1))`` for
    spinless bosons (``spin`` is ignored for them).
    """
    n = s.n_sites
    if not (0 <= from_site < n and 0 <= to_site < n) or from_site == to_site:
        raise ValueError(f"invalid hop {from_site} -> {to_site} on {n} sites")
    if Statistics(statistics) is Statistics.BOSON:
        occ = list(s.up)
        if occ[from_site] == 0:
            return None
        amp = math.sqrt(occ[from_site] * (occ[to_site] + 1))
        occ[from_site] -= 1
        occ[to_site] += 1
        return FockState(tuple(occ), s.down), amp
    res = hop_bits(s.to_bits(), from_site, to_site, spin)
    if res is None:
        return None
    sign, bits = res
    return FockState.from_bits(bits, n), sign


def apply_exchange(s: FockState, site_a: int, site_b: int):
    """Swap opposite spins between two sites.

    Evaluates ``sum_sigma a^dagger_{a,sigma} a^dagger_{b,sigmabar} a_{b,sigma}
    a_{a,sigmabar}``. At most one spin assignment survives for a given state.
    """
    n = s.n_sites
    if not (0 <= site_a < n and 0 <= site_b < n) or site_a == site_b:
        raise ValueError(f"invalid site pair ({site_a}, {site_b})")
    bits = s.to_bits()
    for sigma in (Spin.UP, Spin.DOWN):
        res = pair_exchange_bits(bits, site_a, site_b, sigma, 1 - sigma)
        if res is not None:
            sign, out = res
            return FockState.from_bits(out, n), sign
    return None


# ---------------------------------------------------------------------------
# total spin

class SpinLabel(NamedTuple):
    s: float
    sz: float


MIXED = "Mixed"


def _lower(bits, n_sites):
    """S^- = sum_i a^dagger_{i,down} a_{i,up}."""
    out = []
    for i in range(n_sites):
        res = apply_string(bits, ((mode(i, Spin.DOWN), True), (mode(i, Spin.UP), False)))
        if res is not None:
            out.append(res)
    return out


def _raise(bits, n_sites):
    out = []
    for i in range(n_sites):
        res = apply_string(bits, ((mode(i, Spin.UP), True), (mode(i, Spin.DOWN), False)))
        if res is not None:
            out.append(res)
    return out


def spin_squared_matrix(basis: Basis) -> np.ndarray:
    """Total ``S^2 = Sz^2 + (S+S- + S-S+)/2`` in a fermionic sector basis."""
    if not basis.is_fermionic:
        raise InvalidSector("total spin is defined for spinful fermions only")
    n = basis.n_sites
    sz = 0.5 * (basis.sector.n_up - basis.sector.n_down)
    dim = len(basis)
    s2 = np.zeros((dim, dim))
    for j, bits in enumerate(basis.bits):
        s2[j, j] += sz * sz
        for first, second in ((_lower, _raise), (_raise, _lower)):
            for s1, mid in first(bits, n):
                for s2_sign, out in second(mid, n):
                    s2[basis.bit_index[out], j] += 0.5 * s1 * s2_sign
    return s2


def total_spin_label(basis: Basis, vector, tol: float = 1e-9):
    """``SpinLabel(S, Sz)`` if ``vector`` is an S^2 eigenvector, else ``MIXED``."""
    v = np.asarray(vector, dtype=float)
    if v.shape != (len(basis),):
        raise DimensionMismatch(f"vector of shape {v.shape} for basis of size {len(basis)}")
    s2 = spin_squared_matrix(basis)
    w = s2 @ v
    lam = float(v @ w)
    if np.linalg.norm(w - lam * v) > tol:
        return MIXED
    s = 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * max(lam, 0.0)))
    s_half = round(2.0 * s) / 2.0
    if abs(s_half * (s_half + 1.0) - lam) > tol:
        return MIXED
    return SpinLabel(s_half, 0.5 * (basis.sector.n_up - basis.sector.n_down))
