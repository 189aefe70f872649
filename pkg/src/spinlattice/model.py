"""Dense Hamiltonians for the Hubbard and J-U-V-J_ex models on small graphs.

The extended model is

    H = -J sum_<ab>,s (a+_as a_bs + h.c.) + U sum_a n_a,up n_a,dn
        + V sum_<ab> n_a n_b
        - J_ex sum_<ab> sum_{s,s'} a+_as a+_bs' a_bs a_as'

where the exchange sum runs over all four spin pairs. The same-spin terms
reduce to ``n_as n_bs`` and the opposite-spin terms flip a spin pair, so the
bond operator is the spin-swap operator: a bond singlet gains ``+J_ex`` and
every bond triplet ``-J_ex``. Together with the density-density ``V`` this
gives ``V - J_ex`` for a polarized pair and ``V + J_ex`` for a bond singlet.

Matrices are in units of J when ``hop_j > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BiasUnsupported, GraphMismatch, InvalidSector, NonzeroBias, ZeroHopping
from .fock import Basis, Spin, hop_bits, mode, pair_exchange_bits


@dataclass(frozen=True)
class CouplingSet:
    hop_j: float = 1.0
    onsite_u: float = 0.0
    intersite_v: float = 0.0
    superexchange_jex: float = 0.0
    bias_delta: float = 0.0

    def __post_init__(self):
        if self.hop_j < 0:
            raise ValueError(f"hop_j must be >= 0, got {self.hop_j}")

    @classmethod
    def from_dimensionless(cls, u, v=0.0, j=0.0, hop_j=1.0):
        """Couplings with ``U = 4Ju``, ``V = 4Jv``, ``J_ex = 4Jj``."""
        return cls(hop_j, 4 * hop_j * u, 4 * hop_j * v, 4 * hop_j * j)


@dataclass(frozen=True)
class DimensionlessCouplings:
    """Ratios U/4J, V/4J and J_ex/4J."""

    u: float
    v: float = 0.0
    j: float = 0.0


def to_dimensionless(c: CouplingSet) -> DimensionlessCouplings:
    if c.hop_j <= 0:
        raise ZeroHopping("dimensionless couplings need hop_j > 0")
    four_j = 4.0 * c.hop_j
    return DimensionlessCouplings(c.onsite_u / four_j, c.intersite_v / four_j,
                                  c.superexchange_jex / four_j)


@dataclass(frozen=True)
class LatticeGraph:
    n_sites: int
    edges: tuple

    def __post_init__(self):
        seen = set()
        norm = []
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at site {a}")
            if not (0 <= a < self.n_sites and 0 <= b < self.n_sites):
                raise ValueError(f"edge ({a}, {b}) out of range")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    def has_edge(self, a, b) -> bool:
        return (min(a, b), max(a, b)) in self.edges


def two_site() -> LatticeGraph:
    return LatticeGraph(2, ((0, 1),))


def plaquette_ring() -> LatticeGraph:
    return LatticeGraph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))


# Kagome cell cut out of the 4x4 square embedding: sites 22, 23, 32, 33 are
# labelled 0, 1, 2, 3. The ring follows the square bonds; the frustrated
# variant adds the 23-32 diagonal, making two triangles that share a bond.
KAGOME_CELL_LABELS = (22, 23, 32, 33)


def kagome_cell_ring() -> LatticeGraph:
    return LatticeGraph(4, ((0, 1), (1, 3), (3, 2), (2, 0)))


def kagome_cell() -> LatticeGraph:
    return LatticeGraph(4, ((0, 1), (1, 3), (3, 2), (2, 0), (1, 2)))


def square_grid(rows: int, cols: int) -> LatticeGraph:
    """Open-boundary grid, row-major site labels."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1))
            if r + 1 < rows:
                edges.append((i, i + cols))
    return LatticeGraph(rows * cols, tuple(edges))


NAMED_GRAPHS = {
    "two-site": two_site,
    "plaquette-ring": plaquette_ring,
    "kagome-cell": kagome_cell,
    "kagome-cell-ring": kagome_cell_ring,
    "grid-4x4": lambda: square_grid(4, 4),
}


def named_graph(name: str) -> LatticeGraph:
    try:
        return NAMED_GRAPHS[name]()
    except KeyError:
        raise ValueError(f"unknown graph {name!r}; choose from {sorted(NAMED_GRAPHS)}") from None


@dataclass(frozen=True)
class HamiltonianMatrix:
    entries: np.ndarray
    basis: Basis
    energy_unit: float = 1.0
    graph: LatticeGraph | None = field(default=None, compare=False)

    def __post_init__(self):
        self.entries.setflags(write=False)
        if self.entries.shape != (len(self.basis), len(self.basis)):
            raise ValueError("matrix dimension differs from basis size")

    @property
    def dim(self) -> int:
        return len(self.basis)


def _check(basis: Basis, graph: LatticeGraph):
    if not basis.is_fermionic:
        raise InvalidSector("Hamiltonian builders need a fermionic basis")
    if basis.n_sites != graph.n_sites:
        raise GraphMismatch(
            f"basis has {basis.n_sites} sites but graph has {graph.n_sites}")


def _build(basis, graph, c, extended, raw):
    n = basis.n_sites
    dim = len(basis)
    h = np.zeros((dim, dim))
    scale = c.hop_j if (c.hop_j > 0 and not raw) else 1.0
    t = c.hop_j / scale
    u = c.onsite_u / scale
    v = c.intersite_v / scale
    jex = c.superexchange_jex / scale
    half_bias = 0.5 * c.bias_delta / scale
    lookup = basis.bit_index

    for col, bits in enumerate(basis.bits):
        occ = [[(bits >> mode(i, s)) & 1 for s in (Spin.UP, Spin.DOWN)] for i in range(n)]
        diag = u * sum(o[0] * o[1] for o in occ)
        if half_bias:
            diag -= half_bias * (sum(occ[0]) - sum(occ[1]))
        if extended and v:
            diag += v * sum(sum(occ[a]) * sum(occ[b]) for a, b in graph.edges)
        h[col, col] += diag

        if t:
            for a, b in graph.edges:
                for src, dst in ((a, b), (b, a)):
                    for s in (Spin.UP, Spin.DOWN):
                        res = hop_bits(bits, src, dst, s)
                        if res is not None:
                            sign, out = res
                            h[lookup[out], col] -= t * sign
        if extended and jex:
            for a, b in graph.edges:
                for s in (Spin.UP, Spin.DOWN):
                    for s_bar in (Spin.UP, Spin.DOWN):
                        res = pair_exchange_bits(bits, a, b, s, s_bar)
                        if res is not None:
                            sign, out = res
                            h[lookup[out], col] -= jex * sign
    return HamiltonianMatrix(h, basis, scale, graph)


def build_hubbard(basis: Basis, graph: LatticeGraph, c: CouplingSet,
                  raw: bool = False) -> HamiltonianMatrix:
    """Hubbard Hamiltonian with hopping on graph edges.

    A bias ``-(Delta/2)(n_0 - n_1)`` is allowed on two-site graphs only.
    ``raw=True`` keeps energy units instead of dividing by J.
    """
    _check(basis, graph)
    if c.bias_delta and graph.n_sites != 2:
        raise BiasUnsupported("bias is defined for two-site graphs only")
    return _build(basis, graph, c, extended=False, raw=raw)


def build_juvj(basis: Basis, graph: LatticeGraph, c: CouplingSet,
               raw: bool = False) -> HamiltonianMatrix:
    """Extended J-U-V-J_ex Hamiltonian (symmetric wells, no bias)."""
    _check(basis, graph)
    if c.bias_delta:
        raise NonzeroBias("the J-U-V-J_ex model has no bias term; set bias_delta = 0")
    return _build(basis, graph, c, extended=True, raw=raw)
