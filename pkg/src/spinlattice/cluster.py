"""Cluster experiments: state counting, the AFM/FM scan and symmetry blocks.

The scan compares two energies at each ``j = J_ex/4J``:

* ``e_afm``: the total-spin-zero level continuously connected to the
  ``j = 0`` ground state of the half-filled Sz = 0 sector,
* ``e_fm``: ground energy of the maximally polarized sector.

The Sz = 0 sector also holds the Sz = 0 member of every ferromagnetic
multiplet (the model conserves total spin), so its plain ground energy would
track ``e_fm`` past the crossing. Projecting onto S = 0 removes those.
Within S = 0 a second singlet can drop below the antiferromagnetic one as
``j`` grows (on the 4-site ring they sit in different lattice-symmetry
sectors and cross exactly); the branch is therefore followed by eigenvector
overlap from row to row. The lowest singlet is kept as ``e_singlet_min``.
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field

import numpy as np

from ._kernels import jacobi_eigh
from .errors import EmptyBlock, GraphMismatch, NonCommuting, SectorTooLarge
from .fock import (Basis, Statistics, enumerate_states, permute_bits, sector_size,
                   spin_squared_matrix)
from .model import CouplingSet, HamiltonianMatrix, LatticeGraph, build_juvj, named_graph
from .spectra import spin_projector

MAX_SECTOR_DIM = 10_000
DEGENERACY_TOL = 1e-10
DIGITS_ENV = "SPINLATTICE_DIGITS"

AFM, FM, DEGENERATE = "AFM", "FM", "Degenerate"


# ---------------------------------------------------------------------------
# state counts

@dataclass(frozen=True)
class CountsReport:
    n_sites: int
    statistics: Statistics
    sz0_states: int = 0
    polarized_states: int = 0
    singlet_states: int = 0
    triplet_sz0_states: int = 0
    boson_states: int = 0


def count_cluster_states(n_sites: int, statistics: Statistics = Statistics.FERMION,
                         resolve_spin: bool = True) -> CountsReport:
    """Counts for two particles on ``n_sites`` sites.

    Fermions: the Sz = 0 sector (1 up, 1 down) and both polarized sectors
    (2 up or 2 down). With ``resolve_spin`` the Sz = 0 sector is split into
    true S = 0 and S = 1 multiplicities from the S^2 spectrum.
    Spinless bosons: all placements of two bosons.
    """
    statistics = Statistics(statistics)
    if statistics is Statistics.BOSON:
        return CountsReport(n_sites, statistics,
                            boson_states=len(enumerate_states(n_sites, 2, 0, statistics)))
    sz0 = enumerate_states(n_sites, 1, 1)
    polarized = len(enumerate_states(n_sites, 2, 0)) + len(enumerate_states(n_sites, 0, 2))
    singlets = triplets = 0
    if resolve_spin:
        w = jacobi_eigh(spin_squared_matrix(sz0))[0]
        singlets = int(np.sum(np.abs(w) < 1e-8))
        triplets = int(np.sum(np.abs(w - 2.0) < 1e-8))
    return CountsReport(n_sites, statistics, len(sz0), polarized, singlets, triplets)


# ---------------------------------------------------------------------------
# AFM / FM scan

@dataclass(frozen=True)
class ScanRow:
    j: float
    e_afm: float
    e_fm: float
    ground: str
    e_singlet_min: float = float("nan")


@dataclass(frozen=True)
class ScanResult:
    operating_point: tuple
    rows: tuple
    crossing: float | None = None
    graph_name: str = ""
    meta: dict = field(default_factory=dict, compare=False)


def _label(e_afm, e_fm):
    if e_afm < e_fm - DEGENERACY_TOL:
        return AFM
    if abs(e_afm - e_fm) <= DEGENERACY_TOL:
        return DEGENERATE
    return FM


class _ScanModel:
    """Sector bases and the S = 0 projector, built once per graph."""

    def __init__(self, graph: LatticeGraph):
        n = graph.n_sites
        if n % 2:
            raise ValueError("half filling needs an even number of sites")
        dim = sector_size(n, n // 2, n // 2)
        if dim > MAX_SECTOR_DIM:
            raise SectorTooLarge(f"sector dimension {dim} exceeds {MAX_SECTOR_DIM}")
        self.graph = graph
        self.sz0 = enumerate_states(n, n // 2, n // 2)
        self.polarized = enumerate_states(n, n, 0)
        self.singlet = spin_projector(self.sz0, 0.0)

    def singlet_levels(self, u, v, j):
        h = build_juvj(self.sz0, self.graph, CouplingSet.from_dimensionless(u, v, j)).entries
        block = self.singlet.T @ h @ self.singlet
        w, x, _ = jacobi_eigh(0.5 * (block + block.T))
        return w, x

    def polarized_energy(self, u, v, j):
        hp = build_juvj(self.polarized, self.graph, CouplingSet.from_dimensionless(u, v, j)).entries
        return float(jacobi_eigh(hp)[0][0])

    def follow(self, u, v, j, previous):
        """AFM branch energy and vector at ``j``; ``previous=None`` takes the ground level."""
        w, x = self.singlet_levels(u, v, j)
        k = 0 if previous is None else int(np.argmax(np.abs(previous @ x)))
        return float(w[k]), x[:, k], float(w[0])


def rvb_scan(graph: LatticeGraph, u: float, v: float, j_max: float, steps: int,
             graph_name: str = "", tol: float = 1e-12) -> ScanResult:
    """Scan ``j`` on ``linspace(0, j_max, steps)`` at fixed ``(u, v)``.

    When the ground label leaves AFM between two rows the crossing is refined
    by bisection on ``e_afm - e_fm``.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    model = _ScanModel(graph)
    rows = []
    vectors = []
    prev = None
    for j in np.linspace(0.0, j_max, steps):
        e_afm, prev, e_min = model.follow(u, v, float(j), prev)
        e_fm = model.polarized_energy(u, v, float(j))
        rows.append(ScanRow(float(j), e_afm, e_fm, _label(e_afm, e_fm), e_min))
        vectors.append(prev)

    crossing = None
    for i in range(len(rows) - 1):
        if rows[i].ground == AFM and rows[i + 1].ground != AFM:
            lo, hi = rows[i].j, rows[i + 1].j
            ref = vectors[i]
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                e_afm, vec, _ = model.follow(u, v, mid, ref)
                if e_afm < model.polarized_energy(u, v, mid):
                    lo, ref = mid, vec
                else:
                    hi = mid
            crossing = 0.5 * (lo + hi)
            break
    return ScanResult((u, v), tuple(rows), crossing, graph_name,
                      {"n_sites": graph.n_sites, "sz0_dim": len(model.sz0),
                       "singlet_dim": model.singlet.shape[1]})


def label_flips(scan: ScanResult) -> int:
    labels = [r.ground for r in scan.rows]
    return sum(1 for a, b in zip(labels, labels[1:]) if a != b)


# ---------------------------------------------------------------------------
# symmetry reduction

def _compose(p, q):
    return tuple(p[i] for i in q)


@dataclass(frozen=True)
class SymmetryGroup:
    """Site permutations; ``perm[i]`` is the image of site ``i``."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        for g in gens:
            if sorted(g) != list(range(len(g))):
                raise ValueError(f"{g} is not a permutation")
        object.__setattr__(self, "generators", gens)

    def elements(self, n_sites: int):
        identity = tuple(range(n_sites))
        seen = {identity}
        frontier = [identity]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = _compose(g, x)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return sorted(seen)

    def check_graph(self, graph: LatticeGraph):
        for g in self.generators:
            if len(g) != graph.n_sites:
                raise GraphMismatch(f"generator {g} acts on {len(g)} sites, graph has {graph.n_sites}")
            for a, b in graph.edges:
                if not graph.has_edge(g[a], g[b]):
                    raise GraphMismatch(f"generator {g} maps edge ({a}, {b}) off the graph")


def permutation_sign(p) -> int:
    inv = sum(1 for i in range(len(p)) for k in range(i + 1, len(p)) if p[i] > p[k])
    return -1 if inv & 1 else 1


def dihedral_group(n: int) -> SymmetryGroup:
    """Rotations and reflections of an n-site ring."""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return SymmetryGroup((rotation, reflection))


def site_swap_group() -> SymmetryGroup:
    return SymmetryGroup(((1, 0),))


def permutation_operator(basis: Basis, perm) -> np.ndarray:
    """Matrix of the site relabelling ``a+_{i,s} -> a+_{perm[i],s}`` on a sector."""
    dim = len(basis)
    op = np.zeros((dim, dim))
    for col, bits in enumerate(basis.bits):
        sign, out = permute_bits(bits, perm, basis.n_sites)
        op[basis.bit_index[out], col] = sign
    return op


@dataclass(frozen=True)
class ReducedBlock:
    matrix: np.ndarray
    vectors: np.ndarray
    group_order: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def symmetry_reduce(h: HamiltonianMatrix, g: SymmetryGroup, character=None,
                    commute_tol: float = 1e-10) -> ReducedBlock:
    """Restrict ``h`` to the symmetric combinations of basis-state orbits.

    ``character`` optionally maps a group element to +-1 and selects that
    one-dimensional representation instead of the trivial one.
    """
    basis = h.basis
    if h.graph is not None:
        g.check_graph(h.graph)
    elements = g.elements(basis.n_sites)
    ops = {p: permutation_operator(basis, p) for p in elements}
    a = np.asarray(h.entries)
    for p in g.generators:
        if np.max(np.abs(ops[p] @ a - a @ ops[p]), initial=0.0) > commute_tol:
            raise NonCommuting(f"permutation {p} does not commute with the Hamiltonian")
    chi = character or (lambda p: 1)
    projector = sum(chi(p) * ops[p] for p in elements) / len(elements)

    vectors = []
    visited = set()
    for i in range(len(basis)):
        if i in visited:
            continue
        orbit = np.flatnonzero(np.any(np.abs(np.stack([ops[p][:, i] for p in elements])) > 0,
                                      axis=0))
        visited.update(orbit.tolist())
        vec = projector[:, i]
        norm = np.linalg.norm(vec)
        if norm > 1e-12:
            vectors.append(vec / norm)
    if not vectors:
        raise EmptyBlock("no states survive the projection")
    q = np.column_stack(vectors)
    block = q.T @ a @ q
    return ReducedBlock(0.5 * (block + block.T), q, len(elements))


def ground_character(vector, basis: Basis, g: SymmetryGroup, tol: float = 1e-8):
    """Eigenvalue (+-1) of each generator on ``vector``, or None if not an eigenvector."""
    out = []
    for p in g.generators:
        w = permutation_operator(basis, p) @ vector
        lam = float(vector @ w)
        if np.linalg.norm(w - lam * vector) > tol:
            out.append(None)
        else:
            out.append(round(lam))
    return tuple(out)


# ---------------------------------------------------------------------------
# dataset emission

SCAN_HEADER = ("jex_over_4j", "e_afm", "e_fm", "ground")


def digits() -> int:
    return int(os.environ.get(DIGITS_ENV, "12"))


def fmt(x, n=None) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, str)):
        return str(x)
    return f"{x:.{n or digits()}g}"


def scan_to_csv(scan: ScanResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_HEADER)
    for r in scan.rows:
        w.writerow((fmt(r.j), fmt(r.e_afm), fmt(r.e_fm), r.ground))
    u, v = scan.operating_point
    buf.write(f"# graph={scan.graph_name} u={fmt(u)} v={fmt(v)}\n")
    buf.write(f"# crossing_jex_over_4j={fmt(scan.crossing) or 'none'}\n")
    return buf.getvalue()


def scan_to_json(scan: ScanResult) -> str:
    def num(x):
        return None if x is None else float(fmt(x))

    u, v = scan.operating_point
    doc = {
        "graph": scan.graph_name,
        "operating_point": {"u": num(u), "v": num(v)},
        "rows": [dict(zip(SCAN_HEADER, (num(r.j), num(r.e_afm), num(r.e_fm), r.ground)))
                 for r in scan.rows],
        "crossing": num(scan.crossing),
    }
    return json.dumps(doc, indent=2) + "\n"


def figure4_dataset(graph: str = "plaquette-ring", u: float = 3.0, v: float = 0.0,
                    j_max: float = 0.5, steps: int = 101, fmt_: str = "csv") -> str:
    """AFM/FM scan on a named graph, serialized for plotting."""
    scan = rvb_scan(named_graph(graph), u, v, j_max, steps, graph_name=graph)
    return scan_to_json(scan) if fmt_ == "json" else scan_to_csv(scan)


def parse_scan_csv(text: str):
    """Rows of an emitted scan CSV as ``(j, e_afm, e_fm, ground)`` tuples."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(lines)
    header = tuple(next(reader))
    if header != SCAN_HEADER:
        raise ValueError(f"unexpected header {header}")
    return [(float(a), float(b), float(c), d) for a, b, c, d in reader]


def crossing_from_csv(text: str):
    for ln in text.splitlines():
        if ln.startswith("# crossing_jex_over_4j="):
            val = ln.split("=", 1)[1]
            return None if val == "none" else float(val)
    return None
