import numpy as np
import pytest

from spinlattice import fock, model
from spinlattice.errors import (BiasUnsupported, GraphMismatch, InvalidSector, NonzeroBias,
                                ZeroHopping)
from spinlattice.model import CouplingSet, LatticeGraph

from oracles import jordan_wigner


def labels(basis):
    return [str(s) for s in basis]


def reorder(h, basis, order):
    idx = [labels(basis).index(s) for s in order]
    return np.asarray(h.entries)[np.ix_(idx, idx)]


def dense_juvj(n_sites, edges, c):
    """Same operator from Jordan-Wigner matrices on the full Fock space."""
    a = jordan_wigner(2 * n_sites)
    ad = [x.T for x in a]
    num = [ad[m] @ a[m] for m in range(2 * n_sites)]
    h = np.zeros_like(a[0])
    for i in range(n_sites):
        h += c.onsite_u * num[2 * i] @ num[2 * i + 1]
    for p, q in edges:
        for s in (0, 1):
            h -= c.hop_j * (ad[2 * q + s] @ a[2 * p + s] + ad[2 * p + s] @ a[2 * q + s])
        h += c.intersite_v * (num[2 * p] + num[2 * p + 1]) @ (num[2 * q] + num[2 * q + 1])
        for s in (0, 1):
            for t in (0, 1):
                h -= c.superexchange_jex * (ad[2 * p + s] @ ad[2 * q + t]
                                            @ a[2 * q + s] @ a[2 * p + t])
    return h


@pytest.mark.parametrize("sector", [(1, 1), (2, 1), (1, 2), (2, 0), (3, 3)])
def test_matches_dense_operator(rng, sector):
    g = LatticeGraph(3, ((0, 1), (1, 2), (0, 2)))
    c = CouplingSet(1.0, *rng.uniform(0.2, 3.0, size=3))
    b = fock.enumerate_states(3, *sector)
    h = model.build_juvj(b, g, c)
    full = dense_juvj(3, g.edges, c)
    idx = list(b.bits)
    np.testing.assert_allclose(h.entries, full[np.ix_(idx, idx)], rtol=0, atol=1e-13)


def test_two_site_juvj_matrix():
    u, v, jex = 5.0, 1.5, 0.7
    b = fock.enumerate_states(2, 1, 1)
    h = model.build_juvj(b, model.two_site(), CouplingSet(1.0, u, v, jex))
    m = reorder(h, b, ["|ud,0>", "|0,ud>", "|u,d>", "|d,u>"])
    np.testing.assert_allclose(np.diag(m), [u, u, v, v])
    assert np.all(np.abs(m[:2, 2:]) == 1.0)
    assert m[0, 1] == 0.0
    assert abs(m[2, 3]) == jex
    # spectrum holds the singlet closed form and the Sz = 0 triplet at V - J_ex
    w = np.linalg.eigvalsh(m)
    x = (u - v - jex) / 4
    e_s = -2 * (np.sqrt(x * x + 1) - (u + v + jex) / 4)
    assert np.min(np.abs(w - e_s)) < 1e-12
    assert np.min(np.abs(w - (v - jex))) < 1e-12


def test_polarized_entry():
    for sector in [(2, 0), (0, 2)]:
        b = fock.enumerate_states(2, *sector)
        h = model.build_juvj(b, model.two_site(), CouplingSet(2.0, 1.0, 3.0, 1.0))
        assert h.entries.shape == (1, 1)
        assert h.entries[0, 0] == (3.0 - 1.0) / 2.0


def test_model_reduction(rng):
    for n, g in [(2, model.two_site()), (4, model.plaquette_ring()), (4, model.kagome_cell())]:
        b = fock.enumerate_states(n, n // 2, n // 2)
        c = CouplingSet(1.3, 4.1)
        np.testing.assert_array_equal(model.build_juvj(b, g, c).entries,
                                      model.build_hubbard(b, g, c).entries)


def _spin_flip(basis):
    """Matrix of the operator exchanging up and down labels, with fermion signs."""
    n = basis.n_sites
    p = np.zeros((len(basis), len(basis)))
    for j, bits in enumerate(basis.bits):
        modes = [m for m in range(2 * n) if (bits >> m) & 1]
        images = [m ^ 1 for m in modes]
        inv = sum(1 for x in range(len(images)) for y in range(x + 1, len(images))
                  if images[x] > images[y])
        out = sum(1 << m for m in images)
        p[basis.bit_index[out], j] = (-1) ** inv
    return p


@pytest.mark.parametrize("graph", ["two-site", "plaquette-ring", "kagome-cell"])
def test_spin_flip_symmetry(graph):
    g = model.named_graph(graph)
    n = g.n_sites
    b = fock.enumerate_states(n, n // 2, n // 2)
    h = model.build_juvj(b, g, CouplingSet(1.0, 3.0, 0.5, 0.4)).entries
    p = _spin_flip(b)
    np.testing.assert_allclose(p @ h @ p.T, h, atol=1e-14)


def test_symmetric_and_sized():
    for name in model.NAMED_GRAPHS:
        g = model.named_graph(name)
        if g.n_sites > 4:
            continue
        b = fock.enumerate_states(g.n_sites, g.n_sites // 2, g.n_sites // 2)
        h = model.build_juvj(b, g, CouplingSet(1.0, 2.0, 0.3, 0.2))
        assert h.entries.shape == (len(b), len(b)) == (h.dim, h.dim)
        np.testing.assert_array_equal(h.entries, h.entries.T)


@pytest.mark.parametrize("ratio", [0.0, 1.0, 4.0, 12.0])
def test_hubbard_two_site_eigenvalues(ratio):
    b = fock.enumerate_states(2, 1, 1)
    h = model.build_hubbard(b, model.two_site(), CouplingSet(1.0, ratio))
    r = np.sqrt(ratio ** 2 + 16)
    expected = sorted([0.0, ratio, (ratio + r) / 2, (ratio - r) / 2])
    np.testing.assert_allclose(np.linalg.eigvalsh(h.entries), expected, atol=1e-12)


def test_bias_diagonal():
    b = fock.enumerate_states(2, 1, 1)
    h = model.build_hubbard(b, model.two_site(), CouplingSet(2.0, 0.0, bias_delta=3.0))
    m = reorder(h, b, ["|ud,0>", "|0,ud>", "|u,d>", "|d,u>"])
    np.testing.assert_allclose(np.diag(m), [-1.5, 1.5, 0.0, 0.0])


def test_zero_couplings_give_zero_matrix():
    b = fock.enumerate_states(2, 1, 1)
    h = model.build_hubbard(b, model.two_site(), CouplingSet(0.0, 0.0))
    assert not h.entries.any()
    assert h.energy_unit == 1.0


def test_raw_units():
    b = fock.enumerate_states(2, 1, 1)
    c = CouplingSet(2.0, 6.0)
    scaled = model.build_hubbard(b, model.two_site(), c)
    raw = model.build_hubbard(b, model.two_site(), c, raw=True)
    np.testing.assert_allclose(raw.entries, 2.0 * scaled.entries)


def test_matrix_is_read_only():
    b = fock.enumerate_states(2, 1, 1)
    h = model.build_hubbard(b, model.two_site(), CouplingSet(1.0, 1.0))
    with pytest.raises(ValueError):
        h.entries[0, 0] = 5.0


def test_errors():
    b2 = fock.enumerate_states(2, 1, 1)
    b4 = fock.enumerate_states(4, 2, 2)
    with pytest.raises(GraphMismatch):
        model.build_hubbard(b2, model.plaquette_ring(), CouplingSet())
    with pytest.raises(BiasUnsupported):
        model.build_hubbard(b4, model.plaquette_ring(), CouplingSet(bias_delta=1.0))
    with pytest.raises(NonzeroBias):
        model.build_juvj(b2, model.two_site(), CouplingSet(bias_delta=1.0))
    with pytest.raises(InvalidSector):
        model.build_hubbard(fock.enumerate_states(2, 2, 0, fock.Statistics.BOSON),
                            model.two_site(), CouplingSet())
    with pytest.raises(ValueError):
        CouplingSet(-1.0)


def test_to_dimensionless():
    assert model.to_dimensionless(CouplingSet(1, 12, 0, 0)).u == 3
    d = model.to_dimensionless(CouplingSet(2, 8, 4, 2))
    assert (d.u, d.v, d.j) == (1, 0.5, 0.25)
    with pytest.raises(ZeroHopping):
        model.to_dimensionless(CouplingSet(0, 1))


def test_from_dimensionless_round_trip():
    c = CouplingSet.from_dimensionless(3, 0.5, 0.25, hop_j=2)
    d = model.to_dimensionless(c)
    assert (d.u, d.v, d.j) == (3, 0.5, 0.25)


def test_graph_validation():
    with pytest.raises(ValueError):
        LatticeGraph(2, ((0, 0),))
    with pytest.raises(ValueError):
        LatticeGraph(2, ((0, 2),))
    with pytest.raises(ValueError):
        LatticeGraph(3, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        model.named_graph("hexagon")


def test_named_graphs():
    assert len(model.square_grid(4, 4).edges) == 24
    ring = model.kagome_cell_ring()
    cell = model.kagome_cell()
    assert set(cell.edges) - set(ring.edges) == {(1, 2)}
    assert len(model.plaquette_ring().edges) == 4
