"""Spectra of the double-well model and the frequency <-> coupling maps.

Closed forms work on the dimensionless ratios ``u = U/4J``, ``v = V/4J``
and ``j = J_ex/4J`` and return energies in units of J.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_eigh
from .errors import (InconsistentFrequencies, NegativeFrequency, NoCrossing, NonSymmetric,
                     ZeroHopping)
from .fock import spin_squared_matrix, total_spin_label
from .model import CouplingSet, DimensionlessCouplings, HamiltonianMatrix


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    ground_vector: np.ndarray
    ground_spin: object = None

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])


def _fix_sign(v):
    """Make the largest-magnitude component of each column positive."""
    idx = np.argmax(np.abs(v), axis=0)
    signs = np.sign(v[idx, np.arange(v.shape[1])])
    signs[signs == 0] = 1.0
    return v * signs


def eigen_symmetric(h, symmetry_tol: float = 1e-12) -> SpectrumResult:
    """Full spectrum of a real symmetric matrix by Jacobi rotations.

    Accepts a ``HamiltonianMatrix`` (ground spin is then labelled when the
    basis is fermionic) or a plain square array.
    """
    basis = h.basis if isinstance(h, HamiltonianMatrix) else None
    a = np.asarray(h.entries if basis is not None else h, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSymmetric(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > symmetry_tol * max(1.0, np.max(np.abs(a))):
        raise NonSymmetric("matrix is not symmetric")
    w, v, _ = jacobi_eigh(a)
    v = _fix_sign(v) if v.size else v
    ground = v[:, 0] if v.size else v
    spin = None
    if basis is not None and basis.is_fermionic and len(basis):
        spin = total_spin_label(basis, ground)
    return SpectrumResult(w, v, ground, spin)


def spin_projector(basis, s: float, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal columns spanning the total-spin-``s`` subspace of a sector."""
    s2 = spin_squared_matrix(basis)
    w, v, _ = jacobi_eigh(s2)
    keep = np.abs(w - s * (s + 1.0)) < 1e-6
    if not keep.any():
        return np.zeros((len(basis), 0))
    q = v[:, keep]
    residual = np.max(np.abs(s2 @ q - s * (s + 1.0) * q))
    if residual > tol:
        raise ArithmeticError(f"spin projector residual {residual:.2e}")
    return q


def spin_resolved_ground(h: HamiltonianMatrix, s: float, projector=None) -> float:
    """Lowest energy among states of total spin ``s`` within the sector of ``h``."""
    q = spin_projector(h.basis, s) if projector is None else projector
    if q.shape[1] == 0:
        raise ValueError(f"no S = {s} states in this sector")
    block = q.T @ h.entries @ q
    block = 0.5 * (block + block.T)
    return float(jacobi_eigh(block)[0][0])


# ---------------------------------------------------------------------------
# closed forms

def singlet_energy(dc: DimensionlessCouplings) -> float:
    u, v, j = dc.u, dc.v, dc.j
    return -2.0 * (math.sqrt((u - v - j) ** 2 + 1.0) - (u + v + j))


def triplet_energy(dc: DimensionlessCouplings) -> float:
    return 4.0 * (dc.v - dc.j)


def _gap(u, v, j):
    dc = DimensionlessCouplings(u, v, j)
    return singlet_energy(dc) - triplet_energy(dc)


def transition_point(u: float, v: float, tol: float = 1e-12) -> float:
    """Smallest ``j >= 0`` at which the polarized pair is no higher than the singlet.

    Found by bisection on ``E_s - E_t``, which is strictly increasing in j.
    For finite inputs ``E_s < E_t`` at j = 0, so a crossing always exists.
    """
    if not (math.isfinite(u) and math.isfinite(v)):
        raise ValueError(f"u and v must be finite, got ({u}, {v})")
    if _gap(u, v, 0.0) >= 0.0:
        raise NoCrossing(f"triplet already lowest at j = 0 for u={u}, v={v}")
    lo, hi = 0.0, 1.0
    while _gap(u, v, hi) < 0.0:
        lo, hi = hi, 2.0 * hi
        if hi > 1e12:
            raise NoCrossing("no crossing found")
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if _gap(u, v, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return hi


def transition_point_closed_form(u: float, v: float) -> float:
    """Root of ``8 j^2 + 8 (u - v) j - 1 = 0``, i.e. where E_s = E_t."""
    a = u - v
    return 0.5 * (math.sqrt(a * a + 0.5) - a)


def transition_point_as_printed(u: float, v: float) -> float:
    """``(1/2)[sqrt((u - v)^2) + 1/2 - (u + v)]``, kept for comparison only.

    This grouping does not solve E_s = E_t; see ``transition_point``.
    """
    return 0.5 * (math.sqrt((u - v) ** 2) + 0.5 - (u + v))


# ---------------------------------------------------------------------------
# frequency map

@dataclass(frozen=True)
class FrequencySet:
    w1: float
    w2: float
    w3: float
    w4: float
    w5: float
    hbar: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")


def evolution_frequencies(c: CouplingSet, hbar: float = 1.0) -> FrequencySet:
    """Oscillation frequencies of the double well for given couplings.

    ``w5`` is returned signed; a ``NegativeFrequency`` warning is issued when
    ``V < J_ex``.
    """
    if c.hop_j <= 0:
        raise ZeroHopping("evolution frequencies need hop_j > 0")
    J, U, V, Jex = c.hop_j, c.onsite_u, c.intersite_v, c.superexchange_jex
    root12 = math.sqrt(16.0 * J * J + U * U)
    x = (U - V - Jex) / (4.0 * J)
    root34 = math.sqrt(x * x + 1.0)
    s = (U + V + Jex) / (4.0 * J)
    if V < Jex:
        warnings.warn(f"V < J_ex gives negative w5 ({(V - Jex) / hbar})",
                      NegativeFrequency, stacklevel=2)
    # minus branches via conjugate forms to avoid cancellation at large U
    minus34 = (1.0 - U * (V + Jex) / (4.0 * J * J)) / (root34 + s) if root34 + s > 0 \
        else root34 - s
    return FrequencySet(
        w1=(root12 + U) / (2.0 * hbar),
        w2=8.0 * J * J / ((root12 + U) * hbar),
        w3=2.0 * J * (root34 + s) / hbar,
        w4=2.0 * J * minus34 / hbar,
        w5=(V - Jex) / hbar,
        hbar=hbar,
    )


def extract_couplings(f: FrequencySet, tol: float = 1e-6):
    """Invert ``evolution_frequencies``.

    Returns ``(CouplingSet, residual)`` where ``residual`` is the relative
    mismatch of ``hbar (w3 + w4)`` against ``4 J sqrt(x^2 + 1)`` rebuilt from
    the recovered couplings. Raises ``InconsistentFrequencies`` above ``tol``.
    """
    if f.w1 < f.w2:
        raise InconsistentFrequencies("w1 must be >= w2")
    if f.w1 * f.w2 <= 0:
        raise InconsistentFrequencies("w1 * w2 must be positive to recover J")
    hb = f.hbar
    J = 0.5 * hb * math.sqrt(f.w1 * f.w2)
    U = hb * (f.w1 - f.w2)
    total = hb * (f.w3 - f.w4)          # U + V + J_ex
    diff = hb * f.w5                    # V - J_ex
    V = 0.5 * (total - U + diff)
    Jex = 0.5 * (total - U - diff)
    x = (U - V - Jex) / (4.0 * J)
    expected = 4.0 * J * math.sqrt(x * x + 1.0)
    residual = abs(hb * (f.w3 + f.w4) - expected) / expected
    if residual > tol:
        raise InconsistentFrequencies(f"consistency residual {residual:.3e} exceeds {tol:g}")
    return CouplingSet(J, U, V, Jex), residual


def literal_vjex_inversion(f: FrequencySet):
    """V and J_ex from the ungrouped expressions

        V    = (hbar/2)(w3 - w5) - (w1 - w2) + w5
        J_ex = (hbar/2)(w3 - w5) - (w1 - w2) - w5

    taken at face value. They do not invert ``evolution_frequencies`` and
    are exposed only so the discrepancy can be measured.
    """
    hb = f.hbar
    base = 0.5 * hb * (f.w3 - f.w5) - (f.w1 - f.w2)
    return base + f.w5, base - f.w5
