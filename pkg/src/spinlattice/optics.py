"""Trap-level quantities of an optical double-well superlattice.

Lattice depths are kept in recoil-energy units and only converted to
absolute energies where a formula needs them (the Josephson frequency).

Two unit systems are provided. ``PHYSICAL`` uses CODATA 2018 values in SI:

    hbar = 1.054571817e-34 J s
    eps0 = 8.8541878128e-12 F/m
    c    = 299792458 m/s

``NATURAL`` sets all three to 1 and is convenient for checking scaling laws.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fock import Statistics


@dataclass(frozen=True)
class Units:
    hbar: float
    eps0: float
    c: float


PHYSICAL = Units(hbar=1.054571817e-34, eps0=8.8541878128e-12, c=299792458.0)
NATURAL = Units(hbar=1.0, eps0=1.0, c=1.0)


class Detuning(enum.Enum):
    RED = "Red"
    BLUE = "Blue"
    RESONANT = "Resonant"  # outside the validity of the far-detuned trap model


@dataclass(frozen=True)
class DipoleField:
    """Laser field at a point, reduced to what the dipole potential needs.

    ``polarizability_re`` is Re(alpha) of the complex polarizability that
    links dipole and field amplitudes; the field enters only through its
    intensity ``I = eps0 c |E|^2``. Frequencies are angular (rad/s).
    """

    intensity: float
    polarizability_re: float
    laser_frequency: float
    transition_frequency: float

    def __post_init__(self):
        if not self.intensity >= 0:
            raise ValueError(f"intensity must be >= 0, got {self.intensity}")
        if not self.laser_frequency > 0:
            raise ValueError(f"laser_frequency must be > 0, got {self.laser_frequency}")
        if not self.transition_frequency > 0:
            raise ValueError(
                f"transition_frequency must be > 0, got {self.transition_frequency}")


@dataclass(frozen=True)
class LatticeParams:
    """Double-well superlattice geometry.

    Parameters
    ----------
    v1, v2 : float
        Long- and short-lattice depths in recoil units.
    d : float
        Long-lattice period.
    phase : float
        Relative phase of the long lattice in radians; nonzero values tilt
        the double well.
    mass : float
        Atom mass.
    wavelength : float
        Short-lattice wavelength, sets the recoil energy.
    """

    v1: float
    v2: float
    d: float = 1.0
    phase: float = 0.0
    mass: float = 1.0
    wavelength: float = 1.0

    def __post_init__(self):
        if self.v1 < 0 or self.v2 < 0:
            raise ValueError("lattice depths must be nonnegative")
        for name in ("d", "mass", "wavelength"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class Species:
    protons: int
    neutrons: int
    electrons: int

    def __post_init__(self):
        if self.protons < 1 or self.neutrons < 0 or self.electrons < 1:
            raise ValueError("invalid constituent counts")
        if self.protons != self.electrons:
            raise ValueError("neutral atoms need protons == electrons")


# Isotopes commonly loaded into optical lattices, with their expected statistics.
COMMON_ISOTOPES = {
    "Rb-87": (Species(37, 50, 37), Statistics.BOSON),
    "Na-23": (Species(11, 12, 11), Statistics.BOSON),
    "K-39": (Species(19, 20, 19), Statistics.BOSON),
    "Cs-133": (Species(55, 78, 55), Statistics.BOSON),
    "K-40": (Species(19, 21, 19), Statistics.FERMION),
    "Li-6": (Species(3, 3, 3), Statistics.FERMION),
    "Sr-87": (Species(38, 49, 38), Statistics.FERMION),
}


def dipole_potential(field: DipoleField, units: Units = PHYSICAL) -> float:
    """Optical dipole potential ``-Re(alpha) I / (2 eps0 c)``."""
    return -field.polarizability_re * field.intensity / (2.0 * units.eps0 * units.c)


def detuning_class(field: DipoleField) -> Detuning:
    delta = field.laser_frequency - field.transition_frequency
    if delta < 0:
        return Detuning.RED
    if delta > 0:
        return Detuning.BLUE
    return Detuning.RESONANT


def superlattice_potential(x, p: LatticeParams):
    """Double-well potential ``v1 cos^2(pi x/d + phase) + v2 cos^2(2 pi x/d)``.

    Works elementwise on numpy arrays. Result is in recoil units.
    """
    return (p.v1 * np.cos(np.pi * x / p.d + p.phase) ** 2
            + p.v2 * np.cos(2.0 * np.pi * x / p.d) ** 2)


def recoil_energy(mass: float, wavelength: float, units: Units = PHYSICAL) -> float:
    """Recoil energy ``hbar^2 / (2 m lambda^2)``.

    This is the form the model was stated in. The textbook value
    ``hbar^2 k^2 / 2m`` with ``k = 2 pi / lambda`` is larger by ``4 pi^2``.
    """
    if not (mass > 0 and wavelength > 0):
        raise ValueError("mass and wavelength must be positive")
    return units.hbar ** 2 / (2.0 * mass * wavelength ** 2)


def josephson_frequency(p: LatticeParams, units: Units = PHYSICAL) -> float:
    """Tunneling oscillation frequency of one atom in the double well.

    ``omega = (pi/d) sqrt((16 V2^2 - V1^2) / (2 m V2))`` with depths converted
    from recoil units to energy. Defined only for ``v1 <= 4 v2`` and ``v2 > 0``.
    """
    if p.v2 <= 0:
        raise DomainError("josephson frequency needs v2 > 0")
    if 16.0 * p.v2 ** 2 < p.v1 ** 2:
        raise DomainError(
            f"16*v2^2 < v1^2 (v1={p.v1}, v2={p.v2}): frequency would be imaginary")
    er = recoil_energy(p.mass, p.wavelength, units)
    v1 = p.v1 * er
    v2 = p.v2 * er
    return (math.pi / p.d) * math.sqrt((16.0 * v2 ** 2 - v1 ** 2) / (2.0 * p.mass * v2))


def is_effective_double_well(p: LatticeParams) -> bool:
    return p.v1 > 4.0 * p.v2


def classify_species(s: Species) -> Statistics:
    total = s.protons + s.neutrons + s.electrons
    return Statistics.BOSON if total % 2 == 0 else Statistics.FERMION
