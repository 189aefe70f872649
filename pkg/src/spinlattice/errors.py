"""Exception types raised across the package."""


class SpinLatticeError(ValueError):
    """Base class for domain and computation errors."""


class DomainError(SpinLatticeError):
    pass


class InvalidSector(SpinLatticeError):
    pass


class DimensionMismatch(SpinLatticeError):
    pass


class GraphMismatch(SpinLatticeError):
    pass


class BiasUnsupported(SpinLatticeError):
    pass


class NonzeroBias(SpinLatticeError):
    pass


class ZeroHopping(SpinLatticeError):
    pass


class NonSymmetric(SpinLatticeError):
    pass


class NoCrossing(SpinLatticeError):
    pass


class InconsistentFrequencies(SpinLatticeError):
    pass


class SectorTooLarge(SpinLatticeError):
    pass


class NonCommuting(SpinLatticeError):
    pass


class EmptyBlock(SpinLatticeError):
    pass


class NegativeFrequency(UserWarning):
    """Issued when V < J_ex makes the fifth evolution frequency negative."""
