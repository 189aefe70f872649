"""Exact diagonalization of Hubbard-type models on optical double wells and
four-site clusters, plus the lattice optics that set their couplings."""
from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
