"""Hot numerical kernels.

The Cython build of the Jacobi eigensolver is used when it was compiled at
install time; otherwise the numpy implementation is selected. Both are
always importable by name so tests and benchmarks can compare them.
"""
from ._jacobi_py import jacobi_eigh as jacobi_eigh_python

try:
    from ._jacobi_c import jacobi_eigh as jacobi_eigh_compiled
except ImportError:  # extension not built
    jacobi_eigh_compiled = None

if jacobi_eigh_compiled is not None:
    jacobi_eigh = jacobi_eigh_compiled
    BACKEND = "compiled"
else:
    jacobi_eigh = jacobi_eigh_python
    BACKEND = "python"


def available_backends():
    """Map backend name to solver for every implementation present."""
    out = {"python": jacobi_eigh_python}
    if jacobi_eigh_compiled is not None:
        out["compiled"] = jacobi_eigh_compiled
    return out


__all__ = ["jacobi_eigh", "jacobi_eigh_python", "jacobi_eigh_compiled",
           "BACKEND", "available_backends"]
