"""critlue: eigenvalue statistics of the critically-scaled Laguerre Unitary
Ensemble.

Finite-N correlation kernels, Riemann-Hilbert asymptotics of the associated
Laguerre polynomials, hard/soft-edge Airy limits, Tracy-Widom laws for the
extreme eigenvalues and the condition number, and conjugate-gradient
halting-time experiments under the scaling n = N + floor(sqrt(4cN)).
"""

__version__ = "0.1.0"

from critlue.backend import BACKEND

__all__ = ["BACKEND", "__version__"]
