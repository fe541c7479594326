"""legwalk: quadratic-residue random walks and prime races over the
rational and Gaussian primes.

Subpackages and modules:

- ``primes``: segmented sieve, prime counting, the on-disk prime cache
- ``modular``: gcd, modular exponentiation/inverse, the rational character
- ``gaussian``: Z[i] arithmetic, Gaussian primes, the Gaussian character
- ``walks``: walk construction and all reported statistics
- ``experiments``: named, file-producing experiment registry
- ``verify``: brute-force verification suites
- ``cli``: the ``legwalk`` command line

The hot loops live in ``legwalk.kernels`` with a compiled backend and a
NumPy fallback chosen at import time.
"""

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
