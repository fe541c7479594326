"""Backend selection for the hot loops.

The compiled Cython kernels are preferred when present; otherwise the NumPy
fallback is used.  ``LEGWALK_KERNELS=py`` forces the fallback and
``LEGWALK_KERNELS=c`` makes a missing extension a hard error (useful in
benchmarks and backend-parity tests).
"""

import os

_requested = os.environ.get("LEGWALK_KERNELS", "").strip().lower()

if _requested in ("py", "python"):
    from . import pykernels as _impl

    BACKEND = "python"
elif _requested in ("", "c"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise ImportError(
                "compiled kernels requested via LEGWALK_KERNELS=c but the "
                "extension is not built; run `python setup.py build_ext --inplace`"
            ) from None
        from . import pykernels as _impl

        BACKEND = "python"
else:
    raise ValueError(f"unknown LEGWALK_KERNELS value: {_requested!r}")

sieve_range = _impl.sieve_range
legendre_batch = _impl.legendre_batch
legendre_fixed_top = _impl.legendre_fixed_top
lead_measure = _impl.lead_measure

__all__ = [
    "BACKEND",
    "sieve_range",
    "legendre_batch",
    "legendre_fixed_top",
    "lead_measure",
]
