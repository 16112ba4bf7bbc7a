"""Kernel backend selection.

The hot scalar kernels (erf/erfc, normal quantile, two-sided p-value map)
exist twice: a compiled Cython extension (``hcdetect._native``) and a
pure-numpy fallback (``hcdetect._purekernels``). The compiled one is used
when importable; ``HCDETECT_BACKEND=pure`` or ``=native`` forces a choice
(the latter raises if the extension is missing).

Results are bit-reproducible for a fixed (seed, backend, platform); the
two backends agree to a few ulp, which the test suite asserts.
"""

from __future__ import annotations

import os

from . import _purekernels

_requested = os.environ.get("HCDETECT_BACKEND", "auto").lower()

if _requested == "pure":
    _impl = _purekernels
elif _requested == "native":
    from . import _native as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purekernels

erf = _impl.erf
erfc = _impl.erfc
ndtri = _impl.ndtri
two_sided_p = _impl.two_sided_p
gaussian_tail_prob = _impl.gaussian_tail_prob

P_FLOOR = _purekernels.P_FLOOR
P_CEIL = _purekernels.P_CEIL


def backend_name() -> str:
    return "native" if _impl.__name__.endswith("_native") else "pure"
