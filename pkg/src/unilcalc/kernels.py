"""Backend selection for the bit-packed F2[t] / Z4[t] kernels.

The compiled extension is preferred when present; set UNILCALC_PURE=1 to
force the pure-Python twin (benchmarks and the backend-agreement tests use
this).  Both expose the same functions; see _gf2_pure for the contract.
"""

import os

from unilcalc import _gf2_pure


def get_backend(name):
    if name == "python":
        return _gf2_pure
    if name == "c":
        from unilcalc import _gf2_fast

        return _gf2_fast
    raise ValueError(f"unknown kernel backend {name!r}")


if os.environ.get("UNILCALC_PURE"):
    _impl = _gf2_pure
else:
    try:
        from unilcalc import _gf2_fast as _impl
    except ImportError:
        _impl = _gf2_pure

BACKEND = _impl.BACKEND

gf2_deg = _impl.gf2_deg
gf2_mul = _impl.gf2_mul
gf2_divmod = _impl.gf2_divmod
gf2_mod = _impl.gf2_mod
gf2_gcd = _impl.gf2_gcd
gf2_spread = _impl.gf2_spread
gf2_cross_square = _impl.gf2_cross_square
z4_add = _impl.z4_add
z4_neg = _impl.z4_neg
z4_mul = _impl.z4_mul
z4_sq_lift = _impl.z4_sq_lift
