"""Package-wide numeric defaults."""

from __future__ import annotations

import cmath

REL_TOL = 1e-9
ABS_TOL = 1e-12
P_MAX = 10_000
G_D_DEPTH = 40
LOCAL_SERIES_DEPTH = 32
POLE_THRESHOLD = 1e-12
CENTRAL_TOL = 1e-9
ZFR_CONSTANT = 0.1


def close(a: complex, b: complex, rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
    """Mixed relative/absolute comparison used throughout the package."""
    return cmath.isclose(a, b, rel_tol=rel, abs_tol=abs_)
