"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable RSDENSITY_PURE_PYTHON is set to a non-empty value, the
pure-Python implementations are used.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
if not os.environ.get("RSDENSITY_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

schur_ssyt = _impl.schur_ssyt
residue_prime_counts = _impl.residue_prime_counts
power_sum_scan = _impl.power_sum_scan

__all__ = ["BACKEND", "schur_ssyt", "residue_prime_counts", "power_sum_scan"]
