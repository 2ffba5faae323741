"""Kernel dispatch.

The numba path is used unless ``TTG_DISABLE_NUMBA`` is set to a non-empty,
non-``0`` value or numba cannot be imported; the numpy path is the fallback.
All kernels operate on ``int64`` bitmasks (bit ``i`` = point ``i``).
"""
import os

import numpy as np

from . import _kernels_np as numpy_impl

try:
    from . import _kernels_nb as numba_impl
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_impl = None

_flag = os.environ.get("TTG_DISABLE_NUMBA", "")
USE_NUMBA = numba_impl is not None and _flag in ("", "0")

impl = numba_impl if USE_NUMBA else numpy_impl

__all__ = [
    "USE_NUMBA", "impl", "numpy_impl", "numba_impl",
    "downset_masks", "union_rows", "meet_rows", "phi_theta",
    "perm_codes", "monotone_maps", "extension_pairs", "as_masks",
]


def as_masks(values):
    return np.asarray(values, dtype=np.int64)


def downset_masks(below):
    return impl.downset_masks(as_masks(below))


def union_rows(rows, masks):
    return impl.union_rows(as_masks(rows), as_masks(masks))


def meet_rows(rows, masks, full):
    return impl.meet_rows(as_masks(rows), as_masks(masks), np.int64(full))


def phi_theta(dsets, sig, vs):
    return impl.phi_theta(as_masks(dsets), as_masks(sig), as_masks(vs))


def perm_codes(leq, perms):
    return impl.perm_codes(np.asarray(leq, dtype=np.bool_), as_masks(perms))


def monotone_maps(leq_dom, leq_cod, injective=False, surjective=False):
    return impl.monotone_maps(
        np.asarray(leq_dom, dtype=np.bool_),
        np.asarray(leq_cod, dtype=np.bool_),
        bool(injective),
        bool(surjective),
    )


def extension_pairs(downs, ups, above, full):
    return impl.extension_pairs(as_masks(downs), as_masks(ups), as_masks(above), np.int64(full))
