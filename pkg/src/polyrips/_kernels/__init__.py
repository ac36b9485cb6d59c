"""Hot-loop kernels: compiled extension with a pure-numpy fallback.

The compiled module `_speedups` (Cython) is preferred; if it is missing or
the environment variable POLYRIPS_KERNEL is set to "py"/"python"/"pure",
the numpy implementation in `pure.py` is used instead.  Both backends
implement the same four entry points with identical numerics:

    step_many(n, t, r)                 one ccw step per input point
    star_travel_many(n, count, t, r)   total ccw travel over chained steps
    inscribe_many(n, count, target, t, r_hi, tol, max_iter)
                                       per-point bisection for the side
                                       length closing a star (NaN: no root)
    reduce_lows(col_offsets, col_rows, n_rows)
                                       column reduction over the two-element
                                       field; returns per-column lows

`BACKEND` reports which implementation is active ("c" or "python").
"""

import os

_FORCE = os.environ.get("POLYRIPS_KERNEL", "").strip().lower()

if _FORCE in ("py", "python", "pure"):
    from . import pure as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _FORCE == "c":
            raise ImportError(
                "POLYRIPS_KERNEL=c requested but the compiled kernel is not "
                "built; reinstall the package or unset POLYRIPS_KERNEL"
            )
        from . import pure as _impl

        BACKEND = "python"

step_many = _impl.step_many
star_travel_many = _impl.star_travel_many
inscribe_many = _impl.inscribe_many
reduce_lows = _impl.reduce_lows

__all__ = [
    "BACKEND",
    "step_many",
    "star_travel_many",
    "inscribe_many",
    "reduce_lows",
]
