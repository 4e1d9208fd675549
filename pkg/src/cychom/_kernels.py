"""Elimination cores: one source, two compilations.

numba jits the int64 fast path; the plain Python definitions below run
unchanged on object-dtype arrays of Python ints, which is the exact fallback
(no overflow possible).  Both paths execute the identical pivot sequence, so
they produce identical decompositions.

The int64 path is guarded rather than trusted: `_snf_core` tracks a running
bound `mx` on |entry| across the work matrix and both transform accumulators,
and returns 1 (caller restarts on object dtype) whenever the bound passes the
`limit` argument.  With limit = 2**31 - 1, one elimination step multiplies two
tracked values and adds a third, staying strictly below 2**63; the only
quantities written while mx is above the limit are single additions, so
nothing can wrap before the next check fires.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency
    HAVE_NUMBA = False

# One step forms a[i,j] - q*a[t,j] with |q| bounded by the pre-step mx; keeping
# mx below 2**31 keeps every intermediate strictly inside int64.
INT64_SAFE_BOUND = 2**31 - 1


def resolve_backend(override=None):
    """Pick the kernel backend: the override argument, else CYCHOM_KERNEL,
    else numba when importable."""
    choice = override if override is not None else os.environ.get("CYCHOM_KERNEL", "auto")
    choice = str(choice).strip().lower() or "auto"
    if choice == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {choice!r}; use 'numba' or 'numpy'")
    if choice == "numba" and not HAVE_NUMBA:
        raise RuntimeError("kernel backend 'numba' requested but numba is unavailable")
    return choice


def _snf_core(a, u, v, limit):
    # In-place Smith reduction of a; row ops mirrored on u, column ops on v.
    # Pivot rule: minimal |nonzero| entry of the trailing submatrix.
    # Returns 0 on success, 1 when the growth guard fires (limit >= 0 only).
    rows = a.shape[0]
    cols = a.shape[1]
    mx = 1
    for i in range(rows):
        for j in range(cols):
            x = a[i, j]
            if x < 0:
                x = -x
            if x > mx:
                mx = x
    t = 0
    while t < rows and t < cols:
        while True:
            if 0 <= limit < mx:
                return 1
            # locate pivot
            pr = -1
            pc = -1
            best = 0
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i, j]
                    if x != 0:
                        if x < 0:
                            x = -x
                        if pr < 0 or x < best:
                            best = x
                            pr = i
                            pc = j
            if pr < 0:
                return 0  # trailing submatrix is zero; done
            if pr != t:
                for j in range(cols):
                    tmp = a[t, j]
                    a[t, j] = a[pr, j]
                    a[pr, j] = tmp
                for j in range(rows):
                    tmp = u[t, j]
                    u[t, j] = u[pr, j]
                    u[pr, j] = tmp
            if pc != t:
                for i in range(rows):
                    tmp = a[i, t]
                    a[i, t] = a[i, pc]
                    a[i, pc] = tmp
                for i in range(cols):
                    tmp = v[i, t]
                    v[i, t] = v[i, pc]
                    v[i, pc] = tmp
            if a[t, t] < 0:
                for j in range(cols):
                    a[t, j] = -a[t, j]
                for j in range(rows):
                    u[t, j] = -u[t, j]
            p = a[t, t]
            # clear the pivot column; remainders land in [0, p)
            col_ok = True
            for i in range(t + 1, rows):
                x = a[i, t]
                if x != 0:
                    q = x // p
                    if q != 0:
                        for j in range(t, cols):
                            y = a[i, j] - q * a[t, j]
                            a[i, j] = y
                            if y < 0:
                                y = -y
                            if y > mx:
                                mx = y
                        for j in range(rows):
                            y = u[i, j] - q * u[t, j]
                            u[i, j] = y
                            if y < 0:
                                y = -y
                            if y > mx:
                                mx = y
                    if a[i, t] != 0:
                        col_ok = False
            if not col_ok:
                continue
            # clear the pivot row; the column stays clear because a[i, t] = 0
            # for i > t at this point
            row_ok = True
            for j in range(t + 1, cols):
                x = a[t, j]
                if x != 0:
                    q = x // p
                    if q != 0:
                        for i in range(t, rows):
                            y = a[i, j] - q * a[i, t]
                            a[i, j] = y
                            if y < 0:
                                y = -y
                            if y > mx:
                                mx = y
                        for i in range(cols):
                            y = v[i, j] - q * v[i, t]
                            v[i, j] = y
                            if y < 0:
                                y = -y
                            if y > mx:
                                mx = y
                    if a[t, j] != 0:
                        row_ok = False
            if not row_ok:
                continue
            # divisibility fix: fold a row holding an entry p does not divide
            # into the pivot row, then rerun; the eventual pivot divides both
            bad = -1
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i, j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                for j in range(t, cols):
                    y = a[t, j] + a[bad, j]
                    a[t, j] = y
                    if y < 0:
                        y = -y
                    if y > mx:
                        mx = y
                for j in range(rows):
                    y = u[t, j] + u[bad, j]
                    u[t, j] = y
                    if y < 0:
                        y = -y
                    if y > mx:
                        mx = y
                continue
            break
        t += 1
    return 0


def _rank_mod_core(a, p):
    # Rank of a over F_p by fraction-free row elimination; a is clobbered.
    # All values stay in [0, p), so products stay below p**2.
    rows = a.shape[0]
    cols = a.shape[1]
    for i in range(rows):
        for j in range(cols):
            a[i, j] = a[i, j] % p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        pv = a[r, c]
        for i in range(r + 1, rows):
            x = a[i, c]
            if x != 0:
                for j in range(c, cols):
                    a[i, j] = (pv * a[i, j] - x * a[r, j]) % p
        r += 1
    return r


if HAVE_NUMBA:
    _snf_core_int64 = njit(cache=True)(_snf_core)
    _rank_mod_core_int64 = njit(cache=True)(_rank_mod_core)
else:  # pragma: no cover
    _snf_core_int64 = None
    _rank_mod_core_int64 = None
