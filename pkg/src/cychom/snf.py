"""Exact integer linear algebra: Smith normal form and homology of pairs.

Matrices are 2-D numpy arrays, either int64 (fast path) or object dtype
holding Python ints (exact path).  `smith_normal_form` tries the jitted int64
kernel first and silently restarts on object dtype when the kernel's growth
guard fires, so results are always exact; the CYCHOM_KERNEL env var (or the
backend argument) forces one path.

Homology of a pair of boundary maps d_in: C_{n+1} -> C_n, d_out: C_n ->
C_{n-1} follows the standard SNF procedure: a basis K of ker(d_out) (the
zero-diagonal columns of V), the preimage X with K.X = d_in (exact, since the
kernel lattice is saturated), and then H = Z^k / im(X) read off the invariant
factors of X.
"""

import numpy as np

from . import _kernels
from .errors import CompositionNotZero, DimensionMismatch
from .groups import FgAbelianGroup, is_prime

__all__ = [
    "SnfDecomposition",
    "smith_normal_form",
    "as_integer_matrix",
    "exact_matmul",
    "kernel_basis",
    "solve_columns",
    "homology_of_pair",
    "cokernel_group",
    "rank_mod_p",
    "mod_p_homology",
]

_INT64_MAX_ABS = np.int64(2**62)


def as_integer_matrix(m):
    """Coerce nested lists or an integer ndarray to a 2-D integer array.

    int64 input passes through; anything wider (or already object dtype)
    becomes an object array of Python ints.  Float input is rejected: this
    module is exact-only.
    """
    if isinstance(m, np.ndarray) and m.ndim == 2:
        if m.dtype == np.int64:
            return m
        if np.issubdtype(m.dtype, np.integer) or m.dtype == np.bool_:
            return m.astype(np.int64) if m.dtype.itemsize < 8 else _to_object(m)
        if m.dtype == object:
            _validate_object_entries(m)
            return m
        raise TypeError(f"matrix entries must be integers, got dtype {m.dtype}")
    rows = [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatch("ragged rows in matrix input")
    out = np.empty((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise TypeError(f"matrix entries must be integers, got {x!r}")
            out[i, j] = int(x)
    if out.size and max(abs(int(x)) for x in out.flat) <= int(_INT64_MAX_ABS):
        return out.astype(np.int64)
    return out


def _to_object(m):
    out = np.empty(m.shape, dtype=object)
    lst = m.tolist()
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            out[i, j] = lst[i][j]
    return out


def _validate_object_entries(m):
    for x in m.flat:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise TypeError(f"matrix entries must be integers, got {x!r}")


def _object_identity(n):
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def max_abs(m):
    """Largest |entry| as a Python int (0 for empty matrices)."""
    if m.size == 0:
        return 0
    if m.dtype == object:
        return max(abs(int(x)) for x in m.flat)
    return int(np.abs(m).max())


class SnfDecomposition:
    """Result of smith_normal_form: u @ a @ v = d with u, v unimodular,
    the diagonal of d non-negative, divisibility-chained, zeros trailing."""

    __slots__ = ("d", "u", "v")

    def __init__(self, d, u, v):
        self.d = d
        self.u = u
        self.v = v

    @property
    def rank(self):
        return sum(1 for x in self.diagonal() if x != 0)

    def diagonal(self):
        n = min(self.d.shape)
        return [int(self.d[i, i]) for i in range(n)]

    def invariant_factors(self):
        """Diagonal entries that are neither 0 nor 1, in divisibility order."""
        return tuple(x for x in self.diagonal() if x > 1)

    def __repr__(self):
        return f"SnfDecomposition(diagonal={self.diagonal()}, shape={self.d.shape})"


def smith_normal_form(a, backend=None):
    """Smith normal form with transforms, via the min-|pivot| elimination core.

    `backend` (or CYCHOM_KERNEL) picks 'numba' or 'numpy'; exactness does not
    depend on the choice, and the guard demotes oversized int64 runs to the
    object path automatically.

    >>> import numpy as np
    >>> smith_normal_form(np.diag([2, 3])).diagonal()
    [1, 6]
    >>> dec = smith_normal_form(np.array([[2, 4], [6, 8]]))
    >>> dec.diagonal(), dec.rank
    ([2, 4], 2)
    >>> smith_normal_form(np.zeros((2, 3), dtype=np.int64)).rank
    0
    """
    a = as_integer_matrix(a)
    rows, cols = a.shape
    chosen = _kernels.resolve_backend(backend)
    if chosen == "numba" and a.dtype == np.int64 and max_abs(a) <= _kernels.INT64_SAFE_BOUND:
        work = np.ascontiguousarray(a, dtype=np.int64).copy()
        u = np.eye(rows, dtype=np.int64)
        v = np.eye(cols, dtype=np.int64)
        rc = _kernels._snf_core_int64(work, u, v, np.int64(_kernels.INT64_SAFE_BOUND))
        if rc == 0:
            return SnfDecomposition(work, u, v)
    work = _to_object(a) if a.dtype != object else a.copy()
    u = _object_identity(rows)
    v = _object_identity(cols)
    _kernels._snf_core(work, u, v, -1)
    return SnfDecomposition(work, u, v)


def exact_matmul(a, b):
    """Matrix product with a proof of no overflow, else object arithmetic."""
    a = as_integer_matrix(a)
    b = as_integer_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    inner = a.shape[1]
    if a.dtype == np.int64 and b.dtype == np.int64:
        bound = inner * max_abs(a) * max_abs(b)
        if bound < 2**63:
            return a @ b
    out = np.zeros((a.shape[0], b.shape[1]), dtype=object)
    al = a.tolist()
    bl = b.tolist()
    for i in range(a.shape[0]):
        arow = al[i]
        orow = out[i]
        for k in range(inner):
            x = arow[k]
            if x:
                brow = bl[k]
                for j in range(b.shape[1]):
                    orow[j] += x * brow[j]
    return out


def kernel_basis(a, backend=None):
    """Columns forming a lattice basis of ker(a) over Z.

    These are the columns of V matched to zero diagonal entries of the Smith
    form; the basis spans a saturated sublattice.
    """
    a = as_integer_matrix(a)
    dec = smith_normal_form(a, backend=backend)
    return dec.v[:, dec.rank:]


def solve_columns(a, b):
    """Solve a @ x = b exactly over Z, column by column.

    Raises ValueError when some column of b is outside the column lattice
    of a (either rationally unsolvable or an integrality failure).
    """
    a = as_integer_matrix(a)
    b = as_integer_matrix(b)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"cannot solve {a.shape} against {b.shape}")
    dec = smith_normal_form(a)
    y = exact_matmul(dec.u, b)
    r = dec.rank
    diag = dec.diagonal()
    z = np.zeros((a.shape[1], b.shape[1]), dtype=object)
    for i in range(r):
        di = diag[i]
        for j in range(b.shape[1]):
            q, rem = divmod(int(y[i, j]), di)
            if rem:
                raise ValueError("system has no integral solution")
            z[i, j] = q
    for i in range(r, a.shape[0]):
        for j in range(b.shape[1]):
            if y[i, j] != 0:
                raise ValueError("system has no solution")
    return exact_matmul(dec.v, z)


def cokernel_group(a):
    """coker(a) = Z^rows / column lattice of a, in canonical form.

    >>> import numpy as np
    >>> cokernel_group(np.diag([2, 3]))
    FgAbelianGroup(free_rank=0, torsion=(6,))
    >>> cokernel_group(np.zeros((2, 1), dtype=np.int64))
    FgAbelianGroup(free_rank=2, torsion=())
    """
    a = as_integer_matrix(a)
    dec = smith_normal_form(a)
    return FgAbelianGroup(a.shape[0] - dec.rank, dec.invariant_factors())


def _check_composition(d_in, d_out):
    if d_out.shape[1] != d_in.shape[0]:
        raise DimensionMismatch(
            f"boundary shapes do not chain: d_out {d_out.shape}, d_in {d_in.shape}"
        )
    prod = exact_matmul(d_out, d_in)
    if prod.size and max_abs(prod) != 0:
        raise CompositionNotZero("d_out @ d_in is not the zero map")


def homology_of_pair(d_in, d_out):
    """ker(d_out) / im(d_in) as an FgAbelianGroup.

    d_in maps into the middle module, d_out maps out of it; the middle rank
    is the column count of d_out (= row count of d_in).

    >>> import numpy as np
    >>> homology_of_pair(np.array([[2]]), np.zeros((0, 1), dtype=np.int64))
    FgAbelianGroup(free_rank=0, torsion=(2,))
    """
    d_in = as_integer_matrix(d_in)
    d_out = as_integer_matrix(d_out)
    _check_composition(d_in, d_out)
    middle = d_out.shape[1]
    if middle == 0:
        return FgAbelianGroup.zero()
    k = kernel_basis(d_out)
    if k.shape[1] == 0:
        return FgAbelianGroup.zero()
    if d_in.shape[1] == 0:
        return FgAbelianGroup(k.shape[1])
    x = solve_columns(k, d_in)
    dec = smith_normal_form(x)
    return FgAbelianGroup(k.shape[1] - dec.rank, dec.invariant_factors())


def rank_mod_p(a, p, backend=None):
    """Rank of a over F_p."""
    a = as_integer_matrix(a)
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    chosen = _kernels.resolve_backend(backend)
    if chosen == "numba" and a.dtype == np.int64 and p <= _kernels.INT64_SAFE_BOUND:
        work = np.ascontiguousarray(a, dtype=np.int64).copy()
        return int(_kernels._rank_mod_core_int64(work, np.int64(p)))
    work = _to_object(a) if a.dtype != object else a.copy()
    return int(_kernels._rank_mod_core(work, p))


def mod_p_homology(d_in, d_out, p):
    """dim over F_p of ker(d_out mod p) / im(d_in mod p).

    Runs entirely mod p; serves as the independent check on uct_apply.
    """
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"mod_p_homology needs a prime, got {p}")
    d_in = as_integer_matrix(d_in)
    d_out = as_integer_matrix(d_out)
    if d_out.shape[1] != d_in.shape[0]:
        raise DimensionMismatch(
            f"boundary shapes do not chain: d_out {d_out.shape}, d_in {d_in.shape}"
        )
    prod = exact_matmul(d_out, d_in)
    if prod.size:
        bad = (
            any(int(x) % p for x in prod.flat)
            if prod.dtype == object
            else bool((prod % p).any())
        )
        if bad:
            raise CompositionNotZero("d_out @ d_in is not zero mod p")
    nullity = d_out.shape[1] - rank_mod_p(d_out, p)
    return nullity - rank_mod_p(d_in, p)
