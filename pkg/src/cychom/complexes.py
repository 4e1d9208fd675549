"""Chain complexes and operator matrices on lexicographic word bases.

Weight-graded side (production route): on the rank-d^w module spanned by
weight-w words, the signed cyclic operator is t = (-1)^(w-1) T with T the
rotation moving the last letter to the front, and the norm is
N = 1 + t + ... + t^(w-1).  The identities t^w = 1 and N(1-t) = (1-t)N = 0
make the 2-periodic complexes below well defined:

    tor complex   ... --N--> C --(1-t)--> C --> 0          (degrees 0..length)
    ext complex   C --(1-t)--> C --N--> C --(1-t)--> ...   (degree -n holds
                                                             cohomology Ext^n)

Ungraded side (oracle route): the full bicomplex over A = k<1, x_1, .., x_d>
with x_i x_j = 0, whose columns alternate the Hochschild boundary b and the
acyclic boundary b', and whose rows alternate 1-t and N on A^(q+1).  A finite
rectangular window of it is totalized into an honest complex (d o d = 0 is
checked on construction) and serves as an independent check on the
weight-graded engines.
"""

import itertools

import numpy as np

from .errors import BudgetExceeded
from .groups import FgAbelianGroup
from .snf import (
    as_integer_matrix,
    exact_matmul,
    homology_of_pair,
    max_abs,
    mod_p_homology,
)
from .words import default_budget

__all__ = [
    "GradedComplex",
    "cyclic_operator",
    "norm_operator",
    "hochschild_weight_complex",
    "tor_complex",
    "ext_complex",
    "full_cyclic_operator",
    "full_norm_operator",
    "hochschild_boundary",
    "acyclic_boundary",
    "BicomplexTruncation",
    "cyclic_bicomplex",
    "total_complex",
    "truncation_homology",
]


def _zero_map(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


class GradedComplex:
    """A bounded window of a chain complex of free modules.

    modules[i] is the rank in homological degree offset + i, and
    boundaries[i] maps degree offset + i to degree offset + i - 1.  The
    window may continue below: boundaries[0] is the map out of the bottom
    module, with an empty (0-row) matrix meaning the complex genuinely ends
    there.  Nothing maps in from above the top degree, so build one degree
    past the highest one you intend to read when the underlying complex
    continues upward.

    >>> c = GradedComplex(0, [1, 1], [_zero_map(0, 1), np.array([[2]])])
    >>> c.homology(0)
    FgAbelianGroup(free_rank=0, torsion=(2,))
    >>> c.homology(1)
    FgAbelianGroup(free_rank=0, torsion=())
    >>> c.homology(7).is_zero()
    True
    """

    __slots__ = ("offset", "modules", "boundaries")

    def __init__(self, offset, modules, boundaries, check=True):
        modules = [int(r) for r in modules]
        if len(boundaries) != len(modules):
            raise ValueError(
                f"need one boundary per module, got {len(boundaries)}"
                f" for {len(modules)}"
            )
        boundaries = [as_integer_matrix(b) for b in boundaries]
        for i, b in enumerate(boundaries):
            if b.shape[1] != modules[i]:
                raise ValueError(
                    f"boundary {i} has {b.shape[1]} columns, module has rank"
                    f" {modules[i]}"
                )
            if i and b.shape[0] != modules[i - 1]:
                raise ValueError(
                    f"boundary {i} has {b.shape[0]} rows, module below has"
                    f" rank {modules[i - 1]}"
                )
        if check:
            for i in range(1, len(boundaries)):
                prod = exact_matmul(boundaries[i - 1], boundaries[i])
                if prod.size and max_abs(prod):
                    from .errors import CompositionNotZero

                    raise CompositionNotZero(
                        f"boundaries {i - 1} o {i} do not compose to zero"
                    )
        self.offset = int(offset)
        self.modules = modules
        self.boundaries = boundaries

    def degrees(self):
        return range(self.offset, self.offset + len(self.modules))

    def rank(self, n):
        i = n - self.offset
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return 0

    def _pair(self, n):
        """(d_in, d_out) at degree n, or None when the degree is trivially 0."""
        i = n - self.offset
        if i >= len(self.modules):
            return None
        if i < 0:
            if self.boundaries[0].shape[0] == 0:
                return None
            raise ValueError(f"degree {n} lies below the stored window")
        d_out = self.boundaries[i]
        if i + 1 < len(self.modules):
            d_in = self.boundaries[i + 1]
        else:
            d_in = _zero_map(self.modules[i], 0)
        return d_in, d_out

    def homology(self, n):
        """H_n = ker(out of degree n) / im(into degree n), over the integers."""
        pair = self._pair(n)
        if pair is None:
            return FgAbelianGroup.zero()
        return homology_of_pair(*pair)

    def mod_p_dimension(self, n, p):
        """dim_{F_p} H_n of the mod-p reduction of this complex."""
        pair = self._pair(n)
        if pair is None:
            return 0
        return mod_p_homology(*pair, p)

    def __repr__(self):
        top = self.offset + len(self.modules) - 1
        return (
            f"GradedComplex(degrees {self.offset}..{top},"
            f" ranks {self.modules})"
        )


def _rotation_sign(w):
    return -1 if (w - 1) % 2 else 1


def cyclic_operator(w, d):
    """Matrix of t = (-1)^(w-1) T on weight-w words, lexicographic basis.

    A signed permutation: one nonzero per row and column, every entry equal
    to (-1)^(w-1).

    >>> cyclic_operator(1, 2).tolist()
    [[1, 0], [0, 1]]
    >>> cyclic_operator(2, 1).tolist()
    [[-1]]
    >>> t = cyclic_operator(3, 2)
    >>> (np.linalg.matrix_power(t, 3) == np.eye(8, dtype=np.int64)).all()
    np.True_
    """
    w = int(w)
    d = int(d)
    if w < 1 or d < 1:
        raise ValueError(f"need w, d >= 1, got w={w}, d={d}")
    size = d**w
    src = np.arange(size)
    dst = (src % d) * d ** (w - 1) + src // d
    m = np.zeros((size, size), dtype=np.int64)
    m[dst, src] = _rotation_sign(w)
    return m


def norm_operator(w, d):
    """Matrix of N = 1 + t + ... + t^(w-1) on weight-w words.

    >>> norm_operator(1, 3).tolist()
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    >>> norm_operator(2, 1).tolist()
    [[0]]
    >>> norm_operator(3, 1).tolist()
    [[3]]
    """
    w = int(w)
    d = int(d)
    if w < 1 or d < 1:
        raise ValueError(f"need w, d >= 1, got w={w}, d={d}")
    size = d**w
    sign = _rotation_sign(w)
    m = np.zeros((size, size), dtype=np.int64)
    src = np.arange(size)
    pos = src.copy()
    val = 1
    for _ in range(w):
        m[pos, src] += val
        pos = (pos % d) * d ** (w - 1) + pos // d
        val *= sign
    return m


def _require_budget(count, budget):
    cap = default_budget() if budget is None else int(budget)
    if count > cap:
        raise BudgetExceeded(
            f"basis of {count} words exceeds the budget of {cap}"
        )


def hochschild_weight_complex(w, d, budget=None):
    """The two-term weight-w Hochschild complex: 1 - t in degrees w, w - 1.

    Its homology is ker(1 - t) at degree w and coker(1 - t) at degree w - 1;
    every other degree of weight w vanishes.

    >>> hochschild_weight_complex(1, 1).boundaries[1].tolist()
    [[0]]
    >>> hochschild_weight_complex(2, 1).boundaries[1].tolist()
    [[2]]
    >>> hochschild_weight_complex(2, 1).homology(1)
    FgAbelianGroup(free_rank=0, torsion=(2,))
    """
    w = int(w)
    d = int(d)
    _require_budget(d**w, budget)
    size = d**w
    one_minus_t = np.eye(size, dtype=np.int64) - cyclic_operator(w, d)
    return GradedComplex(w - 1, [size, size], [_zero_map(0, size), one_minus_t])


def tor_complex(w, d, length, budget=None):
    """The 2-periodic complex computing Tor over the cyclic group ring.

    Degrees 0..length, all of rank d^w; boundaries into even degrees are
    1 - t, into odd degrees N.  Nothing is materialized above degree
    `length`, so read homology only up to length - 1.

    >>> [b.tolist() for b in tor_complex(1, 1, 4).boundaries[1:]]
    [[[0]], [[1]], [[0]], [[1]]]
    >>> [b.tolist() for b in tor_complex(2, 1, 2).boundaries[1:]]
    [[[2]], [[0]]]
    >>> c = tor_complex(3, 1, 2)
    >>> c.homology(0), c.homology(1)
    (FgAbelianGroup(free_rank=1, torsion=()), FgAbelianGroup(free_rank=0, torsion=(3,)))
    """
    w = int(w)
    d = int(d)
    length = int(length)
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    _require_budget(d**w, budget)
    size = d**w
    one_minus_t = np.eye(size, dtype=np.int64) - cyclic_operator(w, d)
    norm = norm_operator(w, d)
    boundaries = [_zero_map(0, size)]
    for i in range(1, length + 1):
        boundaries.append(one_minus_t if i % 2 else norm)
    return GradedComplex(0, [size] * (length + 1), boundaries)


def ext_complex(w, d, length, budget=None):
    """The 2-periodic cochain complex computing Ext, stored homologically.

    The cochain complex C --(1-t)--> C --N--> C --(1-t)--> ... sits at
    degrees 0, -1, ..., -length, so homology at degree -n is Ext^n; the map
    out of the bottom module is materialized, making every stored degree
    trustworthy.

    >>> c = ext_complex(1, 1, 2)
    >>> c.homology(0), c.homology(-1)
    (FgAbelianGroup(free_rank=1, torsion=()), FgAbelianGroup(free_rank=0, torsion=()))
    >>> c = ext_complex(2, 1, 2)
    >>> c.homology(0), c.homology(-1)
    (FgAbelianGroup(free_rank=0, torsion=()), FgAbelianGroup(free_rank=0, torsion=(2,)))
    """
    w = int(w)
    d = int(d)
    length = int(length)
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    _require_budget(d**w, budget)
    size = d**w
    one_minus_t = np.eye(size, dtype=np.int64) - cyclic_operator(w, d)
    norm = norm_operator(w, d)
    boundaries = []
    for i in range(length + 1):
        n = length - i
        boundaries.append(one_minus_t if n % 2 == 0 else norm)
    return GradedComplex(-length, [size] * (length + 1), boundaries)


def _full_index(word, d):
    idx = 0
    for a in word:
        idx = idx * (d + 1) + a
    return idx


def full_cyclic_operator(q, d):
    """t on the full module A^(q+1), A spanned by (1, x_1, ..., x_d).

    Rotation with sign (-1)^q; basis words over the alphabet {0, .., d}
    with 0 the unit, ordered lexicographically.
    """
    q = int(q)
    d = int(d)
    if q < 0 or d < 1:
        raise ValueError(f"need q >= 0, d >= 1, got q={q}, d={d}")
    size = (d + 1) ** (q + 1)
    src = np.arange(size)
    dst = (src % (d + 1)) * (d + 1) ** q + src // (d + 1)
    m = np.zeros((size, size), dtype=np.int64)
    m[dst, src] = -1 if q % 2 else 1
    return m


def full_norm_operator(q, d):
    """N = 1 + t + ... + t^q on A^(q+1)."""
    q = int(q)
    d = int(d)
    size = (d + 1) ** (q + 1)
    sign = -1 if q % 2 else 1
    m = np.zeros((size, size), dtype=np.int64)
    src = np.arange(size)
    pos = src.copy()
    val = 1
    for _ in range(q + 1):
        m[pos, src] += val
        pos = (pos % (d + 1)) * (d + 1) ** q + pos // (d + 1)
        val *= sign
    return m


def _bar_boundary(q, d, include_wrap):
    """Alternating-sum boundary A^(q+1) -> A^q; the wrap term is the cyclic
    face multiplying the last factor into the first."""
    q = int(q)
    d = int(d)
    if q < 1:
        raise ValueError(f"boundary needs q >= 1, got {q}")
    rows = (d + 1) ** q
    cols = (d + 1) ** (q + 1)
    m = np.zeros((rows, cols), dtype=np.int64)
    faces = q + 1 if include_wrap else q
    for src, u in enumerate(itertools.product(range(d + 1), repeat=q + 1)):
        sign = 1
        for i in range(faces):
            a, b = (u[i], u[i + 1]) if i < q else (u[q], u[0])
            if a == 0 or b == 0:
                if i < q:
                    v = u[:i] + (a + b,) + u[i + 2 :]
                else:
                    v = (a + b,) + u[1:q]
                m[_full_index(v, d), src] += sign
            sign = -sign
    return m


def hochschild_boundary(q, d):
    """b: A^(q+1) -> A^q, all q+1 faces including the cyclic one.

    >>> hochschild_boundary(1, 1).tolist()
    [[0, 0, 0, 0], [0, 0, 0, 0]]
    >>> hochschild_boundary(2, 1)[:, 0].tolist()
    [1, 0, 0, 0]
    """
    return _bar_boundary(q, d, include_wrap=True)


def acyclic_boundary(q, d):
    """b': A^(q+1) -> A^q, the first q faces only (the acyclic column map).

    >>> acyclic_boundary(1, 1).tolist()
    [[1, 0, 0, 0], [0, 1, 1, 0]]
    """
    return _bar_boundary(q, d, include_wrap=False)


class BicomplexTruncation:
    """A rectangular window of the cyclic bicomplex over the full algebra A.

    Cell (p, q) holds A^(q+1) of rank (d+1)^(q+1).  Vertical maps descend
    rows: b on even columns, b' on odd.  Horizontal maps descend columns:
    1 - t out of odd p, N out of even p.  The bicomplex commutes, so the
    totalization uses sign (-1)^p on vertical maps.
    """

    __slots__ = ("d", "variant", "n_max", "p_min", "p_max", "q_max",
                 "_vert_even", "_vert_odd", "_hor_even", "_hor_odd")

    def __init__(self, d, variant, n_max, p_min, p_max, q_max):
        self.d = d
        self.variant = variant
        self.n_max = n_max
        self.p_min = p_min
        self.p_max = p_max
        self.q_max = q_max
        self._vert_even = {}
        self._vert_odd = {}
        self._hor_even = {}
        self._hor_odd = {}
        for q in range(1, q_max + 1):
            self._vert_even[q] = hochschild_boundary(q, d)
            self._vert_odd[q] = acyclic_boundary(q, d)
        for q in range(q_max + 1):
            size = (d + 1) ** (q + 1)
            t = full_cyclic_operator(q, d)
            self._hor_odd[q] = np.eye(size, dtype=np.int64) - t
            self._hor_even[q] = full_norm_operator(q, d)

    def in_window(self, p, q):
        return self.p_min <= p <= self.p_max and 0 <= q <= self.q_max

    def cell_rank(self, p, q):
        if not self.in_window(p, q):
            return 0
        return (self.d + 1) ** (q + 1)

    def vertical(self, p, q):
        """Map (p, q) -> (p, q - 1), unsigned; None at the bottom row."""
        if q < 1 or not self.in_window(p, q):
            return None
        return self._vert_even[q] if p % 2 == 0 else self._vert_odd[q]

    def horizontal(self, p, q):
        """Map (p, q) -> (p - 1, q); None when the target leaves the window."""
        if not self.in_window(p, q) or p - 1 < self.p_min:
            return None
        return self._hor_odd[q] if p % 2 else self._hor_even[q]

    def cells_of_degree(self, n):
        """Window cells (p, q) with p + q = n, ascending p."""
        lo = max(self.p_min, n - self.q_max)
        hi = min(self.p_max, n)
        return [(p, n - p) for p in range(lo, hi + 1)]

    def __repr__(self):
        return (
            f"BicomplexTruncation(d={self.d}, variant={self.variant!r},"
            f" p={self.p_min}..{self.p_max}, q=0..{self.q_max})"
        )


def cyclic_bicomplex(d, n_max, variant="cyclic", widen=0, budget=None):
    """Build the truncated bicomplex window for one of the three variants.

    cyclic: first quadrant, columns 0..n_max+1; exact for total degrees
    <= n_max.  negative: columns <= 0; periodic: columns of both signs.  The
    left edge for the last two follows the fixed window formula with `widen`
    extra column pairs; their truncations are heuristic and must be paired
    with the stabilization check in truncation_homology.
    """
    d = int(d)
    n_max = int(n_max)
    widen = int(widen)
    if d < 1 or n_max < 0 or widen < 0:
        raise ValueError(f"bad window parameters d={d}, n_max={n_max}, widen={widen}")
    if variant not in ("cyclic", "negative", "periodic"):
        raise ValueError(f"unknown variant {variant!r}")
    _require_budget((d + 1) ** (n_max + 2), budget)
    q_max = n_max + 1
    if variant == "cyclic":
        p_min, p_max = 0, n_max + 1 + widen
        q_max += widen
    else:
        wvis = n_max + 2
        p_min = -(n_max + 2 * wvis + 2) - 2 * widen
        p_max = 0 if variant == "negative" else n_max + 1
    return BicomplexTruncation(d, variant, n_max, p_min, p_max, q_max)


def total_complex(trunc):
    """Direct-sum totalization of a bicomplex window, as a GradedComplex.

    Tot_n = (+) over p + q = n of cell (p, q); the differential applies the
    horizontal map and (-1)^p times the vertical one.  d o d = 0 is checked
    on construction; maps that would leave the window are dropped.
    """
    n_lo = trunc.p_min
    n_hi = trunc.p_max + trunc.q_max
    degrees = list(range(n_lo, n_hi + 1))
    cells = {n: trunc.cells_of_degree(n) for n in degrees}
    ranks = {
        n: sum(trunc.cell_rank(p, q) for p, q in cells[n]) for n in degrees
    }
    offsets = {}
    for n in degrees:
        pos = 0
        for p, q in cells[n]:
            offsets[p, q] = pos
            pos += trunc.cell_rank(p, q)
    boundaries = [_zero_map(0, ranks[n_lo])]
    for n in degrees[1:]:
        m = _zero_map(ranks[n - 1], ranks[n])
        for p, q in cells[n]:
            col = offsets[p, q]
            ncols = trunc.cell_rank(p, q)
            hor = trunc.horizontal(p, q)
            if hor is not None:
                row = offsets[p - 1, q]
                m[row : row + hor.shape[0], col : col + ncols] = hor
            ver = trunc.vertical(p, q)
            if ver is not None:
                row = offsets[p, q - 1]
                sgn = -1 if p % 2 else 1
                m[row : row + ver.shape[0], col : col + ncols] = sgn * ver
        boundaries.append(m)
    return GradedComplex(n_lo, [ranks[n] for n in degrees], boundaries)


def truncation_homology(d, n_max, variant="cyclic", degrees=None, widen=1,
                        budget=None):
    """Homology of the truncated total complex plus a stability verdict.

    Returns (groups, stable): groups maps each requested degree to the
    homology of the base window, stable to whether a window widened by
    `widen` reproduces it.  For the cyclic variant degrees <= n_max are
    exact and the verdict is a consistency check.  For negative/periodic
    the completed theories totalize by infinite products, which no finite
    window can certify: the verdict only reports depth-to-depth agreement,
    an unstable degree is definitely untrustworthy, and even a stable one
    is a formal window value, not the completed total.  Exact per-weight
    negative/periodic groups come from the homology engines instead.
    """
    base = total_complex(cyclic_bicomplex(d, n_max, variant, budget=budget))
    if degrees is None:
        degrees = range(0, n_max + 1)
    degrees = list(degrees)
    groups = {n: base.homology(n) for n in degrees}
    stable = {n: True for n in degrees}
    if widen:
        wide = total_complex(
            cyclic_bicomplex(d, n_max, variant, widen=widen, budget=budget)
        )
        for n in degrees:
            stable[n] = wide.homology(n) == groups[n]
    return groups, stable
