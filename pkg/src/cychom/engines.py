"""Weighted homology engines for the square-zero algebra k + V, V of rank d.

Every theory splits over the weight grading, and each weight-w piece is
governed by the action of the cyclic group of order w on the rank-d^w word
module, through the signed rotation t and the norm N:

    hh:      ker(1 - t) in degree w, coker(1 - t) in degree w - 1
    hc:      Tor over the group ring, degree n holds Tor_{n-w+1}
    hcminus: Ext over the group ring, degree n holds Ext^{w-n}
    hp:      2-periodic, the Tate cohomology of the action

Two independent routes compute each group.  The direct engines run integer
Smith-normal-form homology on the explicit complexes from
:mod:`cychom.complexes`; the closed engines evaluate necklace-counting
formulas: with c(m) = necklace_count(m, d) summed over divisors m of w,

    same = sum of c(m) for m = w mod 2, diff = sum of c(m) for m != w mod 2,
    stable torsion T = (+) over m = w mod 2 of (Z/(w/m))^c(m).

Both engines produce identical canonical groups on the supported grids; the
CLI's --engine both mode and the acceptance suite enforce that.

Non-integer coefficient rings are derived from the Z-results by the universal
coefficient theorem (uct_apply), with an independent mod-p rank oracle as a
consistency check on prime moduli.
"""

from functools import lru_cache

import numpy as np

from .complexes import (
    cyclic_operator,
    ext_complex,
    hochschild_weight_complex,
    norm_operator,
    tor_complex,
)
from .errors import BudgetExceeded, CompositionNotZero, InsufficientWeightCutoff
from .groups import CoefficientRing, FgAbelianGroup, uct_apply
from .snf import (
    cokernel_group,
    exact_matmul,
    kernel_basis,
    smith_normal_form,
    solve_columns,
)
from .words import default_budget, necklace_count

__all__ = [
    "THEORIES",
    "Band",
    "WeightedHomologyResult",
    "ConnectingMap",
    "hh_weight",
    "hc_weight_direct",
    "hc_weight_closed",
    "hcminus_weight_direct",
    "hcminus_weight_closed",
    "hp_weight",
    "tate_cohomology",
    "compute_weight",
    "assemble_total",
    "HomologyTable",
]

THEORIES = ("hh", "hc", "hcminus", "hp")

_Z = CoefficientRing.integers()


def _require_budget(w, d, budget):
    cap = default_budget() if budget is None else int(budget)
    if d**w > cap:
        raise BudgetExceeded(
            f"weight {w} needs a basis of {d}^{w} = {d**w} words,"
            f" over the budget of {cap}"
        )


# Complex and homology caches.  Budget checks happen in the callers before
# any cache access, so a cached entry can never smuggle an over-budget
# computation past a smaller CYCHOM_BUDGET.

@lru_cache(maxsize=None)
def _tor(w, d):
    return tor_complex(w, d, 5)


@lru_cache(maxsize=None)
def _ext(w, d):
    return ext_complex(w, d, 5)


@lru_cache(maxsize=None)
def _hochschild(w, d):
    return hochschild_weight_complex(w, d)


@lru_cache(maxsize=None)
def _tor_homology(w, d, pos):
    return _tor(w, d).homology(pos)


@lru_cache(maxsize=None)
def _ext_homology(w, d, pos):
    return _ext(w, d).homology(pos)


def _divisors(w):
    return [m for m in range(1, w + 1) if w % m == 0]


def _necklace_sums(w, d):
    """(same, diff): counts of aperiodic families over divisors m of w with
    m of the same / the opposite parity as w."""
    same = diff = 0
    for m in _divisors(w):
        c = necklace_count(m, d)
        if (w - m) % 2 == 0:
            same += c
        else:
            diff += c
    return same, diff


def _stable_same_torsion(w, d):
    """(+) over m | w, m = w mod 2 of (Z/(w/m))^|family count|, canonical."""
    orders = []
    for m in _divisors(w):
        if (w - m) % 2 == 0 and m != w:
            orders.extend([w // m] * necklace_count(m, d))
    return FgAbelianGroup.from_orders(0, orders)


def _two_torsion(count):
    return FgAbelianGroup.from_orders(0, [2] * count)


class Band:
    """Eventually-2-periodic tail of a weighted result.

    `parity` is the degree class (0 or 1) the band describes, `from_degree`
    the first degree at which `group` is guaranteed; the direction the band
    extends in is fixed by the theory (up for hc, down for hcminus, both
    for hp).
    """

    __slots__ = ("weight", "parity", "from_degree", "group")

    def __init__(self, weight, parity, from_degree, group):
        self.weight = weight
        self.parity = parity % 2
        self.from_degree = from_degree
        self.group = group

    def json_dict(self):
        return {
            "weight": self.weight,
            "parity": "even" if self.parity == 0 else "odd",
            "from_degree": self.from_degree,
            "rank": self.group.free_rank,
            "torsion": list(self.group.torsion),
        }

    def __eq__(self, other):
        return isinstance(other, Band) and (
            self.weight,
            self.parity,
            self.from_degree,
            self.group,
        ) == (other.weight, other.parity, other.from_degree, other.group)

    def __hash__(self):
        return hash((self.weight, self.parity, self.from_degree, self.group))

    def __repr__(self):
        return (
            f"Band(w={self.weight}, parity={self.parity},"
            f" from={self.from_degree}, {self.group.render()})"
        )


class WeightedHomologyResult:
    """Groups of one theory at one weight, over one coefficient ring.

    `groups` maps the materialized degrees to canonical groups; `bands`
    describe the periodic tails, letting group_at answer any degree.
    """

    __slots__ = ("theory", "ring", "d", "weight", "groups", "bands")

    def __init__(self, theory, ring, d, weight, groups, bands):
        if theory not in THEORIES:
            raise ValueError(f"unknown theory {theory!r}")
        self.theory = theory
        self.ring = ring
        self.d = d
        self.weight = weight
        self.groups = dict(groups)
        self.bands = list(bands)

    def _band(self, parity):
        for band in self.bands:
            if band.parity == parity % 2:
                return band
        return None

    def group_at(self, n):
        """The group in degree n, extending the stored table by the bands
        and the theory's vanishing ranges."""
        if n in self.groups:
            return self.groups[n]
        w = self.weight
        zero = FgAbelianGroup.zero()
        if self.theory == "hh":
            return zero
        if self.theory == "hc":
            if n < 0 or (w > 0 and n <= w - 2):
                return zero
            band = self._band(n)
            if band is not None and n >= band.from_degree:
                return band.group
        elif self.theory == "hcminus":
            if n > w:
                return zero
            band = self._band(n)
            if band is not None and n <= band.from_degree:
                return band.group
        elif self.theory == "hp":
            band = self._band(n)
            if band is not None:
                return band.group
            return zero
        raise ValueError(
            f"degree {n} not materialized and outside the banded range"
        )

    def __eq__(self, other):
        if not isinstance(other, WeightedHomologyResult):
            return NotImplemented
        return (
            (self.theory, self.ring, self.d, self.weight) ==
            (other.theory, other.ring, other.d, other.weight)
            and self.groups == other.groups
            and sorted(self.bands, key=lambda b: b.parity)
            == sorted(other.bands, key=lambda b: b.parity)
        )

    def __repr__(self):
        body = ", ".join(
            f"{n}: {g.render()}" for n, g in sorted(self.groups.items())
        )
        return (
            f"WeightedHomologyResult({self.theory}, w={self.weight},"
            f" d={self.d}, {self.ring.render()}, {{{body}}})"
        )


def _apply_ring(zfn, n, ring):
    if ring.tag == "Z":
        return zfn(n)
    return uct_apply(zfn(n), zfn(n - 1), ring)


# ---------------------------------------------------------------------------
# Z-valued degree functions, direct route.

def _hh_z_direct(w, d, n):
    if w == 0:
        return FgAbelianGroup(1) if n == 0 else FgAbelianGroup.zero()
    if n == w or n == w - 1:
        return _hochschild(w, d).homology(n)
    return FgAbelianGroup.zero()


def _hc_z_direct(w, d, n):
    if w == 0:
        if n >= 0 and n % 2 == 0:
            return FgAbelianGroup(1)
        return FgAbelianGroup.zero()
    if n < 0 or n <= w - 2:
        return FgAbelianGroup.zero()
    j = n - w + 1
    pos = 0 if j == 0 else (1 if j % 2 else 2)
    return _tor_homology(w, d, pos)


def _hcminus_z_direct(w, d, n):
    if w == 0:
        if n <= 0 and n % 2 == 0:
            return FgAbelianGroup(1)
        return FgAbelianGroup.zero()
    if n > w:
        return FgAbelianGroup.zero()
    n_hat = w - n
    pos = 0 if n_hat == 0 else (-1 if n_hat % 2 else -2)
    return _ext_homology(w, d, pos)


def _hp_z_direct(w, d, n):
    if w == 0:
        return FgAbelianGroup(1) if n % 2 == 0 else FgAbelianGroup.zero()
    return _tor_homology(w, d, 1 if (n - w) % 2 == 0 else 2)


# Z-valued degree functions, closed route.

def _hh_z_closed(w, d, n):
    if w == 0:
        return FgAbelianGroup(1) if n == 0 else FgAbelianGroup.zero()
    same, diff = _necklace_sums(w, d)
    if n == w:
        return FgAbelianGroup(same)
    if n == w - 1:
        return FgAbelianGroup.from_orders(same, [2] * diff)
    return FgAbelianGroup.zero()


def _hc_z_closed(w, d, n):
    if w == 0:
        if n >= 0 and n % 2 == 0:
            return FgAbelianGroup(1)
        return FgAbelianGroup.zero()
    if n < 0 or n <= w - 2:
        return FgAbelianGroup.zero()
    same, diff = _necklace_sums(w, d)
    if n == w - 1:
        return FgAbelianGroup.from_orders(same, [2] * diff)
    if (n - w) % 2 == 0:
        return _stable_same_torsion(w, d)
    return _two_torsion(diff)


def _hcminus_z_closed(w, d, n):
    if w == 0:
        if n <= 0 and n % 2 == 0:
            return FgAbelianGroup(1)
        return FgAbelianGroup.zero()
    if n > w:
        return FgAbelianGroup.zero()
    same, diff = _necklace_sums(w, d)
    if n == w:
        return FgAbelianGroup(same)
    if (w - n) % 2 == 1:
        return _two_torsion(diff)
    return _stable_same_torsion(w, d)


def _hp_z_closed(w, d, n):
    if w == 0:
        return FgAbelianGroup(1) if n % 2 == 0 else FgAbelianGroup.zero()
    if (n - w) % 2 == 0:
        return _stable_same_torsion(w, d)
    same, diff = _necklace_sums(w, d)
    return _two_torsion(diff)


_Z_DEGREE_FN = {
    ("hh", "direct"): _hh_z_direct,
    ("hh", "closed"): _hh_z_closed,
    ("hc", "direct"): _hc_z_direct,
    ("hc", "closed"): _hc_z_closed,
    ("hcminus", "direct"): _hcminus_z_direct,
    ("hcminus", "closed"): _hcminus_z_closed,
    ("hp", "direct"): _hp_z_direct,
    ("hp", "closed"): _hp_z_closed,
}


# ---------------------------------------------------------------------------
# Band assembly.  The stable values are the two alternating groups above,
# below, or around the exceptional degrees; over rings with torsion the
# universal coefficient correction shifts where the hc tail provably starts.

def _ring_band_value(t_this, t_prev, ring):
    if ring.tag == "Z":
        return t_this
    return uct_apply(t_this, t_prev, ring)


def _bands_for(theory, engine, w, d, ring):
    if theory == "hh":
        return []
    if w == 0:
        unit = ring.unit_group()
        zero = FgAbelianGroup.zero()
        anchor = {"hc": (0, 1), "hcminus": (0, -1), "hp": (0, 1)}[theory]
        return [
            Band(0, 0, anchor[0], unit),
            Band(0, 1, anchor[1], zero),
        ]
    zfn = _Z_DEGREE_FN[(theory, engine)]
    if theory != "hcminus":
        t_same = zfn(w, d, w + 2)
        t_diff = zfn(w, d, w + 1)
    else:
        t_same = zfn(w, d, w - 2)
        t_diff = zfn(w, d, w - 1)
    val_same = _ring_band_value(t_same, t_diff, ring)
    val_diff = _ring_band_value(t_diff, t_same, ring)
    if theory == "hc":
        same_from = w + 2 if ring.tag == "Zmod" else w
        return [
            Band(w, w, same_from, val_same),
            Band(w, w + 1, w + 1, val_diff),
        ]
    if theory == "hcminus":
        return [
            Band(w, w, w - 2, val_same),
            Band(w, w - 1, w - 1, val_diff),
        ]
    return [
        Band(w, w, w % 2, val_same),
        Band(w, w + 1, (w + 1) % 2, val_diff),
    ]


def _materialize(theory, w, degrees):
    """Degrees to store explicitly: the requested ones plus the exceptional
    window around the theory's non-periodic degrees."""
    wanted = set(degrees)
    if theory == "hh":
        wanted |= {0} if w == 0 else {w - 1, w}
    elif theory == "hc":
        wanted |= {max(0, w - 1), w, w + 1}
        wanted = {n for n in wanted if n >= 0}
    elif theory == "hcminus":
        wanted |= {w - 2, w - 1, w}
    else:
        wanted |= {w, w + 1}
    return sorted(wanted)


def _build_result(theory, engine, w, d, ring, degrees):
    zfn = _Z_DEGREE_FN[(theory, engine)]

    def z_of(n):
        return zfn(w, d, n)

    groups = {
        n: _apply_ring(z_of, n, ring)
        for n in _materialize(theory, w, degrees)
    }
    bands = _bands_for(theory, engine, w, d, ring)
    return WeightedHomologyResult(theory, ring, d, w, groups, bands)


def _check_mod_p(result, complex_, degrees):
    """Independent oracle: mod-p chain homology must match the UCT groups."""
    p = result.ring.modulus
    for n in degrees:
        expected = result.groups[n].fp_dimension(p)
        got = complex_.mod_p_dimension(n, p)
        if got != expected:
            raise CompositionNotZero(
                f"mod-{p} rank oracle disagrees at degree {n}:"
                f" {got} vs {expected}"
            )


# ---------------------------------------------------------------------------
# Public engines.

def hh_weight(w, d, ring=_Z, engine="direct", budget=None):
    """Weight-w Hochschild homology; nonzero only in degrees w - 1 and w.

    The direct route takes kernel and cokernel of 1 - t; the closed route
    counts necklaces.  Prime-modulus rings are cross-checked against the
    mod-p homology of the same complex.
    """
    w, d = int(w), int(d)
    if w < 0 or d < 1:
        raise ValueError(f"need w >= 0, d >= 1, got w={w}, d={d}")
    if engine == "direct" and w > 0:
        _require_budget(w, d, budget)
    result = _build_result("hh", engine, w, d, ring, [])
    if engine == "direct" and w > 0 and ring.is_prime_modulus():
        _check_mod_p(result, _hochschild(w, d), [w - 1, w])
    return result


def hc_weight_direct(w, d, degrees, ring=_Z, budget=None):
    """Weight-w cyclic homology from the 2-periodic Tor complex.

    Degree n carries Tor_{n-w+1}; degrees below w - 1 vanish.  Weight 0 is
    the ring in even non-negative degrees.
    """
    w, d = int(w), int(d)
    if w > 0:
        _require_budget(w, d, budget)
    return _build_result("hc", "direct", w, d, ring, degrees)


def hc_weight_closed(w, d, ring=_Z, degrees=(), budget=None):
    """Weight-w cyclic homology assembled from necklace counts.

    Degree w - 1 holds Z^same (+) (Z/2)^diff; degrees w + 2i the stable
    torsion (+) Z/(w/m); degrees w + 1 + 2i the group (Z/2)^diff.
    """
    w, d = int(w), int(d)
    return _build_result("hc", "closed", w, d, ring, degrees)


def hcminus_weight_direct(w, d, degrees, ring=_Z, budget=None):
    """Weight-w negative cyclic homology from the 2-periodic Ext complex.

    Degree n carries Ext^{w-n}; degrees above w vanish.  Weight 0 is the
    ring in even non-positive degrees.
    """
    w, d = int(w), int(d)
    if w > 0:
        _require_budget(w, d, budget)
    return _build_result("hcminus", "direct", w, d, ring, degrees)


def hcminus_weight_closed(w, d, ring=_Z, degrees=(), budget=None):
    """Weight-w negative cyclic homology from necklace counts.

    Degree w holds Z^same; degrees w - 1 - 2i hold (Z/2)^diff; degrees
    w - 2i (i > 0) the stable torsion.
    """
    w, d = int(w), int(d)
    return _build_result("hcminus", "closed", w, d, ring, degrees)


def hp_weight(w, d, ring=_Z, degrees=(), engine="direct", budget=None):
    """Weight-w periodic cyclic homology: 2-periodic in the degree.

    Degrees of the weight's parity carry the stable torsion, the others
    (Z/2)^diff; over the rationals everything vanishes for w > 0.
    """
    w, d = int(w), int(d)
    if engine == "direct" and w > 0:
        _require_budget(w, d, budget)
    return _build_result("hp", engine, w, d, ring, degrees)


class ConnectingMap:
    """The norm N as a map coker(1 - t) -> ker(1 - t) on weight-w words.

    Bases are chosen through the Smith decomposition u (1 - t) v = D of
    rank r: the kernel gets the zero-diagonal columns of v, the cokernel
    the images of u^{-1} e_i with relation orders D_ii for i < r.  The
    matrix is well defined exactly because N annihilates im(1 - t); the
    constructor verifies that (the relation columns must vanish).  Its
    cokernel and kernel are the two Tate groups the periodic theory hangs
    between the Ext and Tor ranges.
    """

    __slots__ = ("weight", "d", "matrix", "relation_orders", "kernel_rank")

    def __init__(self, w, d, budget=None):
        w, d = int(w), int(d)
        if w < 1 or d < 1:
            raise ValueError(f"need w >= 1, d >= 1, got w={w}, d={d}")
        _require_budget(w, d, budget)
        size = d**w
        one_minus_t = np.eye(size, dtype=np.int64) - cyclic_operator(w, d)
        dec = smith_normal_form(one_minus_t)
        r = dec.rank
        kernel = dec.v[:, r:]
        identity = np.eye(size, dtype=np.int64)
        u_inverse = solve_columns(dec.u, identity)
        image = exact_matmul(norm_operator(w, d), u_inverse)
        matrix = solve_columns(kernel, image) if kernel.shape[1] else \
            np.zeros((0, size), dtype=np.int64)
        if kernel.shape[1] == 0:
            # still must verify the image is zero: N maps into ker(1 - t)
            if image.size and any(int(x) != 0 for x in image.flat):
                raise CompositionNotZero("norm image escapes ker(1 - t)")
        diagonal = dec.diagonal()
        for i in range(r):
            if any(int(matrix[j, i]) != 0 for j in range(matrix.shape[0])):
                raise CompositionNotZero(
                    "connecting map is not constant on cosets"
                )
        self.weight = w
        self.d = d
        self.matrix = matrix
        self.relation_orders = tuple(diagonal[:r])
        self.kernel_rank = kernel.shape[1]

    def cokernel(self):
        """ker(1 - t) / N(coker(1 - t)), the degree-0 Tate group."""
        return cokernel_group(self.matrix)

    def kernel(self):
        """The classes N kills, the degree -1 Tate group."""
        null = kernel_basis(self.matrix)
        size = self.matrix.shape[1]
        relations = np.zeros((size, len(self.relation_orders)), dtype=object)
        for i, order in enumerate(self.relation_orders):
            relations[i, i] = int(order)
        coords = solve_columns(null, relations)
        return cokernel_group(coords)

    def __repr__(self):
        return (
            f"ConnectingMap(w={self.weight}, d={self.d},"
            f" {self.matrix.shape[0]}x{self.matrix.shape[1]})"
        )


@lru_cache(maxsize=None)
def _connecting(w, d):
    return ConnectingMap(w, d)


def tate_cohomology(w, d, n_hat, budget=None):
    """Tate cohomology of the order-w cyclic group on weight-w words.

    Positive degrees read the Ext complex, degrees below -1 the Tor
    complex, and the two middle degrees the connecting map: coker(N) at 0
    and ker(N) at -1.  The periodic theory satisfies hp_n = tate(w - n).

    >>> tate_cohomology(3, 1, 0)
    FgAbelianGroup(free_rank=0, torsion=(3,))
    >>> tate_cohomology(2, 1, 0).is_zero()
    True
    >>> all(tate_cohomology(1, 1, k).is_zero() for k in range(-4, 5))
    True
    """
    w, d = int(w), int(d)
    n_hat = int(n_hat)
    if w < 1 or d < 1:
        raise ValueError(f"need w >= 1, d >= 1, got w={w}, d={d}")
    _require_budget(w, d, budget)
    if n_hat >= 1:
        return _ext_homology(w, d, -1 if n_hat % 2 else -2)
    if n_hat == 0:
        return _connecting(w, d).cokernel()
    if n_hat == -1:
        return _connecting(w, d).kernel()
    j = -(n_hat + 1)
    return _tor_homology(w, d, 1 if j % 2 else 2)


def compute_weight(theory, w, d, ring, degrees, engine="direct", budget=None):
    """Uniform per-weight dispatcher used by the CLI and the test sweeps."""
    if theory == "hh":
        return hh_weight(w, d, ring, engine=engine, budget=budget)
    if theory == "hc":
        if engine == "closed":
            return hc_weight_closed(w, d, ring, degrees)
        return hc_weight_direct(w, d, degrees, ring, budget=budget)
    if theory == "hcminus":
        if engine == "closed":
            return hcminus_weight_closed(w, d, ring, degrees)
        return hcminus_weight_direct(w, d, degrees, ring, budget=budget)
    if theory == "hp":
        return hp_weight(w, d, ring, degrees, engine=engine, budget=budget)
    raise ValueError(f"unknown theory {theory!r}")


class HomologyTable:
    """Per-weight results for one theory, with totals where they exist.

    hh and hc are weight-finite in each degree, so their degree totals are
    genuine direct sums.  hcminus and hp receive contributions from
    arbitrarily many weights in a fixed degree; their tables carry the
    per-weight groups and total() refuses rather than reporting a
    truncation as an answer.
    """

    __slots__ = ("theory", "ring", "d", "degrees", "results", "_totals",
                 "truncation_note")

    def __init__(self, theory, ring, d, degrees, results, totals,
                 truncation_note=None):
        self.theory = theory
        self.ring = ring
        self.d = d
        self.degrees = list(degrees)
        self.results = dict(results)
        self._totals = totals
        self.truncation_note = truncation_note

    @property
    def weights(self):
        return sorted(self.results)

    def total(self, n):
        """The direct sum over all weights in degree n."""
        if self._totals is None:
            raise InsufficientWeightCutoff(
                f"{self.theory} totals are not weight-finite:"
                f" {self.truncation_note}"
            )
        if n not in self._totals:
            raise KeyError(f"degree {n} was not requested")
        return self._totals[n]

    def __repr__(self):
        return (
            f"HomologyTable({self.theory}, {self.ring.render()}, d={self.d},"
            f" weights {self.weights[:1]}..{self.weights[-1:]},"
            f" degrees {self.degrees})"
        )


def assemble_total(theory, ring, d, degrees, max_weight=None, engine="direct",
                   budget=None):
    """Sum per-weight results over the weight grading.

    For hh and hc, weights above max(degree) + 2 cannot reach the requested
    degrees, so a genuine total is computed (max_weight may widen but not
    narrow that bound).  For hcminus and hp every weight can contribute to
    every degree of the right parity; the table then reports per-weight
    groups only, up to max_weight (default max(degree) + 2), and explains
    itself in truncation_note.
    """
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}")
    degrees = sorted(set(int(n) for n in degrees))
    if not degrees:
        raise ValueError("no degrees requested")
    if theory in ("hh", "hc"):
        needed = max(degrees) + 2
        if max_weight is None:
            max_weight = needed
        elif max_weight < needed:
            raise InsufficientWeightCutoff(
                f"weights up to {needed} can contribute to degree"
                f" {max(degrees)}, but max_weight={max_weight}"
            )
    elif max_weight is None:
        max_weight = max(degrees) + 2
    results = {
        w: compute_weight(theory, w, d, ring, degrees, engine, budget)
        for w in range(0, max_weight + 1)
    }
    totals = None
    note = None
    if theory in ("hh", "hc"):
        totals = {}
        for n in degrees:
            group = FgAbelianGroup.zero()
            group = group.direct_sum(
                *(results[w].group_at(n) for w in results)
            )
            totals[n] = group
    else:
        note = (
            "every weight of matching parity contributes to each degree;"
            f" table truncated at weight {max_weight}"
        )
    return HomologyTable(theory, ring, d, degrees, results, totals, note)
