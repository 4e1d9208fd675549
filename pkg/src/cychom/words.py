"""Tensor-monomial words, rotation orbits, and necklace counting.

A weight-w word is a tuple (j_1, ..., j_w) with letters in {1, ..., d}; it
stands for the monomial x_{j_1} (x) ... (x) x_{j_w}.  The unsigned rotation T
moves the last letter to the front.  Orbits of T are cycle families; the
number of families of length-m words whose cycle length is exactly m is the
necklace count

    (1/m) * sum_{i | m} moebius(m/i) * d**i.

Signs never appear here: the signed operator (-1)^(w-1) T lives in the
operator matrices, this module is order and counting only.
"""

import os
from math import gcd

from .errors import BudgetExceeded

__all__ = [
    "Word",
    "CycleFamily",
    "cycle_length",
    "cycle_family",
    "moebius",
    "necklace_count",
    "enumerate_families",
    "word_index",
    "word_from_index",
    "default_budget",
]

DEFAULT_BUDGET = 2 * 10**6


def default_budget():
    """Enumeration budget: CYCHOM_BUDGET env var, else 2_000_000 words."""
    raw = os.environ.get("CYCHOM_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"CYCHOM_BUDGET must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"CYCHOM_BUDGET must be positive, got {value}")
    return value


class Word:
    """A tensor monomial: 1-indexed letters over an alphabet of size d.

    >>> Word((1, 2, 1), 2)
    Word((1, 2, 1), d=2)
    >>> Word((1, 3), 2)
    Traceback (most recent call last):
        ...
    ValueError: letter 3 out of range 1..2
    """

    __slots__ = ("letters", "d")

    def __init__(self, letters, d):
        letters = tuple(int(x) for x in letters)
        d = int(d)
        if d < 1:
            raise ValueError(f"alphabet size must be positive, got {d}")
        if len(letters) < 1:
            raise ValueError("words must have length >= 1")
        for x in letters:
            if not 1 <= x <= d:
                raise ValueError(f"letter {x} out of range 1..{d}")
        self.letters = letters
        self.d = d

    def __len__(self):
        return len(self.letters)

    def rotate(self):
        """Unsigned rotation T: last letter moves to the front.

        >>> Word((1, 1, 2), 2).rotate()
        Word((2, 1, 1), d=2)
        """
        js = self.letters
        return Word((js[-1],) + js[:-1], self.d)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.letters == other.letters
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.letters, self.d))

    def __repr__(self):
        return f"Word({self.letters}, d={self.d})"


class CycleFamily:
    """A rotation orbit: lex-least representative plus its successive rotations.

    >>> fam = cycle_family(Word((2, 1, 1), 2))
    >>> fam.representative
    Word((1, 1, 2), d=2)
    >>> fam.cycle_length
    3
    >>> [w.letters for w in fam.members]
    [(1, 1, 2), (2, 1, 1), (1, 2, 1)]
    """

    __slots__ = ("representative", "members", "cycle_length")

    def __init__(self, representative, members, cycle_length):
        if len(members) != cycle_length:
            raise ValueError("family size must equal its cycle length")
        if len(representative) % cycle_length != 0:
            raise ValueError("cycle length must divide word length")
        self.representative = representative
        self.members = list(members)
        self.cycle_length = cycle_length

    def __len__(self):
        return self.cycle_length

    def __eq__(self, other):
        return (
            isinstance(other, CycleFamily)
            and self.representative == other.representative
        )

    def __hash__(self):
        return hash(self.representative)

    def __repr__(self):
        return (
            f"CycleFamily({self.representative.letters},"
            f" m={self.cycle_length}, d={self.representative.d})"
        )


def cycle_length(word):
    """Smallest m > 0 with T^m(word) = word; always divides len(word).

    >>> cycle_length(Word((1, 1, 1, 1), 1))
    1
    >>> cycle_length(Word((1, 2, 1, 2), 2))
    2
    >>> cycle_length(Word((1, 1, 2), 2))
    3
    """
    js = word.letters
    w = len(js)
    for m in range(1, w + 1):
        if w % m:
            continue
        if all(js[k] == js[(k + m) % w] for k in range(w)):
            return m
    raise AssertionError("unreachable: m = len(word) always works")


def cycle_family(word):
    """The rotation orbit through word, canonicalized.

    The representative is the lexicographically least rotation, and members
    lists its successive T-images, so any member of an orbit yields the same
    family.

    >>> cycle_family(Word((1, 1), 2))
    CycleFamily((1, 1), m=1, d=2)
    >>> [w.letters for w in cycle_family(Word((1, 2), 2)).members]
    [(1, 2), (2, 1)]
    >>> cycle_family(Word((1, 2, 1), 2)) == cycle_family(Word((1, 1, 2), 2))
    True
    """
    m = cycle_length(word)
    rotations = []
    current = word
    for _ in range(m):
        rotations.append(current)
        current = current.rotate()
    rep = min(rotations, key=lambda x: x.letters)
    start = rotations.index(rep)
    members = rotations[start:] + rotations[:start]
    return CycleFamily(rep, members, m)


def moebius(n):
    """Moebius function: 0 on squared prime factors, else (-1)^(#primes).

    >>> [moebius(n) for n in range(1, 13)]
    [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"moebius needs n >= 1, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def necklace_count(m, d):
    """Number of cycle families of length-m words with cycle length exactly m.

    >>> [necklace_count(1, d) for d in (1, 2, 3, 4)]
    [1, 2, 3, 4]
    >>> necklace_count(2, 2)
    1
    >>> necklace_count(4, 2)
    3
    >>> necklace_count(6, 2)
    9
    >>> necklace_count(3, 1)
    0
    """
    m = int(m)
    d = int(d)
    if m < 1 or d < 1:
        raise ValueError(f"necklace_count needs m, d >= 1, got m={m}, d={d}")
    total = sum(moebius(m // i) * d**i for i in range(1, m + 1) if m % i == 0)
    assert total % m == 0
    return total // m


def word_index(word):
    """Position of a word in the lexicographic basis order of {1..d}^w.

    >>> word_index(Word((1, 1), 3)), word_index(Word((3, 3), 3))
    (0, 8)
    >>> word_index(Word((1, 2), 3))
    1
    """
    idx = 0
    for j in word.letters:
        idx = idx * word.d + (j - 1)
    return idx


def word_from_index(idx, w, d):
    """Inverse of word_index for weight-w words.

    >>> word_from_index(5, 2, 3)
    Word((2, 3), d=3)
    >>> all(word_from_index(word_index(Word(t, 2)), 3, 2).letters == t
    ...     for t in [(1, 1, 2), (2, 2, 2), (1, 2, 1)])
    True
    """
    idx = int(idx)
    if not 0 <= idx < d**w:
        raise ValueError(f"index {idx} out of range for {d}^{w} words")
    letters = []
    for _ in range(w):
        idx, rem = divmod(idx, d)
        letters.append(rem + 1)
    return Word(tuple(reversed(letters)), d)


def enumerate_families(w, d, budget=None):
    """All cycle families of weight-w words, by exhaustive lexicographic scan.

    Families come out ordered by their representative's basis index, and the
    member counts partition the full d^w words.

    >>> [f.cycle_length for f in enumerate_families(1, 3)]
    [1, 1, 1]
    >>> [f.representative.letters for f in enumerate_families(2, 2)]
    [(1, 1), (1, 2), (2, 2)]
    >>> sorted(f.cycle_length for f in enumerate_families(3, 2))
    [1, 1, 3, 3]
    >>> sum(len(f.members) for f in enumerate_families(3, 2))
    8
    """
    w = int(w)
    d = int(d)
    if w < 1 or d < 1:
        raise ValueError(f"enumerate_families needs w, d >= 1, got w={w}, d={d}")
    cap = default_budget() if budget is None else int(budget)
    total = d**w
    if total > cap:
        raise BudgetExceeded(
            f"enumerating {d}^{w} = {total} words exceeds the budget of {cap}"
        )
    seen = bytearray(total)
    families = []
    # Rotation acts on indices as: last digit (base d) moves to the top slot.
    top = d ** (w - 1)
    for i in range(total):
        if seen[i]:
            continue
        orbit = [i]
        j = (i % d) * top + i // d
        while j != i:
            seen[j] = 1
            orbit.append(j)
            j = (j % d) * top + j // d
        first = word_from_index(i, w, d)
        members = [first]
        for k in orbit[1:]:
            members.append(word_from_index(k, w, d))
        families.append(CycleFamily(first, members, len(orbit)))
    return families
