"""Finitely generated abelian groups and coefficient rings.

Every homology value in this package is an :class:`FgAbelianGroup`: a free
rank together with torsion coefficients in invariant-factor form, meaning an
ascending divisibility chain d_1 | d_2 | ... with every d_i >= 2.  Keeping the
form canonical makes group equality a plain field comparison.

>>> FgAbelianGroup.from_orders(1, [2, 3, 2])
FgAbelianGroup(free_rank=1, torsion=(2, 6))
>>> FgAbelianGroup.from_orders(1, [2, 3, 2]).render()
'Z (+) Z/2 (+) Z/6'
"""

from math import gcd

__all__ = [
    "FgAbelianGroup",
    "CoefficientRing",
    "uct_apply",
    "invariant_factors_from_orders",
    "is_prime",
]


def _factorize(n):
    """Prime factorization of n >= 1 by trial division.

    >>> _factorize(1)
    {}
    >>> _factorize(360)
    {2: 3, 3: 2, 5: 1}
    """
    if n < 1:
        raise ValueError("can only factorize positive integers")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    """True when n is a prime number.

    >>> [m for m in range(20) if is_prime(m)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1 if p == 2 else 2
    return True


def invariant_factors_from_orders(orders):
    """Merge arbitrary cyclic orders into an ascending divisibility chain.

    Orders equal to 1 are the trivial group and are dropped.  The merge is
    CRT: bucket prime powers, then the i-th largest exponent of every prime
    goes into the i-th largest invariant factor.

    >>> invariant_factors_from_orders([2, 2, 3])
    (2, 6)
    >>> invariant_factors_from_orders([4, 6])
    (2, 12)
    >>> invariant_factors_from_orders([1, 1, 1])
    ()
    """
    exponents = {}
    for n in orders:
        n = int(n)
        if n < 1:
            raise ValueError(f"cyclic order must be >= 1, got {n}")
        if n == 1:
            continue
        for p, e in _factorize(n).items():
            exponents.setdefault(p, []).append(e)
    slots = 0
    for exps in exponents.values():
        exps.sort(reverse=True)
        slots = max(slots, len(exps))
    factors = []
    for i in range(slots):
        f = 1
        for p, exps in exponents.items():
            if i < len(exps):
                f *= p ** exps[i]
        factors.append(f)
    factors.reverse()
    return tuple(factors)


class FgAbelianGroup:
    """A finitely generated abelian group Z^r (+) Z/d_1 (+) ... (+) Z/d_k.

    The constructor insists on canonical input; use :meth:`from_orders` to
    canonicalize arbitrary cyclic decompositions.

    >>> FgAbelianGroup(2)
    FgAbelianGroup(free_rank=2, torsion=())
    >>> FgAbelianGroup(0, (2, 4))
    FgAbelianGroup(free_rank=0, torsion=(2, 4))
    >>> FgAbelianGroup(0, (4, 2))
    Traceback (most recent call last):
        ...
    ValueError: torsion (4, 2) is not an ascending divisibility chain
    """

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank=0, torsion=()):
        free_rank = int(free_rank)
        torsion = tuple(int(t) for t in torsion)
        if free_rank < 0:
            raise ValueError(f"free rank must be >= 0, got {free_rank}")
        for t in torsion:
            if t < 2:
                raise ValueError(f"torsion coefficients must be >= 2, got {t}")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError(
                    f"torsion {torsion} is not an ascending divisibility chain"
                )
        self.free_rank = free_rank
        self.torsion = torsion

    @classmethod
    def from_orders(cls, free_rank, orders):
        """Canonicalize a direct sum of Z^free_rank and cyclic groups.

        >>> FgAbelianGroup.from_orders(0, [6, 4])
        FgAbelianGroup(free_rank=0, torsion=(2, 12))
        >>> FgAbelianGroup.from_orders(3, []) == FgAbelianGroup(3)
        True
        """
        return cls(free_rank, invariant_factors_from_orders(orders))

    @classmethod
    def zero(cls):
        return cls(0, ())

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, *others):
        """Direct sum, re-canonicalized.

        >>> a = FgAbelianGroup(1, (2,))
        >>> b = FgAbelianGroup(0, (2, 6))
        >>> a.direct_sum(b)
        FgAbelianGroup(free_rank=1, torsion=(2, 2, 6))
        """
        rank = self.free_rank
        orders = list(self.torsion)
        for g in others:
            rank += g.free_rank
            orders.extend(g.torsion)
        return FgAbelianGroup.from_orders(rank, orders)

    def fp_dimension(self, p):
        """Dimension of (self) (x) F_p over the field F_p, for prime p.

        Each Z contributes 1, each Z/t contributes 1 exactly when p | t.

        >>> FgAbelianGroup(0, (2, 2)).fp_dimension(2)
        2
        >>> FgAbelianGroup(2, (2, 6)).fp_dimension(3)
        3
        """
        if not is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        return self.free_rank + sum(1 for t in self.torsion if t % p == 0)

    def render(self, free_symbol="Z"):
        """Canonical text form.

        >>> FgAbelianGroup(2, (2, 4)).render()
        'Z^2 (+) Z/2 (+) Z/4'
        >>> FgAbelianGroup.zero().render()
        '0'
        >>> FgAbelianGroup(1).render(free_symbol="Q")
        'Q'
        """
        parts = []
        if self.free_rank == 1:
            parts.append(free_symbol)
        elif self.free_rank > 1:
            parts.append(f"{free_symbol}^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def __eq__(self, other):
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        return f"FgAbelianGroup(free_rank={self.free_rank}, torsion={self.torsion})"


class CoefficientRing:
    """One of the rings Z, Q, or Z/n (n >= 2).

    >>> CoefficientRing.parse("zmod:4")
    CoefficientRing('Zmod', 4)
    >>> CoefficientRing.parse("q").render()
    'Q'
    """

    __slots__ = ("tag", "modulus")

    def __init__(self, tag, modulus=None):
        if tag not in ("Z", "Q", "Zmod"):
            raise ValueError(f"unknown ring tag {tag!r}")
        if tag == "Zmod":
            if modulus is None or int(modulus) < 2:
                raise ValueError("Z/n requires n >= 2")
            modulus = int(modulus)
        elif modulus is not None:
            raise ValueError(f"ring {tag} takes no modulus")
        self.tag = tag
        self.modulus = modulus

    @classmethod
    def integers(cls):
        return cls("Z")

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def integers_mod(cls, n):
        return cls("Zmod", n)

    @classmethod
    def parse(cls, text):
        """Parse the CLI ring syntax: ``z``, ``q``, or ``zmod:<n>``.

        >>> CoefficientRing.parse("z").tag
        'Z'
        >>> CoefficientRing.parse("zmod:9").modulus
        9
        """
        t = text.strip().lower()
        if t == "z":
            return cls.integers()
        if t == "q":
            return cls.rationals()
        if t.startswith("zmod:"):
            body = t[len("zmod:"):]
            try:
                n = int(body)
            except ValueError:
                raise ValueError(f"bad modulus in ring syntax {text!r}") from None
            return cls.integers_mod(n)
        raise ValueError(f"bad ring syntax {text!r}: use z, q, or zmod:<n>")

    def cli_token(self):
        if self.tag == "Z":
            return "z"
        if self.tag == "Q":
            return "q"
        return f"zmod:{self.modulus}"

    def render(self):
        if self.tag == "Z":
            return "Z"
        if self.tag == "Q":
            return "Q"
        return f"Z/{self.modulus}"

    def json_dict(self):
        if self.tag == "Zmod":
            return {"tag": "zmod", "n": self.modulus}
        return {"tag": self.cli_token()}

    @classmethod
    def from_json_dict(cls, data):
        if data.get("tag") == "zmod":
            return cls.integers_mod(data["n"])
        return cls.parse(data["tag"])

    def free_symbol(self):
        """Symbol used for free summands in tables (Q for the rationals)."""
        return "Q" if self.tag == "Q" else "Z"

    def unit_group(self):
        """The ring itself as an abelian group (the weight-0 answer).

        >>> CoefficientRing.integers_mod(6).unit_group()
        FgAbelianGroup(free_rank=0, torsion=(6,))
        """
        if self.tag == "Zmod":
            return FgAbelianGroup(0, (self.modulus,))
        return FgAbelianGroup(1)

    def is_prime_modulus(self):
        return self.tag == "Zmod" and is_prime(self.modulus)

    def __eq__(self, other):
        if not isinstance(other, CoefficientRing):
            return NotImplemented
        return self.tag == other.tag and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.tag, self.modulus))

    def __repr__(self):
        if self.modulus is None:
            return f"CoefficientRing({self.tag!r})"
        return f"CoefficientRing({self.tag!r}, {self.modulus})"


def uct_apply(h_n, h_n_minus_1, ring):
    """Universal-coefficient transport of integral homology.

    H_n(-; k) = k (x) H_n(-; Z)  (+)  Tor(k, H_{n-1}(-; Z)), evaluated on
    cyclic summands: Z/a (x) Z/b = Tor(Z/a, Z/b) = Z/gcd(a, b),
    Z/a (x) Z = Z/a, Tor(Z/a, Z) = 0.  For Q the free rank survives and all
    torsion dies; for Z the input h_n passes through.

    >>> uct_apply(FgAbelianGroup(1, (2,)), FgAbelianGroup(2),
    ...           CoefficientRing.integers_mod(2))
    FgAbelianGroup(free_rank=0, torsion=(2, 2))
    >>> uct_apply(FgAbelianGroup.zero(), FgAbelianGroup(0, (2,)),
    ...           CoefficientRing.integers_mod(2))
    FgAbelianGroup(free_rank=0, torsion=(2,))
    >>> uct_apply(FgAbelianGroup(1, (2,)), FgAbelianGroup(2),
    ...           CoefficientRing.rationals())
    FgAbelianGroup(free_rank=1, torsion=())
    """
    if ring.tag == "Z":
        return h_n
    if ring.tag == "Q":
        return FgAbelianGroup(h_n.free_rank)
    n = ring.modulus
    orders = [n] * h_n.free_rank
    orders.extend(gcd(n, t) for t in h_n.torsion)
    orders.extend(gcd(n, t) for t in h_n_minus_1.torsion)
    return FgAbelianGroup.from_orders(0, orders)
