"""Exact coefficient domains underlying every ring in the package.

Four scalar domains are provided: the integers, the integers modulo n,
the rationals, and a Laurent extension adjoining a single invertible
generator (used for rings like Z[b, b^-1] with a Bott-type unit).  A
fifth domain, classes of a presented quotient ring used as scalars,
lives in :mod:`orcohom.presented` to avoid a circular import.

All arithmetic is arbitrary precision; nothing here ever touches a
float.  Elements are plain data (int, Fraction, dict) and every domain
is a stateless immutable descriptor, so values can be shared freely
between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction


class NonDivisibleBase(ArithmeticError):
    """An exact division was requested that the domain cannot perform."""


class BaseRing:
    """Common interface for coefficient domains.

    Subclasses implement a small protocol: ``zero``, ``one``,
    ``from_int``, ``add``, ``neg``, ``mul``, ``is_zero``, ``is_unit``,
    ``inv_unit``, ``divide_exact``, and canonical string round-trips
    ``coeff_str`` / ``coeff_from_str``.
    """

    kind: str = "?"

    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def is_one(self, a) -> bool:
        return self.is_zero(self.sub(a, self.one()))

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv_unit(self, a):
        """Inverse of a unit.  Raises NonDivisibleBase on non-units."""
        q = self.divide_exact(self.one(), a)
        if q is None:
            raise NonDivisibleBase(f"{self.coeff_str(a)} is not invertible in {self}")
        return q

    def divide_exact(self, a, b):
        """Return a/b when the division is exact in this domain, else None."""
        raise NotImplementedError

    def divide_by_int(self, a, n: int):
        """a / n for an integer n, or raise NonDivisibleBase."""
        q = self.divide_exact(a, self.from_int(n))
        if q is None:
            raise NonDivisibleBase(f"cannot divide by {n} in {self}")
        return q

    # integer content, used to route matrices through exact integer
    # linear algebra when every entry is a plain integer scalar
    def as_int(self, a) -> int | None:
        return None

    def coeff_str(self, a) -> str:
        raise NotImplementedError

    def coeff_from_str(self, s: str):
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__))))

    def __repr__(self):
        return self.kind


class IntegerRing(BaseRing):
    kind = "Integers"

    def zero(self):
        return 0

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def divide_exact(self, a, b):
        if b == 0:
            return None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def as_int(self, a):
        return int(a)

    def coeff_str(self, a):
        return str(a)

    def coeff_from_str(self, s):
        return int(s)


class RationalRing(BaseRing):
    kind = "Rationals"

    def zero(self):
        return Fraction(0)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def divide_exact(self, a, b):
        if b == 0:
            return None
        return Fraction(a) / b

    def as_int(self, a) -> int | None:
        a = Fraction(a)
        return int(a) if a.denominator == 1 else None

    def coeff_str(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def coeff_from_str(self, s):
        return Fraction(s)


class ModularRing(BaseRing):
    """Integers modulo n, n >= 2.  Elements are reduced to 0..n-1."""

    kind = "IntegersModuloN"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        self.n = int(n)

    def zero(self):
        return 0

    def from_int(self, k):
        return int(k) % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def is_zero(self, a):
        return a % self.n == 0

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def divide_exact(self, a, b):
        g = math.gcd(b, self.n)
        if g == 1:
            return (a * pow(b, -1, self.n)) % self.n
        if a % g:
            return None
        # non-unit divisor: solve b*x = a mod n when possible, smallest rep
        n_, a_, b_ = self.n // g, a // g, b // g
        return (a_ * pow(b_, -1, n_)) % n_ if n_ > 1 else 0

    def is_prime(self) -> bool:
        n = self.n
        if n < 4:
            return True
        if n % 2 == 0:
            return False
        f = 3
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True

    def as_int(self, a):
        return int(a) % self.n

    def coeff_str(self, a):
        return str(a % self.n)

    def coeff_from_str(self, s):
        return int(s) % self.n

    def __repr__(self):
        return f"Z/{self.n}"


class LaurentRing(BaseRing):
    """base[s, s^-1] for one invertible generator s of the given weight.

    Elements are dicts {exponent: base coefficient} with no zero values
    stored.  The generator is a unit by construction; ``weight`` is
    bookkeeping for the degree the unit absorbs (a Bott-type element
    carries weight -1) and does not enter the arithmetic.
    """

    kind = "LaurentAdjoined"

    def __init__(self, base: BaseRing, symbol: str, weight: int = -1):
        if isinstance(base, LaurentRing):
            raise ValueError("only a single Laurent generator is supported")
        self.base = base
        self.symbol = symbol
        self.weight = int(weight)

    def generator(self):
        return {1: self.base.one()}

    def gen_power(self, k: int):
        return {int(k): self.base.one()}

    def _norm(self, d: dict):
        return {e: c for e, c in d.items() if not self.base.is_zero(c)}

    def zero(self):
        return {}

    def from_int(self, n):
        return self._norm({0: self.base.from_int(n)})

    def from_base(self, c):
        return self._norm({0: c})

    def add(self, a, b):
        out = dict(a)
        for e, c in b.items():
            s = self.base.add(out.get(e, self.base.zero()), c)
            if self.base.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return out

    def neg(self, a):
        return {e: self.base.neg(c) for e, c in a.items()}

    def mul(self, a, b):
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                p = self.base.mul(c1, c2)
                s = self.base.add(out.get(e, self.base.zero()), p)
                if self.base.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return out

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return len(a) == 1 and self.base.is_unit(next(iter(a.values())))

    def divide_exact(self, a, b):
        if not b:
            return None
        if not a:
            return {}
        # shift so the divisor is an ordinary polynomial with nonzero
        # constant term, then do long division from the top exponent
        shift_b = min(b)
        bb = {e - shift_b: c for e, c in b.items()}
        shift_a = min(a)
        aa = {e - shift_a: c for e, c in a.items()}
        deg_b = max(bb)
        lead_b = bb[deg_b]
        quot: dict = {}
        rem = dict(aa)
        while rem:
            deg_r = max(rem)
            if deg_r < deg_b:
                return None
            q = self.base.divide_exact(rem[deg_r], lead_b)
            if q is None:
                return None
            quot[deg_r - deg_b] = q
            for e, c in bb.items():
                ee = e + deg_r - deg_b
                s = self.base.sub(rem.get(ee, self.base.zero()), self.base.mul(q, c))
                if self.base.is_zero(s):
                    rem.pop(ee, None)
                else:
                    rem[ee] = s
        return {e + shift_a - shift_b: c for e, c in quot.items()}

    def as_int(self, a):
        if not a:
            return 0
        if set(a) == {0}:
            return self.base.as_int(a[0])
        return None

    def coeff_str(self, a):
        if not a:
            return "0"
        parts = [f"{self.base.coeff_str(a[e])}@{e}" for e in sorted(a)]
        return ";".join(parts)

    def coeff_from_str(self, s):
        if s == "0":
            return {}
        out = {}
        for part in s.split(";"):
            c, _, e = part.rpartition("@")
            out[int(e)] = self.base.coeff_from_str(c)
        return self._norm(out)

    def __repr__(self):
        return f"{self.base!r}[{self.symbol},{self.symbol}^-1]"


ZZ = IntegerRing()
QQ = RationalRing()


def laurent_over(base: BaseRing = ZZ, symbol: str = "b", weight: int = -1) -> LaurentRing:
    return LaurentRing(base, symbol, weight)
