"""Sparse multivariate polynomials with exact coefficients.

A monomial is a sorted tuple of (variable index, positive exponent)
pairs; the empty tuple is 1.  A polynomial is a dict from monomials to
nonzero coefficients of some :class:`~orcohom.coefficients.BaseRing`.
Variable weights and truncation live in the presented-ring layer, so a
polynomial by itself is just coefficient bookkeeping.

The monomial order used everywhere is graded lexicographic: compare
total weight first, then exponent vectors scanning from the smallest
variable index, larger exponent first.
"""

from __future__ import annotations

from .coefficients import BaseRing

Mono = tuple[tuple[int, int], ...]

ONE_MONO: Mono = ()


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def mono_pow(a: Mono, k: int) -> Mono:
    if k == 0:
        return ONE_MONO
    return tuple((i, e * k) for i, e in a)


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when a | b, i.e. every exponent of a is covered by b."""
    db = dict(b)
    return all(db.get(i, 0) >= e for i, e in a)


def mono_div(b: Mono, a: Mono) -> Mono:
    """b / a, assuming a | b."""
    d = dict(b)
    for i, e in a:
        r = d[i] - e
        if r:
            d[i] = r
        else:
            del d[i]
    return tuple(sorted(d.items()))


def mono_weight(m: Mono, weights) -> int:
    return sum(e * weights[i] for i, e in m)


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_key(m: Mono, weights, nvars: int):
    """Sort key realizing graded-lex; bigger key means bigger monomial."""
    dense = [0] * nvars
    for i, e in m:
        dense[i] = e
    return (mono_weight(m, weights), tuple(dense))


def mono_str(m: Mono, names) -> str:
    if not m:
        return "1"
    return "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in m)


class Polynomial:
    """Finite map from monomials to nonzero coefficients.

    Instances are immutable in spirit: no method mutates self, and all
    arithmetic returns fresh objects.  Zero coefficients are never
    stored.
    """

    __slots__ = ("base", "terms")

    def __init__(self, base: BaseRing, terms: dict | None = None, _clean: bool = False):
        self.base = base
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            cleaned: dict = {}
            for m, c in terms.items():
                if base.is_zero(c):
                    continue
                m = tuple(sorted((i, e) for i, e in m if e))
                s = base.add(cleaned.get(m, base.zero()), c)
                if base.is_zero(s):
                    cleaned.pop(m, None)
                else:
                    cleaned[m] = s
            self.terms = cleaned

    @classmethod
    def zero(cls, base: BaseRing) -> "Polynomial":
        return cls(base, {}, _clean=True)

    @classmethod
    def constant(cls, base: BaseRing, c) -> "Polynomial":
        return cls(base, {ONE_MONO: c})

    @classmethod
    def one(cls, base: BaseRing) -> "Polynomial":
        return cls.constant(base, base.one())

    @classmethod
    def variable(cls, base: BaseRing, index: int, exponent: int = 1) -> "Polynomial":
        return cls(base, {((index, exponent),): base.one()}, _clean=True)

    @classmethod
    def from_int_terms(cls, base: BaseRing, entries) -> "Polynomial":
        """Build from {mono: int} or [(mono, int)] with integer coefficients."""
        items = entries.items() if isinstance(entries, dict) else entries
        return cls(base, {m: base.from_int(c) for m, c in items})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Mono):
        return self.terms.get(m, self.base.zero())

    def constant_term(self):
        return self.terms.get(ONE_MONO, self.base.zero())

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {ONE_MONO}

    def variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(i for i, _ in m)
        return out

    def __add__(self, other: "Polynomial") -> "Polynomial":
        base = self.base
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = base.add(out.get(m, base.zero()), c)
            if base.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(base, out, _clean=True)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.base, {m: self.base.neg(c) for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        base = self.base
        out: dict = {}
        zero = base.zero()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = base.add(out.get(m, zero), base.mul(c1, c2))
                if base.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(base, out, _clean=True)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.base)
        square = self
        while k:
            if k & 1:
                result = result * square
            k >>= 1
            if k:
                square = square * square
        return result

    def scale(self, c) -> "Polynomial":
        base = self.base
        if base.is_zero(c):
            return Polynomial.zero(base)
        out = {}
        for m, v in self.terms.items():
            p = base.mul(c, v)
            if not base.is_zero(p):
                out[m] = p
        return Polynomial(base, out, _clean=True)

    def map_monomials(self, fn) -> "Polynomial":
        """Relabel monomials through fn (used for reindexing variables)."""
        base = self.base
        out: dict = {}
        for m, c in self.terms.items():
            mm = fn(m)
            s = base.add(out.get(mm, base.zero()), c)
            if base.is_zero(s):
                out.pop(mm, None)
            else:
                out[mm] = s
        return Polynomial(base, out, _clean=True)

    def shift_indices(self, offset: int) -> "Polynomial":
        return self.map_monomials(lambda m: tuple((i + offset, e) for i, e in m))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.base != other.base or set(self.terms) != set(other.terms):
            return False
        return all(self.base.eq(c, other.terms[m]) for m, c in self.terms.items())

    def __hash__(self):
        raise TypeError("polynomials are not hashable")

    def sorted_terms(self, weights, nvars: int, reverse: bool = True):
        """Terms in graded-lex order, leading term first by default."""
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0], weights, nvars), reverse=reverse)

    def leading(self, weights, nvars: int):
        """(monomial, coefficient) of the graded-lex leading term."""
        if not self.terms:
            return None
        m = max(self.terms, key=lambda m: mono_key(m, weights, nvars))
        return m, self.terms[m]

    def to_str(self, names) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-mono_degree(m), m)):
            c = self.terms[m]
            cs = self.base.coeff_str(c)
            if m == ONE_MONO:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono_str(m, names))
            elif cs == "-1":
                parts.append("-" + mono_str(m, names))
            else:
                parts.append(f"({cs})*{mono_str(m, names)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({len(self.terms)} terms)"
