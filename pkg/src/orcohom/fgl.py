"""Formal group laws: construction, axioms, calculus, and the universal example.

A law is a truncated bivariate series F(x, y) over a coefficient
domain satisfying F(x, 0) = x, F(0, y) = y, symmetry, and
associativity modulo terms of weight above the truncation bound.  The
universal example is presented by generators a_ij (i <= j) of weight
i + j - 1 subject to the coefficients of the associator, and carries
the generic series; specializing a law amounts to the classifying map
sending each a_ij to the matching series coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coefficients import BaseRing, NonDivisibleBase, ZZ, laurent_over
from .polynomials import Mono, Polynomial
from .presented import PresentedRing, QuotientCoefficients, RingMap, compose, scalar_ring

LAZARD_DEFAULT_BOUND = 6

_X = 0
_Y = 1


def series_ring(base: BaseRing, names, truncation: int) -> PresentedRing:
    return PresentedRing(base, [(n, 1) for n in names], [], truncation)


def _coefficient(series: Polynomial, i: int, j: int):
    m: Mono = tuple(p for p in ((_X, i), (_Y, j)) if p[1])
    return series.coefficient(m)


@dataclass
class AxiomFailure:
    axiom: str
    monomial: str
    coefficient: str


@dataclass
class AxiomReport:
    unit_ok: bool
    commutative_ok: bool
    associative_ok: bool
    truncation: int
    failures: list[AxiomFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.unit_ok and self.commutative_ok and self.associative_ok

    def as_dict(self) -> dict:
        return {
            "truncation": self.truncation,
            "unit": self.unit_ok,
            "commutative": self.commutative_ok,
            "associative": self.associative_ok,
            "passed": self.passed,
            "failures": [vars(f) for f in self.failures],
        }


class FormalGroupLaw:
    """Truncated bivariate series with a designated optional unit.

    ``beta`` is the Bott-type invertible coefficient of the ambient
    domain when one is designated; designating a non-unit is an error.
    """

    def __init__(self, base: BaseRing, series: Polynomial, truncation: int, beta=None):
        self.base = base
        self.truncation = int(truncation)
        self.ring2 = series_ring(base, ("x", "y"), self.truncation)
        self.series = self.ring2.truncate(series)
        bad = self.series.variables() - {_X, _Y}
        if bad:
            raise ValueError("law series must involve only the two series variables")
        if beta is not None and not base.is_unit(beta):
            raise ValueError("designated periodicity element must be a unit")
        self.beta = beta

    def x(self) -> Polynomial:
        return Polynomial.variable(self.base, _X)

    def y(self) -> Polynomial:
        return Polynomial.variable(self.base, _Y)

    def coefficient(self, i: int, j: int):
        return _coefficient(self.series, i, j)

    def apply(self, target: PresentedRing, a: Polynomial, b: Polynomial) -> Polynomial:
        """Evaluate F at two elements of a presented ring."""
        return compose(target, self.series, [a, b], self.base)

    def __repr__(self):
        return f"FormalGroupLaw({self.base!r}, D={self.truncation})"


def make_additive(base: BaseRing = ZZ, truncation: int = 8) -> FormalGroupLaw:
    """F(x, y) = x + y."""
    series = Polynomial.variable(base, _X) + Polynomial.variable(base, _Y)
    return FormalGroupLaw(base, series, truncation)


def make_multiplicative(base: BaseRing | None = None, beta=None, truncation: int = 8,
                        designate: bool | None = None) -> FormalGroupLaw:
    """F(x, y) = x + y - beta*x*y.

    Defaults to the integral Laurent domain Z[b, b^-1] with beta the
    invertible generator.  A non-invertible beta (including zero, which
    degenerates the law to the additive one) is accepted as long as it
    is not designated as the periodicity element.
    """
    if base is None:
        base = laurent_over(ZZ, "b", -1)
        if beta is None:
            beta = base.generator()
    if beta is None:
        raise ValueError("beta element required for an explicit base")
    if designate is None:
        designate = base.is_unit(beta)
    if designate and not base.is_unit(beta):
        raise ValueError("beta is not invertible and cannot be designated")
    xy: Mono = ((_X, 1), (_Y, 1))
    series = Polynomial(base, {
        ((_X, 1),): base.one(),
        ((_Y, 1),): base.one(),
        xy: base.neg(beta),
    })
    return FormalGroupLaw(base, series, truncation, beta=beta if designate else None)


def check_axioms(law: FormalGroupLaw, upto: int | None = None) -> AxiomReport:
    """Unit, commutativity and associativity, with first offending terms.

    ``upto`` lowers the weight bound of the associativity check, which
    is what a series truncated at D actually determines when its top
    coefficients are only known modulo relations of higher weight.
    """
    d = law.truncation if upto is None else min(upto, law.truncation)
    base = law.base
    r2 = series_ring(base, ("x", "y"), d)
    series = r2.truncate(law.series)
    failures: list[AxiomFailure] = []

    def first_failure(axiom: str, diff: Polynomial, ring: PresentedRing):
        m = min(diff.terms, key=lambda mm: (ring.mono_weight(mm), mm))
        failures.append(AxiomFailure(axiom, ring.poly_str(Polynomial(base, {m: base.one()})),
                                     base.coeff_str(diff.terms[m])))

    x = Polynomial.variable(base, _X)
    y = Polynomial.variable(base, _Y)
    zero = Polynomial.zero(base)
    left_unit = compose(r2, series, [x, zero], base) - x
    right_unit = compose(r2, series, [zero, y], base) - y
    unit_ok = left_unit.is_zero() and right_unit.is_zero()
    if not unit_ok:
        first_failure("unit", left_unit if not left_unit.is_zero() else right_unit, r2)

    from .symfunc import swap_variables

    comm_diff = series - swap_variables(series, _X, _Y)
    comm_ok = comm_diff.is_zero()
    if not comm_ok:
        first_failure("commutativity", comm_diff, r2)

    r3 = series_ring(base, ("x", "y", "z"), d)
    X = Polynomial.variable(base, 0)
    Y = Polynomial.variable(base, 1)
    Z = Polynomial.variable(base, 2)
    inner_left = compose(r3, series, [X, Y], base)
    lhs = compose(r3, series, [inner_left, Z], base)
    inner_right = compose(r3, series, [Y, Z], base)
    rhs = compose(r3, series, [X, inner_right], base)
    assoc_diff = lhs - rhs
    assoc_ok = assoc_diff.is_zero()
    if not assoc_ok:
        first_failure("associativity", assoc_diff, r3)

    return AxiomReport(unit_ok, comm_ok, assoc_ok, d, failures)


def formal_inverse(law: FormalGroupLaw) -> Polynomial:
    """The series i(x) with F(x, i(x)) = 0 up to the truncation.

    Solved weight by weight; the correction at weight k is exactly the
    negative of the current residue coefficient because dF/dy = 1 plus
    higher terms.  No division is ever needed.
    """
    base = law.base
    r2 = law.ring2
    x = law.x()
    inv = -x
    for k in range(2, law.truncation + 1):
        residue = compose(r2, law.series, [x, inv], base)
        c = residue.coefficient(((_X, k),))
        if not base.is_zero(c):
            inv = inv - Polynomial(base, {((_X, k),): c})
    return inv


def n_series(law: FormalGroupLaw, n: int) -> Polynomial:
    """[n](x): iterated formal sum, with negatives through the inverse."""
    base = law.base
    if n == 0:
        return Polynomial.zero(base)
    if n < 0:
        pos = n_series(law, -n)
        inv = formal_inverse(law)
        return compose(law.ring2, pos, [inv, Polynomial.zero(base)], base)
    x = law.x()
    out = x
    for _ in range(n - 1):
        out = law.apply(law.ring2, x, out)
    return out


def logarithm(law: FormalGroupLaw) -> Polynomial:
    """The series l(x) = x + ... with l(F(x, y)) = l(x) + l(y).

    Computed from l'(x) = 1 / (dF/dy)(x, 0); the base must admit
    division by every integer up to the truncation, otherwise
    NonDivisibleBase is raised at the first failure.
    """
    base = law.base
    d = law.truncation
    # g = dF/dy at y = 0, a unit series 1 + g_1 x + ...
    g = [base.zero()] * (d + 1)
    g[0] = base.one()
    for m, c in law.series.terms.items():
        exps = dict(m)
        if exps.get(_Y, 0) == 1:
            i = exps.get(_X, 0)
            if i <= d:
                g[i] = base.add(g[i], c)
    # h = 1/g by the standard recurrence
    h = [base.zero()] * (d + 1)
    h[0] = base.one()
    for k in range(1, d + 1):
        acc = base.zero()
        for j in range(1, k + 1):
            acc = base.add(acc, base.mul(g[j], h[k - j]))
        h[k] = base.neg(acc)
    terms = {}
    for k in range(0, d):
        if base.is_zero(h[k]):
            continue
        try:
            terms[((_X, k + 1),)] = base.divide_by_int(h[k], k + 1)
        except NonDivisibleBase as exc:
            raise NonDivisibleBase(f"integer division fails at weight {k + 1}") from exc
    return Polynomial(base, terms)


@dataclass
class LazardPresentation:
    """Truncated universal coefficients with the generic series.

    generators are (i, j) pairs with i <= j and weight i + j - 1 at
    most the bound; relations are the coefficients of the associator
    F(F(x, y), z) - F(x, F(y, z)) on monomials x^a y^b z^c with
    a + b + c at most bound + 1.
    """

    bound: int
    gens: tuple[tuple[int, int], ...]
    ring: PresentedRing
    coefficients: QuotientCoefficients
    generic: FormalGroupLaw

    def gen_index(self, i: int, j: int) -> int:
        return self.gens.index((i, j))


def _lazard_generators(bound: int) -> list[tuple[int, int]]:
    gens = [(i, j) for j in range(1, bound + 1) for i in range(1, j + 1) if i + j <= bound + 1]
    gens.sort(key=lambda ij: (ij[0] + ij[1] - 1, ij[0]))
    return gens


def _generic_series(base: BaseRing, gens, coeff_of) -> Polynomial:
    terms = {
        ((_X, 1),): base.one(),
        ((_Y, 1),): base.one(),
    }
    for k, (i, j) in enumerate(gens):
        c = coeff_of(k)
        terms[tuple(p for p in ((_X, i), (_Y, j)) if p[1])] = c
        if i != j:
            terms[tuple(p for p in ((_X, j), (_Y, i)) if p[1])] = c
    return Polynomial(base, terms)


_LAZARD_CACHE: dict[int, LazardPresentation] = {}


def lazard_ring(truncation: int, bound: int = LAZARD_DEFAULT_BOUND) -> LazardPresentation:
    """The universal-coefficient presentation truncated at the given weight.

    Relation generation is combinatorial in the truncation, so weights
    above the configured bound must be requested explicitly.
    """
    if truncation < 1:
        raise ValueError("truncation must be positive")
    if truncation > bound:
        raise ValueError(f"truncation {truncation} exceeds the configured bound {bound}")
    cached = _LAZARD_CACHE.get(truncation)
    if cached is not None:
        return cached
    gens = _lazard_generators(truncation)
    names = [(f"a{i}_{j}", i + j - 1) for i, j in gens]
    free = PresentedRing(ZZ, names, [], truncation)
    free_coeffs = QuotientCoefficients(free)
    series = _generic_series(
        free_coeffs, gens,
        lambda k: Polynomial.variable(ZZ, k))
    r3 = series_ring(free_coeffs, ("x", "y", "z"), truncation + 1)
    X = Polynomial.variable(free_coeffs, 0)
    Y = Polynomial.variable(free_coeffs, 1)
    Z = Polynomial.variable(free_coeffs, 2)
    inner = compose(r3, series, [X, Y], free_coeffs)
    lhs = compose(r3, series, [inner, Z], free_coeffs)
    # the generic series is symmetric, so F(x, F(y, z)) is the x<->z
    # relabelling of F(F(x, y), z)
    rhs = lhs.map_monomials(
        lambda m: tuple(sorted((2 if i == 0 else 0 if i == 2 else i, e) for i, e in m)))
    delta = lhs - rhs
    relations: list[Polynomial] = []
    seen: set = set()
    order = sorted(delta.terms, key=lambda m: (r3.mono_weight(m), m))
    for m in order:
        rel = delta.terms[m]
        if rel.is_zero():
            continue
        key = _poly_key(rel)
        neg_key = _poly_key(-rel)
        if key in seen or neg_key in seen:
            continue
        seen.add(key)
        relations.append(rel)
    ring = PresentedRing(ZZ, names, relations, truncation)
    coeffs = QuotientCoefficients(ring)
    generic = FormalGroupLaw(
        coeffs,
        _generic_series(coeffs, gens, lambda k: coeffs.from_poly(Polynomial.variable(ZZ, k))),
        truncation + 1)
    result = LazardPresentation(truncation, tuple(gens), ring, coeffs, generic)
    _LAZARD_CACHE[truncation] = result
    return result


def _poly_key(p: Polynomial):
    return tuple(sorted((m, str(c)) for m, c in p.terms.items()))


def lazard_graded_ranks(truncation: int, bound: int = LAZARD_DEFAULT_BOUND) -> list[int]:
    """Cokernel ranks of the associativity presentation per weight 0..D."""
    pres = lazard_ring(truncation, bound)
    return pres.ring.graded_ranks(truncation)


def classifying_map(law: FormalGroupLaw, pres: LazardPresentation) -> RingMap:
    """Map a_ij to the matching coefficient of the law.

    The law must be truncated strictly beyond the presentation bound so
    every generator's coefficient is determined.  Well-definedness of
    the map is checked and doubles as an associativity certificate; an
    invalid series raises IllDefinedMap.
    """
    if law.truncation <= pres.bound:
        raise ValueError("law truncation must exceed the presentation bound")
    target = scalar_ring(law.base, pres.bound)
    images = []
    for i, j in pres.gens:
        c = law.coefficient(i, j)
        images.append(Polynomial.constant(law.base, c))
    rmap = RingMap(pres.ring, target, images)
    rmap.check_well_defined()
    return rmap
