"""The Hopf algebra of the stable classifying space at a truncation.

The homology side is the symmetric algebra on one generator b_w per
weight w >= 1, with basis indexed by partitions and product given by
multiset union; level n of the filtration is spanned by partitions
with at most n parts.  The cohomology side is the power-series algebra
on the s-generators, with monomials indexed by the same partitions.
The comultiplication on cohomology is computed by dualizing the
homology product through the pairing between products of elementary
symmetric functions and monomial symmetric functions, never from a
closed formula.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coefficients import BaseRing, ModularRing
from .intlinalg import int_matrix, kernel_basis
from .partitions import merge, partitions, partitions_max_parts, sub_partition_splits
from .spaces import ClassifyingBGL, OrientedTheory, cohomology


@lru_cache(maxsize=None)
def _zero_one_matrix_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """Number of 0-1 matrices with the given row sums and labelled column sums.

    Columns of equal remaining sum are interchangeable, so memoization
    keys on the sorted remaining column multiset; the subset choices respect the
    labelling through binomial factors.
    """
    if not rows:
        return 1 if all(c == 0 for c in cols) else 0
    r, rest = rows[0], rows[1:]
    cols = tuple(sorted(cols, reverse=True))
    if r > sum(1 for c in cols if c > 0):
        return 0
    from math import comb

    groups: list[tuple[int, int]] = []
    for c in cols:
        if groups and groups[-1][0] == c:
            groups[-1] = (c, groups[-1][1] + 1)
        else:
            groups.append((c, 1))

    total = 0

    def rec(gi: int, remaining: int, chosen: list[int], ways: int):
        nonlocal total
        if remaining == 0:
            new_cols = []
            for (val, count), k in zip(groups, chosen + [0] * (len(groups) - len(chosen))):
                new_cols.extend([val - 1] * k)
                new_cols.extend([val] * (count - k))
            if any(c < 0 for c in new_cols):
                return
            total += ways * _zero_one_matrix_count(rest, tuple(sorted(new_cols, reverse=True)))
            return
        if gi == len(groups):
            return
        val, count = groups[gi]
        cap = min(count, remaining)
        for k in range(0, cap + 1):
            if k > 0 and val == 0:
                break
            rec(gi + 1, remaining - k, chosen + [k], ways * comb(count, k))

    rec(0, r, [], 1)
    return total


class SymFilteredAlgebra:
    """Filtered symmetric algebra on one generator per positive weight.

    Basis elements are partitions; the product is multiset union, and
    level n consists of partitions with at most n parts (padding by the
    unit b_0 realizes the inclusion of level n-1 into level n).
    """

    def __init__(self, coefficients: BaseRing, truncation: int):
        if isinstance(coefficients, ModularRing):
            raise ValueError("torsion coefficients are rejected for the Hopf layer")
        self.coefficients = coefficients
        self.truncation = int(truncation)

    def generators(self):
        return [(w,) for w in range(1, self.truncation + 1)]

    def basis(self, w: int):
        return partitions(w)

    def level_basis(self, n: int, w: int):
        return partitions_max_parts(w, n)

    def multiply(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return merge(a, b)

    def multiplication_table(self, wa: int, wb: int):
        """Pairs ((alpha, beta) -> alpha merged beta) in weights wa, wb."""
        out = {}
        for a in partitions(wa):
            for b in partitions(wb):
                out[(a, b)] = merge(a, b)
        return out

    def level_split_ok(self) -> bool:
        """Multiplication respects the filtration: parts add under union."""
        for w in range(0, self.truncation + 1):
            for (a, b), m in self.multiplication_table(w // 2, w - w // 2).items():
                if len(m) != len(a) + len(b):
                    return False
        return True


class HopfData:
    """Comultiplication data for the truncated cohomology of the stable
    classifying space, expressed on the s-monomial (partition) basis."""

    def __init__(self, theory: OrientedTheory, truncation: int):
        self.theory = theory
        self.truncation = int(truncation)
        self.algebra = SymFilteredAlgebra(theory.coefficients, truncation)
        self.ring = cohomology(theory, ClassifyingBGL(None), truncation)
        self._trans: dict[int, tuple] = {}
        self._delta: dict[int, dict] = {}

    # -- transition between e-monomials and the dual partition basis -----

    def transition(self, w: int):
        """(partitions, E, Einv) with e^nu = sum_mu E[nu][mu] m_mu."""
        cached = self._trans.get(w)
        if cached is not None:
            return cached
        parts = partitions(w)
        k = len(parts)
        E = [[_zero_one_matrix_count(nu, mu) for mu in parts] for nu in parts]
        # invert exactly over the rationals and check unimodularity
        aug = [[Fraction(E[i][j]) for j in range(k)] + [Fraction(1 if j == i else 0) for j in range(k)]
               for i in range(k)]
        from .intlinalg import field_rref
        from .coefficients import QQ
        red, pivots = field_rref(aug, QQ)
        if pivots != list(range(k)):
            raise ArithmeticError("transition matrix is singular")
        inv = []
        for i in range(k):
            row = red[i][k:]
            if any(f.denominator != 1 for f in row):
                raise ArithmeticError("transition matrix is not unimodular")
            inv.append([int(f) for f in row])
        data = (parts, E, inv)
        self._trans[w] = data
        return data

    def delta(self, w: int) -> dict:
        """Comultiplication on weight w: nu -> {(alpha, beta): coeff}.

        alpha and beta run over partitions of complementary weights,
        including the empty partition for the unit tensor factors.
        """
        cached = self._delta.get(w)
        if cached is not None:
            return cached
        parts, E, _ = self.transition(w)
        out = {nu: {} for nu in parts}
        # Delta(m_mu) = sum over ordered splits; convert both legs to e
        for j, mu in enumerate(parts):
            for alpha, beta in sub_partition_splits(mu):
                wa, wb = sum(alpha), sum(beta)
                pa, _, inva = self.transition(wa)
                pb, _, invb = self.transition(wb)
                ia = pa.index(alpha)
                ib = pb.index(beta)
                for ra, rho in enumerate(pa):
                    ca = inva[ia][ra]
                    if ca == 0:
                        continue
                    for rb, sig in enumerate(pb):
                        cb = invb[ib][rb]
                        if cb == 0:
                            continue
                        for i, nu in enumerate(parts):
                            coeff = E[i][j] * ca * cb
                            if coeff:
                                key = (rho, sig)
                                d = out[nu]
                                d[key] = d.get(key, 0) + coeff
        for nu in parts:
            out[nu] = {k: v for k, v in out[nu].items() if v}
        self._delta[w] = out
        return out

    def counit(self, nu: tuple[int, ...]) -> int:
        return 1 if nu == () else 0

    def sigma_label(self, nu: tuple[int, ...]) -> str:
        if not nu:
            return "1"
        from collections import Counter
        out = []
        for v, k in sorted(Counter(nu).items()):
            out.append(f"s{v}^{k}" if k > 1 else f"s{v}")
        return "*".join(out)


def build_hopf(theory: OrientedTheory, truncation: int = 8) -> HopfData:
    return HopfData(theory, truncation)


def primitives(hopf: HopfData, w: int) -> dict:
    """Basis of the primitive classes in weight w.

    Solves Delta(f) = f x 1 + 1 x f as an integer linear system on the
    s-monomial coordinates; the kernel basis is saturated, so it is
    also a basis after any flat base change.
    """
    if not 1 <= w <= hopf.truncation:
        raise ValueError("weight out of range")
    parts = partitions(w)
    delta = hopf.delta(w)
    conditions: dict[tuple, list[int]] = {}
    for i, nu in enumerate(parts):
        for (alpha, beta), coeff in delta[nu].items():
            if not alpha or not beta:
                continue
            row = conditions.setdefault((alpha, beta), [0] * len(parts))
            row[i] += coeff
    mat = int_matrix(list(conditions.values()), len(parts))
    kern = kernel_basis(mat)
    vectors = [list(map(int, v)) for v in kern]
    labels = []
    for v in vectors:
        terms = [f"{c}*{hopf.sigma_label(nu)}" for c, nu in zip(v, parts) if c]
        labels.append(" + ".join(terms))
    return {"weight": w, "rank": len(vectors), "basis": vectors,
            "monomials": [list(p) for p in parts], "pretty": labels}


def indecomposables(hopf: HopfData, w: int) -> dict:
    """Basis of I/I^2 in weight w with the duality check against primitives.

    I^2 is spanned by products of positive-weight basis elements, read
    off the multiplication table of the filtered algebra; the quotient
    should be rank one, dual to the primitives under the partition
    pairing with unimodular pairing matrix.
    """
    if w < 1:
        raise ValueError("weight must be positive")
    parts = partitions(w)
    index = {p: i for i, p in enumerate(parts)}
    rows = []
    for wa in range(1, w):
        table = hopf.algebra.multiplication_table(wa, w - wa)
        for (a, b), prod in table.items():
            if a and b:
                row = [0] * len(parts)
                row[index[prod]] = 1
                rows.append(row)
    from .intlinalg import hnf
    h, pivots = hnf(int_matrix(rows, len(parts)))
    quotient_basis = [parts[j] for j in range(len(parts)) if j not in set(pivots)]
    prim = primitives(hopf, w)
    parts_w, E, _ = hopf.transition(w)
    pairing = []
    for v in prim["basis"]:
        mcoords = [sum(v[i] * E[i][j] for i in range(len(parts_w))) for j in range(len(parts_w))]
        pairing.append([mcoords[index[mu]] for mu in quotient_basis])
    det = None
    if len(pairing) == len(quotient_basis) and pairing:
        from .intlinalg import det_bareiss_int
        det = det_bareiss_int(int_matrix(pairing, len(quotient_basis)))
    return {
        "weight": w,
        "rank": len(quotient_basis),
        "basis": [list(p) for p in quotient_basis],
        "squares_rank": len(pivots),
        "pairing_determinant": det,
        "pairing_unimodular": det in (1, -1),
    }


def additive_maps_identification(hopf: HopfData, truncation: int | None = None) -> dict:
    """Match primitives with the weight pieces of the rank-one classifying
    space under the restriction s1 -> l, s_i -> 0 for i >= 2.

    Reports per-weight ranks on both sides, unimodularity of the
    restriction on primitives, and the extra rank-one weight-zero
    summand coming from the group-completion factor.
    """
    D = hopf.truncation if truncation is None else min(truncation, hopf.truncation)
    line = cohomology(hopf.theory, ClassifyingBGL(1), D)
    per_weight = []
    ok = True
    for w in range(1, D + 1):
        prim = primitives(hopf, w)
        target_rank = line.graded_basis(w).free_rank
        parts = partitions(w)
        ones = parts.index((1,) * w)
        matrix = [[v[ones] for v in prim["basis"]]]
        square = len(prim["basis"]) == target_rank == 1
        uni = square and matrix[0][0] in (1, -1)
        ok = ok and uni
        per_weight.append({
            "weight": w,
            "primitive_rank": prim["rank"],
            "line_rank": target_rank,
            "restriction_matrix": matrix,
            "unimodular": uni,
        })
    return {
        "truncation": D,
        "per_weight": per_weight,
        "weight_zero_extra_rank": 1,
        "ok": ok,
    }


def coassociativity_check(hopf: HopfData, w: int) -> bool:
    """(Delta x 1)Delta equals (1 x Delta)Delta on every weight-w basis class."""
    parts = partitions(w)
    delta_w = hopf.delta(w)
    lhs: dict = {}
    rhs: dict = {}
    for nu in parts:
        l: dict = {}
        r: dict = {}
        for (alpha, beta), c in delta_w[nu].items():
            wa = sum(alpha)
            da = hopf.delta(wa) if wa else {(): {((), ()): 1}}
            for (r1, r2), c2 in da[alpha].items():
                key = (r1, r2, beta)
                l[key] = l.get(key, 0) + c * c2
            wb = sum(beta)
            db = hopf.delta(wb) if wb else {(): {((), ()): 1}}
            for (s1, s2), c2 in db[beta].items():
                key = (alpha, s1, s2)
                r[key] = r.get(key, 0) + c * c2
        lhs[nu] = {k: v for k, v in l.items() if v}
        rhs[nu] = {k: v for k, v in r.items() if v}
    return lhs == rhs
