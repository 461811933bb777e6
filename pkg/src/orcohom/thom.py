"""Filtration quotients of the stable classifying space and their
multiplicative bookkeeping.

The n-th piece is the span of partitions with exactly n parts (the
associated graded of the level filtration on the symmetric algebra);
its weight-n slice is one dimensional, spanned by the canonical class
on the all-ones partition, which plays the role of the degree-zero
universal class of the rank-n quotient.
"""

from __future__ import annotations

from .hopf import HopfData, SymFilteredAlgebra
from .partitions import merge, partition_count, partitions_exact_parts
from .spaces import ClassifyingBGL, OrientedTheory, cohomology


class ThomDecomposition:
    def __init__(self, algebra: SymFilteredAlgebra):
        self.algebra = algebra
        self.truncation = algebra.truncation

    def piece_basis(self, n: int, w: int):
        return partitions_exact_parts(w, n)

    def piece_rank(self, n: int, w: int) -> int:
        return len(self.piece_basis(n, w))

    def thom_class(self, n: int) -> tuple[int, ...]:
        """The canonical generator of the weight-n slice of the n-th piece."""
        return (1,) * n

    def rank_table(self):
        out = []
        for w in range(self.truncation + 1):
            row = [self.piece_rank(n, w) for n in range(w + 1)]
            out.append({"weight": w, "piece_ranks": row, "total": sum(row)})
        return out


def thom_decompose(source: HopfData | SymFilteredAlgebra | OrientedTheory,
                   truncation: int = 8) -> ThomDecomposition:
    """Build the decomposition and verify the rank bookkeeping.

    The piece ranks must sum to the rank of the ambient algebra in
    every weight up to the truncation; a mismatch would mean the
    filtration failed to split, so it is an assertion, not a report.
    """
    if isinstance(source, HopfData):
        algebra = source.algebra
    elif isinstance(source, SymFilteredAlgebra):
        algebra = source
    elif isinstance(source, OrientedTheory):
        algebra = SymFilteredAlgebra(source.coefficients, truncation)
    else:
        raise TypeError("expected HopfData, SymFilteredAlgebra or OrientedTheory")
    dec = ThomDecomposition(algebra)
    for w in range(algebra.truncation + 1):
        total = sum(dec.piece_rank(n, w) for n in range(w + 1))
        if total != partition_count(w):
            raise AssertionError(f"piece ranks do not sum to the algebra rank in weight {w}")
    return dec


def thom_product_check(dec: ThomDecomposition, p: int, q: int,
                       truncation: int | None = None) -> dict:
    """Multiplicativity of the graded product on pieces p and q.

    Checks that products of exactly-p-part and exactly-q-part classes
    have exactly p+q parts, that the canonical classes multiply to the
    canonical class, and that the product matrices agree with the
    transposed comultiplication blocks (the commuting square).
    """
    D = dec.truncation if truncation is None else min(truncation, dec.truncation)
    if p < 0 or q < 0 or p + q > D:
        raise ValueError("need p, q >= 0 with p + q within the truncation")
    filtration_ok = True
    square_ok = True
    details = []
    for wa in range(p, D + 1):
        for wb in range(q, D + 1 - wa):
            pa = dec.piece_basis(p, wa)
            pb = dec.piece_basis(q, wb)
            target = dec.piece_basis(p + q, wa + wb)
            tindex = {m: i for i, m in enumerate(target)}
            product_entries = {}
            for a in pa:
                for b in pb:
                    prod = merge(a, b)
                    if len(prod) != p + q:
                        filtration_ok = False
                        continue
                    product_entries[(a, b, prod)] = 1
            # dual comultiplication block on the same partitions, built
            # from the split enumeration rather than the merge map
            from .partitions import sub_partition_splits

            coproduct_entries = {}
            for mu in target:
                for alpha, beta in sub_partition_splits(mu):
                    if alpha in pa and beta in pb:
                        coproduct_entries[(alpha, beta, mu)] = 1
            if product_entries != coproduct_entries:
                square_ok = False
            details.append({"weights": [wa, wb], "pairs": len(product_entries)})
    theta = merge(dec.thom_class(p), dec.thom_class(q)) == dec.thom_class(p + q)
    commutative = True
    for wa in range(p, D + 1):
        for wb in range(q, D + 1 - wa):
            fwd = {(a, b): merge(a, b) for a in dec.piece_basis(p, wa) for b in dec.piece_basis(q, wb)}
            bwd = {(b, a): merge(b, a) for a in dec.piece_basis(p, wa) for b in dec.piece_basis(q, wb)}
            if any(fwd[(a, b)] != bwd[(b, a)] for (a, b) in fwd):
                commutative = False
    ok = filtration_ok and square_ok and theta and commutative
    return {
        "p": p,
        "q": q,
        "truncation": D,
        "filtration_respected": filtration_ok,
        "thom_class_multiplicative": theta,
        "commuting_square": square_ok,
        "commutative": commutative,
        "ok": ok,
    }


def thom_iso_check(theory: OrientedTheory, n: int, truncation: int = 8) -> dict:
    """Degree-shift module comparison for the rank-n piece.

    The rank of the n-th piece in weight w must equal the rank of the
    rank-n classifying ring in weight w - n; both sides are computed by
    independent routes (partition enumeration against the presented
    ring's graded bases).
    """
    if n < 0 or n > 3:
        raise ValueError("piece index supported for 0 <= n <= 3")
    D = truncation
    algebra = SymFilteredAlgebra(theory.coefficients, D)
    dec = ThomDecomposition(algebra)
    if n == 0:
        per_weight = [{"weight": w,
                       "piece_rank": dec.piece_rank(0, w),
                       "shifted_rank": 1 if w == 0 else 0,
                       "ok": dec.piece_rank(0, w) == (1 if w == 0 else 0)}
                      for w in range(D + 1)]
        return {"n": 0, "truncation": D, "per_weight": per_weight,
                "ok": all(e["ok"] for e in per_weight)}
    bgl = cohomology(theory, ClassifyingBGL(n), D)
    per_weight = []
    ok = True
    for w in range(D + 1):
        lhs = dec.piece_rank(n, w)
        rhs = bgl.graded_basis(w - n).free_rank if w >= n else 0
        good = lhs == rhs
        ok = ok and good
        per_weight.append({"weight": w, "piece_rank": lhs, "shifted_rank": rhs, "ok": good})
    return {"n": n, "truncation": D, "per_weight": per_weight, "ok": ok}
