"""Base-change comparison between the universal-coefficient presentation
and the multiplicative one on finite instances.

The cobordism side of an instance is its cohomology presentation over
the truncated universal coefficients carrying the generic law; the
K-side is the same space over the integral Laurent domain with the
multiplicative law.  Verification tensors the cobordism presentation
along the classifying map of the multiplicative law (generator
preserving, coefficients mapped through a11 -> -b) and checks a graded
isomorphism against the directly built K-side, weight by weight.

The universal coefficients here are the truncated presentation by
associativity relations; whether that models the degree-zero cobordism
coefficients over a general base is precisely what remains unknown, so
the module verifies the algebraic content of the base-change statement
on the supported instances, nothing more.
"""

from __future__ import annotations

from .coefficients import LaurentRing
from .fgl import LAZARD_DEFAULT_BOUND, classifying_map, lazard_ring, make_multiplicative
from .polynomials import Polynomial
from .presented import PresentedRing, QuotientCoefficients, RingMap
from .spaces import (
    FlagBundle,
    GrassmannianBundle,
    InfiniteProjectiveSpace,
    OrientedTheory,
    ProjectiveSpace,
    cohomology,
    multiplicative_theory,
)

_UNIVERSAL_CACHE: dict[int, OrientedTheory] = {}


def universal_theory(truncation: int = 8, bound: int | None = None) -> OrientedTheory:
    """Oriented theory over the truncated universal coefficients."""
    cached = _UNIVERSAL_CACHE.get(truncation)
    if cached is not None:
        return cached
    pres = lazard_ring(truncation, bound if bound is not None else max(truncation, LAZARD_DEFAULT_BOUND))
    theory = OrientedTheory(pres.coefficients, pres.generic, validate=False)
    _UNIVERSAL_CACHE[truncation] = theory
    return theory


def _supported(space) -> bool:
    if isinstance(space, ProjectiveSpace):
        return space.n >= 0
    if isinstance(space, (FlagBundle, GrassmannianBundle)):
        trivial = all(c.is_zero() for c in space.chern)
        return space.base_ring is None and trivial
    return False


def cobordism_presentation(space, truncation: int = 8) -> PresentedRing:
    """Presentation of the instance over the universal coefficients."""
    if not _supported(space):
        raise ValueError("supported instances: projective spaces, trivial flag and "
                         "Grassmannian bundles over a point")
    return cohomology(universal_theory(truncation), space, truncation)


def k_theory_presentation(space, truncation: int = 8) -> PresentedRing:
    """Presentation of the instance over the Laurent domain with the
    multiplicative law."""
    if not _supported(space):
        raise ValueError("supported instances: projective spaces, trivial flag and "
                         "Grassmannian bundles over a point")
    return cohomology(multiplicative_theory(truncation), space, truncation)


def _coefficient_images(truncation: int):
    """Scalar images of the universal generators under the multiplicative law."""
    law = make_multiplicative(truncation=truncation + 1)
    pres = lazard_ring(truncation, max(truncation, LAZARD_DEFAULT_BOUND))
    cmap = classifying_map(law, pres)
    return law.base, [im.constant_term() for im in cmap.images]


def base_change(ring: PresentedRing, target_base: LaurentRing, scalars) -> PresentedRing:
    """Tensor a presentation over the universal coefficients along the
    coefficient map a_ij -> scalars, keeping generators and weights."""
    if not isinstance(ring.base, QuotientCoefficients):
        raise ValueError("base change starts from a presented-quotient base")

    def map_coeff(c: Polynomial):
        out = target_base.zero()
        for mono, k in c.terms.items():
            term = target_base.from_int(k)
            for idx, e in mono:
                for _ in range(e):
                    term = target_base.mul(term, scalars[idx])
            out = target_base.add(out, term)
        return out

    def map_poly(p: Polynomial) -> Polynomial:
        return Polynomial(target_base, {m: map_coeff(c) for m, c in p.terms.items()})

    relations = [map_poly(r) for r in ring.relations]
    return PresentedRing(target_base, ring.variables, relations, ring.truncation)


def verify_conner_floyd(space, truncation: int = 8) -> dict:
    """Run the base-change isomorphism check on one instance.

    Builds both presentations, tensors the cobordism side along the
    classifying map of the multiplicative law, compares graded pieces
    through the generator-preserving map, and checks two-sided
    normal-form containment of the relation ideals.
    """
    D = int(truncation)
    left = cobordism_presentation(space, D)
    right = k_theory_presentation(space, D)
    target_base, scalars = _coefficient_images(D)
    changed = base_change(left, target_base, scalars)

    forward = RingMap(changed, right, [right.var(i) for i in range(changed.nvars)])
    ok, per_weight = forward.is_graded_isomorphism()

    backward = RingMap(right, changed, [changed.var(i) for i in range(right.nvars)])
    try:
        backward.check_well_defined()
        ideals_match = True
    except Exception:
        ideals_match = False

    report = {
        "instance": describe_space(space),
        "truncation": D,
        "per_weight": [
            {
                "weight": e["weight"],
                "cobordism_rank": e["source_rank"],
                "k_rank": e["target_rank"],
                "ok": e["ok"],
            }
            for e in per_weight
        ],
        "total_rank": sum(e["source_rank"] for e in per_weight),
        "relation_ideals_match": ideals_match,
        "isomorphism": bool(ok and ideals_match),
    }
    return report


def describe_space(space) -> str:
    if isinstance(space, ProjectiveSpace):
        return "point" if space.n == 0 else f"P{space.n}"
    if isinstance(space, InfiniteProjectiveSpace):
        return "Pinf"
    if isinstance(space, FlagBundle):
        return f"flag(A{space.rank})"
    if isinstance(space, GrassmannianBundle):
        return f"Gr{space.m}(A{space.n})"
    return repr(space)
