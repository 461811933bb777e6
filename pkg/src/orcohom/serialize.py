"""Canonical JSON for every transferable object.

Serialization is bit-exact: terms are listed in graded-lex order
(leading term first), dictionary keys are emitted sorted, and numbers
ride as strings wherever they can leave the integer range.  Round
trips reproduce byte-identical documents.
"""

from __future__ import annotations

import json

from .coefficients import BaseRing, IntegerRing, LaurentRing, ModularRing, RationalRing, QQ, ZZ
from .fgl import FormalGroupLaw
from .polynomials import Polynomial
from .presented import PresentedRing, QuotientCoefficients, RingMap
from .spaces import (
    ClassifyingBGL,
    FlagBundle,
    GrassmannianBundle,
    InfiniteProjectiveSpace,
    Product,
    ProjectiveBundle,
    ProjectiveSpace,
)
from .towers import FPModule, GradedFPModule, GradedMap, ModuleTower, TelescopeDiagram

SCHEMA_VERSION = 1


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# coefficient domains


def base_ring_to_json(ring: BaseRing) -> dict:
    if isinstance(ring, IntegerRing):
        return {"kind": "Integers"}
    if isinstance(ring, RationalRing):
        return {"kind": "Rationals"}
    if isinstance(ring, ModularRing):
        return {"kind": "IntegersModuloN", "n": ring.n}
    if isinstance(ring, LaurentRing):
        return {"kind": "LaurentAdjoined", "base": base_ring_to_json(ring.base),
                "symbol": ring.symbol, "weight": ring.weight}
    if isinstance(ring, QuotientCoefficients):
        return {"kind": "PresentedQuotient", "ring": presented_ring_to_json(ring.ring)}
    raise TypeError(f"unknown coefficient domain {ring!r}")


def base_ring_from_json(data: dict) -> BaseRing:
    kind = data["kind"]
    if kind == "Integers":
        return ZZ
    if kind == "Rationals":
        return QQ
    if kind == "IntegersModuloN":
        return ModularRing(data["n"])
    if kind == "LaurentAdjoined":
        return LaurentRing(base_ring_from_json(data["base"]), data["symbol"], data["weight"])
    if kind == "PresentedQuotient":
        return QuotientCoefficients(presented_ring_from_json(data["ring"]))
    raise ValueError(f"unknown coefficient domain kind {kind!r}")


# ---------------------------------------------------------------------------
# polynomials


def poly_to_json(p: Polynomial, weights, nvars: int) -> list:
    out = []
    for m, c in p.sorted_terms(weights, nvars):
        dense = [0] * nvars
        for i, e in m:
            dense[i] = e
        out.append([dense, p.base.coeff_str(c)])
    return out


def poly_from_json(base: BaseRing, data) -> Polynomial:
    terms = {}
    for dense, cs in data:
        m = tuple((i, e) for i, e in enumerate(dense) if e)
        terms[m] = base.coeff_from_str(cs)
    return Polynomial(base, terms)


# ---------------------------------------------------------------------------
# presented rings and maps


def presented_ring_to_json(ring: PresentedRing) -> dict:
    return {
        "base": base_ring_to_json(ring.base),
        "variables": [[n, w] for n, w in ring.variables],
        "relations": [poly_to_json(r, ring.weights, ring.nvars) for r in ring.relations],
        "truncation": ring.truncation,
    }


def presented_ring_from_json(data: dict) -> PresentedRing:
    base = base_ring_from_json(data["base"])
    variables = [(n, w) for n, w in data["variables"]]
    relations = [poly_from_json(base, r) for r in data["relations"]]
    return PresentedRing(base, variables, relations, data["truncation"])


def ringmap_to_json(rmap: RingMap) -> dict:
    return {
        "source": presented_ring_to_json(rmap.source),
        "target": presented_ring_to_json(rmap.target),
        "images": [poly_to_json(im, rmap.target.weights, rmap.target.nvars)
                   for im in rmap.images],
    }


def ringmap_from_json(data: dict) -> RingMap:
    source = presented_ring_from_json(data["source"])
    target = presented_ring_from_json(data["target"])
    images = [poly_from_json(target.base, im) for im in data["images"]]
    return RingMap(source, target, images)


# ---------------------------------------------------------------------------
# group laws


def fgl_to_json(law: FormalGroupLaw) -> dict:
    out = {
        "base": base_ring_to_json(law.base),
        "series": poly_to_json(law.series, (1, 1), 2),
        "truncation": law.truncation,
        "beta": law.base.coeff_str(law.beta) if law.beta is not None else None,
    }
    return out


def fgl_from_json(data: dict) -> FormalGroupLaw:
    base = base_ring_from_json(data["base"])
    series = poly_from_json(base, data["series"])
    beta = base.coeff_from_str(data["beta"]) if data.get("beta") is not None else None
    return FormalGroupLaw(base, series, data["truncation"], beta=beta)


# ---------------------------------------------------------------------------
# spaces


def space_to_json(space) -> dict:
    if isinstance(space, ProjectiveSpace):
        return {"Pn": space.n}
    if isinstance(space, InfiniteProjectiveSpace):
        return {"Pinf": True}
    if isinstance(space, ClassifyingBGL):
        return {"BGL": "inf" if space.n is None else space.n}
    if isinstance(space, GrassmannianBundle):
        out: dict = {"m": space.m, "n": space.n}
        if space.base_ring is not None:
            out["base"] = presented_ring_to_json(space.base_ring)
            out["chern"] = [poly_to_json(c, space.base_ring.weights, space.base_ring.nvars)
                            for c in space.chern]
        return {"Grassmannian": out}
    if isinstance(space, FlagBundle):
        out = {"n": space.rank}
        if space.base_ring is not None:
            out["base"] = presented_ring_to_json(space.base_ring)
            out["chern"] = [poly_to_json(c, space.base_ring.weights, space.base_ring.nvars)
                            for c in space.chern]
        return {"Flag": out}
    if isinstance(space, ProjectiveBundle):
        out = {"rank": space.rank}
        if space.base_ring is not None:
            out["base"] = presented_ring_to_json(space.base_ring)
            out["chern"] = [poly_to_json(c, space.base_ring.weights, space.base_ring.nvars)
                            for c in space.chern]
        return {"ProjectiveBundle": out}
    if isinstance(space, Product):
        return {"Product": [space_to_json(space.left), space_to_json(space.right)]}
    raise TypeError(f"unknown space descriptor {space!r}")


def _bundle_payload(payload: dict):
    base_ring = None
    chern = ()
    if "base" in payload:
        base_ring = presented_ring_from_json(payload["base"])
        chern = tuple(poly_from_json(base_ring.base, c) for c in payload.get("chern", []))
    return base_ring, chern


def space_from_json(data) -> object:
    if isinstance(data, str):
        if data == "point":
            return ProjectiveSpace(0)
        if data == "Pinf":
            return InfiniteProjectiveSpace()
        raise ValueError(f"unknown space name {data!r}")
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError("space descriptor must be a one-key object")
    tag, payload = next(iter(data.items()))
    if tag == "Pn":
        return ProjectiveSpace(int(payload))
    if tag == "Pinf":
        return InfiniteProjectiveSpace()
    if tag == "BGL":
        return ClassifyingBGL(None if payload in ("inf", None) else int(payload))
    if tag == "Grassmannian":
        base_ring, chern = _bundle_payload(payload)
        return GrassmannianBundle(payload["m"], payload["n"], chern, base_ring)
    if tag == "Flag":
        base_ring, chern = _bundle_payload(payload)
        return FlagBundle(payload["n"], chern, base_ring)
    if tag == "ProjectiveBundle":
        base_ring, chern = _bundle_payload(payload)
        return ProjectiveBundle(payload["rank"], chern, base_ring)
    if tag == "Product":
        return Product(space_from_json(payload[0]), space_from_json(payload[1]))
    raise ValueError(f"unknown space tag {tag!r}")


# ---------------------------------------------------------------------------
# towers


def _module_to_json(module: FPModule) -> dict:
    return {"ngens": module.ngens, "relations": [list(r) for r in module.relations]}


def _module_from_json(data: dict) -> FPModule:
    return FPModule(data["ngens"], data["relations"])


def _graded_module_to_json(gm: GradedFPModule) -> dict:
    return {str(w): _module_to_json(m) for w, m in sorted(gm.pieces.items())}


def _graded_module_from_json(data: dict) -> GradedFPModule:
    return GradedFPModule({int(w): _module_from_json(m) for w, m in data.items()})


def _graded_map_to_json(gm: GradedMap) -> dict:
    return {str(w): [list(r) for r in mat] for w, mat in sorted(gm.matrices.items())}


def _graded_map_from_json(data: dict) -> GradedMap:
    return GradedMap({int(w): [list(map(int, r)) for r in mat] for w, mat in data.items()})


def tower_to_json(tower: ModuleTower) -> dict:
    return {
        "stages": [_graded_module_to_json(s) for s in tower.stages],
        "maps": [_graded_map_to_json(m) for m in tower.maps],
        "periodicity": list(tower.periodicity) if tower.periodicity else None,
        "surjectivity": tower.surjectivity_flags,
    }


def tower_from_json(data: dict) -> ModuleTower:
    return ModuleTower(
        [_graded_module_from_json(s) for s in data["stages"]],
        [_graded_map_from_json(m) for m in data["maps"]],
        tuple(data["periodicity"]) if data.get("periodicity") else None,
        data.get("surjectivity"),
    )


def telescope_to_json(t: TelescopeDiagram) -> dict:
    return {
        "stages": [_graded_module_to_json(s) for s in t.stages],
        "maps": [_graded_map_to_json(m) for m in t.maps],
        "periodicity": list(t.periodicity) if t.periodicity else None,
    }


def telescope_from_json(data: dict) -> TelescopeDiagram:
    return TelescopeDiagram(
        [_graded_module_from_json(s) for s in data["stages"]],
        [_graded_map_from_json(m) for m in data["maps"]],
        tuple(data["periodicity"]) if data.get("periodicity") else None,
    )


# ---------------------------------------------------------------------------
# schemas


def schemas() -> dict:
    poly = "[[dense-exponent-vector, coefficient-string], ...] in graded-lex order"
    coeff = ("Integers/IntegersModuloN: decimal string; Rationals: 'n' or 'n/d'; "
             "LaurentAdjoined: 'c@e;c@e;...' sorted by exponent; "
             "PresentedQuotient: canonical JSON text of the inner term list")
    return {
        "schemaVersion": SCHEMA_VERSION,
        "coefficientString": coeff,
        "BaseRing": {
            "kind": "Integers | IntegersModuloN | Rationals | LaurentAdjoined | PresentedQuotient",
            "n": "modulus (IntegersModuloN)",
            "base/symbol/weight": "LaurentAdjoined fields",
            "ring": "PresentedRing (PresentedQuotient)",
        },
        "Polynomial": poly,
        "PresentedRing": {
            "base": "BaseRing",
            "variables": "[[name, positive weight], ...]",
            "relations": "[Polynomial, ...] (weight-homogeneous)",
            "truncation": "positive integer weight bound",
        },
        "RingMap": {"source": "PresentedRing", "target": "PresentedRing",
                    "images": "[Polynomial per source generator]"},
        "FormalGroupLaw": {"base": "BaseRing", "series": poly,
                           "truncation": "int", "beta": "coefficient-string or null"},
        "Space": {
            "Pn": "int", "Pinf": "true", "BGL": "int or 'inf'",
            "Grassmannian": {"m": "int", "n": "int", "base": "PresentedRing?", "chern": "[Polynomial]?"},
            "Flag": {"n": "int", "base": "PresentedRing?", "chern": "[Polynomial]?"},
            "ProjectiveBundle": {"rank": "int", "base": "PresentedRing?", "chern": "[Polynomial]?"},
            "Product": "[Space, Space]",
        },
        "FPModule": {"ngens": "int", "relations": "[[int, ...], ...]"},
        "ModuleTower": {
            "stages": "[{weight: FPModule}, ...]",
            "maps": "[{weight: matrix rows target x source}, ...] (maps[k]: stage k+1 -> stage k)",
            "periodicity": "[k0, rho] or null",
            "surjectivity": "[bool per map] or null",
        },
        "TelescopeDiagram": {
            "stages": "[{weight: FPModule}, ...]",
            "maps": "[{weight: matrix}, ...] (maps[k]: stage k -> stage k+1)",
            "periodicity": "[k0, rho] or null",
        },
    }
