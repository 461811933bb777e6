"""The Hopf algebra of the stable classifying space and its filtration
quotients.

Shows the dualized comultiplication on small generators, the rank-one
primitive in each weight, the indecomposable quotient, and the
partition bookkeeping of the filtration pieces with their canonical
classes.
"""

from orcohom import (
    additive_maps_identification,
    additive_theory,
    build_hopf,
    indecomposables,
    primitives,
    thom_decompose,
    thom_iso_check,
    thom_product_check,
)

TH = additive_theory(truncation=8)
D = 6

hd = build_hopf(TH, D)

print("== comultiplication, dualized from the symmetric-algebra product ==")
for nu in ((1,), (2,), (1, 1)):
    terms = []
    for (alpha, beta), c in sorted(hd.delta(sum(nu))[nu].items()):
        terms.append(f"{c}*{hd.sigma_label(alpha)}(x){hd.sigma_label(beta)}")
    print(f"Delta {hd.sigma_label(nu)} = " + " + ".join(terms))

print()
print("== primitives: rank one in every weight ==")
for w in range(1, D + 1):
    p = primitives(hd, w)
    print(f"w={w}: rank {p['rank']}, basis {p['pretty'][0]}")

print()
print("== indecomposables and the duality pairing ==")
for w in range(1, 5):
    rep = indecomposables(hd, w)
    print(f"w={w}: I/I^2 rank {rep['rank']}, I^2 rank {rep['squares_rank']}, "
          f"pairing det {rep['pairing_determinant']}")

ident = additive_maps_identification(hd)
print()
print("additive-maps identification ok:", ident["ok"],
      "(plus the rank-1 weight-0 summand from the group completion)")

print()
print("== filtration quotients: partitions with exactly n parts ==")
dec = thom_decompose(TH, 8)
for row in dec.rank_table():
    print(f"w={row['weight']}: piece ranks {row['piece_ranks']} total {row['total']}")
print("canonical classes:", [dec.thom_class(n) for n in range(4)])
print("product check (1,1):", thom_product_check(dec, 1, 1)["ok"])
print("shift check n=2:", thom_iso_check(TH, 2, 8)["ok"])
