"""Tour of the formal group law calculus.

Builds the two classical laws, checks the axioms, and walks through the
inverse, iterates, logarithm, and the truncated universal coefficients
with their classifying maps.
"""

from orcohom import (
    QQ,
    check_axioms,
    classifying_map,
    formal_inverse,
    laurent_over,
    lazard_graded_ranks,
    lazard_ring,
    logarithm,
    make_additive,
    make_multiplicative,
    n_series,
)

D = 8

print("== the two classical laws ==")
add = make_additive(truncation=D)
mult = make_multiplicative(truncation=D)
for name, law in (("additive", add), ("multiplicative", mult)):
    rep = check_axioms(law)
    print(f"{name}: F = {law.ring2.poly_str(law.series)}")
    print(f"  unit={rep.unit_ok} commutative={rep.commutative_ok} associative={rep.associative_ok}")

print()
print("== inverse and iterates for the multiplicative law ==")
inv = formal_inverse(mult)
print("i(x)  =", mult.ring2.poly_str(inv))
print("[2]x  =", mult.ring2.poly_str(n_series(mult, 2)))
print("[-1]x =", mult.ring2.poly_str(n_series(mult, -1)))

print()
print("== logarithm needs rational coefficients ==")
LB = laurent_over(QQ, "b", -1)
multq = make_multiplicative(LB, LB.generator(), truncation=D)
print("l(x) =", multq.ring2.poly_str(logarithm(multq)))

print()
print("== truncated universal coefficients ==")
pres = lazard_ring(5)
print("generators:", [f"a{i}_{j}" for i, j in pres.gens])
print("graded ranks:", lazard_graded_ranks(5), "(partition numbers)")
cm = classifying_map(make_multiplicative(truncation=6), pres)
images = {f"a{i}_{j}": cm.target.base.coeff_str(im.constant_term())
          for (i, j), im in zip(pres.gens, cm.images) if not im.is_zero()}
print("multiplicative law classifies through:", images)
