"""Splitting tame Kummer coverings over the Puiseux ring.

A covering of the formal disk is presented by relations s_i^(n_i) = a_i with
unit-times-monomial radicands and exponents prime to the characteristic.
Over a field with enough roots of unity, the covering splits completely:
there are exactly prod(n_i) homomorphisms into the Puiseux ring, and each one
can be verified independently by substitution.
"""

from fractions import Fraction

from tangentbase import (
    Field,
    KummerCovering,
    PuiseuxSeries,
    all_series_roots,
    parse_series,
    split_homs,
    verify_hom,
)

F5 = Field(5)
order = Fraction(2)

print("== a degree-4 covering over GF(5) ==")
t1 = PuiseuxSeries.variable(F5, 1, 1, order, 1)
covering = KummerCovering(F5, 1, order, [(t1, 4)])
for hom in split_homs(covering):
    print("  s ->", hom, "   verified:", verify_hom(covering, hom))
print("(the images step through the 4th roots of unity 1, 2, 4, 3 of GF(5))")

print()
print("== two relations multiply: degree 2 * 2 = 4 ==")
t1 = PuiseuxSeries.variable(F5, 2, 1, order, 1)
t2 = PuiseuxSeries.variable(F5, 2, 1, order, 2)
covering = KummerCovering(F5, 2, order, [(t1, 2), (t2, 2)])
homs = split_homs(covering)
print(f"  {len(homs)} homomorphisms:")
for hom in homs:
    print("   ", hom)

print()
print("== a unit cofactor on the radicand ==")
F13 = Field(13)
deeper = Fraction(3)
radicand = parse_series("t1 + t1*t2", 2, F13, 1, deeper)
covering = KummerCovering(F13, 2, deeper, [(radicand, 3)])
print(f"  radicand {radicand} of exponent 3 over GF(13):")
for hom in split_homs(covering):
    print("   ", hom)

print()
print("== coherence: roots of roots are roots ==")
F7 = Field(7)
t1 = PuiseuxSeries.variable(F7, 1, 1, order, 1)
one_stage = all_series_roots(t1, 6)
two_stage = sorted(
    {str(deep) for first in all_series_roots(t1, 2)
     for deep in all_series_roots(first, 3)})
print("  6th roots of t1 directly:  ", [str(r) for r in one_stage])
print("  square roots, then cube roots:", two_stage)
