"""Tour of the exact Puiseux series engine.

Series live over an exact field (the rationals or a prime field), carry a
shared root denominator N bounding the exponent denominators, and are
truncated at a total-degree cutoff D.
"""

from fractions import Fraction

from tangentbase import Field, PuiseuxSeries, parse_series

QQ = Field(0)

print("== parsing and arithmetic ==")
a = parse_series("1 + 3/2*t1*t2^(1/2)", 2, QQ, 2, Fraction(5))
b = parse_series("1 - t1*t2^(1/2)", 2, QQ, 2, Fraction(5))
print("a      =", a)
print("b      =", b)
print("a * b  =", a * b)
print("a - a  =", a - a, "   (the zero series)")

print()
print("== units invert inside the ring ==")
u = parse_series("1 - t1", 1, QQ, 1, Fraction(6))
print("u      =", u)
print("1/u    =", u.inverse(), "  (geometric series, cut at degree 6)")
print("u * (1/u) =", u * u.inverse())

print()
print("== n-th roots by Newton iteration ==")
s = parse_series("1 + t1", 1, QQ, 1, Fraction(3))
r = s.nth_root(2, 1)
print("sqrt(1 + t1)    =", r)
print("square of that  =", r * r, "  (matches through degree 3)")

mono = parse_series("t1^2 + t1^2*t2", 2, QQ, 1, Fraction(4))
print("sqrt(t1^2*(1 + t2)) =", mono.nth_root(2, 1))

print()
print("== fractional exponents form a coherent system ==")
t1 = PuiseuxSeries.variable(QQ, 1, 1, Fraction(2), 1)
sixth = t1.nth_root(6, 1)
print("t1^(1/6)        =", sixth)
print("(t1^(1/6))^2    =", sixth ** 2)
print("t1^(1/3)        =", t1.nth_root(3, 1))
print("staged (1/2 then 1/3):", t1.nth_root(2, 1).nth_root(3, 1))

print()
print("== prime fields ==")
F5 = Field(5)
c = parse_series("4 + t1", 1, F5, 1, Fraction(3))
print("over GF(5), 4 + t1 has the square roots of 4 = {2, 3} as leading choices:")
for choice in F5.nth_roots(4, 2):
    print("  root with leading", choice, ":", c.nth_root(2, choice))
