"""Truncated power series over F_p: exact ring arithmetic at a chosen cutoff.

A TruncSeries is a coefficient vector modulo x^N with entries in F_p.
Everything is exact; there is no floating point anywhere.
"""

from procyclic import LaurentTrunc, TruncSeries, mul_schoolbook

p, N = 2, 16

one = TruncSeries.one(p, N)
x = TruncSeries.x(p, N)
f = TruncSeries.one_minus_x(p, N)  # 1 - x, which is 1 + x over F_2

print("f          =", f)
print("f^2        =", f**2)
print("f^4        =", f**4)
print("f^8        =", f**8)
# the Frobenius pattern: p-power exponents hit single monomials
assert f**8 == one - TruncSeries.monomial(p, N, 8)

# units invert exactly; 1 - x inverts to the geometric series
g = f.invert()
print("f^-1       =", g)
assert f * g == one

# the fast multiplication path agrees with plain convolution
a = TruncSeries(p, [1, 0, 1, 1, 0, 1, 1, 1], N)
b = TruncSeries(p, [1, 1, 0, 0, 1, 0, 1], N)
assert a * b == mul_schoolbook(a, b)
print("a * b      =", a * b)

# Laurent series carry a valuation in front of a unit part
l = LaurentTrunc(-3, f)  # x^(-3) * (1 - x)
inv = l.invert()
print("l          =", l)
print("l^-1       =", inv)
assert (l * inv) == LaurentTrunc(0, one)

# substitution composes series with a nilpotent argument
sq = TruncSeries.monomial(p, N, 2)
h = TruncSeries(p, [0, 1, 1], N)  # x + x^2
print("(x^2)(h)   =", sq.substitute(h))
assert sq.substitute(h) == h * h
print("ok")
