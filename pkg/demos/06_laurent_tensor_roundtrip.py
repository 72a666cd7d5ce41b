"""Laurent series as power-series tensor monomial shifts.

kappa rewrites a Laurent element x^v * u as (power series) (x) x^(-n)
with the smallest admissible shift n; mu multiplies the pair back out.
The two maps are mutually inverse: mu(kappa(l)) = l always, and
kappa(mu(t)) = t on normalized representatives.  The normalization move
is the relation a*x (x) b = a (x) x*b.
"""

import random

from procyclic import LaurentTrunc, TensorRep, TruncSeries, kappa, mu

p, prec = 2, 16

l = LaurentTrunc(-2, TruncSeries(p, [1, 0, 1], 3))  # x^(-2) + 1
rep = kappa(l)
print("l        =", l)
print("kappa(l) = (", rep.left, ") (x) x^-", rep.shift, sep="")
assert mu(rep) == l

# an un-normalized representative and its canonical form
raw = TensorRep(TruncSeries(p, [0, 1, 1], 3), 2)  # (x + x^2) (x) x^-2
norm = raw.normalized()
print("raw      = (", raw.left, ") (x) x^-", raw.shift, sep="")
print("normal   = (", norm.left, ") (x) x^-", norm.shift, sep="")
assert mu(raw) == mu(norm)

# seeded round trips
rng = random.Random(7)
for _ in range(200):
    coeffs = [rng.randrange(p) for _ in range(prec)]
    coeffs[0] = 1
    laurent = LaurentTrunc(rng.randrange(-5, 6), TruncSeries(p, coeffs, prec))
    rep = kappa(laurent)
    assert mu(rep) == laurent
    assert kappa(mu(rep)) == rep
print("200 random round trips exact")
print("ok")
