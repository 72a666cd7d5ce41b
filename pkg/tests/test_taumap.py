"""The exponent map tau, the antipode sigma, and the series action."""

import random

import pytest

from procyclic import PadicInt, TruncSeries, UsageError, act, min_digit_precision, sigma, tau

PRIMES = (2, 3, 5)


def digits_for(p, prec):
    return min_digit_precision(p, prec)


def random_exponent(rng, p, k):
    return PadicInt(p, [rng.randrange(p) for _ in range(k)])


def test_min_digit_precision():
    assert min_digit_precision(2, 1) == 0
    assert min_digit_precision(2, 2) == 1
    assert min_digit_precision(2, 256) == 8
    assert min_digit_precision(3, 256) == 6
    assert min_digit_precision(5, 126) == 4


@pytest.mark.parametrize("p", PRIMES)
def test_tau_generator_and_inverse(p):
    prec = 64
    k = digits_for(p, prec)
    assert tau(PadicInt.from_int(1, p, k), prec) == TruncSeries.one_minus_x(p, prec)
    assert tau(PadicInt.from_int(-1, p, k), prec) == TruncSeries.geometric(p, prec)


@pytest.mark.parametrize("p", PRIMES)
def test_tau_prime_powers(p):
    prec = 128
    k = digits_for(p, prec)
    i = 1
    while p**i < prec:
        expected = TruncSeries.one(p, prec) - TruncSeries.monomial(p, prec, p**i)
        assert tau(PadicInt.from_int(p**i, p, k), prec) == expected
        i += 1


def test_tau_matches_generic_power_on_integers():
    rng = random.Random(5)
    for p in PRIMES:
        prec = 40
        k = digits_for(p, prec)
        base = TruncSeries.one_minus_x(p, prec)
        for _ in range(20):
            n = rng.randrange(0, p**k)
            assert tau(PadicInt.from_int(n, p, k), prec) == base**n


def test_tau_is_homomorphism():
    rng = random.Random(6)
    for p in PRIMES:
        prec = 64
        k = digits_for(p, prec)
        for _ in range(25):
            a = random_exponent(rng, p, k)
            b = random_exponent(rng, p, k)
            assert tau(a + b, prec) == tau(a, prec) * tau(b, prec)


def test_tau_integer_multiple_consistency():
    rng = random.Random(7)
    p, prec = 3, 27
    k = digits_for(p, prec)
    for _ in range(20):
        a = random_exponent(rng, p, k)
        m = rng.randrange(0, 8)
        assert tau(a * PadicInt.from_int(m, p, k), prec) == tau(a, prec) ** m


def test_tau_continuity():
    rng = random.Random(8)
    for p in PRIMES:
        prec = 81 if p == 3 else 64
        k = digits_for(p, prec)
        for _ in range(25):
            depth = rng.randrange(1, k + 1)
            a = random_exponent(rng, p, k)
            b_digits = list(a.digits[:depth]) + [
                rng.randrange(p) for _ in range(k - depth)
            ]
            b = PadicInt(p, b_digits)
            cut = min(p**depth, prec)
            assert tau(a, prec).truncate(cut) == tau(b, prec).truncate(cut)


def test_tau_requires_enough_digits():
    with pytest.raises(UsageError):
        tau(PadicInt.from_int(1, 2, 3), 256)


def test_tau_precision_one():
    # everything is 1 modulo x
    assert tau(PadicInt.from_int(7, 2, 3), 1) == TruncSeries.one(2, 1)


# -- sigma -------------------------------------------------------------------


def test_sigma_inverts_one_minus_x():
    for p in PRIMES:
        f = TruncSeries.one_minus_x(p, 32)
        assert sigma(f) == TruncSeries.geometric(p, 32)
        assert sigma(f) * f == TruncSeries.one(p, 32)


def test_sigma_is_involution():
    rng = random.Random(9)
    for p in PRIMES:
        for _ in range(10):
            f = TruncSeries(p, [rng.randrange(p) for _ in range(48)], 48)
            assert sigma(sigma(f)) == f


def test_sigma_is_ring_homomorphism():
    rng = random.Random(10)
    p, prec = 3, 36
    for _ in range(10):
        f = TruncSeries(p, [rng.randrange(p) for _ in range(prec)], prec)
        g = TruncSeries(p, [rng.randrange(p) for _ in range(prec)], prec)
        assert sigma(f + g) == sigma(f) + sigma(g)
        assert sigma(f * g) == sigma(f) * sigma(g)


def test_sigma_inverts_tau():
    rng = random.Random(11)
    for p in PRIMES:
        prec = 32
        k = digits_for(p, prec)
        for _ in range(10):
            a = random_exponent(rng, p, k)
            assert sigma(tau(a, prec)) == tau(-a, prec)


# -- act ----------------------------------------------------------------------


def test_act_identity_and_generator():
    for p in PRIMES:
        prec = 24
        k = digits_for(p, prec)
        f = TruncSeries.geometric(p, prec)
        assert act(PadicInt.zero(p, k), f) == f
        assert act(PadicInt.from_int(1, p, k), TruncSeries.one(p, prec)) == (
            TruncSeries.one_minus_x(p, prec)
        )


def test_act_continuity_modulo_powers():
    rng = random.Random(12)
    p, prec = 2, 64
    k = digits_for(p, prec)
    for j in range(1, 6):
        f = TruncSeries(p, [rng.randrange(p) for _ in range(prec)], prec)
        moved = act(PadicInt.from_int(p**j, p, k), f)
        assert moved.truncate(p**j) == f.truncate(p**j)


def test_act_is_group_action():
    rng = random.Random(13)
    p, prec = 3, 27
    k = digits_for(p, prec)
    for _ in range(15):
        a = random_exponent(rng, p, k)
        b = random_exponent(rng, p, k)
        f = TruncSeries(p, [rng.randrange(p) for _ in range(prec)], prec)
        assert act(a + b, f) == act(a, act(b, f))


def test_act_rejects_mixed_primes():
    with pytest.raises(UsageError):
        act(PadicInt.from_int(1, 3, 4), TruncSeries.one(2, 8))
