import random

import pytest

from modpcensus.criteria import MonogenicOrder, corp_check, fp_points
from modpcensus.intpoly import IntPoly, discriminant, padic_valuation
from modpcensus.numth import primes_between
from oracles import frobenius_distinct_roots, sympy_distinct_roots

PRIMES = primes_between(2, 100)


def random_squarefree(rng, max_deg=8, bound=10**4):
    # Non-squarefree draws are rejected by the discriminant test, not resampled coefficientwise.
    while True:
        n = rng.randint(1, max_deg)
        h = IntPoly([rng.randint(-bound, bound) for _ in range(n)] + [1])
        d = discriminant(h)
        if d:
            return h, d


def taylor_shift(h, c):
    # h(x + c) by repeated synthetic division.
    a = list(h.coeffs)
    n = len(a) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] += c * a[j + 1]
    return IntPoly(a)


def scale_roots(h, c):
    # c^n h(x / c): the charpoly of c * alpha.
    n = h.degree
    return IntPoly([a * c ** (n - i) for i, a in enumerate(h.coeffs)])


def test_fp_points_examples():
    assert fp_points(IntPoly([-1, 0, 1]), 5) == 2
    assert fp_points(IntPoly([6, -7, 1]), 5) == 1
    assert fp_points(IntPoly([24, 1]), 23) == 1


def test_corp_examples():
    h = IntPoly([-20468736, -1080, 1])
    r = corp_check(h, 23)
    assert discriminant(h) == 576 * 144169
    assert (r.nu, r.good, r.auto) == (0, True, True)

    for p in (3, 5, 7, 11, 23):
        r = corp_check(IntPoly([-p, 0, 1]), p)
        assert (r.f, r.nu, r.good, r.auto) == (1, 1, True, True)
        r = corp_check(IntPoly([-p * p, 0, 1]), p)
        assert (r.f, r.nu, r.good, r.auto) == (1, 2, False, False)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        corp_check(IntPoly([1, -2, 1]), 5)
    with pytest.raises(ValueError):
        MonogenicOrder.from_poly(IntPoly([1, 2]))


def test_point_count_bound_random():
    # f_p >= n - v_p(disc), and v_p(disc) <= 1 forces equality, over 10^4 draws.
    rng = random.Random(11)
    auto = good = 0
    for i in range(10**4):
        h, d = random_squarefree(rng)
        p = rng.choice(PRIMES)
        order = MonogenicOrder(h, d)
        r = corp_check(order, p)
        f = frobenius_distinct_roots(list(h.coeffs), p)
        assert r.f == f
        if i % 10 == 0:
            assert f == sympy_distinct_roots(list(h.coeffs), p)
        nu = padic_valuation(d, p)
        assert f >= h.degree - nu
        if nu <= 1:
            assert r.good
            auto += 1
        good += r.good
    assert auto > 5000 and good >= auto


def test_bound_is_not_always_attained():
    # Non-maximal orders at p: the inequality is strict for x^2 - p^2 m.
    rng = random.Random(12)
    strict = 0
    for _ in range(200):
        p = rng.choice(PRIMES[:8])
        m = rng.randint(1, 50)
        h = IntPoly([-(p**2) * m, rng.randrange(p) * p, 1])
        if discriminant(h) == 0:
            continue
        r = corp_check(h, p)
        strict += not r.good
    assert strict > 0


def test_translation_invariance():
    rng = random.Random(13)
    for _ in range(1000):
        h, _ = random_squarefree(rng, max_deg=6, bound=500)
        p = rng.choice(PRIMES)
        c = rng.randint(-1000, 1000)
        g = taylor_shift(h, c)
        assert discriminant(g) == discriminant(h)
        a, b = corp_check(h, p), corp_check(g, p)
        assert (a.f, a.nu, a.good) == (b.f, b.nu, b.good)


def test_suborder_point_counts():
    # Z[c alpha] has index c^(n(n-1)/2) in Z[alpha]: f >= f' >= f - v_p(index).
    rng = random.Random(14)
    for _ in range(1000):
        h, d = random_squarefree(rng, max_deg=6, bound=200)
        n = h.degree
        c = rng.randint(2, 30)
        p = rng.choice(PRIMES[:10])
        g = scale_roots(h, c)
        assert discriminant(g) == c ** (n * (n - 1)) * d
        f, f_sub = fp_points(h, p), fp_points(g, p)
        index_val = padic_valuation(c, p) * n * (n - 1) // 2 if c % p == 0 else 0
        assert f >= f_sub >= f - index_val
