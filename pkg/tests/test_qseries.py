import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modpcensus.qseries import (
    MillerBasis,
    QSeries,
    cached_miller_basis,
    delta,
    delta_product,
    dim_cusp,
    eisenstein_series,
    miller_basis,
)


def naive_mul(a, b, prec):
    out = [0] * (prec + 1)
    for i in range(prec + 1):
        for j in range(prec + 1 - i):
            out[i + j] += a[i] * b[j]
    return out


def test_delta_leading_coefficients():
    assert list(delta(5).coeffs) == [0, 1, -24, 252, -1472, 4830]


def test_delta_matches_product_formula():
    assert delta(120) == delta_product(120)


def test_eisenstein_leading_coefficients():
    assert list(eisenstein_series(4, 3).coeffs) == [1, 240, 2160, 6720]
    assert list(eisenstein_series(6, 2).coeffs) == [1, -504, -16632]
    with pytest.raises(ValueError):
        eisenstein_series(8, 3)


def test_e4_squared_is_e8():
    # E8 = 1 + 480 sum sigma_7(n) q^n, the only normalized form of weight 8.
    prec = 30
    e8 = [1] + [480 * sum(d**7 for d in range(1, n + 1) if n % d == 0) for n in range(1, prec + 1)]
    assert list((eisenstein_series(4, prec) ** 2).coeffs) == e8


def count_weight_monomials(k):
    return sum(1 for b in range(k // 6 + 1) if (k - 6 * b) % 4 == 0)


@pytest.mark.parametrize("k", range(0, 400, 2))
def test_dim_cusp_matches_monomial_count(k):
    # dim M_k counts monomials E4^a E6^b; the cusp space drops the Eisenstein line.
    full = count_weight_monomials(k)
    assert dim_cusp(k) == (max(full - 1, 0) if k >= 4 else 0)


def test_dim_cusp_rejects_odd_and_negative():
    for k in (-2, 3, 13):
        with pytest.raises(ValueError):
            dim_cusp(k)


@given(
    st.lists(st.integers(-10**6, 10**6), min_size=60, max_size=90),
    st.lists(st.integers(-10**6, 10**6), min_size=60, max_size=90),
)
@settings(max_examples=200, deadline=None)
def test_packed_multiplication_matches_schoolbook(a, b):
    prec = min(len(a), len(b)) - 1
    assert list((QSeries(a) * QSeries(b)).coeffs) == naive_mul(a, b, prec)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=20), st.integers(0, 4))
@settings(max_examples=200, deadline=None)
def test_power_is_repeated_product(a, e):
    s = QSeries(a)
    expected = QSeries.constant(1, s.prec)
    for _ in range(e):
        expected = expected * s
    assert s**e == expected


def test_precision_rules():
    s = QSeries([1, 2, 3])
    t = QSeries([1, 1])
    assert (s + t).prec == 1
    with pytest.raises(IndexError):
        s[3]
    with pytest.raises(ValueError):
        s.truncate(5)
    with pytest.raises(ArithmeticError):
        s.exact_div(2)


@pytest.mark.parametrize("k", [12, 24, 36, 50, 72, 96, 110])
def test_miller_basis_is_echelon_and_cuspidal(k):
    d = dim_cusp(k)
    basis = miller_basis(k, 3 * d + 5)
    assert basis.dim == d
    for i, f in enumerate(basis.forms, start=1):
        assert f[0] == 0
        assert [f[j] for j in range(1, d + 1)] == [int(i == j) for j in range(1, d + 1)]


def test_miller_basis_weight_12_is_delta():
    assert miller_basis(12, 10).forms[0] == delta(10)


def test_miller_basis_errors():
    with pytest.raises(ValueError):
        miller_basis(14, 10)
    with pytest.raises(ValueError):
        miller_basis(24, 2)
    with pytest.raises(AssertionError):
        MillerBasis(12, [QSeries([1, 1, 0])])


def test_cached_basis_keeps_highest_precision():
    low = cached_miller_basis(40, 10)
    high = cached_miller_basis(40, 30)
    assert high.prec >= 30
    assert cached_miller_basis(40, 12) is high
    assert high.truncate(low.prec).forms == low.truncate(low.prec).forms


def test_basis_forms_have_integer_hecke_closure():
    # T_2 preserves the cusp space: coefficients of T_2 f beyond d are determined by the first d.
    rng = random.Random(7)
    for k in rng.sample(range(24, 80, 2), 6):
        d = dim_cusp(k)
        if d == 0:
            continue
        prec = 4 * d + 8
        basis = miller_basis(k, prec)
        f = basis.forms[-1]
        half = prec // 2
        t2 = [f[2 * m] + (2 ** (k - 1) * f[m // 2] if m % 2 == 0 else 0) for m in range(half + 1)]
        combo = [0] * (half + 1)
        for i, g in enumerate(basis.forms, start=1):
            for m in range(half + 1):
                combo[m] += t2[i] * g[m]
        assert combo == t2
