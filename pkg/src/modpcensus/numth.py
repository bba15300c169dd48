"""Arithmetic helpers: Bernoulli numbers, class numbers of Q(sqrt(-p)), quadratic residues."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, isqrt

from .qseries import dim_cusp

BERNOULLI_EXACT_BOUND = 400


def primes_between(lo, hi):
    """Primes ``p`` with ``lo <= p <= hi`` (simple sieve)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


def is_small_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


class BernoulliTable:
    """Residues ``b_k mod p`` for even ``2 <= k <= p - 3``."""

    __slots__ = ("p", "values")

    def __init__(self, p, values):
        self.p = p
        self.values = dict(values)

    def __getitem__(self, k):
        try:
            return self.values[k]
        except KeyError:
            raise KeyError(f"b_{k} mod {self.p} is not in the table (need even 2 <= k <= p-3)") from None

    def __contains__(self, k):
        return k in self.values


def bernoulli_mod_p(p):
    """Bernoulli numbers mod ``p`` by inverting ``(e^x - 1)/x`` as a power series over F_p."""
    if p < 7:
        raise ValueError(f"need p >= 7, got {p}")
    top = p - 3
    # (e^x - 1)/x = sum x^n / (n+1)!, needs factorials up to (p-2)!.
    fact = [1] * (p - 1)
    for i in range(1, p - 1):
        fact[i] = fact[i - 1] * i % p
    inv_fact = [pow(f, p - 2, p) for f in fact]
    a = [inv_fact[n + 1] for n in range(top + 1)]
    # a[0] = 1, so the inverse series has b[0] = 1.
    b = [0] * (top + 1)
    b[0] = 1
    for n in range(1, top + 1):
        s = 0
        for i in range(1, n + 1):
            s += a[i] * b[n - i]
        b[n] = -s % p
    return BernoulliTable(p, {k: fact[k] * b[k] % p for k in range(2, top + 1, 2)})


_bern_cache = [Fraction(1)]
_bern_lock = threading.Lock()


def bernoulli_exact(k):
    """Exact ``B_k`` (with ``B_1 = -1/2``) from ``sum_{j<=m} C(m+1, j) B_j = 0``."""
    if k < 0 or k > BERNOULLI_EXACT_BOUND:
        raise ValueError(f"k must lie in [0, {BERNOULLI_EXACT_BOUND}], got {k}")
    with _bern_lock:
        for m in range(len(_bern_cache), k + 1):
            s = sum(comb(m + 1, j) * _bern_cache[j] for j in range(m))
            _bern_cache.append(-s / (m + 1))
        return _bern_cache[k]


_table_cache = {}


def _table(p):
    t = _table_cache.get(p)
    if t is None:
        t = _table_cache.setdefault(p, bernoulli_mod_p(p))
    return t


def eisenstein_count(p, k):
    """1 if the Eisenstein eigensystem of weight ``k`` occurs mod ``p`` among cusp forms, else 0."""
    if k % 2 or k < 4 or k > p + 1:
        raise ValueError(f"weight {k} outside the even range 4..{p + 1}")
    if dim_cusp(k) == 0:
        return 0
    if k <= p - 3:
        return int(_table(p)[k] == 0)
    # k = p - 1: b_{p-1} has p in the denominator, numerator prime to p.
    # k = p + 1: b_{p+1}/(p+1) = b_2/2 = 1/12 mod p, never zero.
    return 0


def legendre(a, p):
    """Legendre symbol by Euler's criterion."""
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def class_number_neg_p(p):
    """Class number of Q(sqrt(-p)) for a prime ``p = 3 mod 4``, ``p > 3``, by counting reduced forms."""
    if p % 4 != 3 or p <= 3:
        raise ValueError(f"need a prime p = 3 mod 4 with p > 3, got {p}")
    h = 0
    a = 1
    while 3 * a * a <= p:
        for b in range(-a + 1, a + 1):
            if b % 2 == 0:
                continue
            num = b * b + p
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (a == c or abs(b) == a) and b < 0:
                continue
            h += 1
        a += 1
    return h


def nonresidue_primes(p, count):
    """The ``count`` smallest primes that are not squares mod ``p``."""
    found = []
    ell = 2
    while len(found) < count:
        if ell != p and is_small_prime(ell) and legendre(ell, p) == -1:
            found.append(ell)
        ell += 1
    return found


def smallest_nonresidue(p):
    """Smallest prime that is not a square mod the odd prime ``p``."""
    return nonresidue_primes(p, 1)[0]
