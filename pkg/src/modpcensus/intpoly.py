"""Exact integer matrices and polynomials: Hecke matrices, multimodular
characteristic polynomials, discriminants and p-adic valuations."""

from __future__ import annotations

import os
import tempfile
import threading
from math import comb, gcd, isqrt
from pathlib import Path

from . import kernels
from .qseries import cached_miller_basis, dim_cusp

NEG_INF = float("-inf")


class IntPoly:
    """Polynomial with integer coefficients, stored from the constant term up.

    The zero polynomial has no coefficients and degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


class IntMatrix:
    """Square matrix of big integers. The 0 x 0 matrix is allowed."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @classmethod
    def identity(cls, d):
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def dim(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c):
        return IntMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.dim))

    def max_abs(self):
        return max((abs(x) for r in self.rows for x in r), default=0)

    def evaluate(self, poly):
        """``poly(M)`` by Horner's rule."""
        d = self.dim
        acc = IntMatrix([[0] * d for _ in range(d)])
        eye = IntMatrix.identity(d)
        for c in reversed(poly.coeffs):
            acc = (acc @ self) + eye.scale(c)
        return acc


# -- CRT machinery -----------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
PRIME_CEILING = 1 << 62


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all ``n < 3.3e24``."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_crt_primes = []
_crt_lock = threading.Lock()


def crt_prime(i):
    """The ``i``-th prime below ``2**62``, counting downward from the top."""
    with _crt_lock:
        while len(_crt_primes) <= i:
            q = _crt_primes[-1] - 2 if _crt_primes else PRIME_CEILING - 1
            while not is_prime(q):
                q -= 2
            _crt_primes.append(q)
        return _crt_primes[i]


def _primes_exceeding(bound, start):
    # Yields CRT primes from index ``start`` until their product exceeds ``bound``.
    prod = 1
    i = start
    while prod <= bound:
        q = crt_prime(i)
        yield q
        prod *= q
        i += 1


def crt_symmetric(residues, moduli):
    """Reconstruct the integer in ``(-M/2, M/2]`` with the given residues."""
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    if x > m // 2:
        x -= m
    return x


def crt_symmetric_many(residue_vectors, moduli):
    """:func:`crt_symmetric` applied to many residue vectors over one set of moduli.

    ``residue_vectors[j][i]`` is the residue of the ``i``-th integer mod ``moduli[j]``.
    """
    M = 1
    for q in moduli:
        M *= q
    weights = []
    for q in moduli:
        mq = M // q
        weights.append(mq * pow(mq % q, -1, q))
    half = M // 2
    out = []
    for column in zip(*residue_vectors):
        x = sum(r * w for r, w in zip(column, weights)) % M
        out.append(x - M if x > half else x)
    return out


def charpoly_bound(matrix):
    """Bound on the absolute value of every charpoly coefficient.

    The coefficient of ``x^(d-i)`` is a sum of ``C(d, i)`` principal ``i x i``
    minors, each bounded by Hadamard through the ``i`` largest row (or column)
    norms.
    """
    d = matrix.dim

    def minor_sums(vectors):
        norms = sorted((_ceil_sqrt(sum(x * x for x in v)) for v in vectors), reverse=True)
        best = prod = 1
        for i, r in enumerate(norms, start=1):
            prod *= r
            best = max(best, comb(d, i) * prod)
        return best

    return min(minor_sums(matrix.rows), minor_sums(zip(*matrix.rows)))


def charpoly(matrix, prime_start=0):
    """Exact characteristic polynomial ``det(x - M)`` by multimodular reduction.

    ``prime_start`` selects which run of CRT primes is used; any choice gives
    the same answer.
    """
    d = matrix.dim
    if d == 0:
        return IntPoly([1])
    moduli = list(_primes_exceeding(2 * charpoly_bound(matrix), prime_start))
    images = []
    for q in moduli:
        rows = [[x % q for x in r] for r in matrix.rows]
        images.append(kernels.charpoly_mod(rows, q))
    return IntPoly(crt_symmetric_many(images, moduli))


def _ceil_sqrt(n):
    s = isqrt(n)
    return s if s * s == n else s + 1


def resultant(f, g, prime_start=0):
    """Resultant of two nonzero integer polynomials (actual degrees)."""
    n, m = f.degree, g.degree
    if n == NEG_INF or m == NEG_INF:
        return 0
    # Hadamard: the Sylvester matrix has m rows of f and n rows of g.
    nf = _ceil_sqrt(sum(c * c for c in f.coeffs))
    ng = _ceil_sqrt(sum(c * c for c in g.coeffs))
    bound = nf**m * ng**n
    # A prime dividing a leading coefficient would change the degrees mod q.
    lead = f.coeffs[-1] * g.coeffs[-1]
    moduli = []
    prod, i = 1, prime_start
    while prod <= 2 * bound:
        q = crt_prime(i)
        i += 1
        if lead % q:
            moduli.append(q)
            prod *= q
    residues = [kernels.resultant_mod(list(f.coeffs), list(g.coeffs), q) for q in moduli]
    return crt_symmetric(residues, moduli)


def discriminant(h, prime_start=0):
    """Discriminant of a monic polynomial; polynomials of degree <= 1 give 1."""
    if not h.is_monic:
        raise ValueError("discriminant expects a monic polynomial")
    n = h.degree
    if n <= 1:
        return 1
    res = resultant(h, h.derivative(), prime_start)
    return -res if (n * (n - 1) // 2) % 2 else res


def padic_valuation(n, p):
    """Largest ``e`` with ``p**e`` dividing ``n``."""
    if n == 0:
        raise ValueError("valuation of zero is undefined (zero discriminant upstream?)")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


# -- Hecke operators ---------------------------------------------------------


def hecke_matrix(k, n):
    """Matrix of ``T_n`` on level one weight ``k`` cusp forms in the Miller basis.

    Row ``i`` holds the coordinates of ``T_n f_i``.
    """
    d = dim_cusp(k)
    if d == 0:
        return IntMatrix([])
    if n < 1:
        raise ValueError(f"Hecke index must be positive, got {n}")
    # Build for at least T_3 so the common r = 2, 3 scan shares one basis.
    basis = cached_miller_basis(k, d * max(n, 3) + 1)
    rows = []
    for f in basis.forms:
        c = f.coeffs
        row = []
        for m in range(1, d + 1):
            g = gcd(n, m)
            total = 0
            for e in range(1, g + 1):
                if g % e == 0:
                    total += e ** (k - 1) * c[n * m // (e * e)]
            row.append(total)
        rows.append(row)
    return IntMatrix(rows)


class CharpolyCache:
    """``(k, n) -> charpoly of T_n on weight k`` with an optional on-disk mirror.

    Concurrent readers are safe; inserts are insert-if-absent. Disk entries
    are written to a temporary file and renamed into place.
    """

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else None
        self._mem = {}
        self._lock = threading.Lock()

    def path_for(self, k, n):
        return self.directory / f"charpoly_k{k}_n{n}.txt"

    def get(self, k, n):
        with self._lock:
            hit = self._mem.get((k, n))
        if hit is not None:
            return hit
        poly = self._load(k, n)
        if poly is None:
            poly = charpoly(hecke_matrix(k, n))
            self._store(k, n, poly)
        with self._lock:
            return self._mem.setdefault((k, n), poly)

    def contains_on_disk(self, k, n):
        return self.directory is not None and self.path_for(k, n).exists()

    def _load(self, k, n):
        if self.directory is None:
            return None
        path = self.path_for(k, n)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        return parse_cache_entry(text, k, n)

    def _store(self, k, n, poly):
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(k, n)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(format_cache_entry(k, n, poly))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def format_cache_entry(k, n, poly):
    return f"{k} {n}\n{poly.degree}\n{' '.join(str(c) for c in poly.coeffs)}\n"


def parse_cache_entry(text, k=None, n=None):
    lines = text.splitlines()
    if len(lines) < 3:
        raise ValueError("truncated charpoly cache entry")
    kk, nn = (int(t) for t in lines[0].split())
    if (k is not None and kk != k) or (n is not None and nn != n):
        raise ValueError(f"cache entry is for ({kk}, {nn}), expected ({k}, {n})")
    deg = int(lines[1])
    coeffs = [int(t) for t in lines[2].split()]
    if len(coeffs) != deg + 1 or coeffs[-1] != 1:
        raise ValueError("malformed charpoly cache entry")
    return IntPoly(coeffs)


default_cache = CharpolyCache()


def hecke_charpoly(k, n, cache=None):
    """Cached characteristic polynomial of ``T_n`` on weight ``k`` cusp forms."""
    return (cache or default_cache).get(k, n)


__all__ = [
    "CharpolyCache",
    "IntMatrix",
    "IntPoly",
    "NEG_INF",
    "charpoly",
    "charpoly_bound",
    "crt_prime",
    "crt_symmetric",
    "crt_symmetric_many",
    "default_cache",
    "discriminant",
    "hecke_charpoly",
    "hecke_matrix",
    "is_prime",
    "padic_valuation",
    "resultant",
]
