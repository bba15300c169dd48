"""Truncated integer q-expansions and the Miller basis of level one cusp forms."""

from __future__ import annotations

import threading
from fractions import Fraction


class QSeries:
    """Truncated power series ``c_0 + c_1 q + ... + c_N q^N`` with integer coefficients.

    The precision ``N`` is the index of the last known coefficient. Binary
    operations truncate to the smaller precision of the two operands.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a QSeries needs at least the constant coefficient")
        self.coeffs = coeffs

    @classmethod
    def constant(cls, c, prec):
        return cls((c,) + (0,) * prec)

    @property
    def prec(self):
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        if i > self.prec:
            raise IndexError(f"coefficient q^{i} is beyond precision {self.prec}")
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"QSeries([{head}{tail}], prec={self.prec})"

    def truncate(self, prec):
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        return QSeries(self.coeffs[: prec + 1])

    def __add__(self, other):
        n = min(self.prec, other.prec) + 1
        return QSeries(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __sub__(self, other):
        n = min(self.prec, other.prec) + 1
        return QSeries(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __neg__(self):
        return QSeries(-c for c in self.coeffs)

    def scale(self, c):
        return QSeries(c * a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return QSeries(_mul_trunc(self.coeffs, other.coeffs, min(self.prec, other.prec)))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries.constant(1, self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, c):
        out = []
        for a in self.coeffs:
            q, r = divmod(a, c)
            if r:
                raise ArithmeticError(f"coefficient {a} not divisible by {c}")
            out.append(q)
        return QSeries(out)


# Below this length schoolbook convolution beats the Kronecker packing overhead.
_KRONECKER_MIN = 48


def _mul_trunc(a, b, prec):
    n = prec + 1
    a = a[:n]
    b = b[:n]
    if min(len(a), len(b)) >= _KRONECKER_MIN:
        return _mul_kronecker(a, b, n)
    out = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j in range(n - i):
                out[i + j] += ai * b[j]
    return out


def _mul_kronecker(a, b, n):
    # Pack both operands into one integer each; the slot width leaves room
    # for the worst-case convolution sum so slots never interfere.
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * n
    if bound == 0:
        return [0] * n
    width = bound.bit_length() + 2
    offset = 1 << (width - 1)
    packed_a = _pack(a, width)
    packed_b = _pack(b, width)
    prod = packed_a * packed_b
    out = []
    mask = (1 << width) - 1
    # Unpack with signed digits: add offset to every slot to keep them nonnegative.
    bias = _pack([offset] * n, width)
    prod += bias
    for _ in range(n):
        out.append((prod & mask) - offset)
        prod >>= width
    return out


def _pack(coeffs, width):
    # Signed packing: Horner from the top coefficient; negative digits borrow
    # from the next slot, which the symmetric unpack undoes.
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << width) + c
    return acc


def dim_cusp(k):
    """Dimension of the space of level one cusp forms of weight ``k``."""
    if k < 0 or k % 2:
        raise ValueError(f"weight must be a nonnegative even integer, got {k}")
    if k < 12 or k == 14:
        return 0
    if k % 12 == 2:
        return k // 12 - 1
    return k // 12


def _divisor_power_sums(e, prec):
    sigma = [0] * (prec + 1)
    for d in range(1, prec + 1):
        de = d**e
        for m in range(d, prec + 1, d):
            sigma[m] += de
    return sigma


def eisenstein_series(weight, prec):
    """Normalized ``E_4`` or ``E_6`` to precision ``prec``."""
    if weight == 4:
        c, e = 240, 3
    elif weight == 6:
        c, e = -504, 5
    else:
        raise ValueError(f"only E4 and E6 are provided, got weight {weight}")
    sigma = _divisor_power_sums(e, prec)
    return QSeries([1] + [c * s for s in sigma[1:]])


def delta(prec):
    """The discriminant cusp form, computed as ``(E4^3 - E6^2) / 1728``."""
    e4 = eisenstein_series(4, prec)
    e6 = eisenstein_series(6, prec)
    return (e4 * e4 * e4 - e6 * e6).exact_div(1728)


def delta_product(prec):
    """``q * prod (1 - q^n)^24`` to precision ``prec``; independent of :func:`delta`."""
    if prec == 0:
        return QSeries([0])
    # Euler product to precision prec - 1, then shift by q.
    n = prec
    series = [1] + [0] * (n - 1)
    for m in range(1, n):
        for _ in range(24):
            for i in range(n - 1, m - 1, -1):
                series[i] -= series[i - m]
    return QSeries([0] + series)


class MillerBasis:
    """Echelonized integral basis ``f_i = q^i + O(q^{d+1})`` of the weight ``k`` cusp space."""

    __slots__ = ("weight", "forms")

    def __init__(self, weight, forms):
        self.weight = weight
        self.forms = tuple(forms)
        self._check()

    @property
    def dim(self):
        return len(self.forms)

    @property
    def prec(self):
        return min((f.prec for f in self.forms), default=0)

    def _check(self):
        d = self.dim
        for i, f in enumerate(self.forms, start=1):
            if f[0] != 0:
                raise AssertionError(f"basis form {i} is not cuspidal")
            for j in range(1, d + 1):
                if f[j] != (1 if i == j else 0):
                    raise AssertionError(f"echelon property fails at ({i}, {j})")

    def truncate(self, prec):
        return MillerBasis(self.weight, [f.truncate(prec) for f in self.forms])


def _monomial_exponents(m):
    # E4^a E6^b of weight m with the smallest exponent of E6.
    if m % 2 or m < 0 or m == 2:
        raise ValueError(f"no monomial in E4, E6 has weight {m}")
    b = (m // 2) % 2
    a = (m - 6 * b) // 4
    return a, b


def miller_basis(k, prec):
    """Miller basis of weight ``k`` to precision ``prec``.

    Built from ``Delta^j E4^a E6^b`` for ``j = 1..d``, then reduced to echelon
    form by exact elimination.
    """
    d = dim_cusp(k)
    if d == 0:
        raise ValueError(f"weight {k} has no cusp forms")
    if prec < d + 1:
        raise ValueError(f"precision {prec} too small for dimension {d}")
    e4 = eisenstein_series(4, prec)
    e6 = eisenstein_series(6, prec)
    dl = delta(prec)

    # Going from j to j - 1 adds weight 12 = 3 * 4, so the E6 exponent is the
    # same for every j and the E4 exponent grows by 3.
    a_top, b = _monomial_exponents(k - 12 * d)
    e4_cube = e4 * e4 * e4
    e4_pow = e4**a_top
    tail = e4_pow * e6 if b else e4_pow
    by_j = {}
    for j in range(d, 0, -1):
        by_j[j] = tail
        if j > 1:
            tail = tail * e4_cube
    rows = []
    dl_pow = QSeries.constant(1, prec)
    for j in range(1, d + 1):
        dl_pow = dl_pow * dl
        rows.append(list((dl_pow * by_j[j]).coeffs))
    return MillerBasis(k, [QSeries(r) for r in _echelonize(rows, d)])


def _echelonize(rows, d):
    # Row i has leading term q^(i+1); clearing entries above each pivot gives
    # the reduced echelon form. Pivots of the Delta-monomials are 1, so the
    # rational elimination stays integral; this is checked, not assumed.
    rows = [r[:] for r in rows]
    for i in range(d):
        col = i + 1
        pivot = rows[i][col]
        if pivot == 0:
            raise ValueError("monomials are linearly dependent to the requested precision")
        for c in range(col):
            if rows[i][c] != 0:
                raise ValueError("monomials are linearly dependent to the requested precision")
        if pivot != 1:
            rows[i] = [Fraction(x, pivot) for x in rows[i]]
        for t in range(d):
            if t == i:
                continue
            factor = rows[t][col]
            if factor:
                ri = rows[i]
                rows[t] = [x - factor * y for x, y in zip(rows[t], ri)]
    out = []
    for r in rows:
        ints = []
        for x in r:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise AssertionError("Miller basis is not integral")
                x = x.numerator
            ints.append(x)
        out.append(ints)
    return out


_basis_cache = {}
_basis_lock = threading.Lock()


def cached_miller_basis(k, prec):
    """Miller basis to at least ``prec``, reusing the highest precision built so far."""
    with _basis_lock:
        basis = _basis_cache.get(k)
    if basis is not None and basis.prec >= prec:
        return basis
    basis = miller_basis(k, prec)
    with _basis_lock:
        old = _basis_cache.get(k)
        if old is None or old.prec < basis.prec:
            _basis_cache[k] = basis
    return basis
