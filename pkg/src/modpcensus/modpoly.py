"""Polynomials over F_p: twisted reduction, gcds, distinct-root counts, linking numbers."""

from __future__ import annotations


class ModPoly:
    """Polynomial over the prime field F_p, coefficients from the constant term up.

    Residues are kept reduced in ``[0, p)``; the zero polynomial has no
    coefficients.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p):
        coeffs = [c % p for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.p = p
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, ModPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, p={self.p})"

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __mul__(self, other):
        a, b, p = self.coeffs, other.coeffs, self.p
        if not a or not b:
            return ModPoly([], p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ModPoly(out, p)

    def derivative(self):
        return ModPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def monic(self):
        if not self.coeffs:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return ModPoly([c * inv for c in self.coeffs], self.p)


def _divmod(a, b, p):
    # Long division of coefficient lists over F_p; b nonzero.
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for s in range(len(a) - 1 - db, -1, -1):
        c = a[s + db] * inv % p
        q[s] = c
        if c:
            for j in range(db + 1):
                a[s + j] = (a[s + j] - c * b[j]) % p
    return ModPoly(q, p), ModPoly(a[:db], p)


def poly_divmod(f, g):
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    return _divmod(f.coeffs, g.coeffs, f.p)


def poly_gcd(f, g):
    """Monic gcd by the Euclidean algorithm, normalizing to monic at each step."""
    a, b = f.monic(), g.monic()
    while not b.is_zero():
        _, r = _divmod(a.coeffs, b.coeffs, a.p)
        a, b = b, r.monic()
    return a


def _exact_div(f, g):
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def reduce_scaled(h, p, s=1):
    """Mod-p charpoly of ``s*T`` given the integer charpoly ``h`` of ``T``.

    The coefficient of ``x^(n-i)`` is multiplied by ``s^i``; this works for
    ``s = 0`` as well and needs no inverses.
    """
    coeffs = h.coeffs
    if not coeffs or coeffs[-1] != 1:
        raise ValueError("reduce_scaled expects a monic polynomial")
    n = len(coeffs) - 1
    s %= p
    out = [0] * (n + 1)
    power = 1
    for i in range(n + 1):
        out[n - i] = coeffs[n - i] * power
        power = power * s % p
    return ModPoly(out, p)


def distinct_root_count(f):
    """Number of distinct roots of ``f`` in an algebraic closure of F_p.

    Squarefree decomposition in characteristic p: factors whose multiplicity
    is prime to p are peeled off Yun-style; what is left is a p-th power,
    whose p-th root is read off the coefficients at exponents divisible by p.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    p = f.p
    count = 0
    f = f.monic()
    while f.degree > 0:
        c = poly_gcd(f, f.derivative())
        w = _exact_div(f, c)
        while w.degree > 0:
            y = poly_gcd(w, c)
            count += w.degree - y.degree
            w = y
            c = _exact_div(c, y)
        if c.degree <= 0:
            break
        f = ModPoly(c.coeffs[::p], p)
    return count


def zero_root_multiplicity(f):
    """Largest ``m`` with ``x^m`` dividing ``f``."""
    if f.is_zero():
        raise ValueError("the zero polynomial is divisible by every power of x")
    m = 0
    while f.coeffs[m] == 0:
        m += 1
    return m


def linking_number(h, j, p, s_h=1, s_j=1):
    """Degree of the gcd of the twisted mod-p reductions of ``h`` and ``j``."""
    g = poly_gcd(reduce_scaled(h, p, s_h), reduce_scaled(j, p, s_j))
    return g.degree
