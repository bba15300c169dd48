"""Point counts of monogenic orders mod p against the discriminant valuation.

For ``R = Z[x]/(h)`` with ``h`` monic and squarefree, the number ``f`` of
F_p-bar points of ``Spec R`` satisfies ``f >= deg h - v_p(disc h)``. When
equality holds, p does not divide the index of ``R`` in its normalization;
equality is automatic when ``v_p(disc h) <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intpoly import IntPoly, discriminant, padic_valuation
from .modpoly import distinct_root_count, reduce_scaled


@dataclass(frozen=True)
class MonogenicOrder:
    """``Z[x]/(h)`` for a monic squarefree ``h``."""

    h: IntPoly
    disc: int

    @classmethod
    def from_poly(cls, h):
        if not h.is_monic:
            raise ValueError("the defining polynomial must be monic")
        disc = discriminant(h)
        if disc == 0:
            raise ValueError("h is not squarefree: zero discriminant")
        return cls(h, disc)

    @property
    def n(self):
        return self.h.degree


@dataclass(frozen=True)
class CorpResult:
    f: int
    nu: int
    good: bool
    auto: bool


def fp_points(h, p):
    """Number of distinct roots of ``h`` mod ``p`` in an algebraic closure."""
    return distinct_root_count(reduce_scaled(h, p, 1))


def corp_check(h, p):
    """Compare the point count with ``deg h - v_p(disc h)``.

    ``good`` is the equality case; ``auto`` flags ``v_p(disc h) <= 1``, where
    equality is forced.
    """
    order = h if isinstance(h, MonogenicOrder) else MonogenicOrder.from_poly(h)
    f = fp_points(order.h, p)
    nu = padic_valuation(order.disc, p)
    bound = order.n - nu
    if f < bound:
        raise AssertionError(f"point count {f} below {bound} for {order.h} at p={p}")
    good = f == bound
    auto = nu <= 1
    if auto and not good:
        raise AssertionError(f"v_p(disc) = {nu} <= 1 but f = {f} != {bound} for {order.h}")
    return CorpResult(f, nu, good, auto)
