"""Per-weight and per-prime census of mod p eigensystems in level one cusp forms.

For each even weight ``4 <= k <= p + 1`` we determine the number of mod p
eigensystems (exactly when a p-good Hecke operator exists), whether the
Eisenstein system occurs, and upper bounds for the tamely ramified systems
from linking numbers at the companion weights ``p + 1 - k`` and
``p + 3 - k``. Summing over weights gives the lower bound ``L(p)``.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

from .intpoly import discriminant, hecke_charpoly, padic_valuation
from .modpoly import distinct_root_count, linking_number, reduce_scaled, zero_root_multiplicity
from .numth import class_number_neg_p, eisenstein_count, nonresidue_primes
from .qseries import dim_cusp

log = logging.getLogger(__name__)

DEFAULT_R_MAX = 20
DEFAULT_ELLS = (2, 3)


@dataclass(frozen=True)
class WeightReport:
    p: int
    k: int
    n_k: int
    e_count: int
    e_exact: bool
    p_good_r: int | None
    eis: int
    split_bound: int
    irr_bound: int
    dihedral: int
    ells_used: tuple = field(default_factory=tuple)

    def as_dict(self):
        d = asdict(self)
        d["ells_used"] = list(self.ells_used)
        return d


@dataclass(frozen=True)
class PrimeCensusRow:
    p: int
    L: int
    U: int
    exact: bool
    ratio: str
    weights: tuple = field(default_factory=tuple, compare=False, repr=False)

    def as_dict(self, with_weights=True):
        d = {"p": self.p, "L": self.L, "U": self.U, "exact": self.exact, "ratio": self.ratio}
        if with_weights:
            d["weights"] = [w.as_dict() for w in self.weights]
        return d


def truncated_ratio(num, den, digits=6):
    """``num/den`` truncated toward zero to ``digits`` decimals, trailing zeros dropped."""
    if num < 0 or den <= 0:
        raise ValueError("expected a nonnegative ratio")
    scale = 10**digits
    v = num * scale // den
    whole, frac = divmod(v, scale)
    if frac == 0:
        return str(whole)
    return f"{whole}.{frac:0{digits}d}".rstrip("0")


def weights(p):
    return range(4, p + 2, 2)


def u_bound(p):
    """Upper bound ``(p - 1) * sum dim S_k`` over even ``4 <= k <= p + 1``."""
    if p < 5:
        raise ValueError(f"need p >= 5, got {p}")
    return (p - 1) * sum(dim_cusp(k) for k in weights(p))


def _scan_hecke_operators(p, k, r_max, cache):
    # Returns ((r, f) for the first p-good T_r or None, best distinct-root count seen).
    n = dim_cusp(k)
    best = 0
    for r in range(2, r_max):
        h = hecke_charpoly(k, r, cache)
        f = distinct_root_count(reduce_scaled(h, p, 1))
        best = max(best, f)
        disc = discriminant(h)
        if disc == 0:
            continue
        if f == n - padic_valuation(disc, p):
            return (r, f), best
    return None, best


def find_p_good(p, k, r_max=DEFAULT_R_MAX, cache=None):
    """First ``r`` in ``2..r_max-1`` with ``T_r`` p-good on weight ``k``, as ``(r, |E(p,k)|)``."""
    if dim_cusp(k) == 0:
        raise ValueError(f"weight {k} has no cusp forms")
    hit, _ = _scan_hecke_operators(p, k, r_max, cache)
    return hit


def e_count_fallback(p, k, cache=None, tries=1):
    """Lower bound for ``|E(p,k)|`` at the dihedral weight ``k = (p+1)/2``.

    Each nonresidue ``ell`` has ``x^((h-1)/2)`` dividing the mod p charpoly of
    ``T_ell``; the nonzero roots count distinct non-dihedral systems.
    Returns ``(bound, exact)``; ``exact`` means the bound equals ``dim S_k``.
    """
    if p % 4 != 3 or 2 * k != p + 1:
        raise ValueError("the dihedral fallback applies only to p = 3 mod 4, k = (p+1)/2")
    n = dim_cusp(k)
    half = (class_number_neg_p(p) - 1) // 2
    best = 0
    for ell in nonresidue_primes(p, tries):
        fbar = reduce_scaled(hecke_charpoly(k, ell, cache), p, 1)
        z = zero_root_multiplicity(fbar)
        if z < half:
            raise AssertionError(
                f"charpoly of T_{ell} mod {p} at weight {k} has x^{z}, expected x^{half} at least"
            )
        nonzero = distinct_root_count(fbar) - (1 if z else 0)
        best = max(best, nonzero + half)
    return best, best == n


def _linking_bound(p, k, companion, twist, ells, cache):
    h_all = {}
    bound = None
    for ell in ells:
        h = h_all.setdefault(ell, hecke_charpoly(k, ell, cache))
        j = hecke_charpoly(companion, ell, cache)
        e = linking_number(h, j, p, 1, pow(ell, twist, p))
        bound = e if bound is None else min(bound, e)
    return bound


def tame_bounds(p, k, ells=DEFAULT_ELLS, nonresidues=1, cache=None):
    """Upper bounds ``(split, irr, ells_used)`` for the tamely ramified systems at weight ``k``.

    At the self-paired weights ``(p+1)/2`` (split) and ``(p+3)/2`` (irr) the
    candidates are the smallest quadratic nonresidues mod p instead of ``ells``.
    """
    if k % 2 or not 4 <= k <= p + 1:
        raise ValueError(f"weight {k} outside the even range 4..{p + 1}")
    ells = tuple(e for e in ells if e != p)
    if not ells:
        raise ValueError("no usable ell candidates")
    nonres = tuple(nonresidue_primes(p, nonresidues))
    used = set()

    split = 0
    if dim_cusp(p + 1 - k):
        cands = nonres if 2 * k == p + 1 else ells
        split = _linking_bound(p, k, p + 1 - k, k - 1, cands, cache)
        used.update(cands)
    irr = 0
    if dim_cusp(p + 3 - k):
        cands = nonres if 2 * k == p + 3 else ells
        irr = _linking_bound(p, k, p + 3 - k, k - 2, cands, cache)
        used.update(cands)
    return split, irr, tuple(sorted(used))


def dihedral_count(p, k):
    if p % 4 == 3 and p > 3 and 2 * k == p + 1 and dim_cusp(k):
        return (class_number_neg_p(p) - 1) // 2
    return 0


def weight_census(p, k, r_max=DEFAULT_R_MAX, ells=DEFAULT_ELLS, nonresidues=1, cache=None):
    """All census quantities for one weight, as a :class:`WeightReport`."""
    if k % 2 or not 4 <= k <= p + 1:
        raise ValueError(f"weight {k} outside the even range 4..{p + 1}")
    n = dim_cusp(k)
    if n == 0:
        return WeightReport(p, k, 0, 0, True, None, 0, 0, 0, 0, ())

    hit, best = _scan_hecke_operators(p, k, r_max, cache)
    good_r = None
    if hit is not None:
        good_r, e = hit
        exact = True
    else:
        e, exact = best, False
        if p % 4 == 3 and 2 * k == p + 1:
            fb, fb_exact = e_count_fallback(p, k, cache, tries=nonresidues)
            if fb >= e:
                e, exact = fb, fb_exact
        if not exact:
            log.warning("p=%d k=%d: no p-good operator below r=%d; |E| >= %d", p, k, r_max, e)

    eis = min(eisenstein_count(p, k), e)
    split, irr, used = tame_bounds(p, k, ells, nonresidues, cache)
    # The tame systems are non-Eisenstein, so n - eis bounds their total.
    room = n - eis
    split = min(split, room)
    irr = min(irr, room - split)
    return WeightReport(p, k, n, e, exact, good_r, eis, split, irr, dihedral_count(p, k), used)


def prime_census(p, r_max=DEFAULT_R_MAX, ells=DEFAULT_ELLS, nonresidues=1, cache=None):
    """Lower bound ``L(p)``, upper bound ``U(p)`` and exactness flag for one prime."""
    if p < 11:
        raise ValueError(f"the census is defined for p >= 11, got {p}")
    reports = []
    s2 = 0
    exact = True
    for k in weights(p):
        w = weight_census(p, k, r_max, ells, nonresidues, cache)
        reports.append(w)
        if w.n_k == 0:
            continue
        s2 += max(0, 2 * w.e_count - 2 * w.eis - w.split_bound - w.irr_bound)
        if not (w.e_exact and w.irr_bound == 0 and w.split_bound == w.dihedral):
            exact = False
    lower = (p - 1) * s2 // 2
    upper = u_bound(p)
    return PrimeCensusRow(p, lower, upper, exact, truncated_ratio(upper - lower, p * p), tuple(reports))
