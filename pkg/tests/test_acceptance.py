"""Acceptance criteria, one marker per criterion; the summary prints one line each."""

import random

import pytest

from conftest import SWEEP_P_MAX, acceptance_notes
from modpcensus import cli
from modpcensus.census import find_p_good, prime_census, weight_census
from modpcensus.criteria import corp_check
from modpcensus.intpoly import IntMatrix, IntPoly, charpoly, discriminant, hecke_matrix, padic_valuation
from modpcensus.numth import (
    bernoulli_exact,
    bernoulli_mod_p,
    class_number_neg_p,
    eisenstein_count,
    primes_between,
)
from modpcensus.qseries import dim_cusp
from oracles import dirichlet_class_number, frobenius_distinct_roots, joint_eigensystem_count

criterion = pytest.mark.criterion

EXPECTED_PASSES = {
    11: (10, 10, True), 13: (12, 12, True), 17: (48, 48, True), 23: (143, 154, True),
    29: (336, 336, True), 37: (720, 756, True), 41: (1080, 1080, True), 47: (1656, 1702, True),
    53: (2496, 2496, True), 59: (3393, 3538, False), 61: (3900, 3900, True), 71: (6195, 6370, True),
    73: (6840, 6912, True), 83: (10373, 10414, True), 89: (12848, 12936, True),
    97: (16896, 16896, True), 101: (19100, 19200, True), 109: (24300, 24300, True),
    113: (27104, 27216, True),
}


def _parse(line):
    status, rest = line.split(" ", 1)
    fields = dict(tok.split("=", 1) for tok in rest.replace("|", " ").split() if "=" in tok)
    return status, int(fields["p"]), line


@pytest.fixture(scope="module")
def verify_113(tmp_path_factory):
    out = tmp_path_factory.mktemp("verify") / "report.txt"
    code = cli.main(["verify", "--p-max", str(SWEEP_P_MAX), "--out", str(out)])
    lines = out.read_text().splitlines()
    rows = [_parse(line) for line in lines if line.split()[0] in ("PASS", "FAIL", "KNOWN-DISCREPANCY")]
    return code, rows, lines


@criterion(1)
def test_table_reproduction(verify_113):
    code, rows, _ = verify_113
    status = {p: s for s, p, _ in rows}
    assert sorted(status) == primes_between(11, SWEEP_P_MAX)
    for p, s in status.items():
        if p % 12 != 7:
            assert s == "PASS", p
    passes = {p for p, s in status.items() if s == "PASS"}
    assert passes == {p for p in status if p % 12 != 7}
    assert set(EXPECTED_PASSES) <= passes
    for p, (L, U, exact) in EXPECTED_PASSES.items():
        row = prime_census(p)
        assert (row.L, row.U, row.exact) == (L, U, exact)


@criterion(2)
def test_known_discrepancies(verify_113):
    code, rows, _ = verify_113
    assert code == 0
    known = {p: line for s, p, line in rows if s == "KNOWN-DISCREPANCY"}
    assert sorted(known) == [19, 31, 43, 67, 79, 103]
    assert "computed L=72 U=72" in known[19] and "table L=108 U=108" in known[19]
    assert "U=420" in known[31] and "table L=555 U=570" in known[31]
    for p in known:
        computed, table = known[p].split("|")
        # The ratio column agrees even where U does not.
        assert computed.split("ratio=")[1].strip() == table.split("ratio=")[1].strip()


@criterion(3)
def test_p23_decomposition():
    reports = {k: weight_census(23, k) for k in range(4, 25, 2)}
    w = reports[12]
    assert (w.n_k, w.e_count, w.e_exact, w.p_good_r) == (1, 1, True, 2)
    assert (w.eis, w.split_bound, w.irr_bound, w.dihedral, w.ells_used) == (0, 1, 0, 1, (5,))
    assert 4830 % 23 == 0
    for k in (16, 18, 20, 22):
        w = reports[k]
        assert (w.n_k, w.e_count, w.e_exact, w.eis, w.split_bound, w.irr_bound) == (1, 1, True, 0, 0, 0)
    w = reports[24]
    assert (w.n_k, w.e_count, w.e_exact, w.eis, w.split_bound, w.irr_bound) == (2, 2, True, 0, 0, 0)
    s2 = sum(max(0, 2 * w.e_count - 2 * w.eis - w.split_bound - w.irr_bound) for w in reports.values())
    assert s2 == 13
    row = prime_census(23)
    assert row.L == 22 * 13 // 2 == 143


@criterion(4)
def test_oracle_equivalence():
    checked = 0
    for p in (5, 7, 11, 13):
        for k in range(12, 31, 2):
            if not dim_cusp(k):
                continue
            hit = find_p_good(p, k)
            assert hit is not None, (p, k)
            assert hit[1] == joint_eigensystem_count(k, p, (2, 3, 5)), (p, k)
            checked += 1
    assert checked == 36


@criterion(5)
def test_cayley_hamilton():
    rng = random.Random(101)
    for _ in range(1000):
        d = rng.randint(1, 6)
        m = IntMatrix([[rng.randint(-10**6, 10**6) for _ in range(d)] for _ in range(d)])
        assert m.evaluate(charpoly(m)) == IntMatrix([[0] * d for _ in range(d)])


@criterion(5)
def test_hecke_identities():
    for k in range(12, 61, 2):
        if not dim_cusp(k):
            continue
        t2, t3, t4, t6 = (hecke_matrix(k, n) for n in (2, 3, 4, 6))
        assert t2 @ t3 == t3 @ t2 == t6
        assert t4 == t2 @ t2 - IntMatrix.identity(t2.dim).scale(2 ** (k - 1))


@criterion(5)
def test_point_count_inequality_and_fast_path():
    rng = random.Random(102)
    primes = primes_between(2, 100)
    cases = auto = 0
    while cases < 1000:
        h = IntPoly([rng.randint(-10**4, 10**4) for _ in range(rng.randint(1, 8))] + [1])
        d = discriminant(h)
        if d == 0:
            continue
        p = rng.choice(primes)
        f = frobenius_distinct_roots(list(h.coeffs), p)
        nu = padic_valuation(d, p)
        assert f >= h.degree - nu
        r = corp_check(h, p)
        assert r.f == f
        if nu <= 1:
            assert f == h.degree - nu and r.good
            auto += 1
        cases += 1
    acceptance_notes.append(f"point-count inequality: {cases} cases, {auto} with v_p(disc) <= 1, no counterexample")


@criterion(5)
def test_bernoulli_agreement():
    for p in primes_between(7, 97):
        table = bernoulli_mod_p(p)
        for k in range(2, p - 2, 2):
            b = bernoulli_exact(k)
            assert table[k] == b.numerator * pow(b.denominator, -1, p) % p


@criterion(5)
def test_class_number_agreement():
    for p in primes_between(8, 499):
        if p % 4 == 3:
            assert class_number_neg_p(p) == dirichlet_class_number(p)


@criterion(6)
def test_congruence_rarity(sweep_rows):
    by_r, deficit = cli.congruence_stats(sweep_rows)
    violations = [
        (row.p, w.k, w.n_k - w.e_count)
        for row in sweep_rows
        for w in row.weights
        if w.p_good_r is not None and w.n_k - w.e_count >= 3
    ]
    total = sum(by_r.values())
    acceptance_notes.append(
        "p-good operator histogram (p <= %d): %s" % (SWEEP_P_MAX, " ".join(f"r={r}:{c}" for r, c in sorted(by_r.items())))
    )
    acceptance_notes.append("n_k - |E| histogram: " + " ".join(f"{t}:{c}" for t, c in sorted(deficit.items())))
    assert not violations, f"congruence rarity violated: {violations}"
    assert by_r[2] >= 0.95 * total


@criterion(7)
def test_ramanujan_691():
    b = bernoulli_exact(12)
    assert b.numerator == -691
    assert eisenstein_count(691, 12) == 1
    assert weight_census(691, 12).eis == 1
