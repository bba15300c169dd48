"""Command line front end: ``census run``, ``census verify``, ``census cache-warm``."""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import kernels
from .census import DEFAULT_ELLS, DEFAULT_R_MAX, prime_census
from .intpoly import CharpolyCache, default_cache
from .numth import is_small_prime, primes_between
from .qseries import dim_cusp
from .reference import reference_table

log = logging.getLogger("modpcensus")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

# Sweeps beyond this need --long-run (exact charpolys get expensive quickly).
LONG_RUN_THRESHOLD = 300
TABLE_P_MAX = 1999


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    p_min: int = 11
    p_max: int = 113
    r_max: int = DEFAULT_R_MAX
    ell_candidates: tuple = DEFAULT_ELLS
    cache_dir: Path | None = None
    output: Path | None = None
    format: str = "csv"
    jobs: int = 1
    long_run: bool = False
    nonresidues: int = 1

    def validate(self):
        if self.p_min < 11:
            raise ConfigError(f"--p-min must be at least 11, got {self.p_min}")
        if self.r_max < 3:
            raise ConfigError(f"--r-max must be at least 3, got {self.r_max}")
        if not self.ell_candidates:
            raise ConfigError("--ell needs at least one prime")
        bad = [e for e in self.ell_candidates if not is_small_prime(e)]
        if bad:
            raise ConfigError(f"--ell entries must be primes: {bad}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise ConfigError("--jobs must be positive")
        if self.p_max > LONG_RUN_THRESHOLD and not self.long_run:
            raise ConfigError(f"p_max > {LONG_RUN_THRESHOLD} is a long batch job; pass --long-run")

    def primes(self):
        return primes_between(self.p_min, self.p_max)


_worker_cache = None


def _init_worker(cache_dir):
    global _worker_cache
    _worker_cache = CharpolyCache(cache_dir) if cache_dir else default_cache


def _census_one(args):
    p, r_max, ells, nonresidues = args
    return prime_census(p, r_max=r_max, ells=ells, nonresidues=nonresidues, cache=_worker_cache)


def sweep(config):
    """Census rows for every prime in the configured range, ascending."""
    args = [(p, config.r_max, tuple(config.ell_candidates), config.nonresidues) for p in config.primes()]
    if config.jobs == 1 or len(args) <= 1:
        _init_worker(config.cache_dir)
        return [_census_one(a) for a in args]
    with ProcessPoolExecutor(
        max_workers=config.jobs, initializer=_init_worker, initargs=(config.cache_dir,)
    ) as pool:
        return list(pool.map(_census_one, args))


def format_csv(rows):
    out = io.StringIO()
    out.write("p,L,U,exact,ratio\n")
    for r in rows:
        out.write(f"{r.p},{r.L},{r.U},{'*' if r.exact else ''},{r.ratio}\n")
    return out.getvalue()


def format_json(rows):
    return json.dumps([r.as_dict() for r in rows], indent=2) + "\n"


def congruence_stats(rows):
    """Histograms of the certifying ``r`` and of ``n_k - |E(p,k)|`` over p-good weights."""
    by_r = Counter()
    deficit = Counter()
    for row in rows:
        for w in row.weights:
            if w.p_good_r is not None:
                by_r[w.p_good_r] += 1
                deficit[w.n_k - w.e_count] += 1
    return by_r, deficit


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def cmd_run(config):
    rows = sweep(config)
    text = format_csv(rows) if config.format == "csv" else format_json(rows)
    _emit(text, config.output)
    return EXIT_OK


def verify_rows(rows, table=None):
    """Compare census rows to the reference table.

    Returns ``(lines, failures)``; a row disagreeing with the table counts
    as a failure unless it is an annotated known discrepancy.
    """
    table = table or reference_table()
    lines = []
    failures = 0
    for r in rows:
        if r.p not in table:
            lines.append(f"SKIP p={r.p} (not in reference table)")
            continue
        ref = table[r.p]
        got = (r.L, r.U, r.exact, r.ratio)
        want = (ref.L, ref.U, ref.exact, ref.ratio)
        mine = f"L={r.L} U={r.U} exact={'*' if r.exact else '-'} ratio={r.ratio}"
        theirs = f"L={ref.L} U={ref.U} exact={'*' if ref.exact else '-'} ratio={ref.ratio}"
        if got == want:
            lines.append(f"PASS p={r.p} {mine}")
        elif r.p in table.known_discrepancies:
            lines.append(f"KNOWN-DISCREPANCY p={r.p} computed {mine} | table {theirs}")
        else:
            failures += 1
            lines.append(f"FAIL p={r.p} computed {mine} | table {theirs}")
    return lines, failures


def cmd_verify(config):
    if config.p_max > TABLE_P_MAX:
        raise ConfigError(f"the reference table stops at p={TABLE_P_MAX}")
    rows = sweep(config)
    lines, failures = verify_rows(rows)
    by_r, deficit = congruence_stats(rows)
    lines.append("p-good operator histogram: " + " ".join(f"r={r}:{c}" for r, c in sorted(by_r.items())))
    lines.append(
        "n_k - |E(p,k)| histogram: " + " ".join(f"{t}:{c}" for t, c in sorted(deficit.items()))
    )
    known = sum(1 for line in lines if line.startswith("KNOWN-DISCREPANCY"))
    passed = sum(1 for line in lines if line.startswith("PASS"))
    lines.append(f"summary: {passed} pass, {known} known-discrepancy, {failures} fail")
    _emit("\n".join(lines) + "\n", config.output)
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def cache_warm(k_max, r_max, cache_dir):
    """Precompute charpolys of ``T_r`` for ``2 <= r < r_max`` on every nonzero weight ``<= k_max``.

    Returns the number of new cache files written.
    """
    cache = CharpolyCache(cache_dir)
    written = 0
    for k in range(12, k_max + 1, 2):
        if dim_cusp(k) == 0:
            continue
        for r in range(2, r_max):
            if cache.contains_on_disk(k, r):
                continue
            cache.get(k, r)
            written += 1
    return written


def _ells(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of primes, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="census", description="Count mod p eigensystems of level one cusp forms."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def sweep_options(sp, need_min):
        if need_min:
            sp.add_argument("--p-min", type=int, required=True)
        sp.add_argument("--p-max", type=int, required=True)
        sp.add_argument("--r-max", type=int, default=DEFAULT_R_MAX)
        sp.add_argument("--ell", type=_ells, default=DEFAULT_ELLS, help="ell candidates, e.g. 2,3")
        sp.add_argument("--nonresidues", type=int, default=1,
                        help="how many nonresidue primes to try at the self-paired weights")
        sp.add_argument("--cache", type=Path, default=None, help="charpoly cache directory")
        sp.add_argument("--out", type=Path, default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--long-run", action="store_true")

    run = sub.add_parser("run", help="census over a prime range")
    sweep_options(run, need_min=True)
    run.add_argument("--format", choices=("csv", "json"), default="csv")

    ver = sub.add_parser("verify", help="compare the census with the reference table")
    sweep_options(ver, need_min=False)

    warm = sub.add_parser("cache-warm", help="precompute Hecke charpolys")
    warm.add_argument("--k-max", type=int, required=True)
    warm.add_argument("--r-max", type=int, required=True)
    warm.add_argument("--cache", type=Path, required=True)
    return parser


def _config(ns):
    return RunConfig(
        p_min=getattr(ns, "p_min", 11),
        p_max=ns.p_max,
        r_max=ns.r_max,
        ell_candidates=ns.ell,
        cache_dir=ns.cache,
        output=ns.out,
        format=getattr(ns, "format", "csv"),
        jobs=ns.jobs,
        long_run=ns.long_run,
        nonresidues=ns.nonresidues,
    )


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    log.info("kernel backend: %s", kernels.BACKEND)
    try:
        if ns.command == "cache-warm":
            n = cache_warm(ns.k_max, ns.r_max, ns.cache)
            print(n)
            return EXIT_OK
        config = _config(ns)
        config.validate()
        if ns.command == "run":
            return cmd_run(config)
        return cmd_verify(config)
    except ConfigError as exc:
        print(f"census: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"census: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
