"""Reference table of (p, L(p), U(p), exactness, (U-L)/p^2) for 11 <= p <= 1999."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .census import truncated_ratio


@dataclass(frozen=True)
class ReferenceRow:
    p: int
    L: int
    U: int
    exact: bool
    ratio: str


class ReferenceTable:
    """Transcribed rows plus the set of rows known to disagree with the U formula.

    Every printed row with ``p = 7 mod 12`` carries a U larger than
    ``(p - 1) * sum dim S_k``; those rows are annotated rather than trusted.
    """

    def __init__(self, rows):
        self.rows = {r.p: r for r in rows}
        for r in self.rows.values():
            if truncated_ratio(r.U - r.L, r.p * r.p) != r.ratio:
                raise AssertionError(f"ratio column inconsistent for p={r.p}")
        self.known_discrepancies = frozenset(p for p in self.rows if p % 12 == 7)

    def __contains__(self, p):
        return p in self.rows

    def __getitem__(self, p):
        return self.rows[p]

    def __len__(self):
        return len(self.rows)

    def primes(self, p_max=None):
        return sorted(p for p in self.rows if p_max is None or p <= p_max)


@lru_cache(maxsize=1)
def reference_table():
    text = resources.files("modpcensus").joinpath("data/reference_table.csv").read_text()
    rows = [
        ReferenceRow(int(r["p"]), int(r["L"]), int(r["U"]), r["exact"] == "*", r["ratio"])
        for r in csv.DictReader(io.StringIO(text))
    ]
    return ReferenceTable(rows)
