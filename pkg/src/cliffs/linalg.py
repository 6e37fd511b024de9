"""Exact rank of sparse integer matrices by fraction-free elimination."""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: c // g for k, c in row.items()}
    return row


class SparseEchelon:
    """Rows in echelon form over the integers, keyed by their leading column.

    Adding a row reduces it against the stored pivots with integer
    combinations ``a * row - b * pivot`` followed by division by the content,
    so entries stay small and no rationals are ever formed.  Rank over the
    integers equals rank over the rationals.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Mapping[int, int]) -> bool:
        """Insert a row; True when it was independent of the previous ones."""
        row = {k: c for k, c in row.items() if c}
        pivots = self.pivots
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _primitive(row)
                return True
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * c for k, c in row.items()} if a != 1 else dict(row)
            for k, c in piv.items():
                v = new.get(k, 0) - b * c
                if v:
                    new[k] = v
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return False

    def extend(self, rows: Iterable[Mapping[int, int]]) -> int:
        return sum(1 for r in rows if self.add(r))

    def pivot_columns(self) -> set[int]:
        return set(self.pivots)


def rank(rows: Iterable[Mapping[int, int]]) -> int:
    ech = SparseEchelon()
    ech.extend(rows)
    return ech.rank
