"""Brute-force oracles written straight from the definitions.

None of these reuse the library's generators; they scan full boxes and
compare elements pairwise.
"""

import itertools
from fractions import Fraction
from pathlib import Path

import pytest

from cliffs.words import m_map, parse_range_map

GOLDEN = Path(__file__).parent / "golden"

VALLEY_FREE = ["m(0)", "m(1)", "m(2)", "seq[2,3];const(1)", "seq[];const(1)", "seq[];const(2)", "seq[1];const(3)"]
WITH_VALLEY = ["seq[0,1,3,1];const(2)", "seq[1,0];const(2)"]


def box(delta, n):
    return itertools.product(*(range(delta(i) + 1) for i in range(1, n + 1)))


def brute_is_avalanche(delta, u):
    return all(sum(u[:k]) <= delta(k) for k in range(1, len(u) + 1))


def brute_is_hill(delta, u):
    return all(u[i] <= u[i + 1] for i in range(len(u) - 1))


def brute_is_canyon(delta, u):
    n = len(u)
    for i in range(1, n + 1):
        for j in range(1, u[i - 1] + 1):
            if i - j >= 1 and not u[i - j - 1] <= u[i - 1] - j:
                return False
    return True


BRUTE = {"cliff": lambda d, u: True, "av": brute_is_avalanche, "hi": brute_is_hill, "ca": brute_is_canyon}


def brute_members(kind, delta, n):
    return sorted(u for u in box(delta, n) if BRUTE[kind](delta, u))


def brute_leq(u, v):
    return all(a <= b for a, b in zip(u, v))


def brute_covers(elements):
    out = set()
    for u in elements:
        for v in elements:
            if u != v and brute_leq(u, v):
                if not any(w not in (u, v) and brute_leq(u, w) and brute_leq(w, v) for w in elements):
                    out.add((u, v))
    return out


def brute_glb(elements, u, v):
    lower = [w for w in elements if brute_leq(w, u) and brute_leq(w, v)]
    best = [w for w in lower if all(brute_leq(x, w) for x in lower)]
    return best[0] if best else None


def brute_lub(elements, u, v):
    upper = [w for w in elements if brute_leq(u, w) and brute_leq(v, w)]
    best = [w for w in upper if all(brute_leq(w, x) for x in upper)]
    return best[0] if best else None


def brute_reduce(delta, w):
    return tuple(min(a, delta(i)) for i, a in enumerate(w, start=1))


def brute_product_support(delta, member, u, v):
    """Words ``u v'`` of the family with ``v'`` reducing to ``v``, scanning the whole box."""
    k = len(u)
    out = []
    for w in box(delta, k + len(v)):
        if w[:k] == tuple(u) and brute_reduce(delta, w[k:]) == tuple(v) and member(w):
            out.append(w)
    return out


def dense_rank(rows):
    """Rank over the rationals by textbook Gaussian elimination on Fractions."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def read_golden(name):
    elements, covers, section = [], [], None
    for line in (GOLDEN / f"{name}.txt").read_text().splitlines():
        if line.startswith("#"):
            section = line[2:]
        elif line.strip():
            (elements if section == "elements" else covers).append(line.split())
    word = lambda s: tuple(int(c) for c in s)
    return {word(e[0]) for e in elements}, {(word(a), word(b)) for a, b in covers}


@pytest.fixture(params=VALLEY_FREE)
def valley_free_delta(request):
    return parse_range_map(request.param)


@pytest.fixture(params=[1, 2])
def m(request):
    return request.param


@pytest.fixture
def m1():
    return m_map(1)
