"""Avalanches, hills and canyons, their counts, and the maps between them."""

from __future__ import annotations

import csv
import enum
import io
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .posets import GradedSubset, build_poset, elevation, elevation_inverse
from .words import CliffError, RangeMap, Word, classify_range_map, format_word, is_cliff, m_map


class FamilyKind(enum.Enum):
    CLIFF = "cliff"
    AVALANCHE = "av"
    HILL = "hi"
    CANYON = "ca"

    @classmethod
    def parse(cls, text: str) -> "FamilyKind":
        aliases = {"cl": cls.CLIFF, "cliff": cls.CLIFF, "av": cls.AVALANCHE, "avalanche": cls.AVALANCHE,
                   "hi": cls.HILL, "hill": cls.HILL, "ca": cls.CANYON, "canyon": cls.CANYON}
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise CliffError(f"unknown family {text!r}") from None

    @property
    def short(self) -> str:
        return {"cliff": "Cl", "av": "Av", "hi": "Hi", "ca": "Ca"}[self.value]


def is_avalanche(delta: RangeMap, u: Sequence[int]) -> bool:
    total = 0
    for i, a in enumerate(u, start=1):
        total += a
        if total > delta(i):
            return False
    return True


def is_hill(delta: RangeMap, u: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, u[1:]))


def _canyon_ok(prefix: Sequence[int], a: int) -> bool:
    # letter a at position i = len(prefix) + 1 forces u_{i-j} <= a - j for j in [1, a]
    i = len(prefix) + 1
    return all(prefix[i - j - 1] <= a - j for j in range(1, min(a, i - 1) + 1))


def is_canyon(delta: RangeMap, u: Sequence[int]) -> bool:
    return all(_canyon_ok(u[:k], u[k]) for k in range(len(u)))


def family(kind: FamilyKind | str, delta: RangeMap) -> GradedSubset:
    """The graded subset of ``Cl_delta`` selected by ``kind``.

    Instances are shared, so enumerated levels are computed once per process.
    """
    if isinstance(kind, str):
        kind = FamilyKind.parse(kind)
    return _family(kind, delta)


@lru_cache(maxsize=None)
def _family(kind: FamilyKind, delta: RangeMap) -> GradedSubset:
    name = f"{kind.short}_{delta}"
    key = (kind, delta)
    if kind is FamilyKind.CLIFF:
        return GradedSubset(delta, lambda u: True, name=name, key=key, accepts=lambda p, a: True)
    if kind is FamilyKind.AVALANCHE:
        return GradedSubset(delta, lambda u: is_avalanche(delta, u), name=name, key=key,
                            accepts=lambda p, a: sum(p) + a <= delta(len(p) + 1))
    if kind is FamilyKind.HILL:
        return GradedSubset(delta, lambda u: is_hill(delta, u), name=name, key=key,
                            accepts=lambda p, a: not p or p[-1] <= a)
    return GradedSubset(delta, lambda u: is_canyon(delta, u), name=name, key=key, accepts=_canyon_ok)


def cliffs(delta: RangeMap) -> GradedSubset:
    return family(FamilyKind.CLIFF, delta)


def avalanches(delta: RangeMap) -> GradedSubset:
    return family(FamilyKind.AVALANCHE, delta)


def hills(delta: RangeMap) -> GradedSubset:
    return family(FamilyKind.HILL, delta)


def canyons(delta: RangeMap) -> GradedSubset:
    return family(FamilyKind.CANYON, delta)


def enumerate_family(kind: FamilyKind | str, delta: RangeMap, n: int) -> list[Word]:
    """Members of size ``n`` in lexicographic order, built by prefix extension."""
    return list(family(kind, delta).level(n))


def fuss_catalan(m: int, n: int) -> int:
    return comb(m * n + n, n) // (m * n + 1)


def avalanche_maximal_elements(m: int, n: int) -> set[Word]:
    """Avalanches of weight ``m(n - 1)``; cross-checked against the poset maxima."""
    S = avalanches(m_map(m))
    heavy = {u for u in S.level(n) if sum(u) == m * (n - 1)} if n else {()}
    if heavy != set(build_poset(S, n).maximal()):
        raise AssertionError("weight characterisation disagrees with poset maxima")
    return heavy


def cardinality_table_csv(rows: Iterable[tuple[str, int, int, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "m", "n", "count"])
    for row in sorted(rows):
        writer.writerow(row)
    return buf.getvalue()


def cardinality_rows(kinds: Iterable[FamilyKind], ms: Iterable[int], n_max: int) -> list[tuple[str, int, int, int]]:
    rows = []
    for kind in kinds:
        for m in ms:
            S = family(kind, m_map(m))
            rows += [(kind.value, m, n, len(S.level(n))) for n in range(n_max + 1)]
    return rows


# -- permutations -----------------------------------------------------------------------


def _check_permutation(sigma: Sequence[int]) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise CliffError(f"{sigma} is not a permutation of 1..{len(sigma)}")
    return sigma


def lehmer_code(sigma: Sequence[int]) -> Word:
    """For each value ``i``, the number of smaller values written to its right.

    The result is a 1-cliff; the componentwise order on codes extends the right
    weak order.
    """
    sigma = _check_permutation(sigma)
    pos = {v: k for k, v in enumerate(sigma)}
    return tuple(sum(1 for j in range(1, i) if pos[j] > pos[i]) for i in range(1, len(sigma) + 1))


def lehmer_decode(code: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`lehmer_code`."""
    code = tuple(code)
    if not is_cliff(m_map(1), code):
        raise CliffError(f"{format_word(code)} is not a Lehmer code")
    # insert values 1..n left to right; value i goes c_i places from the right end
    # among the values placed so far
    word: list[int] = []
    for i, c in enumerate(code, start=1):
        word.insert(len(word) - c, i)
    return tuple(word)


def inversions(sigma: Sequence[int]) -> set[tuple[int, int]]:
    """Value pairs ``(a, b)``, ``a < b``, with ``b`` written before ``a``."""
    sigma = _check_permutation(sigma)
    return {(sigma[j], sigma[i]) for i in range(len(sigma)) for j in range(i + 1, len(sigma)) if sigma[i] > sigma[j]}


def weak_order_leq(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    if len(sigma) != len(tau):
        raise CliffError("permutations of different sizes")
    return inversions(sigma) <= inversions(tau)


# -- wing isomorphisms -----------------------------------------------------------------


def is_output_wing_of_hills(m: int, u: Sequence[int]) -> bool:
    delta = m_map(m)
    return (
        is_cliff(delta, u)
        and all(a <= b if i == 0 else a < b for i, (a, b) in enumerate(zip(u, u[1:])))
        and all(u[i - 1] < delta(i) for i in range(2, len(u) + 1))
    )


def is_input_wing_of_canyons(m: int, u: Sequence[int]) -> bool:
    return is_cliff(m_map(m), u) and all(a < b for a, b in zip(u, u[1:]))


def is_butterfly_of_canyons(m: int, u: Sequence[int]) -> bool:
    delta = m_map(m)
    return (
        is_cliff(delta, u)
        and all(1 <= u[i - 1] < delta(i) for i in range(2, len(u) + 1))
        and all(u[i - 1] - u[i - 2] >= 2 for i in range(3, len(u) + 1))
    )


def phi(m: int, u: Sequence[int]) -> Word:
    """Output-wings of ``Hi_m`` onto ``Hi_(m-1)``."""
    if m < 1 or not is_output_wing_of_hills(m, u):
        raise CliffError(f"{format_word(tuple(u))} is not an output-wing of Hi_{m}")
    return tuple(0 if i == 1 else a - i + 2 for i, a in enumerate(u, start=1))


def phi_inverse(m: int, w: Sequence[int]) -> Word:
    if not is_hill(m_map(m - 1), w) or not is_cliff(m_map(m - 1), w):
        raise CliffError(f"{format_word(tuple(w))} is not in Hi_{m - 1}")
    return tuple(0 if i == 1 else a + i - 2 for i, a in enumerate(w, start=1))


def psi(m: int, u: Sequence[int]) -> Word:
    """Input-wings of ``Ca_m`` onto ``Hi_(m-1)``."""
    if m < 1 or not is_input_wing_of_canyons(m, u):
        raise CliffError(f"{format_word(tuple(u))} is not an input-wing of Ca_{m}")
    return tuple(a - i + 1 for i, a in enumerate(u, start=1))


def psi_inverse(m: int, w: Sequence[int]) -> Word:
    if not is_hill(m_map(m - 1), w) or not is_cliff(m_map(m - 1), w):
        raise CliffError(f"{format_word(tuple(w))} is not in Hi_{m - 1}")
    return tuple(a + i - 1 for i, a in enumerate(w, start=1))


def theta(m: int, u: Sequence[int]) -> Word:
    """Input-wings of ``Ca_m`` onto the butterflies of ``Ca_(m+1)``.

    Letter ``i >= 2`` becomes ``u_i + i - 2``; the first letter becomes 0.
    """
    if m < 1 or not is_input_wing_of_canyons(m, u):
        raise CliffError(f"{format_word(tuple(u))} is not an input-wing of Ca_{m}")
    return tuple(0 if i == 1 else a + i - 2 for i, a in enumerate(u, start=1))


def theta_inverse(m: int, w: Sequence[int]) -> Word:
    if not is_butterfly_of_canyons(m + 1, w):
        raise CliffError(f"{format_word(tuple(w))} is not a butterfly of Ca_{m + 1}")
    return tuple(0 if i == 1 else a - i + 2 for i, a in enumerate(w, start=1))


def canyon_to_hill(delta: RangeMap, u: Sequence[int]) -> Word:
    """Canyon elevation followed by inverse hill elevation."""
    if not classify_range_map(delta).increasing:
        raise CliffError(f"{delta} is not increasing")
    return elevation_inverse(hills(delta), elevation(canyons(delta), u))


def avalanche_to_canyon(delta: RangeMap, w: Sequence[int]) -> Word:
    if not classify_range_map(delta).increasing:
        raise CliffError(f"{delta} is not increasing")
    return elevation_inverse(canyons(delta), w)


def avalanche_to_hill(delta: RangeMap, w: Sequence[int]) -> Word:
    return elevation_inverse(hills(delta), w)
