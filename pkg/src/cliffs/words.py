"""Range maps, cliff words and the componentwise order.

A cliff is stored as a plain tuple of naturals.  Positions are 1-based in the
mathematical sense, so ``u[i - 1]`` is bounded by ``delta(i)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

Word = tuple[int, ...]

EPSILON: Word = ()


class CliffError(ValueError):
    """Domain error raised by the library (invalid words, broken preconditions)."""


class SizeGuardError(CliffError):
    """An enumeration would exceed the configured size guard."""

    def __init__(self, bound: int, guard: int):
        super().__init__(f"size bound {bound} exceeds guard {guard}")
        self.bound = bound
        self.guard = guard


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Affine:
    start: int
    step: int


@dataclass(frozen=True)
class Periodic:
    word: tuple[int, ...]

    def __post_init__(self):
        if not self.word:
            raise CliffError("periodic tail needs a nonempty word")


Tail = Union[Const, Affine, Periodic]


@dataclass(frozen=True)
class RangeMap:
    """A finitely presented map from positive integers to naturals.

    The first ``len(prefix)`` values are listed explicitly; the remaining ones
    come from ``tail``.
    """

    prefix: tuple[int, ...]
    tail: Tail

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(x) for x in self.prefix))
        values = list(self.prefix)
        if isinstance(self.tail, Const):
            values.append(self.tail.value)
        elif isinstance(self.tail, Affine):
            values += [self.tail.start, self.tail.step]
        else:
            values += list(self.tail.word)
        if any(v < 0 for v in values):
            raise CliffError("range maps take natural values")

    def __call__(self, i: int) -> int:
        if i < 1:
            raise CliffError(f"range maps are defined on positive integers, got {i}")
        k = len(self.prefix)
        if i <= k:
            return self.prefix[i - 1]
        t = self.tail
        if isinstance(t, Const):
            return t.value
        if isinstance(t, Affine):
            return t.start + t.step * (i - k - 1)
        return t.word[(i - k - 1) % len(t.word)]

    @lru_cache(maxsize=None)
    def values(self, n: int) -> tuple[int, ...]:
        """The tuple ``(delta(1), ..., delta(n))``."""
        return tuple(self(i) for i in range(1, n + 1))

    @property
    def period(self) -> int:
        return len(self.tail.word) if isinstance(self.tail, Periodic) else 1

    def min_horizon(self) -> int:
        return len(self.prefix) + 2 * self.period

    def __str__(self) -> str:
        t = self.tail
        if not self.prefix and isinstance(t, Affine) and t.start == 0:
            return f"m({t.step})"
        head = "seq[" + ",".join(map(str, self.prefix)) + "]"
        if isinstance(t, Const):
            return f"{head};const({t.value})"
        if isinstance(t, Affine):
            return f"{head};affine({t.start},{t.step})"
        return f"{head};periodic[" + ",".join(map(str, t.word)) + "]"


def m_map(m: int) -> RangeMap:
    """The range map ``0, m, 2m, 3m, ...``."""
    if m < 0:
        raise CliffError("m must be a natural number")
    return RangeMap((), Affine(0, m))


_NUMS = r"\s*(\d+(?:\s*,\s*\d+)*)?\s*"
_M_RE = re.compile(r"^m\(\s*(\d+)\s*\)$")
_SEQ_RE = re.compile(r"^seq\[" + _NUMS + r"\]\s*;\s*(.*)$")
_CONST_RE = re.compile(r"^const\(\s*(\d+)\s*\)$")
_AFFINE_RE = re.compile(r"^affine\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_PERIODIC_RE = re.compile(r"^periodic\[" + _NUMS + r"\]$")


def _nums(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def parse_range_map(text: str) -> RangeMap:
    """Parse ``m(k)`` or ``seq[...];const(c)|affine(a,b)|periodic[...]``."""
    s = text.strip()
    if mo := _M_RE.match(s):
        return m_map(int(mo.group(1)))
    mo = _SEQ_RE.match(s)
    if not mo:
        # a bare tail is accepted as an empty prefix
        mo = _SEQ_RE.match("seq[];" + s)
        if not mo:
            raise CliffError(f"cannot parse range map {text!r}")
    prefix = _nums(mo.group(1))
    tail_text = mo.group(2).strip()
    if tm := _CONST_RE.match(tail_text):
        return RangeMap(prefix, Const(int(tm.group(1))))
    if tm := _AFFINE_RE.match(tail_text):
        return RangeMap(prefix, Affine(int(tm.group(1)), int(tm.group(2))))
    if tm := _PERIODIC_RE.match(tail_text):
        word = _nums(tm.group(1))
        if not word:
            raise CliffError("periodic tail needs a nonempty word")
        return RangeMap(prefix, Periodic(word))
    raise CliffError(f"cannot parse range map tail {tail_text!r}")


# -- words ------------------------------------------------------------------


def format_word(u: Sequence[int]) -> str:
    return ",".join(map(str, u)) if len(u) else "eps"


def format_compact(u: Sequence[int]) -> str:
    """Digit-string form used in the literature; only unambiguous below 10."""
    if not len(u):
        return "eps"
    if any(a > 9 for a in u):
        return format_word(u)
    return "".join(map(str, u))


def parse_word(text: str) -> Word:
    s = text.strip()
    if s in ("eps", "ε", ""):
        return EPSILON
    try:
        letters = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise CliffError(f"cannot parse word {text!r}") from None
    if any(a < 0 for a in letters):
        raise CliffError(f"letters must be natural numbers: {text!r}")
    return letters


def is_cliff(delta: RangeMap, u: Sequence[int]) -> bool:
    bounds = delta.values(len(u))
    return all(0 <= a <= b for a, b in zip(u, bounds))


def cliff(delta: RangeMap, letters: Iterable[int]) -> Word:
    """Validate ``letters`` against ``delta`` and return the word."""
    u = tuple(letters)
    if not is_cliff(delta, u):
        raise CliffError(f"{format_word(u)} is not a cliff for {delta}")
    return u


def weight(u: Sequence[int]) -> int:
    return sum(u)


def all_cliffs(delta: RangeMap, n: int) -> Iterator[Word]:
    """Every cliff of size ``n``, in lexicographic order."""
    return itertools.product(*(range(b + 1) for b in delta.values(n)))


def box_size(delta: RangeMap, n: int) -> int:
    size = 1
    for b in delta.values(n):
        size *= b + 1
    return size


# -- range map predicates -----------------------------------------------------


class RangeMapClass(NamedTuple):
    weakly_increasing: bool
    increasing: bool
    valley_free: bool
    j_dominated: bool


def _has_valley(values: Sequence[int]) -> bool:
    descended = False
    for a, b in zip(values, values[1:]):
        if a > b:
            descended = True
        elif a < b and descended:
            return True
    return False


def _tail_shape(delta: RangeMap) -> str:
    t = delta.tail
    if isinstance(t, Const):
        return "flat"
    if isinstance(t, Affine):
        return "rising" if t.step > 0 else "flat"
    return "flat" if len(set(t.word)) == 1 else "cycling"


def classify_range_map(delta: RangeMap, j: int = 1, horizon: int | None = None) -> RangeMapClass:
    """Decide the order-theoretic predicates of ``delta`` exactly.

    The explicit window ``delta(1..horizon)`` is scanned; the tail beyond it is
    handled analytically (flat, strictly rising, or genuinely periodic).
    """
    need = delta.min_horizon()
    if horizon is None:
        horizon = need
    if horizon < need:
        raise CliffError(f"horizon {horizon} too small for {delta}; need at least {need}")
    if j < 1:
        raise CliffError("j must be at least 1")
    window = delta.values(max(horizon, j))
    head = window[: len(delta.prefix) + 1]
    shape = _tail_shape(delta)
    pairs = list(zip(window, window[1:]))
    weakly = shape != "cycling" and all(a <= b for a, b in pairs)
    strictly = shape == "rising" and all(a < b for a, b in pairs)
    if shape == "cycling":
        valley_free = False
    elif shape == "rising":
        # the tail is unbounded, so any earlier descent ends in a valley
        valley_free = all(a <= b for a, b in zip(head, head[1:]))
    else:
        valley_free = not _has_valley(window)
    dj = delta(j)
    if shape == "rising":
        dominated = False
    elif shape == "cycling":
        dominated = dj >= max(delta.tail.word)
    else:
        dominated = dj >= delta(len(delta.prefix) + 1)
    return RangeMapClass(weakly, strictly, valley_free, dominated)


# -- reduction and order --------------------------------------------------------


def reduce(delta: RangeMap, u: Sequence[int]) -> Word:
    """Letterwise ``min(u_i, delta(i))``."""
    return tuple(min(a, b) for a, b in zip(u, delta.values(len(u))))


def fiber_ranges(delta: RangeMap, v: Sequence[int], bounds: Sequence[int]) -> list[range]:
    """Per-letter choices of the reduction fiber of ``v`` capped by ``bounds``."""
    if len(bounds) != len(v):
        raise CliffError("bounds must have the length of the word")
    out = []
    for a, d, cap in zip(v, delta.values(len(v)), bounds):
        if a < d:
            out.append(range(a, a + 1) if a <= cap else range(0))
        else:
            out.append(range(d, cap + 1))
    return out


def reduction_fiber(delta: RangeMap, v: Sequence[int], bounds: Sequence[int]) -> set[Word]:
    """Words ``w`` with ``reduce(delta, w) == v`` and ``w <= bounds`` letterwise."""
    return set(itertools.product(*fiber_ranges(delta, v, bounds)))


def _same_size(u: Sequence[int], v: Sequence[int]) -> None:
    if len(u) != len(v):
        raise CliffError(f"size mismatch: {format_word(u)} vs {format_word(v)}")


def leq(u: Sequence[int], v: Sequence[int]) -> bool:
    _same_size(u, v)
    return all(a <= b for a, b in zip(u, v))


def componentwise_meet_join(u: Sequence[int], v: Sequence[int]) -> tuple[Word, Word]:
    _same_size(u, v)
    return (
        tuple(min(a, b) for a, b in zip(u, v)),
        tuple(max(a, b) for a, b in zip(u, v)),
    )
