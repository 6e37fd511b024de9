"""Cliff algebras on the F, E and H bases, their primes, and quotient algebras.

Coefficients are exact ``Fraction`` values throughout.
"""

from __future__ import annotations

import csv
import io
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

from .families import FamilyKind, cliffs, family
from .linalg import SparseEchelon
from .posets import GradedSubset
from .words import (
    CliffError,
    RangeMap,
    Word,
    classify_range_map,
    fiber_ranges,
    format_word,
    is_cliff,
    m_map,
    parse_word,
    reduce,
)

BASES = ("F", "E", "H")


def over(delta: RangeMap, u: Sequence[int], v: Sequence[int]) -> Optional[Word]:
    """The concatenation ``uv`` when it is still a cliff, else None."""
    w = tuple(u) + tuple(v)
    return w if is_cliff(delta, w) else None


def under(delta: RangeMap, u: Sequence[int], v: Sequence[int]) -> Word:
    """``u`` followed by ``v`` with every saturated letter lifted to its new bound."""
    k = len(u)
    return tuple(u) + tuple(
        delta(k + i) if a == delta(i) else a for i, a in enumerate(v, start=1)
    )


def product_interval_form(delta: RangeMap, u: Sequence[int], v: Sequence[int]) -> Optional[tuple[Word, Word]]:
    lo = over(delta, u, v)
    return None if lo is None else (lo, under(delta, u, v))


def _sort_key(w: Word):
    return (len(w), w)


class CliffAlgebra:
    """The algebra spanned by a graded subset ``S`` of ``Cl_delta``.

    With ``S`` the whole of ``Cl_delta`` this is the cliff algebra itself;
    otherwise it is the quotient by the span of the cliffs outside ``S``, whose
    product is the full product with the outside terms dropped.
    """

    def __init__(self, delta: RangeMap, subset: Optional[GradedSubset] = None):
        self.delta = delta
        self.subset = cliffs(delta) if subset is None else subset
        if self.subset.delta != delta:
            raise CliffError("subset lives over a different range map")
        self.is_full = self.subset == cliffs(delta)
        self._supports: dict[tuple[Word, Word], tuple[Word, ...]] = {}

    @classmethod
    def of_family(cls, kind: FamilyKind | str, m: int) -> "CliffAlgebra":
        delta = m_map(m)
        return cls(delta, family(kind, delta))

    @property
    def name(self) -> str:
        return f"Cl_{self.delta}" if self.is_full else self.subset.name

    def __eq__(self, other):
        return isinstance(other, CliffAlgebra) and self.delta == other.delta and self.subset == other.subset

    def __hash__(self):
        return hash((self.delta, self.subset))

    def __repr__(self):
        return f"<CliffAlgebra {self.name}>"

    def basis(self, n: int) -> tuple[Word, ...]:
        return self.subset.level(n)

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def _member(self, u) -> Word:
        u = tuple(u)
        if u not in self.subset:
            raise CliffError(f"{format_word(u)} is not a basis index of {self.name}")
        return u

    def F(self, u: Sequence[int]) -> "Element":
        return Element(self, "F", {self._member(u): 1})

    def E(self, u: Sequence[int]) -> "Element":
        self._require_full("E")
        return Element(self, "E", {self._member(u): 1})

    def H(self, u: Sequence[int]) -> "Element":
        self._require_full("H")
        return Element(self, "H", {self._member(u): 1})

    def one(self) -> "Element":
        return self.F(())

    def zero(self, basis: str = "F") -> "Element":
        return Element(self, basis, {})

    def _require_full(self, basis: str) -> None:
        if not self.is_full:
            raise CliffError(f"the {basis}-basis is only defined on the full cliff algebra")

    def product_support(self, u: Word, v: Word) -> tuple[Word, ...]:
        """Support of ``F_u . F_v`` (all coefficients are 1), lexicographic."""
        key = (u, v)
        hit = self._supports.get(key)
        if hit is not None:
            return hit
        delta, S = self.delta, self.subset
        k = len(u)
        ranges = fiber_ranges(delta, v, delta.values(k + len(v))[k:])
        if S.prefix_closed:
            words = [u]
            for r in ranges:
                words = [w + (a,) for w in words for a in r if S.accepts(w, a)]
        else:
            words = [u + tail for tail in itertools.product(*ranges)]
            words = [w for w in words if w in S]
        out = tuple(words)
        self._supports[key] = out
        return out

    def interval(self, lo: Word, hi: Word) -> list[Word]:
        """Members ``w`` of ``S`` with ``lo <= w <= hi``."""
        S = self.subset
        words: list[Word] = [()]
        for a, b in zip(lo, hi):
            words = [w + (c,) for w in words for c in range(a, b + 1) if S.accepts(w, c)]
        if not S.prefix_closed:
            words = [w for w in words if w in S]
        return words

    # -- products on each basis -----------------------------------------------------

    def _mul_F(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                for w in self.product_support(u, v):
                    out[w] = out.get(w, 0) + a * b
        return out

    def _mul_E(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                w = over(self.delta, u, v)
                if w is not None:
                    out[w] = out.get(w, 0) + a * b
        return out

    def _mul_H(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                w = reduce(self.delta, under(self.delta, u, v))
                out[w] = out.get(w, 0) + a * b
        return out

    def product(self, x: "Element", y: "Element") -> "Element":
        if x.algebra != self or y.algebra != self:
            raise CliffError("elements belong to different algebras")
        y = y.to_basis(x.basis)
        mul = {"F": self._mul_F, "E": self._mul_E, "H": self._mul_H}[x.basis]
        return Element(self, x.basis, mul(x.terms, y.terms))

    # -- basis changes (full algebra only) ----------------------------------------------

    def _expand(self, basis: str, u: Word) -> dict:
        """``E_u`` or ``H_u`` written on the F-basis."""
        bounds = self.delta.values(len(u))
        if basis == "E":
            ranges = [range(a, b + 1) for a, b in zip(u, bounds)]
        else:
            ranges = [range(0, a + 1) for a in u]
        return {w: 1 for w in itertools.product(*ranges)}

    def _invert(self, basis: str, u: Word) -> dict:
        """``F_u`` written on the E- or H-basis (Moebius inversion on the box)."""
        bounds = self.delta.values(len(u))
        if basis == "E":
            free = [i for i, (a, b) in enumerate(zip(u, bounds)) if a < b]
            step = 1
        else:
            free = [i for i, a in enumerate(u) if a > 0]
            step = -1
        out = {}
        for r in range(len(free) + 1):
            for chosen in itertools.combinations(free, r):
                w = list(u)
                for i in chosen:
                    w[i] += step
                out[tuple(w)] = (-1) ** r
        return out

    def change_basis(self, terms: dict, source: str, target: str) -> dict:
        if source == target:
            return dict(terms)
        self._require_full(source if source != "F" else target)
        if source != "F":
            f_terms: dict = {}
            for u, c in terms.items():
                for w, k in self._expand(source, u).items():
                    f_terms[w] = f_terms.get(w, 0) + c * k
            terms = f_terms
        if target == "F":
            return terms
        out: dict = {}
        for u, c in terms.items():
            for w, k in self._invert(target, u).items():
                out[w] = out.get(w, 0) + c * k
        return out


class Element:
    """A finite linear combination of basis elements with rational coefficients."""

    __slots__ = ("algebra", "basis", "terms")

    def __init__(self, algebra: CliffAlgebra, basis: str, terms: dict):
        if basis not in BASES:
            raise CliffError(f"unknown basis {basis!r}")
        self.algebra = algebra
        self.basis = basis
        self.terms = {tuple(u): Fraction(c) for u, c in terms.items() if c}

    def to_basis(self, target: str) -> "Element":
        if target == self.basis:
            return self
        return Element(self.algebra, target, self.algebra.change_basis(self.terms, self.basis, target))

    def support(self) -> list[Word]:
        return sorted(self.terms, key=_sort_key)

    def degrees(self) -> set[int]:
        return {len(u) for u in self.terms}

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra != self.algebra:
                raise CliffError("elements belong to different algebras")
            return other.to_basis(self.basis)
        if other == 0:
            return Element(self.algebra, self.basis, {})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for u, c in other.terms.items():
            out[u] = out.get(u, 0) + c
        return Element(self.algebra, self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, self.basis, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.product(self, other)
        if isinstance(other, (int, Rational)):
            return Element(self.algebra, self.basis, {u: c * other for u, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Element) and other.algebra != self.algebra:
            return False
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.to_basis("F").terms == other.to_basis("F").terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.to_basis("F").terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{self.terms[u]}*{self.basis}_{format_word(u)}" for u in self.support())

    def __repr__(self):
        return f"<{self.algebra.name}: {self}>"


_TERM_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\*([FEH])_(\S+)\s*$")


def parse_element(algebra: CliffAlgebra, text: str) -> Element:
    """Inverse of ``str(element)``."""
    if text.strip() == "0":
        return algebra.zero()
    terms: dict = {}
    basis = None
    for chunk in text.split(" + "):
        mo = _TERM_RE.match(chunk)
        if not mo:
            raise CliffError(f"cannot parse term {chunk!r}")
        if basis not in (None, mo.group(2)):
            raise CliffError("mixed bases in one element")
        basis = mo.group(2)
        u = algebra._member(parse_word(mo.group(3)))
        terms[u] = terms.get(u, 0) + Fraction(mo.group(1))
    return Element(algebra, basis, terms)


def product_E(delta: RangeMap, u: Sequence[int], v: Sequence[int]) -> Element:
    A = CliffAlgebra(delta)
    return A.E(u) * A.E(v)


def product_H(delta: RangeMap, u: Sequence[int], v: Sequence[int]) -> Element:
    A = CliffAlgebra(delta)
    return A.H(u) * A.H(v)


# -- associativity ----------------------------------------------------------------------


def associativity_check(delta: RangeMap, degree_cap: int, subset: Optional[GradedSubset] = None) -> Optional[tuple[Word, Word, Word]]:
    """First triple ``(u, v, w)`` with ``(F_u F_v) F_w != F_u (F_v F_w)``, or None.

    Triples are visited by total degree, then by sizes, then lexicographically.
    """
    A = CliffAlgebra(delta, subset)
    for total in range(degree_cap + 1):
        for a in range(total + 1):
            for b in range(total - a + 1):
                c = total - a - b
                for u in A.basis(a):
                    for v in A.basis(b):
                        uv = A._mul_F({u: 1}, {v: 1})
                        for w in A.basis(c):
                            left = A._mul_F(uv, {w: 1})
                            right = A._mul_F({u: 1}, A._mul_F({v: 1}, {w: 1}))
                            if {k: x for k, x in left.items() if x} != {k: x for k, x in right.items() if x}:
                                return u, v, w
    return None


# -- primes and presentations ---------------------------------------------------------------


def split_positions(delta: RangeMap, u: Sequence[int]) -> list[int]:
    """Positions ``k`` where the suffix after ``k`` is itself a cliff."""
    u = tuple(u)
    return [k for k in range(1, len(u)) if is_cliff(delta, u[k:])]


def is_prime(delta: RangeMap, u: Sequence[int]) -> bool:
    if not len(u):
        raise CliffError("the empty word is not prime")
    return not split_positions(delta, u)


def prime_factorize(delta: RangeMap, u: Sequence[int]) -> list[Word]:
    """The unique factorisation of ``u`` into primes for the Over product.

    The last factor is the shortest nonempty suffix that is a cliff; the rest
    is factorised recursively.
    """
    u = tuple(u)
    if not u:
        raise CliffError("the empty word has no prime factorisation")
    if not is_cliff(delta, u):
        raise CliffError(f"{format_word(u)} is not a cliff for {delta}")
    factors = []
    while u:
        cuts = split_positions(delta, u)
        k = cuts[-1] if cuts else 0
        factors.append(u[k:])
        u = u[:k]
    return factors[::-1]


def primes(delta: RangeMap, n: int) -> list[Word]:
    return [u for u in cliffs(delta).level(n) if is_prime(delta, u)]


def presentation_relations(delta: RangeMap, degree_cap: int) -> set[tuple[Word, ...]]:
    """Suffix-minimal monomials ``a^u a_v`` with ``uv`` not a cliff, up to a degree.

    A monomial is a tuple of prime words.  Minimality in the suffix order is
    exact below the cap, since every suffix has smaller degree.
    """
    if not classify_range_map(delta).valley_free:
        raise CliffError(f"{delta} has a valley; the algebra is not associative")
    prime_list = [p for n in range(1, degree_cap + 1) for p in primes(delta, n)]
    found = set()
    for k in range(1, degree_cap):
        for u in cliffs(delta).level(k):
            fu = None
            for v in prime_list:
                if k + len(v) > degree_cap:
                    continue
                if not is_cliff(delta, u + v):
                    fu = fu or tuple(prime_factorize(delta, u))
                    found.add(fu + (v,))
    return {mono for mono in found if not any(mono[i:] in found for i in range(1, len(mono) - 1))}


def format_monomial(mono: Iterable[Word]) -> str:
    return " ".join(f"a[{format_word(p)}]" for p in mono)


# -- quotients -------------------------------------------------------------------------------


def quotient_wellformed(S: GradedSubset, n_max: int) -> bool:
    """Closed by prefix and by suffix reduction, checked up to size ``n_max``."""
    delta = S.delta
    for n in range(n_max + 1):
        for u in S.level(n):
            for k in range(n):
                if u[:k] not in S or reduce(delta, u[k + 1:]) not in S:
                    return False
    return True


@dataclass
class IntervalConditionResult:
    holds: bool
    witness: Optional[tuple[Word, Word]] = None

    def __bool__(self):
        return self.holds


def interval_condition_check(algebra: CliffAlgebra, degree_cap: int) -> IntervalConditionResult:
    """Every product support is empty or an interval of the family poset."""
    for total in range(degree_cap + 1):
        for i in range(total + 1):
            for u in algebra.basis(i):
                for v in algebra.basis(total - i):
                    supp = algebra.product_support(u, v)
                    if not supp:
                        continue
                    lo = tuple(map(min, zip(*supp))) if total else ()
                    hi = tuple(map(max, zip(*supp))) if total else ()
                    # an interval of S has its bounds inside it
                    if supp[0] != lo or supp[-1] != hi or algebra.interval(lo, hi) != list(supp):
                        return IntervalConditionResult(False, (u, v))
    return IntervalConditionResult(True)


def interval_law_check(delta: RangeMap, degree_cap: int) -> Optional[tuple[Word, Word]]:
    """First pair whose product support differs from ``[u Over v, u Under v]``."""
    A = CliffAlgebra(delta)
    for total in range(degree_cap + 1):
        for i in range(total + 1):
            for u in A.basis(i):
                for v in A.basis(total - i):
                    bounds = product_interval_form(delta, u, v)
                    expected = [] if bounds is None else A.interval(*bounds)
                    if list(A.product_support(u, v)) != expected:
                        return u, v
    return None


# -- generators and freeness ------------------------------------------------------------------


def _require_associative(algebra: CliffAlgebra) -> None:
    if not classify_range_map(algebra.delta).valley_free:
        raise CliffError(f"{algebra.delta} has a valley; the algebra is not associative")


def generator_counts(algebra: CliffAlgebra, n_max: int, method: str = "complement") -> list[int]:
    """Dimensions of the indecomposables ``A+ / (A+)^2`` in degrees ``0..n_max``.

    Degree ``n`` counts ``dim A(n)`` minus the exact rank of the products of
    lower degrees.  With ``method="all"`` every product ``F_x F_y`` enters the
    rank; with ``"complement"`` the left factor runs only over the F-basis
    elements left outside the pivot set in its own degree, which spans the
    same space by associativity.
    """
    if method not in ("all", "complement"):
        raise CliffError(f"unknown method {method!r}")
    _require_associative(algebra)
    counts = [0]
    free_parts: dict[int, list[Word]] = {}
    for n in range(1, n_max + 1):
        basis = sorted(algebra.basis(n), key=lambda w: (sum(w), w))
        column = {w: k for k, w in enumerate(basis)}
        ech = SparseEchelon()
        for i in range(1, n):
            lefts = free_parts[i] if method == "complement" else algebra.basis(i)
            for u in lefts:
                for v in algebra.basis(n - i):
                    supp = algebra.product_support(u, v)
                    if supp:
                        ech.add({column[w]: 1 for w in supp})
        pivots = ech.pivot_columns()
        free_parts[n] = [w for k, w in enumerate(basis) if k not in pivots]
        counts.append(len(basis) - ech.rank)
    return counts


def quasi_inverse(g: Sequence[int], n_max: int) -> list[int]:
    """Coefficients of ``1 / (1 - g(t))`` with ``g(0) = 0``."""
    c = [1]
    for n in range(1, n_max + 1):
        c.append(sum(g[i] * c[n - i] for i in range(1, n + 1) if i < len(g)))
    return c


@dataclass
class FreenessEvidence:
    hilbert: list[int]
    generators: list[int]
    free_consistent: bool


def freeness_evidence(algebra: CliffAlgebra, n_max: int) -> FreenessEvidence:
    hilbert = [algebra.dim(n) for n in range(n_max + 1)]
    gens = generator_counts(algebra, n_max)
    return FreenessEvidence(hilbert, gens, quasi_inverse(gens, n_max) == hilbert)


def generator_table_csv(rows: Iterable[tuple[str, int, int, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["ambient", "n", "dim", "generators"])
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def generator_rows(algebra: CliffAlgebra, n_max: int, label: Optional[str] = None) -> list[tuple[str, int, int, int]]:
    gens = generator_counts(algebra, n_max)
    label = label or algebra.name
    return [(label, n, algebra.dim(n), gens[n]) for n in range(n_max + 1)]

