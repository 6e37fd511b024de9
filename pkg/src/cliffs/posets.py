"""Finite-poset machinery for graded subsets of cliff posets.

Everything here works on one graded piece ``S(n)`` at a time.  Orders are held
as numpy boolean matrices over a fixed element list, with covers derived from
them; the posets met in practice have at most a few thousand elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from .words import (
    EPSILON,
    CliffError,
    RangeMap,
    SizeGuardError,
    Word,
    all_cliffs,
    box_size,
    componentwise_meet_join,
    format_word,
    is_cliff,
)

DEFAULT_GUARD = 10**6


class GradedSubset:
    """A graded subset ``S`` of the delta-cliffs.

    ``contains`` decides membership of a delta-cliff.  When ``accepts`` is given
    the set is assumed closed by prefix and ``accepts(p, a)`` must tell whether
    ``p + (a,)`` is in ``S`` knowing that ``p`` is; levels are then generated
    by prefix extension instead of filtering the full box.
    """

    def __init__(
        self,
        delta: RangeMap,
        contains: Callable[[Word], bool],
        *,
        name: str = "S",
        accepts: Optional[Callable[[Word, int], bool]] = None,
        key: Hashable = None,
        guard: int = DEFAULT_GUARD,
    ):
        self.delta = delta
        self._contains = contains
        self._accepts = accepts
        self.name = name
        self.key = key
        self.guard = guard
        self._levels: dict[int, tuple[Word, ...]] = {0: (EPSILON,) if contains(EPSILON) else ()}

    @property
    def prefix_closed(self) -> bool:
        return self._accepts is not None

    def __contains__(self, u) -> bool:
        u = tuple(u)
        return is_cliff(self.delta, u) and self._contains(u)

    def accepts(self, prefix: Word, a: int) -> bool:
        if a > self.delta(len(prefix) + 1):
            return False
        if self._accepts is not None:
            return self._accepts(prefix, a)
        return (prefix + (a,)) in self

    def level(self, n: int) -> tuple[Word, ...]:
        """The members of size ``n`` in lexicographic order."""
        if n in self._levels:
            return self._levels[n]
        if self._accepts is None:
            bound = box_size(self.delta, n)
            if bound > self.guard:
                raise SizeGuardError(bound, self.guard)
            out = tuple(u for u in all_cliffs(self.delta, n) if self._contains(u))
        else:
            top = self.delta(n)
            out = []
            for p in self.level(n - 1):
                out.extend(p + (a,) for a in range(top + 1) if self._accepts(p, a))
                if len(out) > self.guard:
                    raise SizeGuardError(len(out), self.guard)
            out = tuple(out)
        self._levels[n] = out
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedSubset):
            return NotImplemented
        if self.key is None or other.key is None:
            return self is other
        return self.key == other.key

    def __hash__(self):
        return hash(self.key) if self.key is not None else id(self)

    def __repr__(self):
        return f"<{self.name} over {self.delta}>"


def subset_from_set(delta: RangeMap, members: Iterable[Word], name: str = "S") -> GradedSubset:
    """Wrap an explicit finite set of words as a graded subset."""
    members = frozenset(tuple(u) for u in members)
    return GradedSubset(delta, members.__contains__, name=name)


# -- finite posets ---------------------------------------------------------------


def _componentwise(u, v) -> bool:
    return all(a <= b for a, b in zip(u, v))


class FinitePoset:
    """A finite poset on sortable hashable elements.

    With the default order the elements are words of one common size ordered
    componentwise.  ``leq`` may be any partial order on the elements.
    """

    def __init__(self, elements: Iterable, leq: Optional[Callable] = None, size: Optional[int] = None):
        self.elements = tuple(sorted(set(elements)))
        self.index = {x: k for k, x in enumerate(self.elements)}
        self.custom_order = leq is not None
        n_el = len(self.elements)
        if leq is None:
            sizes = {len(u) for u in self.elements}
            if len(sizes) > 1:
                raise CliffError("poset elements must share one size")
            self.size = sizes.pop() if sizes else (size or 0)
            if n_el and self.size:
                arr = np.array(self.elements, dtype=np.int64)
                le = np.ones((n_el, n_el), dtype=bool)
                for col in range(self.size):
                    le &= arr[:, None, col] <= arr[None, :, col]
            else:
                le = np.ones((n_el, n_el), dtype=bool)
        else:
            self.size = size
            le = np.array([[leq(x, y) for y in self.elements] for x in self.elements], dtype=bool).reshape(n_el, n_el)
        self.le = le
        lt = le.copy()
        np.fill_diagonal(lt, False)
        if n_el:
            two_step = (lt.astype(np.float32) @ lt.astype(np.float32)) > 0
            cov = lt & ~two_step
        else:
            cov = lt
        self.cover_matrix = cov
        self.upper_covers = [tuple(np.flatnonzero(cov[k])) for k in range(n_el)]
        self.lower_covers = [tuple(np.flatnonzero(cov[:, k])) for k in range(n_el)]
        # longest chain from a minimal element, used as a linear extension
        self.height = [0] * n_el
        for k in self._topological():
            for j in self.upper_covers[k]:
                self.height[j] = max(self.height[j], self.height[k] + 1)

    def _topological(self) -> list[int]:
        below = self.le.sum(axis=0)
        return sorted(range(len(self.elements)), key=lambda k: (below[k], k))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def leq(self, x, y) -> bool:
        return bool(self.le[self.index[x], self.index[y]])

    @property
    def cover_edges(self) -> list[tuple]:
        E = self.elements
        return [(E[a], E[b]) for a in range(len(E)) for b in self.upper_covers[a]]

    def linear_extension(self) -> list[int]:
        return self._topological()

    def minimal(self) -> list:
        return [x for k, x in enumerate(self.elements) if not self.lower_covers[k]]

    def maximal(self) -> list:
        return [x for k, x in enumerate(self.elements) if not self.upper_covers[k]]

    def interval(self, x, y) -> list:
        a, b = self.index[x], self.index[y]
        return [self.elements[k] for k in np.flatnonzero(self.le[a] & self.le[:, b])]

    def glb(self, x, y):
        """Greatest lower bound, or None when it does not exist."""
        common = self.le[:, self.index[x]] & self.le[:, self.index[y]]
        return self._extremum(common, lower=True)

    def lub(self, x, y):
        common = self.le[self.index[x]] & self.le[self.index[y]]
        return self._extremum(common, lower=False)

    def _extremum(self, mask, lower: bool):
        cand = np.flatnonzero(mask)
        if not len(cand):
            return None
        sub = self.le[np.ix_(cand, cand)]
        # glb: the common lower bound lying above all the others
        hits = np.flatnonzero(sub.all(axis=0) if lower else sub.all(axis=1))
        return self.elements[cand[hits[0]]] if len(hits) else None

    def to_dot(self, name: str = "P", fmt: Callable = format_word) -> str:
        """Hasse diagram as a DOT digraph, bottom to top, lexicographic node order."""
        lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
        label = [fmt(u) if isinstance(u, tuple) else str(u) for u in self.elements]
        for k in range(len(self.elements)):
            lines.append(f'  n{k} [label="{label[k]}"];')
        for a in range(len(self.elements)):
            for b in self.upper_covers[a]:
                lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"<FinitePoset with {len(self)} elements>"


def build_poset(S: GradedSubset, n: int, guard: Optional[int] = None) -> FinitePoset:
    guard = S.guard if guard is None else guard
    if not S.prefix_closed:
        bound = box_size(S.delta, n)
        if bound > guard:
            raise SizeGuardError(bound, guard)
    elements = S.level(n)
    if len(elements) > guard:
        raise SizeGuardError(len(elements), guard)
    return FinitePoset(elements, size=n)


# -- subset predicates -------------------------------------------------------------


@dataclass
class SubsetPredicates:
    straight: bool
    coated: bool
    closed_by_prefix: bool
    min_extendable: bool
    max_extendable: bool


def _differ_once(u, v) -> Optional[int]:
    diff = [i for i, (a, b) in enumerate(zip(u, v)) if a != b]
    return diff[0] if len(diff) == 1 else None


def is_straight(P: FinitePoset) -> bool:
    return all(_differ_once(u, v) is not None for u, v in P.cover_edges)


def subset_predicates(S: GradedSubset, n_max: int) -> SubsetPredicates:
    """Check the five structural predicates on every ``S(n)``, ``n <= n_max``.

    This is bounded-size evidence, not a proof.
    """
    if n_max < 1:
        raise CliffError("n_max must be at least 1")
    delta = S.delta
    straight = coated = prefix = minext = maxext = True
    minext = maxext = EPSILON in S
    for n in range(n_max + 1):
        P = build_poset(S, n)
        straight = straight and is_straight(P)
        if coated:
            E = P.elements
            for a, b in zip(*np.nonzero(P.le)):
                u, v = E[a], E[b]
                if a != b and not all(u[:i] + v[i:] in S for i in range(1, n)):
                    coated = False
                    break
        for u in P.elements:
            prefix = prefix and all(u[:i] in S for i in range(n))
            minext = minext and (u + (0,)) in S
            maxext = maxext and (u + (delta(n + 1),)) in S
    return SubsetPredicates(straight, coated, prefix, minext, maxext)


def alpha(delta: RangeMap, n: int) -> int:
    return sum(1 for d in delta.values(n) if d != 0)


@dataclass
class Wings:
    input_wings: set
    output_wings: set
    butterflies: set


def wings(S: GradedSubset, n: int) -> Wings:
    P = build_poset(S, n)
    if not is_straight(P):
        raise CliffError(f"{S.name} is not straight at size {n}")
    a = alpha(S.delta, n)
    inp = {u for k, u in enumerate(P.elements) if len(P.lower_covers[k]) == a}
    out = {u for k, u in enumerate(P.elements) if len(P.upper_covers[k]) == a}
    return Wings(inp, out, inp & out)


# -- EL-labelings ----------------------------------------------------------------------


def el_label(u: Word, v: Word) -> tuple[int, int]:
    """Label ``(-i, u_i)`` of a cover differing only at 1-based position ``i``."""
    i = _differ_once(u, v)
    if i is None:
        raise CliffError(f"cover {format_word(u)} < {format_word(v)} changes more than one letter")
    return (-(i + 1), u[i])


@dataclass
class ELReport:
    is_el_labeling: bool
    bad_interval: Optional[tuple] = None
    at_most_one_weakly_decreasing: bool = True
    bad_decreasing_interval: Optional[tuple] = None
    bounded: bool = True

    @property
    def el_shellable(self) -> bool:
        return self.is_el_labeling and self.bounded


def el_labeling_check(P: FinitePoset) -> ELReport:
    """Check that ``(-i, u_i)`` is an EL-labeling of ``P``.

    For each interval: exactly one strictly increasing maximal chain, and it is
    the lexicographically least one.  Separately reports whether some interval
    carries two or more weakly decreasing maximal chains.  Chains are counted by
    dynamic programming rather than listed.
    """
    E = P.elements
    N = len(E)
    labels = {}
    for a in range(N):
        for b in P.upper_covers[a]:
            labels[a, b] = el_label(E[a], E[b])
    order = P.linear_extension()
    report = ELReport(True, bounded=len(P.minimal()) <= 1 and len(P.maximal()) <= 1)
    for x in order:
        above = P.le[x]
        inc: dict[int, dict] = {x: {None: 1}}
        dec: dict[int, dict] = {x: {None: 1}}
        for z in order:
            if not above[z] or z not in inc and z not in dec:
                continue
            for w in P.upper_covers[z]:
                lab = labels[z, w]
                for table in (inc, dec):
                    src = table.get(z)
                    if not src:
                        continue
                    dst = table.setdefault(w, {})
                    increasing = table is inc
                    for last, cnt in src.items():
                        if last is None or (last < lab if increasing else last >= lab):
                            dst[lab] = dst.get(lab, 0) + cnt
        for y in np.flatnonzero(above):
            if y == x:
                continue
            n_inc = sum(inc.get(y, {}).values())
            n_dec = sum(dec.get(y, {}).values())
            if report.is_el_labeling and (n_inc != 1 or not _lex_least_increasing(P, labels, x, y)):
                report.is_el_labeling = False
                report.bad_interval = (E[x], E[y])
            if report.at_most_one_weakly_decreasing and n_dec > 1:
                report.at_most_one_weakly_decreasing = False
                report.bad_decreasing_interval = (E[x], E[y])
        if not report.is_el_labeling and not report.at_most_one_weakly_decreasing:
            break
    return report


def _lex_least_increasing(P: FinitePoset, labels, x: int, y: int) -> bool:
    """Follow the lexicographically least maximal chain of ``[x, y]``; is it increasing?"""
    last = None
    cur = x
    while cur != y:
        step = min((labels[cur, w], w) for w in P.upper_covers[cur] if P.le[w, y])
        if last is not None and not last < step[0]:
            return False
        last, cur = step
    return True


# -- lattice operations through decrementation / incrementation ---------------------


def decrement_map(S: GradedSubset, u: Sequence[int]) -> Word:
    """Greedy left-to-right projection of a cliff down into ``S``."""
    out: Word = ()
    if EPSILON not in S:
        raise CliffError(f"{S.name} does not contain the empty word")
    for a in u:
        b = next((b for b in range(a, -1, -1) if S.accepts(out, b)), None)
        if b is None:
            raise CliffError(f"{S.name} is not minimally extendable at {format_word(out)}")
        out += (b,)
    return out


def increment_map(S: GradedSubset, u: Sequence[int]) -> Word:
    """Greedy left-to-right projection of a cliff up into ``S``."""
    out: Word = ()
    if EPSILON not in S:
        raise CliffError(f"{S.name} does not contain the empty word")
    for a in u:
        top = S.delta(len(out) + 1)
        b = next((b for b in range(a, top + 1) if S.accepts(out, b)), None)
        if b is None:
            raise CliffError(f"{S.name} is not maximally extendable at {format_word(out)}")
        out += (b,)
    return out


def sub_meet(S: GradedSubset, u: Sequence[int], v: Sequence[int]) -> Word:
    return decrement_map(S, componentwise_meet_join(u, v)[0])


def sub_join(S: GradedSubset, u: Sequence[int], v: Sequence[int]) -> Word:
    return increment_map(S, componentwise_meet_join(u, v)[1])


@dataclass
class LatticeReport:
    is_lattice: bool
    is_meet_semisub: bool
    is_join_semisub: bool
    is_meet_stable: Optional[bool] = None
    is_join_stable: Optional[bool] = None


def lattice_checks(P: FinitePoset, ambient: Optional[FinitePoset] = None) -> LatticeReport:
    """Exhaustive lattice, semi-sublattice and stability checks on word posets.

    ``ambient`` defaults to the full cliff poset, whose meet and join are
    componentwise; when given it must contain ``P`` and is consulted for its own
    glb/lub.
    """
    E = P.elements
    if ambient is not None and not all(u in ambient for u in E):
        raise CliffError("poset is not contained in the ambient poset")

    def amb(u, v):
        if ambient is None:
            return componentwise_meet_join(u, v)
        return ambient.glb(u, v), ambient.lub(u, v)

    lattice = meet_sub = join_sub = True
    meet_stable = join_stable = True
    for a, b in itertools.combinations_with_replacement(range(len(E)), 2):
        u, v = E[a], E[b]
        m, j = P.glb(u, v), P.lub(u, v)
        am, aj = amb(u, v)
        meet_sub = meet_sub and m is not None and m == am
        join_sub = join_sub and j is not None and j == aj
        if m is None or j is None:
            lattice = False
            continue
        same = [i for i in range(len(u)) if u[i] == v[i]]
        meet_stable = meet_stable and all(m[i] == u[i] for i in same)
        join_stable = join_stable and all(j[i] == u[i] for i in same)
    if not E:
        lattice = False
    if not lattice:
        return LatticeReport(False, meet_sub, join_sub)
    return LatticeReport(True, meet_sub, join_sub, meet_stable, join_stable)


# -- derivation, nesting, interval doubling ------------------------------------------


def last_letter_max(P: FinitePoset) -> int:
    if not len(P) or not P.size:
        return 0
    return max(u[-1] for u in P.elements)


@dataclass
class Derivation:
    m: int
    map: dict
    derived: FinitePoset


def derivation(P: FinitePoset) -> Derivation:
    """Lower by one the last letter of every element whose last letter is maximal.

    When the maximum last letter is 0 (in particular for size 0) the poset is
    returned unchanged.
    """
    if not len(P):
        raise CliffError("derivation needs a nonempty poset")
    m = last_letter_max(P)
    if m == 0:
        return Derivation(0, {u: u for u in P}, P)
    image = {u: (u[:-1] + (m - 1,) if u[-1] == m else u) for u in P}
    return Derivation(m, image, FinitePoset(image.values(), size=P.size))


def _is_interval(P: FinitePoset, subset) -> Optional[tuple]:
    """``(bottom, top)`` when ``subset`` is an interval of ``P``, else None."""
    subset = set(subset)
    if not subset or not subset <= set(P.elements):
        return None
    lows = [x for x in subset if all(P.leq(x, y) for y in subset)]
    highs = [y for y in subset if all(P.leq(x, y) for x in subset)]
    if not lows or not highs:
        return None
    if set(P.interval(lows[0], highs[0])) != subset:
        return None
    return lows[0], highs[0]


def is_nested(P: FinitePoset) -> bool:
    n = P.size
    if not n:
        return True
    members = set(P.elements)
    m = last_letter_max(P)
    for a in range(m + 1):
        if (0,) * (n - 1) + (a,) not in members:
            return False
        lifted = {u[:-1] + (m,) for u in P.elements if u[-1] == a}
        if not lifted <= members or _is_interval(P, lifted) is None:
            return False
    return True


def nested_check(S: GradedSubset, n: int) -> bool:
    return is_nested(build_poset(S, n))


def double_interval(P: FinitePoset, interval: Iterable) -> FinitePoset:
    """Day's doubling: each ``x`` of the interval becomes ``(x, 0) < (x, 1)``.

    Elements of the result are pairs ``(x, tag)`` with tag 0 or 1 for doubled
    elements and tag -1 for the others.
    """
    I = set(interval)
    elems = [(x, -1) for x in P.elements if x not in I]
    elems += [(x, t) for x in I for t in (0, 1)]

    def le(p, q):
        (x, i), (y, j) = p, q
        if not P.leq(x, y):
            return False
        return not (i >= 0 and j >= 0 and i > j)

    return FinitePoset(elems, leq=le, size=P.size)


def poset_isomorphic(P: FinitePoset, Q: FinitePoset) -> Optional[dict]:
    """An order isomorphism ``P -> Q`` found by backtracking, or None."""
    if len(P) != len(Q):
        return None
    if not len(P):
        return {}

    def signature(R: FinitePoset, k: int):
        return (len(R.lower_covers[k]), len(R.upper_covers[k]), R.height[k], int(R.le[k].sum()), int(R.le[:, k].sum()))

    sp = [signature(P, k) for k in range(len(P))]
    sq = [signature(Q, k) for k in range(len(Q))]
    if sorted(sp) != sorted(sq):
        return None
    by_sig: dict = {}
    for k, s in enumerate(sq):
        by_sig.setdefault(s, []).append(k)
    order = P.linear_extension()
    image = [-1] * len(P)
    used = [False] * len(Q)

    def consistent(k: int, t: int) -> bool:
        for done in order[:pos[k]]:
            d = image[done]
            if P.le[done, k] != Q.le[d, t] or P.le[k, done] != Q.le[t, d]:
                return False
        return True

    pos = {k: i for i, k in enumerate(order)}

    def search(i: int) -> bool:
        if i == len(order):
            return True
        k = order[i]
        for t in by_sig[sp[k]]:
            if not used[t] and consistent(k, t):
                image[k], used[t] = t, True
                if search(i + 1):
                    return True
                image[k], used[t] = -1, False
        return False

    if not search(0):
        return None
    return {P.elements[k]: Q.elements[image[k]] for k in range(len(P))}


def is_order_isomorphism(P: FinitePoset, Q: FinitePoset, f: dict) -> bool:
    if len(P) != len(Q) or set(f) != set(P.elements) or set(f.values()) != set(Q.elements):
        return False
    return all(P.leq(x, y) == Q.leq(f[x], f[y]) for x in P for y in P)


@dataclass
class ContractionStep:
    size: int
    larger: FinitePoset
    smaller: FinitePoset
    interval: Optional[tuple]
    witness: Optional[dict]
    verified: bool


@dataclass
class ContractionSequence:
    steps: list = field(default_factory=list)
    failed_step: Optional[int] = None

    @property
    def verified(self) -> bool:
        return self.failed_step is None

    def steps_at(self, size: int) -> int:
        return sum(1 for s in self.steps if s.size == size)


def _contraction_step(P: FinitePoset) -> ContractionStep:
    d = derivation(P)
    Q = d.derived
    pre: dict = {}
    for u, w in d.map.items():
        pre.setdefault(w, []).append(u)
    doubled = {w for w, us in pre.items() if len(us) == 2}
    bounds = _is_interval(Q, doubled)
    witness = None
    ok = bounds is not None and all(len(us) <= 2 for us in pre.values())
    if ok:
        D = double_interval(Q, doubled)
        witness = {}
        for w, us in pre.items():
            if len(us) == 1:
                witness[us[0]] = (w, -1)
            else:
                lo, hi = sorted(us, key=lambda u: u[-1])
                witness[lo], witness[hi] = (w, 0), (w, 1)
        ok = is_order_isomorphism(P, D, witness)
        if not ok:
            witness = poset_isomorphic(P, D)
            ok = witness is not None
    return ContractionStep(P.size, P, Q, bounds, witness, ok)


def contraction_sequence(S: GradedSubset, n: int) -> ContractionSequence:
    """Contract ``S(n)`` interval by interval down to the one-element poset.

    At each size the poset is derived until its last letters vanish; the last
    letter is then dropped and the result compared with ``S(size - 1)``.
    Every contraction step is checked against an explicit interval doubling.
    """
    if S.delta(1) != 0:
        raise CliffError("interval contraction needs delta(1) = 0")
    seq = ContractionSequence()
    P = build_poset(S, n)
    for size in range(n, 0, -1):
        while last_letter_max(P) > 0:
            step = _contraction_step(P)
            seq.steps.append(step)
            if not step.verified and seq.failed_step is None:
                seq.failed_step = len(seq.steps) - 1
            P = step.smaller
        dropped = {u[:-1] for u in P.elements}
        P = build_poset(S, size - 1)
        if dropped != set(P.elements) and seq.failed_step is None:
            seq.failed_step = len(seq.steps)
    return seq


# -- elevation ------------------------------------------------------------------------


def elevation(S: GradedSubset, u: Sequence[int]) -> Word:
    """Letterwise count of smaller letters that keep the prefix inside ``S``."""
    u = tuple(u)
    if u not in S:
        raise CliffError(f"{format_word(u)} is not in {S.name}")
    return tuple(sum(1 for a in range(u[i]) if S.accepts(u[:i], a)) for i in range(len(u)))


def elevation_inverse(S: GradedSubset, w: Sequence[int]) -> Word:
    """The unique ``u`` in ``S`` with ``elevation(S, u) == w``."""
    u: Word = ()
    for k in w:
        allowed = [a for a in range(S.delta(len(u) + 1) + 1) if S.accepts(u, a)]
        if k >= len(allowed):
            raise CliffError(f"{format_word(tuple(w))} is not in the elevation image of {S.name}")
        u += (allowed[k],)
    return u


def elevation_image(S: GradedSubset, n: int) -> set[Word]:
    return {elevation(S, u) for u in S.level(n)}
