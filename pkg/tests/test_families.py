import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliffs.families import (
    FamilyKind,
    avalanche_maximal_elements,
    avalanche_to_canyon,
    avalanche_to_hill,
    avalanches,
    canyon_to_hill,
    canyons,
    cardinality_rows,
    cardinality_table_csv,
    cliffs,
    enumerate_family,
    family,
    fuss_catalan,
    hills,
    inversions,
    is_avalanche,
    is_butterfly_of_canyons,
    is_canyon,
    is_hill,
    is_input_wing_of_canyons,
    is_output_wing_of_hills,
    lehmer_code,
    lehmer_decode,
    phi,
    phi_inverse,
    psi,
    psi_inverse,
    theta,
    theta_inverse,
    weak_order_leq,
)
from cliffs.posets import build_poset, wings
from cliffs.words import CliffError, leq, m_map, parse_range_map

from conftest import brute_members


def w(s):
    return tuple(int(c) for c in s)


def ws(*xs):
    return {w(x) for x in xs}


def test_membership_examples():
    one, two = m_map(1), m_map(2)
    assert is_avalanche(one, w("011")) and not is_avalanche(one, w("012")) and is_avalanche(one, ())
    assert is_hill(one, w("011")) and not is_hill(one, w("010")) and is_hill(one, w("0000"))
    assert is_canyon(one, w("012")) and not is_canyon(one, w("011")) and is_canyon(two, w("024"))


def test_family_parse():
    assert FamilyKind.parse("Canyon") is FamilyKind.CANYON
    assert FamilyKind.parse("cl") is FamilyKind.CLIFF
    with pytest.raises(CliffError):
        FamilyKind.parse("tree")
    assert family("hi", m_map(1)) is hills(m_map(1))


@pytest.mark.parametrize("kind", ["av", "hi", "ca"])
@pytest.mark.parametrize("text", ["m(0)", "m(1)", "m(2)", "seq[0,2];const(1)", "seq[1];periodic[2,0]"])
def test_enumeration_matches_box_filter(kind, text):
    d = parse_range_map(text)
    for n in range(6):
        assert enumerate_family(kind, d, n) == brute_members(kind, d, n)


def test_enumeration_examples():
    assert len(enumerate_family("av", m_map(1), 3)) == 5
    assert len(enumerate_family("ca", m_map(2), 3)) == 12
    assert len(enumerate_family("hi", m_map(1), 4)) == 14


def test_fuss_catalan():
    assert fuss_catalan(1, 3) == 5
    assert all(fuss_catalan(0, n) == 1 for n in range(8))
    assert fuss_catalan(2, 4) == 55 == len(enumerate_family("ca", m_map(2), 4))
    assert [fuss_catalan(1, n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_degenerate_m0_families():
    for kind in ("av", "hi", "ca"):
        assert enumerate_family(kind, m_map(0), 4) == [(0, 0, 0, 0)]


def test_avalanche_maxima():
    assert avalanche_maximal_elements(1, 3) == ws("002", "011")
    assert avalanche_maximal_elements(2, 3) == ws("004", "013", "022")
    assert avalanche_maximal_elements(3, 1) == ws("0")
    for m in (1, 2):
        for n in range(1, 6):
            assert avalanche_maximal_elements(m, n)


def test_cardinality_csv():
    text = cardinality_table_csv(cardinality_rows([FamilyKind.HILL], [1], 3))
    assert text == "family,m,n,count\nhi,1,0,1\nhi,1,1,1\nhi,1,2,2\nhi,1,3,5\n"


# -- permutations ---------------------------------------------------------------


def test_lehmer_examples():
    assert lehmer_code(w("321")) == w("012")
    assert lehmer_code(w("123")) == w("000")
    assert lehmer_code(w("231")) == w("011")
    # the remaining pairings of the two size-3 diagrams
    assert lehmer_code(w("312")) == w("002")
    assert lehmer_code(w("132")) == w("001")
    assert lehmer_code(w("213")) == w("010")
    with pytest.raises(CliffError):
        lehmer_code(w("112"))
    with pytest.raises(CliffError):
        lehmer_decode(w("02"))


@given(st.permutations(range(1, 7)))
def test_lehmer_round_trip(sigma):
    code = lehmer_code(sigma)
    assert code in cliffs(m_map(1))
    assert lehmer_decode(code) == tuple(sigma)


def test_lehmer_is_bijection():
    for n in range(6):
        codes = {lehmer_code(p) for p in itertools.permutations(range(1, n + 1))}
        assert codes == set(cliffs(m_map(1)).level(n))


def test_weak_order_examples():
    assert weak_order_leq(w("123"), w("321"))
    assert not weak_order_leq(w("132"), w("213"))
    assert weak_order_leq(w("231"), w("231"))
    assert inversions(w("231")) == {(1, 2), (1, 3)}
    with pytest.raises(CliffError):
        weak_order_leq(w("12"), w("123"))


def test_lehmer_transports_weak_order():
    for n in range(6):
        perms = list(itertools.permutations(range(1, n + 1)))
        codes = {p: lehmer_code(p) for p in perms}
        for s, t in itertools.product(perms, repeat=2):
            if weak_order_leq(s, t):
                assert leq(codes[s], codes[t])


def test_weak_order_covers_sit_inside_cliff_covers():
    perms = list(itertools.permutations(range(1, 4)))
    covers = {
        (s, t) for s, t in itertools.product(perms, repeat=2)
        if len(inversions(t)) == len(inversions(s)) + 1 and weak_order_leq(s, t)
    }
    pairs = {(lehmer_code(s), lehmer_code(t)) for s, t in covers}
    cliff_covers = set(build_poset(cliffs(m_map(1)), 3).cover_edges)
    assert pairs <= cliff_covers and len(cliff_covers - pairs) == 1


# -- wings and the isomorphism diagram -------------------------------------------


@pytest.mark.parametrize("m", [1, 2])
def test_wing_characterisations(m):
    for n in range(1, 6):
        ca, hi = wings(canyons(m_map(m)), n), wings(hills(m_map(m)), n)
        members_ca, members_hi = set(canyons(m_map(m)).level(n)), set(hills(m_map(m)).level(n))
        assert ca.input_wings == {u for u in members_ca if is_input_wing_of_canyons(m, u)}
        assert hi.output_wings == {u for u in members_hi if is_output_wing_of_hills(m, u)}
        assert ca.butterflies == {u for u in members_ca if is_butterfly_of_canyons(m, u)}


def _is_order_iso(f, source, target):
    image = {u: f(u) for u in source}
    if set(image.values()) != set(target) or len(set(image.values())) != len(source):
        return False
    return all(leq(u, v) == leq(image[u], image[v]) for u in source for v in source)


@pytest.mark.parametrize("m", [1, 2])
def test_isomorphism_diagram(m):
    for n in range(1, 6):
        inp = wings(canyons(m_map(m)), n).input_wings
        out = wings(hills(m_map(m)), n).output_wings
        bfly = wings(canyons(m_map(m + 1)), n).butterflies
        lower_hills = set(hills(m_map(m - 1)).level(n))
        assert _is_order_iso(lambda u: psi(m, u), inp, lower_hills)
        assert _is_order_iso(lambda u: phi(m, u), out, lower_hills)
        assert _is_order_iso(lambda u: theta(m, u), inp, bfly)
        diagonal = lambda u: theta(m, psi_inverse(m, phi(m, u)))
        assert _is_order_iso(diagonal, out, bfly)
        for u in inp:
            assert diagonal(phi_inverse(m, psi(m, u))) == theta(m, u)
            assert theta_inverse(m, theta(m, u)) == u
        assert len(bfly) == len(inp) == fuss_catalan(m - 1, n)


def test_map_examples():
    assert phi(1, w("001")) == w("000")
    assert phi(2, w("013")) == w("012")
    assert phi(3, w("0")) == w("0")
    assert psi(1, w("012")) == w("000")
    assert psi(2, w("013")) == w("001")
    assert psi(2, w("0")) == w("0")
    assert theta(1, w("012")) == w("013")
    assert theta(1, w("0")) == w("0")
    assert theta(2, w("01")) == w("01")


def test_maps_reject_non_wings():
    with pytest.raises(CliffError):
        phi(1, w("011"))
    with pytest.raises(CliffError):
        psi(1, w("001"))
    with pytest.raises(CliffError):
        theta(1, w("011"))
    with pytest.raises(CliffError):
        theta_inverse(1, w("012"))


def test_first_letter_theta_variant_leaves_the_butterflies():
    # u_1 + i - 2 in place of u_i + i - 2 on u = 012
    variant = tuple(0 if i == 1 else 0 + i - 2 for i in range(1, 4))
    assert variant == w("001")
    assert not is_butterfly_of_canyons(2, variant)


# -- morphisms between families -----------------------------------------------------


def test_canyon_to_hill_examples():
    one = m_map(1)
    assert canyon_to_hill(one, w("012")) == w("012")
    assert canyon_to_hill(one, w("0000")) == w("0000")
    assert canyon_to_hill(one, w("010")) == w("011")
    with pytest.raises(CliffError):
        canyon_to_hill(parse_range_map("seq[0,1];const(1)"), w("01"))


@pytest.mark.parametrize("m", [1, 2])
def test_canyon_to_hill_bijective_monotone_not_iso(m):
    d = m_map(m)
    witness = None
    for n in range(6):
        ca = canyons(d).level(n)
        image = {u: canyon_to_hill(d, u) for u in ca}
        assert set(image.values()) == set(hills(d).level(n))
        for u, v in itertools.product(ca, repeat=2):
            if leq(u, v):
                assert leq(image[u], image[v])
            elif witness is None and leq(image[u], image[v]):
                witness = (u, v)
    assert witness is not None


@pytest.mark.parametrize("m", [1, 2])
def test_order_extension_chain(m):
    d = m_map(m)
    for n in range(6):
        av = avalanches(d).level(n)
        to_ca = {u: avalanche_to_canyon(d, u) for u in av}
        to_hi = {u: avalanche_to_hill(d, u) for u in av}
        assert set(to_ca.values()) == set(canyons(d).level(n))
        assert set(to_hi.values()) == set(hills(d).level(n))
        for u, v in itertools.product(av, repeat=2):
            if leq(u, v):
                assert leq(to_ca[u], to_ca[v]) and leq(to_hi[u], to_hi[v])
        for u in av:
            assert canyon_to_hill(d, to_ca[u]) == to_hi[u]


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_cardinalities(m):
    top = 7 if m <= 1 else 6
    for n in range(top + 1):
        c = fuss_catalan(m, n)
        assert len(avalanches(m_map(m)).level(n)) == len(hills(m_map(m)).level(n)) == len(canyons(m_map(m)).level(n)) == c
