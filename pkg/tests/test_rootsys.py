from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalcove import Coroot, Weight, build_root_system, pair
from qalcove.rootsys import parse_type

TYPES = ["A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3", "D4"]


def _rs(token):
    return build_root_system(*parse_type(token))


# --- construction ------------------------------------------------------------

def test_a2_positive_roots(a2):
    assert sorted(r.coords for r in a2.positive_roots) == [(0, 1), (1, 0), (1, 1)]


def test_g2_has_six_positive_roots():
    assert len(build_root_system("G", 2).positive_roots) == 6


def test_a3_highest_root():
    assert build_root_system("A", 3).highest_root.coords == (1, 1, 1)


@pytest.mark.parametrize("token,count", [("B3", 9), ("C3", 9), ("D4", 12), ("F4", 24), ("E6", 36)])
def test_positive_root_counts(token, count):
    # |positive roots| for the classical and exceptional series
    assert len(_rs(token).positive_roots) == count


@pytest.mark.parametrize("series,rank", [("A", 0), ("B", 1), ("D", 3), ("G", 3), ("E", 5), ("X", 2)])
def test_invalid_type_rejected(series, rank):
    with pytest.raises(ValueError):
        build_root_system(series, rank)


@pytest.mark.parametrize("token", TYPES)
def test_cartan_matrix_shape(token):
    rs = _rs(token)
    C = rs.cartan
    n = rs.rank
    for i in range(n):
        assert C[i, i] == 2
        for j in range(n):
            if i != j:
                assert C[i, j] <= 0
                assert (C[i, j] == 0) == (C[j, i] == 0)


@pytest.mark.parametrize("token", TYPES)
def test_rho_pairs_to_one_with_simple_coroots(token):
    rs = _rs(token)
    for i in range(1, rs.rank + 1):
        assert pair(rs.rho, rs.simple_coroot(i)) == 1


@pytest.mark.parametrize("token", TYPES)
def test_root_closure_under_addition(token):
    rs = _rs(token)
    pos = {r.coords for r in rs.positive_roots}
    for a, b in combinations(rs.positive_roots, 2):
        s = tuple(x + y for x, y in zip(a.coords, b.coords))
        if s in pos or tuple(-x for x in s) in pos:
            assert s in pos


@pytest.mark.parametrize("token", TYPES)
def test_root_coroot_pairing_is_two(token):
    rs = _rs(token)
    for r in rs.positive_roots:
        assert pair(rs.root_weight(r), r.coroot) == 2
        assert abs(-r) == r and (-r).sign == -1


# --- pairing -------------------------------------------------------------------

def test_pair_examples(a2, lam):
    assert pair(lam, Coroot((1, 0))) == -1
    assert pair(lam, Coroot((1, 1))) == 1
    assert pair(a2.weight([0, 0]), Coroot((3, -2))) == 0


# --- Weyl group ---------------------------------------------------------------

@pytest.mark.parametrize("token,order", [("A2", 6), ("B2", 8), ("C2", 8), ("G2", 12), ("A3", 24),
                                         ("B3", 48), ("D4", 192)])
def test_weyl_order(token, order):
    assert len(_rs(token).weyl) == order


def test_a2_longest_length(a2):
    assert a2.longest.length == 3


@pytest.mark.parametrize("token", ["A2", "B2", "G2", "A3", "C3"])
def test_weyl_enumeration_order_and_words(token):
    rs = _rs(token)
    keys = [(w.length, w.word) for w in rs.weyl]
    assert keys == sorted(keys)
    assert len({w.matrix for w in rs.weyl}) == len(rs.weyl)
    for w in rs.weyl:
        assert len(w.word) == w.length
        assert rs.element(w.word) == w
        inverted = sum(1 for r in rs.positive_roots if rs.act_root(w, r).sign < 0)
        assert inverted == w.length


def _perm_of_word(word, n):
    p = list(range(n + 1))
    for i in word:
        # right multiplication by the transposition (i, i+1)
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _inversions(p):
    return sum(1 for i, j in combinations(range(len(p)), 2) if p[i] > p[j])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_a_against_permutations(n):
    rs = build_root_system("A", n)
    perms = {}
    for w in rs.weyl:
        p = _perm_of_word(w.word, n)
        assert _inversions(p) == w.length
        perms[p] = w
    assert len(perms) == len(rs.weyl)
    # Mahonian distribution of lengths
    lengths = Counter(w.length for w in rs.weyl)
    from itertools import permutations
    assert lengths == Counter(_inversions(p) for p in permutations(range(n + 1)))


def _a_weight_to_eps(coords):
    # w_i = e_1 + ... + e_i
    n = len(coords)
    return [sum(coords[i] for i in range(j, n)) for j in range(n)] + [Fraction(0)]


def _eps_to_a_weight(v):
    return tuple(v[i] - v[i + 1] for i in range(len(v) - 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3), st.integers(0, 23))
def test_type_a_action_matches_permutation_action(coords, k):
    rs = build_root_system("A", 3)
    w = rs.weyl[k]
    p = _perm_of_word(w.word, 3)
    v = _a_weight_to_eps([Fraction(c) for c in coords])
    image = [None] * 4
    for j in range(4):
        image[p[j]] = v[j]
    shift = image[-1]
    expected = _eps_to_a_weight([x - shift for x in image])
    assert rs.act(w, rs.weight(coords)).coords == expected


def test_act_examples(a2, lam):
    assert a2.act(a2.element([2]), lam) == a2.weight([1, -2])
    assert a2.act(a2.identity, lam) == lam
    assert a2.act(a2.longest, a2.fundamental_weight(1)) == a2.weight([0, -1])


@pytest.mark.parametrize("text,word", [("s1 s2 s1", (1, 2, 1)), ("s1s2", (1, 2)), ("1 2", (1, 2)),
                                       ("e", ())])
def test_parse_element(a2, text, word):
    assert a2.parse_element(text) == a2.element(word)


def test_parse_root(a2):
    assert a2.parse_root("a1+a2").coords == (1, 1)
    assert a2.parse_root("-a1").coords == (-1, 0)
    assert a2.parse_root("1,1").coords == (1, 1)


# --- dominant data --------------------------------------------------------------

def test_dominant_data_a3_example():
    rs = build_root_system("A", 3)
    d = rs.dominant_data(rs.weight([-1, 0, 1]))
    assert d.dominant == rs.weight([0, 1, 0])
    assert d.longest == rs.element([1, 2, 1, 3])


def test_dominant_data_regular_dominant(a2):
    d = a2.dominant_data(a2.rho)
    assert d.longest == d.shortest == a2.identity


def test_dominant_data_running_example(a2, lam):
    # orbit scan: the dominant element of W lam
    orbit = {a2.act(w, lam) for w in a2.weyl}
    dominant = [mu for mu in orbit if mu.is_dominant()]
    assert a2.dominant_data(lam).dominant == dominant[0] == a2.weight([1, 1])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["A2", "B2", "C2", "G2", "A3"]), st.data())
def test_dominant_data_properties(token, data):
    rs = _rs(token)
    coords = data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank))
    lam = rs.weight(coords)
    d = rs.dominant_data(lam)
    assert d.dominant.is_dominant()
    assert rs.act(d.longest, d.dominant) == lam
    assert rs.act(d.shortest, d.dominant) == lam
    stab = rs.parabolic_longest(d.stabilizer_nodes)
    assert d.longest.length == d.shortest.length + stab.length
    fixing = [w for w in rs.weyl if rs.act(w, d.dominant) == lam]
    assert d.longest.length == max(w.length for w in fixing)
    assert d.shortest.length == min(w.length for w in fixing)


# --- weights ---------------------------------------------------------------------

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=100, deadline=None)
@given(st.lists(fractions, min_size=2, max_size=2), st.lists(fractions, min_size=2, max_size=2),
       st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_weight_arithmetic(a, b, c):
    x, y = Weight(tuple(a)), Weight(tuple(b))
    h = Coroot(tuple(c))
    assert x + y - y == x
    assert -(-x) == x
    assert hash(Weight(tuple(a))) == hash(x)
    assert pair(x + y, h) == pair(x, h) + pair(y, h)
    assert pair(2 * x, h) == 2 * pair(x, h)


def test_weight_integrality():
    assert Weight((1, -2)).is_integral()
    assert not Weight((Fraction(1, 2), 0)).is_integral()
