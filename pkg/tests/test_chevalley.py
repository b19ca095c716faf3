import json
from collections import Counter
from itertools import combinations_with_replacement, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qalcove import Coroot, build_root_system, pair
from qalcove.chevalley import (ChevalleyTerm, PartitionTuple, emit_series, par_truncated,
                               partitions, series_json, terms_from_admissible, terms_from_iqls,
                               verify_identity)
from qalcove.iqls import shape_context
from qalcove.reforder import suitable_chain


def _brute_partitions(n, max_len, max_part):
    out = set()
    for k in range(0, max_len + 1):
        for parts in combinations_with_replacement(range(1, max_part + 1), k):
            if sum(parts) == n:
                out.add(tuple(sorted(parts, reverse=True)))
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 9), st.integers(0, 4), st.integers(1, 9))
def test_partitions_against_brute_force(n, max_len, max_part):
    got = list(partitions(n, max_len, max_part))
    assert len(got) == len(set(got))
    assert set(got) == _brute_partitions(n, max_len, max_part)
    assert all(list(p) == sorted(p, reverse=True) for p in got)


def test_par_examples(a2, lam):
    assert [c.parts for c in par_truncated(a2.weight([0, 0]), 5)] == [((), ())]
    got = par_truncated(lam, 2)
    assert [c.parts[1] for c in got] == [(), (1,), (1, 1), (2,)]
    assert all(c.parts[0] == () for c in got)
    chi = PartitionTuple(((), (2, 1)))
    assert chi.size == 3 and chi.iota == Coroot((0, 2))
    with pytest.raises(ValueError):
        par_truncated(lam, -1)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-2, 3), min_size=2, max_size=3), st.integers(0, 5))
def test_par_truncated_counts(coords, N):
    rs = build_root_system("A", len(coords))
    lam = rs.weight(coords)
    got = par_truncated(lam, N)
    bounds = [max(c, 0) for c in coords]
    expected = 0
    for sizes in product(range(N + 1), repeat=len(coords)):
        if sum(sizes) <= N:
            count = 1
            for n, b in zip(sizes, bounds):
                count *= len(_brute_partitions(n, b, max(n, 1)))
            expected += count
    assert len(got) == expected
    keys = [(c.size, c.parts) for c in got]
    assert keys == sorted(keys)


def test_terms_from_admissible_examples(a2, chain, s1):
    terms = terms_from_admissible(a2, s1, chain)
    assert len(terms) == 12
    assert ChevalleyTerm(1, -1, a2.weight([0, 0]), s1, Coroot((0, 1))) in terms
    assert ChevalleyTerm(-1, 0, a2.weight([1, 1]), a2.identity, Coroot((1, 0))) in terms
    zero = a2.weight([0, 0])
    only = terms_from_admissible(a2, s1, suitable_chain(a2, zero))
    assert only == [ChevalleyTerm(1, 0, zero, s1, Coroot((0, 0)))]


def test_terms_from_iqls_examples(a2, ctx, s1):
    terms = terms_from_iqls(ctx, s1)
    assert len(terms) == 12
    # eta = (s1, s1s2; s1s2; 0, 1/2, 1), u = e: nega 0, l(e) - l(s1) = -1, so the sign is -1
    assert ChevalleyTerm(-1, -1, a2.weight([0, 0]), a2.identity, Coroot((1, 1))) in terms
    zero = a2.weight([0, 0])
    assert terms_from_iqls(shape_context(a2, zero), s1) == [
        ChevalleyTerm(1, 0, zero, s1, Coroot((0, 0)))]


def test_identity_running_example(a2, lam, order, s1):
    report = verify_identity(a2, lam, s1, order)
    assert report["equal"] and report["lhs_terms"] == report["rhs_terms"] == 12
    assert report["diff"] == {"admissible_only": [], "iqls_only": []}
    assert report["unverifiable"]
    json.dumps(report)


def test_identity_zero_weight(a2):
    for w in a2.weyl:
        assert verify_identity(a2, a2.weight([0, 0]), w)["equal"]


def test_identity_b2_all_w():
    rs = build_root_system("B", 2)
    lam = rs.weight([-1, 1])
    for w in rs.weyl:
        report = verify_identity(rs, lam, w)
        assert report["equal"], report["diff"]


def test_sign_consistency(a2):
    for coords in product(range(-2, 3), repeat=2):
        lam = a2.weight(coords)
        ctx = shape_context(a2, lam)
        chain = suitable_chain(a2, lam, ctx.order)
        for w in a2.weyl:
            lhs = Counter(terms_from_admissible(a2, w, chain))
            rhs = Counter(terms_from_iqls(ctx, w))
            assert lhs == rhs


def test_identity_fails_on_g2_collision():
    rs = build_root_system("G", 2)
    lam = rs.weight([-2, 2])
    report = verify_identity(rs, lam, rs.identity)
    assert not report["equal"]
    assert len(report["diff"]["admissible_only"]) == 2 and report["diff"]["iqls_only"] == []
    relaxed = shape_context(rs, lam).enumerate(distinct_y=False)
    assert verify_identity(rs, lam, rs.identity, paths=relaxed)["equal"]


# --- series -----------------------------------------------------------------------------------

def test_series_zero_weight(a2, s1):
    zero = Coroot((0, 0))
    got = emit_series(a2, a2.weight([0, 0]), s1, zero, 3)
    assert got == [{"sign": 1, "q_exponent": "0", "weight": ["0", "0"], "chi": [[], []],
                    "gch_index": {"direction": "s1", "translation": [0, 0]}}]


def test_series_counts_and_prefix(a2, lam, s1):
    zero = Coroot((0, 0))
    n0 = emit_series(a2, lam, s1, zero, 0)
    n1 = emit_series(a2, lam, s1, zero, 1)
    n2 = emit_series(a2, lam, s1, zero, 2)
    assert (len(n0), len(n1), len(n2)) == (12, 24, 48)
    assert n1[:12] == n0 and n2[:24] == n1


def test_series_shift(a2, lam, s1):
    xi = Coroot((1, 0))
    shift = -pair(lam, xi)
    base = emit_series(a2, lam, s1, Coroot((0, 0)), 1)
    moved = emit_series(a2, lam, s1, xi, 1)
    for a, b in zip(base, moved):
        assert int(b["q_exponent"]) == int(a["q_exponent"]) + shift
        assert b["gch_index"]["translation"] == [x + y for x, y in zip(
            a["gch_index"]["translation"], xi.coords)]
    for entry in base:
        size = sum(sum(p) for p in entry["chi"])
        if size:
            assert entry["gch_index"]["translation"][1] >= entry["chi"][1][0]


def test_series_sources_agree(a2, lam, s1):
    key = lambda e: json.dumps(e, sort_keys=True)
    a = sorted(map(key, emit_series(a2, lam, s1, Coroot((0, 0)), 2, source="alcove")))
    b = sorted(map(key, emit_series(a2, lam, s1, Coroot((0, 0)), 2, source="iqls")))
    assert a == b
    with pytest.raises(ValueError):
        emit_series(a2, lam, s1, Coroot((0, 0)), 0, source="other")


def test_series_json_is_stable(a2, lam, s1):
    one = series_json(emit_series(a2, lam, s1, Coroot((0, 0)), 1))
    two = series_json(emit_series(a2, lam, s1, Coroot((0, 0)), 1))
    assert one == two and json.loads(one)
