from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxwalk.errors import DimensionMismatch
from coxwalk.roots import build_root_system
from coxwalk.weyl import (act, enumerate_group, inverse, left_descents,
                          longest_element, multiply, theta_ascent, weyl_group)

TAGS = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"]


def matrix_bfs(rs):
    """Oracle: BFS over integer reflection matrices acting on root coordinates."""
    n = rs.rank
    A = np.array(rs.cartan, dtype=np.int64)
    gens = []
    for i in range(n):
        S = np.eye(n, dtype=np.int64)
        S[i, :] -= A[i, :]
        gens.append(S)
    seen = {np.eye(n, dtype=np.int64).tobytes(): 0}
    layer = [np.eye(n, dtype=np.int64)]
    lengths = [0]
    d = 0
    while layer:
        d += 1
        nxt = []
        for M in layer:
            for S in gens:
                P = S @ M
                k = P.tobytes()
                if k not in seen:
                    seen[k] = d
                    nxt.append(P)
        lengths += [d] * len(nxt)
        layer = nxt
    return Counter(lengths)


@pytest.mark.parametrize("tag", TAGS)
def test_length_distribution_matches_oracle(tag):
    rs = build_root_system(tag)
    G = weyl_group(rs)
    assert Counter(G.length.tolist()) == matrix_bfs(rs)
    assert list(G.length) == sorted(G.length)


def test_enumeration_examples():
    a2 = enumerate_group(build_root_system("A2"))
    assert [w.length for w in a2] == [0, 1, 1, 2, 2, 3]
    b2 = enumerate_group(build_root_system("B2"))
    assert len(b2) == 8 and max(w.length for w in b2) == 4
    assert len(enumerate_group(build_root_system("A3"))) == 24


@pytest.mark.parametrize("tag", TAGS)
def test_length_counts_inversions(tag):
    rs = build_root_system(tag)
    for w in weyl_group(rs):
        neg = sum(1 for a in rs.positive_roots
                  if all(x <= 0 for x in w.act_root(a)))
        assert neg == w.length == len(w.inversion_indices())
        assert len(w.word) == w.length


def test_longest_and_act_examples():
    rs = build_root_system("A2")
    G = weyl_group(rs)
    w0 = longest_element(rs)
    assert w0.length == 3 and w0 == G.from_word((1, 2, 1))
    s1 = G.from_word((1,))
    assert act(s1, rs.theta_coroot, "coroot") == (0, 1)
    assert left_descents(G.identity) == frozenset()
    assert left_descents(s1) == frozenset({1})
    with pytest.raises(DimensionMismatch):
        act(s1, (1, 2, 3))


def test_theta_ascent_examples():
    rs = build_root_system("A2")
    G = weyl_group(rs)
    assert theta_ascent(G.identity)
    assert not theta_ascent(G.longest)
    s1 = G.from_word((1,))
    assert theta_ascent(s1)
    assert s1.r_theta_times() == G.from_word((1, 2))


@pytest.mark.parametrize("tag", TAGS)
def test_w0_complement(tag):
    G = weyl_group(build_root_system(tag))
    w0 = G.longest
    for w in G:
        assert (w0 * w).length == w0.length - w.length
        assert left_descents(w) == frozenset(
            i for i in range(1, G.rank + 1) if w.left_mul(i).length < w.length)


@pytest.mark.parametrize("tag", TAGS)
def test_theta_ascent_xor(tag):
    G = weyl_group(build_root_system(tag))
    for w in G:
        assert theta_ascent(w) != theta_ascent(w.r_theta_times())
        assert theta_ascent(w) == ((G.r_theta * w).length > w.length)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(TAGS), st.data())
def test_group_axioms_and_pairing(tag, data):
    rs = build_root_system(tag)
    G = weyl_group(rs)
    pick = st.integers(0, G.order - 1)
    u, v, x = (G[data.draw(pick)] for _ in range(3))
    assert (u * v) * x == u * (v * x)
    assert multiply(u, inverse(u)) == G.identity
    assert u * G.identity == u
    vec = st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank)
    lam, alpha = data.draw(vec), data.draw(vec)
    assert rs.pair(u.act_coroot(lam), u.act_root(alpha)) == rs.pair(lam, alpha)
    # action is a homomorphism
    assert (u * v).act_root(alpha) == u.act_root(v.act_root(alpha))


def test_from_word_matches_images():
    G = weyl_group(build_root_system("B3"))
    for w in G:
        assert G.from_word(w.word) == w
        assert G.from_images(w.images) == w
        assert G.from_inversions(w.inversion_indices()) == w
