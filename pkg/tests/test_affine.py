import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxwalk import affine as af
from coxwalk.errors import DimensionMismatch, ZeroRealPart
from coxwalk.roots import build_root_system
from coxwalk.weyl import weyl_group

SMALL = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"]


def affine_matrix(rs, i):
    """Oracle: generator i as an (n+1)x(n+1) affine map on coroot coordinates.

    s_i v = v - <v, alpha_i> alpha_i^vee, s_0 v = v - (<v, theta> - 1) theta^vee.
    """
    n = rs.rank
    A = np.array(rs.cartan, dtype=np.int64)
    M = np.eye(n + 1, dtype=np.int64)
    if i == 0:
        root, corr, shift = np.array(rs.theta), np.array(rs.theta_coroot), 1
    else:
        root = np.array(rs.simple_root(i))
        corr, shift = root, 0
    pairing_row = A @ root  # <v, root> = v . (A root)
    M[:n, :n] -= np.outer(corr, pairing_row)
    M[:n, n] += shift * corr
    return M


def element_matrix(x):
    """v -> w(v + lam) as an affine matrix."""
    rs = x.rs
    n = rs.rank
    W = np.array([x.w.act_coroot(tuple(int(k == j) for k in range(n)))
                  for j in range(n)], dtype=np.int64).T
    M = np.eye(n + 1, dtype=np.int64)
    M[:n, :n] = W
    M[:n, n] = W @ np.array(x.lam)
    return M


@pytest.mark.parametrize("tag", SMALL)
def test_left_mul_matches_affine_maps(tag):
    rs = build_root_system(tag)
    rng = random.Random(3)
    for _ in range(200):
        word = [rng.randint(0, rs.rank) for _ in range(rng.randint(0, 12))]
        x = af.from_word(rs, word)
        M = np.eye(rs.rank + 1, dtype=np.int64)
        for a in word:
            M = M @ affine_matrix(rs, a)
        assert np.array_equal(element_matrix(x), M)


def test_act_affine_examples():
    rs = build_root_system("A2")
    r = af.AffineRoot((1, 0), 3)
    assert af.act_affine(af.identity(rs), r) == r
    t = af.translation(rs, (-1, -1))
    a0 = af.simple_affine_root(rs, 0)
    assert af.act_affine(t, a0) == af.AffineRoot((-1, -1), -1)
    s0 = af.s0(rs)
    theta = af.AffineRoot(rs.theta, 0)
    composed = af.act_affine(af.AffineElement(s0.w, (0, 0)),
                             af.act_affine(af.translation(rs, s0.lam), theta))
    assert af.act_affine(s0, theta) == composed == af.AffineRoot((-1, -1), 2)
    with pytest.raises(ZeroRealPart):
        af.AffineRoot((0, 0), 1)
    with pytest.raises(DimensionMismatch):
        af.act_affine(s0, af.AffineRoot((1, 0, 0), 0))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_act_affine_composition(tag, data):
    rs = build_root_system(tag)
    word = st.lists(st.integers(0, rs.rank), max_size=8)
    x = af.from_word(rs, data.draw(word))
    y = af.from_word(rs, data.draw(word))
    k = data.draw(st.integers(0, 2 * rs.num_positive - 1))
    r = af.AffineRoot(tuple(int(v) for v in rs.root_array[k]),
                      data.draw(st.integers(-4, 4)))
    assert af.act_affine(x * y, r) == af.act_affine(x, af.act_affine(y, r))


@pytest.mark.parametrize("tag", SMALL)
def test_fast_up_test_matches_root_action(tag):
    rs = build_root_system(tag)
    for shell in af.affine_ball(rs, 6):
        for x in shell:
            for i in range(rs.rank + 1):
                assert af.left_mul_gen(x, i)[1] == af.is_up_by_root_action(x, i)


@pytest.mark.parametrize("tag", SMALL)
def test_length_formula_matches_bfs(tag):
    rs = build_root_system(tag)
    L = 8 if rs.rank <= 2 else 6
    for x, d in af.bfs_lengths(rs, L).items():
        assert af.length(x) == d


def test_length_examples():
    rs = build_root_system("A2")
    assert af.length(af.identity(rs)) == 0
    t = af.translation(rs, tuple(-c for c in rs.theta_coroot))
    assert af.length(t) == 4
    assert af.from_word(rs, (0, 1, 2)).length() == 3
    y, up = af.left_mul_gen(af.s0(rs), 0)
    assert y == af.identity(rs) and not up


@pytest.mark.parametrize("tag", ["A2", "B2", "G2", "A3"])
def test_grassmannian_length(tag):
    rs = build_root_system(tag)
    count = 0
    for shell in af.affine_ball(rs, 7):
        for x in shell:
            if af.is_affine_grassmannian(x):
                count += 1
                assert x.length() == -rs.pair(x.lam, rs.two_rho) - x.w.length
                # oracle: minimal in its coset x W, i.e. no right descent in W
                for i in range(1, rs.rank + 1):
                    right = x * af.generator(rs, i)
                    assert right.length() > x.length()
    assert count > 5


def test_grassmannian_examples():
    rs = build_root_system("A2")
    G = weyl_group(rs)
    assert af.is_affine_grassmannian(af.identity(rs))
    assert af.is_affine_grassmannian(af.s0(rs))
    assert not af.is_affine_grassmannian(af.AffineElement(G.from_word((1,)), (0, 0)))


def test_up_moves_and_types():
    rs = build_root_system("A3")
    assert af.up_moves(af.identity(rs)) == frozenset(range(4))
    assert af.type_of(af.s0(rs)) == weyl_group(rs).r_theta
    for shell in af.affine_ball(rs, 5):
        for x in shell:
            assert af.up_moves(x)


def test_chamber_of():
    rs = build_root_system("A2")
    G = weyl_group(rs)
    w0 = G.longest
    mu = (-2, -2)  # -2 rho^vee, regular anti-dominant
    x = af.AffineElement(w0, w0.inverse().act_coroot(mu))
    assert af.chamber_of(x) == w0
    assert af.chamber_of(af.identity(rs)) is None
    for w in G:
        lam = w.inverse().act_coroot((-3, -2))
        x = af.AffineElement(G.identity, lam)
        assert af.chamber_of(x) == w
        assert af.alcove_chamber(x) == w


@pytest.mark.parametrize("tag", SMALL)
def test_inverse(tag):
    rs = build_root_system(tag)
    for shell in af.affine_ball(rs, 5):
        for x in shell:
            y = af.inverse_affine(x)
            assert af.inverse_affine(y) == x
            assert y.length() == x.length()
            assert x * y == af.identity(rs)


@pytest.mark.parametrize("tag", ["A2", "B2", "A3"])
def test_regular_chamber_of_inverse(tag):
    # x = v t_{w^{-1} mu} gives x^{-1} = v^{-1} t_{-v w^{-1} mu}, and
    # -mu = w0 mu' with mu' anti-dominant, so the chamber is w0 w v^{-1}
    rs = build_root_system(tag)
    rng = random.Random(5)
    w0 = weyl_group(rs).longest
    checked = 0
    for _ in range(1000):
        x = af.from_word(rs, [rng.randint(0, rs.rank) for _ in range(60)])
        c = af.chamber_of(x)
        if c is None:
            continue
        checked += 1
        assert af.chamber_of(af.inverse_affine(x)) == w0 * c * x.w.inverse()
        assert af.alcove_chamber(x) == c
    assert checked > 100


def test_centroid():
    rs = build_root_system("A2")
    c0 = af.fundamental_centroid(rs)
    assert c0 == (F(1, 3), F(1, 3))
    x = af.translation(rs, (1, 0))
    assert af.centroid(x) == (F(-2, 3), F(1, 3))


@pytest.mark.parametrize("tag", ["A2", "B2", "G2", "A3", "C3"])
def test_centroid_inside_alcove(tag):
    rs = build_root_system(tag)
    for shell in af.affine_ball(rs, 5):
        for x in shell:
            c = af.centroid(x)
            k = af.shi_levels(x)
            for j, a in enumerate(rs.positive_roots):
                v = rs.pair(c, a)
                assert k[j] < v < k[j] + 1
