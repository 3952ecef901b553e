"""Affine Weyl group elements ``x = w t_lam`` and their alcoves.

Conventions (checked against breadth-first word lengths in the tests):

* ``w t_lam`` acts on ``V`` by ``v -> w(v + lam)`` and on affine roots by
  ``w t_lam (alpha + n delta) = w alpha + (n - <lam, alpha>) delta``.
* The alcove of ``x`` is ``A_x = x^{-1}(A0)``, so ``A_{t_lam} = A0 - lam``
  and ``A_{s_i x}`` is adjacent to ``A_x``.
* ``s_0 = r_theta t_{-theta^vee}``, so ``s_0 (w t_lam)`` is
  ``(r_theta w) t_{lam - w^{-1} theta^vee}``.
* ``l(w t_lam) = sum_{alpha > 0} |<lam, alpha> + [w alpha < 0]|``.

Generator ``0`` is the affine generator; ``1..n`` are Bourbaki labels.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, ZeroRealPart
from .roots import RootSystem
from .weyl import WeylElement, weyl_group


@dataclass(frozen=True)
class AffineRoot:
    """Real affine root ``alpha + n delta``."""

    alpha: tuple[int, ...]
    n: int

    def __post_init__(self):
        if not any(self.alpha):
            raise ZeroRealPart("imaginary roots are not supported")

    def is_positive(self) -> bool:
        positive = next(x for x in self.alpha if x) > 0
        return self.n >= 0 if positive else self.n > 0


@dataclass(frozen=True)
class AffineElement:
    """``w t_lam`` with ``lam`` in simple-coroot coordinates."""

    w: WeylElement
    lam: tuple[int, ...]

    def __post_init__(self):
        if len(self.lam) != self.w.rs.rank:
            raise DimensionMismatch("lambda length does not match rank")
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))

    @property
    def rs(self) -> RootSystem:
        return self.w.rs

    def __repr__(self):
        return f"AffineElement({self.w!r}, {self.lam})"

    def __mul__(self, other: AffineElement) -> AffineElement:
        # (w t_a)(v t_b) = w v t_{v^{-1} a + b}
        shifted = other.w.inverse().act_coroot(self.lam)
        return AffineElement(self.w * other.w,
                             tuple(a + b for a, b in zip(shifted, other.lam)))

    # convenience forwarding
    def length(self) -> int:
        return length(self)

    def inverse(self) -> AffineElement:
        return inverse_affine(self)

    def is_grassmannian(self) -> bool:
        return is_affine_grassmannian(self)

    def left_mul(self, i: int) -> AffineElement:
        return left_mul_gen(self, i)[0]

    def to_json(self) -> dict:
        return {"word": list(reduced_word(self)),
                "type": self.w.word_str(),
                "lambda": list(self.lam)}


def identity(rs: RootSystem) -> AffineElement:
    return AffineElement(weyl_group(rs).identity, (0,) * rs.rank)


def translation(rs: RootSystem, lam) -> AffineElement:
    return AffineElement(weyl_group(rs).identity, tuple(lam))


def s0(rs: RootSystem) -> AffineElement:
    return AffineElement(weyl_group(rs).r_theta,
                         tuple(-x for x in rs.theta_coroot))


def generator(rs: RootSystem, i: int) -> AffineElement:
    if i == 0:
        return s0(rs)
    return AffineElement(weyl_group(rs).identity.left_mul(i), (0,) * rs.rank)


def from_word(rs: RootSystem, word) -> AffineElement:
    """Product ``s_{a_1} ... s_{a_k}`` of affine generators."""
    x = identity(rs)
    for a in reversed(tuple(word)):
        x = left_mul_gen(x, a)[0]
    return x


def pairings(x: AffineElement) -> np.ndarray:
    """``<lam, alpha>`` for every positive root ``alpha``."""
    rs = x.rs
    lam = np.asarray(x.lam, dtype=np.int64)
    m = rs.num_positive
    return lam @ rs.cartan @ rs.root_array[:m].T


def _neg_mask(w: WeylElement) -> np.ndarray:
    m = w.rs.num_positive
    return w.group.perm[w.index, :m] >= m


def act_affine(x: AffineElement, r: AffineRoot) -> AffineRoot:
    """``w t_lam (alpha + n delta) = w alpha + (n - <lam, alpha>) delta``."""
    rs = x.rs
    if len(r.alpha) != rs.rank:
        raise DimensionMismatch("root length does not match rank")
    return AffineRoot(x.w.act_root(r.alpha), r.n - rs.pair(x.lam, r.alpha))


def simple_affine_root(rs: RootSystem, i: int) -> AffineRoot:
    if i == 0:
        return AffineRoot(tuple(-a for a in rs.theta), 1)
    return AffineRoot(rs.simple_root(i), 0)


def inverse_affine(x: AffineElement) -> AffineElement:
    """``(w t_lam)^{-1} = w^{-1} t_{-w lam}``."""
    return AffineElement(x.w.inverse(),
                         tuple(-v for v in x.w.act_coroot(x.lam)))


def left_mul_gen(x: AffineElement, i: int) -> tuple[AffineElement, bool]:
    """Return ``(s_i x, s_i x > x)``."""
    rs = x.rs
    w = x.w
    if i == 0:
        g = w.inverse().root_image_index(rs.theta_index)
        shift = rs.coroot_array[g]
        y = AffineElement(w.r_theta_times(),
                          tuple(int(a - b) for a, b in zip(x.lam, shift)))
    elif 1 <= i <= rs.rank:
        y = AffineElement(w.left_mul(i), x.lam)
    else:
        raise ValueError(f"generator {i} out of range")
    return y, _is_up(x, i)


def _is_up(x: AffineElement, i: int) -> bool:
    # x^{-1} alpha_i = beta + (c + <lam, beta>) delta with beta = w^{-1} alpha_i
    # (c = 0) or beta = -w^{-1} theta (c = 1); read off its sign.
    rs = x.rs
    m = rs.num_positive
    G = x.w.group
    winv = G.inv[x.w.index]
    lam = x.lam
    if i == 0:
        g = int(G.perm[winv, rs.theta_index])
        k = g % m
        val = _lam_pair(rs, lam, k)
        return val <= 0 if g < m else val >= -1
    b = int(G.perm[winv, i - 1])
    val = _lam_pair(rs, lam, b % m)
    return val >= 0 if b < m else val < 0


def _lam_pair(rs: RootSystem, lam, k: int) -> int:
    root = rs.positive_roots[k]
    A = rs.cartan
    n = rs.rank
    return sum(lam[a] * int(A[a, c]) * root[c]
               for a in range(n) if lam[a] for c in range(n) if root[c])


def is_up_by_root_action(x: AffineElement, i: int) -> bool:
    """``s_i x > x`` decided by the sign of ``x^{-1} alpha_i`` directly."""
    return act_affine(inverse_affine(x), simple_affine_root(x.rs, i)).is_positive()


def length(x: AffineElement) -> int:
    p = pairings(x)
    return int(np.abs(p + _neg_mask(x.w)).sum())


def up_moves(x: AffineElement) -> frozenset[int]:
    return frozenset(i for i in range(x.rs.rank + 1) if _is_up(x, i))


def is_affine_grassmannian(x: AffineElement) -> bool:
    p = pairings(x)
    if np.any(p > 0):
        return False
    return not np.any(_neg_mask(x.w) & (p >= 0))


def grassmannian_up_moves(x: AffineElement) -> frozenset[int]:
    return frozenset(i for i in up_moves(x)
                     if is_affine_grassmannian(left_mul_gen(x, i)[0]))


def type_of(x: AffineElement) -> WeylElement:
    return x.w


def is_regular(x: AffineElement) -> bool:
    return not np.any(pairings(x) == 0)


def antidominant_sort(rs: RootSystem, lam) -> tuple[tuple[int, ...], WeylElement]:
    """Return ``(mu, u)`` with ``mu = u lam`` anti-dominant, ``u`` minimal."""
    G = weyl_group(rs)
    u = G.identity
    lam = tuple(lam)
    while True:
        for i in range(1, rs.rank + 1):
            if rs.pair(lam, rs.simple_root(i)) > 0:
                lam = rs.reflect_coroot(i - 1, lam)
                u = u.left_mul(i)
                break
        else:
            return lam, u


def chamber_of(x: AffineElement) -> WeylElement | None:
    """``w`` such that ``x = v t_{w^{-1} mu}`` with ``mu`` regular anti-dominant.

    The alcove of such an ``x`` lies in the Weyl chamber ``C_w``.  Returns
    None when ``lam`` is not regular.
    """
    if not is_regular(x):
        return None
    _, u = antidominant_sort(x.rs, x.lam)
    return u


def alcove_chamber(x: AffineElement) -> WeylElement:
    """Weyl chamber containing the alcove, defined for every ``x``."""
    neg = np.nonzero(shi_levels(x) < 0)[0]
    return weyl_group(x.rs).from_inversions(neg.tolist())


def fundamental_centroid(rs: RootSystem) -> tuple[Fraction, ...]:
    """Centroid of ``A0``: average of ``0`` and ``omega_i^vee / a_i``."""
    n = rs.rank
    Ainv = _inverse_cartan_T(rs)
    verts = [[Fraction(0)] * n]
    for i in range(n):
        # omega_i^vee in coroot coordinates is column i of (A^T)^{-1}
        verts.append([Ainv[k][i] / rs.marks[i] for k in range(n)])
    return tuple(sum(v[k] for v in verts) / (n + 1) for k in range(n))


def _inverse_cartan_T(rs: RootSystem) -> list[list[Fraction]]:
    from .rational import solve_matrix

    n = rs.rank
    AT = [[Fraction(int(rs.cartan[j, i])) for j in range(n)] for i in range(n)]
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return solve_matrix(AT, eye, backend="fraction")


def centroid(x: AffineElement) -> tuple[Fraction, ...]:
    """Centroid of the alcove ``A_x = x^{-1}(A0)`` in coroot coordinates."""
    c0 = fundamental_centroid(x.rs)
    moved = x.w.inverse().act_coroot(c0)
    return tuple(Fraction(a) - b for a, b in zip(moved, x.lam))


def centroid_direction(x: AffineElement) -> tuple[Fraction, ...]:
    return centroid(x)


def shi_levels(x: AffineElement) -> np.ndarray:
    """Integer ``k`` per positive root with ``k < <v, alpha> < k + 1`` on ``A_x``."""
    return -pairings(x) - _neg_mask(x.w)


def affine_ball(rs: RootSystem, max_length: int) -> list[list[AffineElement]]:
    """All elements by length shell, via breadth-first search from id."""
    shells = [[identity(rs)]]
    seen = {shells[0][0]}
    for _ in range(max_length):
        nxt = []
        for x in shells[-1]:
            for i in range(rs.rank + 1):
                y, up = left_mul_gen(x, i)
                if up and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        shells.append(nxt)
    return shells


def bfs_lengths(rs: RootSystem, max_length: int) -> dict[AffineElement, int]:
    """Graph distance from id in the Cayley graph, up to ``max_length``."""
    start = identity(rs)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d == max_length:
            continue
        for i in range(rs.rank + 1):
            y = left_mul_gen(x, i)[0]
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def reduced_word(x: AffineElement) -> tuple[int, ...]:
    """A reduced word ``(a_1, ..., a_k)`` with ``x = s_{a_1} ... s_{a_k}``."""
    word = []
    while True:
        for i in range(x.rs.rank + 1):
            y, up = left_mul_gen(x, i)
            if not up:
                word.append(i)
                x = y
                break
        else:
            return tuple(word)
