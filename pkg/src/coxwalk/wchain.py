"""The Markov chain on the finite Weyl group and what it predicts.

From ``w`` the chain moves to ``s_i w`` for every left descent ``i`` and to
``r_theta w`` when that is longer than ``w``; each such edge carries
probability ``1/r`` (``r = rank + 1``) and the remaining mass stays put.
Weighted schemes replace ``1/r`` by ``a_i / sum(a)`` with ``a_0 = 1`` on
the ``r_theta`` edge.

Everything in this module is exact; floats appear only in unit vectors
and the radial speed.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod

import numpy as np

from .errors import NoSuchEdge, NotIrreducible, ZeroDirection, NotDominant
from .rational import clear_denominators, fmt, is_proportional, solve
from .roots import RootSystem
from .weyl import WeylElement, weyl_group

WEIGHT_SCHEMES = ("uniform", "marks", "comarks")


def _weights(rs: RootSystem, scheme: str) -> tuple[int, ...]:
    """Integer weights ``(a_0, a_1, ..., a_n)`` for the generators."""
    if scheme == "uniform":
        return (1,) * (rs.rank + 1)
    if scheme == "marks":
        return (1,) + tuple(rs.marks)
    if scheme == "comarks":
        return (1,) + tuple(rs.comarks)
    raise ValueError(f"unknown weight scheme {scheme!r}; "
                     f"choose from {WEIGHT_SCHEMES}")


@dataclass(frozen=True)
class TransitionMatrix:
    """Sparse exact transition matrix on the enumerated Weyl group."""

    rs: RootSystem
    scheme: str
    rows: tuple[dict[int, Fraction], ...]
    edge_weight: tuple[Fraction, ...]  # probability of generator 0..n

    @property
    def group(self):
        return weyl_group(self.rs)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, key) -> Fraction:
        w, v = (k.index if isinstance(k, WeylElement) else k for k in key)
        return self.rows[w].get(v, Fraction(0))

    def dense(self) -> np.ndarray:
        P = np.zeros((self.size, self.size))
        for w, row in enumerate(self.rows):
            for v, p in row.items():
                P[w, v] = float(p)
        return P

    def edges(self):
        """Non-loop edges ``(w, v, p)`` of the chain graph."""
        for w, row in enumerate(self.rows):
            for v, p in row.items():
                if v != w:
                    yield w, v, p


def build_chain(rs: RootSystem, weights: str = "uniform") -> TransitionMatrix:
    a = _weights(rs, weights)
    total = sum(a)
    q = tuple(Fraction(x, total) for x in a)
    G = weyl_group(rs)
    rows = []
    for w in range(G.order):
        row: dict[int, Fraction] = {}
        stay = Fraction(1)
        for i in range(1, rs.rank + 1):
            v = int(G.lmul[i - 1, w])
            if G.length[v] < G.length[w]:
                row[v] = row.get(v, 0) + q[i]
                stay -= q[i]
        v = int(G.rtheta[w])
        if G.length[v] > G.length[w]:
            row[v] = row.get(v, 0) + q[0]
            stay -= q[0]
        if stay:
            row[w] = row.get(w, 0) + stay
        rows.append(row)
    return TransitionMatrix(rs, weights, tuple(rows), q)


def is_strongly_connected(P: TransitionMatrix) -> bool:
    succ = [[] for _ in range(P.size)]
    pred = [[] for _ in range(P.size)]
    for w, v, _ in P.edges():
        succ[w].append(v)
        pred[v].append(w)

    def reach(adj):
        seen = {0}
        queue = deque([0])
        while queue:
            for v in adj[queue.popleft()]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen)

    return reach(succ) == P.size and reach(pred) == P.size


def is_aperiodic(P: TransitionMatrix) -> bool:
    # enough for an irreducible chain: one state with a self-loop
    return any(row.get(w, 0) > 0 for w, row in enumerate(P.rows))


@dataclass(frozen=True)
class Distribution:
    """Exact probability vector on ``W``, indexed by element index."""

    rs: RootSystem
    values: tuple[Fraction, ...]

    def __getitem__(self, w) -> Fraction:
        return self.values[w.index if isinstance(w, WeylElement) else w]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def items(self):
        G = weyl_group(self.rs)
        return [(G[k], v) for k, v in enumerate(self.values)]

    def to_json_list(self) -> list[dict]:
        return [{"word": w.word_str(), "value": fmt(v)} for w, v in self.items()]


def is_stationary(P: TransitionMatrix, zeta) -> bool:
    """Exact check of ``zeta P = zeta``."""
    acc = [Fraction(0)] * P.size
    for w, row in enumerate(P.rows):
        for v, p in row.items():
            acc[v] += zeta[w] * p
    return all(a == z for a, z in zip(acc, zeta))


def stationary_distribution(P: TransitionMatrix) -> Distribution:
    """Unique invariant distribution of ``P`` by an exact rational solve."""
    if not is_strongly_connected(P):
        raise NotIrreducible("chain graph is not strongly connected")
    if not is_aperiodic(P):
        raise NotIrreducible("chain is periodic")
    n = P.size
    # (P^T - I) zeta = 0 with the last equation replaced by sum(zeta) = 1
    M = [[Fraction(0)] * n for _ in range(n)]
    for w, row in enumerate(P.rows):
        for v, p in row.items():
            M[v][w] += p
    for k in range(n):
        M[k][k] -= 1
    M[n - 1] = [Fraction(1)] * n
    b = [Fraction(0)] * (n - 1) + [Fraction(1)]
    zeta = solve(M, b)
    if not is_stationary(P, zeta) or any(z <= 0 for z in zeta):
        raise NotIrreducible("solve did not return a positive invariant vector")
    return Distribution(P.rs, tuple(zeta))


def stationary(rs: RootSystem, weights: str = "uniform") -> Distribution:
    return stationary_distribution(build_chain(rs, weights))


@dataclass(frozen=True)
class DirectionVector:
    """A direction in ``V`` with exact coroot coordinates."""

    rs: RootSystem
    exact: tuple[Fraction, ...]
    coords: tuple[int, ...]  # coprime integer multiple of ``exact``

    @property
    def unit(self) -> np.ndarray:
        from .walker import unit
        return unit(self.rs, self.coords)

    def to_json(self) -> dict:
        return {"coords": list(self.coords),
                "unit": [float(f"{x:.12g}") for x in self.unit]}


def psi(rs: RootSystem, zeta) -> DirectionVector:
    """Limit direction ``sum zeta(w) w^{-1}(theta^vee)`` over theta-ascents."""
    G = weyl_group(rs)
    d = [Fraction(0)] * rs.rank
    for w in G:
        if w.theta_ascent():
            img = w.inverse().act_coroot(rs.theta_coroot)
            for k in range(rs.rank):
                d[k] += zeta[w] * img[k]
    if not any(d):
        raise ZeroDirection("psi vanished")
    pairs = [sum(d[a] * int(rs.cartan[a, i]) for a in range(rs.rank))
             for i in range(rs.rank)]
    if any(p < 0 for p in pairs):
        raise NotDominant(f"psi = {d} is not dominant")
    return DirectionVector(rs, tuple(d), tuple(clear_denominators(d)))


def chamber_probabilities(rs: RootSystem, zeta) -> Distribution:
    """``Prob(X eventually in C_w) = zeta(w^{-1} w_0)``."""
    G = weyl_group(rs)
    w0 = G.longest
    return Distribution(rs, tuple(zeta[w.inverse() * w0] for w in G))


def ergodic_edge_rate(P: TransitionMatrix, zeta, w, u) -> Fraction:
    """Long-run frequency ``zeta(w) P(w, u)`` of traversing the edge ``w -> u``."""
    w = w.index if isinstance(w, WeylElement) else w
    u = u.index if isinstance(u, WeylElement) else u
    if w == u or u not in P.rows[w]:
        raise NoSuchEdge((w, u))
    return zeta[w] * P.rows[w][u]


def radial_speed(rs: RootSystem, d) -> tuple[float, Fraction]:
    """Distance travelled per unit length in direction ``d``.

    Returns ``(speed, speed**2)``; the square is exact.  The translation by
    an integral multiple of ``d`` has length ``<-mu, 2 rho>`` with ``mu`` the
    anti-dominant representative of ``-d``.
    """
    from .affine import antidominant_sort

    coords = d.coords if isinstance(d, DirectionVector) else tuple(d)
    v = clear_denominators([Fraction(x) for x in coords])
    mu, _ = antidominant_sort(rs, tuple(-x for x in v))
    length = -rs.pair(mu, rs.two_rho)
    sq = rs.coroot_inner(v, v) / (length * length)
    return math.sqrt(sq), sq


# --------------------------------------------------------------------------
# reduced-word chain and conjecture probes
# --------------------------------------------------------------------------

def path_count_matrix(rs: RootSystem) -> np.ndarray:
    """Unnormalized chain counting reduced extensions (no loops).

    From ``w`` each left descent and the theta-ascent contribute one path.
    """
    G = weyl_group(rs)
    M = np.zeros((G.order, G.order))
    for w, row in enumerate(build_chain(rs).rows):
        for v in row:
            if v != w:
                M[w, v] += 1.0
    return M


def perron_vector(M: np.ndarray, iterations: int = 20000, tol: float = 1e-14
                  ) -> tuple[float, np.ndarray]:
    """Left Perron eigenvector of a nonnegative irreducible matrix."""
    n = len(M)
    # adding the identity removes any periodicity without moving eigenvectors
    A = M + np.eye(n)
    x = np.full(n, 1.0 / n)
    for _ in range(iterations):
        y = x @ A
        y /= y.sum()
        if np.max(np.abs(y - x)) < tol:
            x = y
            break
        x = y
    lam = float((x @ M).sum() / x.sum())
    return lam, x


def rho_in_v(rs: RootSystem) -> tuple[Fraction, ...]:
    """``rho`` moved to ``V`` by the invariant form, in coroot coordinates.

    ``alpha`` corresponds to ``(|alpha|^2 / 2) alpha^vee``.
    """
    out = [Fraction(0)] * rs.rank
    for a, c in zip(rs.positive_roots, rs.positive_coroots):
        scale = rs.root_norm2(a) / 4
        for k in range(rs.rank):
            out[k] += scale * c[k]
    return tuple(out)


def conjecture_probes(rs: RootSystem) -> dict:
    """Observed facts about ``zeta`` for each weight scheme.

    Nothing here asserts a conjecture; the report states what was found.
    """
    G = weyl_group(rs)
    w0 = G.w0
    report: dict = {"type": rs.name, "schemes": {}}
    for scheme in WEIGHT_SCHEMES:
        zeta = stationary(rs, scheme)
        vals = zeta.values
        ratios = [v / vals[w0] for v in vals]
        d = psi(rs, zeta)
        chambers = chamber_probabilities(rs, zeta)
        hi, lo = max(chambers.values), min(chambers.values)
        report["schemes"][scheme] = {
            "ratios": [fmt(r) for r in ratios],
            "integral": all(r.denominator == 1 for r in ratios),
            "argmax": G[max(range(G.order), key=lambda k: ratios[k])].word_str(),
            "ratio_id": fmt(ratios[0]),
            "psi": list(d.coords),
            "psi_parallel_rho_vee": is_proportional(d.exact, rs.rho_vee),
            "psi_parallel_rho": is_proportional(d.exact, rho_in_v(rs)),
            "chamber_max_over_min": fmt(hi / lo),
        }
    if rs.family == "A":
        n = rs.rank + 1
        report["binomial_product"] = prod(comb(n, k) for k in range(n))
    # reduced-word chain: Perron vector of the loop-free path count matrix
    lam, x = perron_vector(path_count_matrix(rs))
    xr = x / x[w0]
    ch = np.array([x[(G[k].inverse() * G.longest).index] for k in range(G.order)])
    report["reduced_word_chain"] = {
        "perron_root": lam,
        "ratio_id": float(xr[0]),
        "max_ratio": float(xr.max()),
        "chamber_max_over_min": float(ch.max() / ch.min()),
    }
    ratios_seen = [Fraction(report["schemes"]["uniform"]["chamber_max_over_min"]),
                   report["reduced_word_chain"]["chamber_max_over_min"]]
    report["ninety_six_appears"] = any(abs(float(r) - 96) < 1e-6
                                       for r in ratios_seen)
    return report


def report_json(rs: RootSystem, weights: str = "uniform") -> str:
    zeta = stationary(rs, weights)
    d = psi(rs, zeta)
    ch = chamber_probabilities(rs, zeta)
    return json.dumps({
        "type": rs.name,
        "weights": weights,
        "zeta": zeta.to_json_list(),
        "psi": d.to_json(),
        "chambers": ch.to_json_list(),
    })
