"""Shi arrangement regions and the absorbing chain they induce on walks.

Each positive root ``alpha`` cuts ``V`` into three bands: ``<v, alpha> < 0``
(band 0), ``0 < <v, alpha> < 1`` (band 1) and ``<v, alpha> > 1`` (band 2).
A region is a realizable band vector.  The regions with no band 1 entry are
the chamber regions ``B_w``; once the walk enters one it stays there.

The graph ``Gamma`` has vertices ``(region, type)``.  Its edges are read off
a witness alcove of each vertex; every further alcove met during
construction is checked to give the same edge profile.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import affine as af
from .errors import NonStabilizing, ProfileMismatch, RankTooLarge
from .rational import fmt, solve, solve_matrix
from .roots import RootSystem
from .weyl import WeylElement, weyl_group

MAX_RANK = 3
MAX_EXPLORATION = 40


@dataclass(frozen=True)
class ShiRegion:
    bands: tuple[int, ...]
    chamber: WeylElement | None = field(default=None, compare=False)

    @property
    def is_chamber_translate(self) -> bool:
        return self.chamber is not None

    @property
    def is_fundamental(self) -> bool:
        return all(b == 1 for b in self.bands)

    def key(self) -> str:
        return "".join(map(str, self.bands))

    def __repr__(self):
        return f"ShiRegion({self.key()})"


def bands_of(x: af.AffineElement) -> tuple[int, ...]:
    k = af.shi_levels(x)
    return tuple(int(b) for b in np.where(k < 0, 0, np.where(k == 0, 1, 2)))


def _chamber_of_bands(rs: RootSystem, bands) -> WeylElement | None:
    if 1 in bands:
        return None
    # band 2 exactly where w alpha > 0
    neg = [k for k, b in enumerate(bands) if b == 0]
    return weyl_group(rs).from_inversions(neg)


def region_of(x: af.AffineElement) -> ShiRegion:
    bands = bands_of(x)
    return ShiRegion(bands, _chamber_of_bands(x.rs, bands))


def shi_region_count(rs: RootSystem) -> int:
    """Classical count ``(h + 1)^rank`` (external check, not derived here)."""
    return (rs.coxeter_number + 1) ** rs.rank


def _guard(rs: RootSystem):
    if rs.rank > MAX_RANK:
        raise RankTooLarge(f"Shi computations limited to rank <= {MAX_RANK}")


def _regions_in_ball(shells) -> set[tuple[int, ...]]:
    return {bands_of(x) for shell in shells for x in shell}


def enumerate_regions(rs: RootSystem, L: int | None = None) -> list[ShiRegion]:
    """All Shi regions, found by classifying alcoves of bounded length.

    With ``L`` given only that ball is explored.  Otherwise ``L`` grows
    until the count is unchanged over two increments and equals
    ``(h + 1)^rank``.
    """
    _guard(rs)
    if L is not None:
        found = _regions_in_ball(af.affine_ball(rs, L))
    else:
        target = shi_region_count(rs)
        shells = af.affine_ball(rs, 0)
        history = []
        found = {bands_of(shells[0][0])}
        for length in range(1, MAX_EXPLORATION + 1):
            shells = _extend(rs, shells)
            found |= {bands_of(x) for x in shells[-1]}
            history.append(len(found))
            if (len(history) >= 3 and history[-1] == history[-2] == history[-3]
                    and history[-1] == target):
                break
        else:
            raise NonStabilizing(
                f"region count {history[-1]} did not reach {target} "
                f"by length {MAX_EXPLORATION}")
    return sorted((ShiRegion(b, _chamber_of_bands(rs, b)) for b in found),
                  key=lambda r: r.bands)


def _extend(rs: RootSystem, shells):
    seen = set(shells[-1]) | (set(shells[-2]) if len(shells) > 1 else set())
    nxt = []
    for x in shells[-1]:
        for i in range(rs.rank + 1):
            y, up = af.left_mul_gen(x, i)
            if up and y not in seen:
                seen.add(y)
                nxt.append(y)
    return shells + [nxt]


Vertex = tuple[tuple[int, ...], int]  # (bands, Weyl index)


def vertex_of(x: af.AffineElement) -> Vertex:
    return bands_of(x), x.w.index


def _profile(x: af.AffineElement) -> Counter:
    ups = [y for y, up in (af.left_mul_gen(x, i) for i in range(x.rs.rank + 1))
           if up]
    return Counter(vertex_of(y) for y in ups)


@dataclass
class GammaGraph:
    rs: RootSystem
    vertices: list[Vertex]
    index: dict[Vertex, int]
    edges: dict[int, dict[int, Fraction]]
    absorbing: frozenset[int]
    source: int
    witnesses_checked: int = 0

    def region(self, v: int) -> ShiRegion:
        bands = self.vertices[v][0]
        return ShiRegion(bands, _chamber_of_bands(self.rs, bands))

    def transient(self) -> list[int]:
        return [v for v in range(len(self.vertices)) if v not in self.absorbing]

    def regions(self) -> list[ShiRegion]:
        seen = sorted({b for b, _ in self.vertices})
        return [ShiRegion(b, _chamber_of_bands(self.rs, b)) for b in seen]

    def to_json(self) -> str:
        G = weyl_group(self.rs)
        return json.dumps({
            "type": self.rs.name,
            "vertices": [{"region": "".join(map(str, b)),
                          "type": G[w].word_str(),
                          "absorbing": k in self.absorbing}
                         for k, (b, w) in enumerate(self.vertices)],
            "edges": [{"from": a, "to": b, "p": fmt(p)}
                      for a, row in sorted(self.edges.items())
                      for b, p in sorted(row.items())],
            "source": self.source,
        })


def build_gamma(rs: RootSystem, check_length: int | None = None) -> GammaGraph:
    """Build ``Gamma`` from witnesses and check the edge profiles.

    Every alcove of length at most ``check_length`` (default: the Shi
    exploration bound plus two) lying outside the chamber regions must
    produce the same edge profile as its vertex's witness.
    """
    _guard(rs)
    start = af.identity(rs)
    witness: dict[Vertex, af.AffineElement] = {vertex_of(start): start}
    profiles: dict[Vertex, Counter] = {}
    order = [vertex_of(start)]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        v = vertex_of(x)
        if _chamber_of_bands(rs, v[0]) is not None:
            continue
        prof = _profile(x)
        profiles[v] = prof
        for y, up in (af.left_mul_gen(x, i) for i in range(rs.rank + 1)):
            if up:
                u = vertex_of(y)
                if u not in witness:
                    witness[u] = y
                    order.append(u)
                    queue.append(y)

    if check_length is None:
        check_length = _stable_length(rs) + 2
    checked = 0
    for shell in af.affine_ball(rs, check_length):
        for x in shell:
            v = vertex_of(x)
            if v not in profiles:
                if _chamber_of_bands(rs, v[0]) is None:
                    raise ProfileMismatch(f"alcove {x} reaches unseen vertex")
                continue
            if _profile(x) != profiles[v]:
                raise ProfileMismatch(
                    f"alcoves {witness[v]} and {x} share a vertex but not "
                    f"an edge profile")
            checked += 1

    index = {v: k for k, v in enumerate(order)}
    edges: dict[int, dict[int, Fraction]] = {}
    for v, prof in profiles.items():
        total = sum(prof.values())
        edges[index[v]] = {index[u]: Fraction(c, total) for u, c in prof.items()}
    absorbing = frozenset(k for k, v in enumerate(order) if v not in profiles)
    return GammaGraph(rs, order, index, edges, absorbing, 0, checked)


_STABLE: dict[RootSystem, int] = {}


def _stable_length(rs: RootSystem) -> int:
    if rs not in _STABLE:
        target = shi_region_count(rs)
        shells = af.affine_ball(rs, 0)
        found = {bands_of(shells[0][0])}
        for length in range(1, MAX_EXPLORATION + 1):
            shells = _extend(rs, shells)
            found |= {bands_of(x) for x in shells[-1]}
            if len(found) == target:
                _STABLE[rs] = length
                break
        else:
            raise NonStabilizing("Shi regions not exhausted")
    return _STABLE[rs]


def _hitting(gamma: GammaGraph, targets: set[int]) -> list[Fraction]:
    """Probability of ever reaching ``targets`` from each transient vertex."""
    live = [v for v in gamma.transient() if v not in targets]
    pos = {v: k for k, v in enumerate(live)}
    n = len(live)
    A = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    b = [Fraction(0)] * n
    for v in live:
        for u, p in gamma.edges[v].items():
            if u in targets:
                b[pos[v]] += p
            elif u in pos:
                A[pos[v]][pos[u]] -= p
    x = solve(A, b) if n else []
    out = [Fraction(0)] * len(gamma.vertices)
    for v in targets:
        out[v] = Fraction(1)
    for v, k in pos.items():
        out[v] = x[k]
    return out


def absorption_probabilities(gamma: GammaGraph) -> dict[WeylElement, Fraction]:
    """Probability of ending in each chamber region ``B_w``, for all ``w``.

    Solves for the expected visit counts ``x`` of the transient vertices,
    ``(I - M')^T x = e_source``, then pairs ``x`` with the one-step
    absorption vector of each chamber.
    """
    live = gamma.transient()
    pos = {v: k for k, v in enumerate(live)}
    n = len(live)
    # A = (I - M')^T
    A = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for v in live:
        for u, p in gamma.edges[v].items():
            if u in pos:
                A[pos[u]][pos[v]] -= p
    e = [[Fraction(int(k == pos[gamma.source]))] for k in range(n)]
    x = [row[0] for row in solve_matrix(A, e)]
    G = weyl_group(gamma.rs)
    out = {w: Fraction(0) for w in G}
    for v in live:
        for u, p in gamma.edges[v].items():
            if u in gamma.absorbing:
                out[gamma.region(u).chamber] += x[pos[v]] * p
    return out


def absorption_probability(gamma: GammaGraph, w: WeylElement) -> Fraction:
    return absorption_probabilities(gamma)[w]


def region_hitting_probabilities(gamma: GammaGraph) -> dict[ShiRegion, Fraction]:
    """Probability that the walk ever enters each region."""
    out = {}
    for region in gamma.regions():
        targets = {k for k, (b, _) in enumerate(gamma.vertices)
                   if b == region.bands}
        if gamma.source in targets:
            out[region] = Fraction(1)
        else:
            out[region] = _hitting(gamma, targets)[gamma.source]
    return out


def hitting_json(gamma: GammaGraph) -> str:
    probs = region_hitting_probabilities(gamma)
    return json.dumps({
        "type": gamma.rs.name,
        "regions": [{"bands": r.key(),
                     "chamber": r.chamber.word_str() if r.chamber else None,
                     "probability": fmt(p)} for r, p in probs.items()],
    })
