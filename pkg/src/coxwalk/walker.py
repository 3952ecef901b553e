"""Reduced random walks on alcoves: Monte Carlo and exact step-N laws.

Variants

* ``free``: move uniformly to one of the covers ``s_i x > x``.
* ``delayed``: pick one of the ``r = rank + 1`` generators uniformly and
  apply it only if it increases length.
* ``grassmannian``: like ``free`` but restricted to covers that stay
  affine Grassmannian.
* ``delayed-grassmannian``: the lazy version of the previous one.

Monte Carlo runs are split into blocks of :data:`BLOCK` trials.  Block
``b`` draws its uniforms from ``SeedSequence(seed).spawn(...)[b]``, so the
result is a pure function of ``(seed, trials, N)`` no matter how many
threads execute the blocks.
"""
from __future__ import annotations

import csv
import io
import json
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import affine as af
from ._kernels import VARIANTS, WalkTables, run_walks
from .errors import StateSpaceTooLarge
from .rational import fmt
from .roots import RootSystem
from .weyl import WeylElement, weyl_group

BLOCK = 1024
DEFAULT_SEED = 20240611
EXACT_MAX_RANK = 3
EXACT_MAX_STEPS = 12


def _variant_code(variant: str) -> int:
    try:
        return VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}; "
                         f"choose from {sorted(VARIANTS)}") from None


_TABLES: dict[RootSystem, WalkTables] = {}


def tables(rs: RootSystem) -> WalkTables:
    t = _TABLES.get(rs)
    if t is None:
        t = _TABLES.setdefault(rs, WalkTables.from_group(weyl_group(rs)))
    return t


# --------------------------------------------------------------------------
# single trajectories
# --------------------------------------------------------------------------

@dataclass
class Trajectory:
    """One walk ``X_0 = id, X_1, ..., X_N``."""

    rs: RootSystem
    seed: int
    variant: str
    elements: list[af.AffineElement]
    generators: list[int] = field(default_factory=list)  # -1 for a stay

    def __len__(self):
        return len(self.elements)

    @property
    def final(self) -> af.AffineElement:
        return self.elements[-1]

    def types(self) -> list[WeylElement]:
        return [x.w for x in self.elements]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        n = self.rs.rank
        writer.writerow(["step", "word"] + [f"lambda{i + 1}" for i in range(n)]
                        + ["length"])
        word: list[int] = []
        for k, x in enumerate(self.elements):
            if k and self.generators[k - 1] >= 0:
                word.insert(0, self.generators[k - 1])
            writer.writerow([k, " ".join(map(str, word))] + list(x.lam)
                            + [len(word)])
        return buf.getvalue()


def _uniforms(seed, trials: int, steps: int) -> np.ndarray:
    gen = np.random.Generator(np.random.PCG64(seed))
    return gen.random((trials, steps))


def simulate(rs: RootSystem, N: int, variant: str = "free",
             seed: int = DEFAULT_SEED, backend: str | None = None
             ) -> Trajectory:
    """Run one walk of ``N`` steps and return every visited element."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    code = _variant_code(variant)
    t = tables(rs)
    U = _uniforms(np.random.SeedSequence(seed), 1, N)
    _, _, gens, _ = run_walks(t, code, U, record=True, backend=backend)
    x = af.identity(rs)
    elements = [x]
    used = []
    for g in gens[0].tolist():
        if g >= 0:
            x = af.left_mul_gen(x, g)[0]
        elements.append(x)
        used.append(int(g))
    return Trajectory(rs, seed, variant, elements, used)


# --------------------------------------------------------------------------
# batches
# --------------------------------------------------------------------------

def run_batch(rs: RootSystem, N: int, trials: int, variant: str = "free",
              seed: int = DEFAULT_SEED, threads: int = 1,
              backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of ``trials`` independent walks.

    Returns ``(W, L)``: Weyl indices and coroot coordinates of ``X_N``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    code = _variant_code(variant)
    t = tables(rs)
    nblocks = -(-trials // BLOCK)
    seeds = np.random.SeedSequence(seed).spawn(nblocks)
    sizes = [min(BLOCK, trials - b * BLOCK) for b in range(nblocks)]

    def work(b):
        U = _uniforms(seeds[b], sizes[b], N)
        W, L, _, _ = run_walks(t, code, U, backend=backend)
        return W, L

    if threads > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, range(nblocks)))
    else:
        parts = [work(b) for b in range(nblocks)]
    return (np.concatenate([p[0] for p in parts]),
            np.concatenate([p[1] for p in parts]))


def _chambers_from_arrays(rs: RootSystem, L: np.ndarray) -> np.ndarray:
    """Chamber index per row (``-1`` when ``lam`` is not regular)."""
    G = weyl_group(rs)
    m = rs.num_positive
    P = L @ (rs.cartan @ rs.root_array[:m].T)
    regular = np.all(P != 0, axis=1)
    # lam = w^{-1} mu with mu anti-dominant: w^{-1} sends negative roots to
    # the roots alpha with <lam, alpha> > 0.
    positive = P > 0
    inv_sets = G.perm[:, :m] >= m
    lookup = {row.tobytes(): k for k, row in enumerate(inv_sets)}
    out = np.full(len(L), -1, dtype=np.int64)
    for r in np.nonzero(regular)[0]:
        winv = lookup[positive[r].tobytes()]
        out[r] = G.inv[winv]
    return out


def empirical_chamber_frequencies(rs: RootSystem, N: int, trials: int,
                                  seed: int = DEFAULT_SEED,
                                  variant: str = "free", threads: int = 1
                                  ) -> dict:
    """Fraction of endpoints in each chamber ``C_w``.

    The key ``None`` holds the fraction of non-regular ("undecided")
    endpoints, which are not assigned to any chamber.
    """
    _, L = run_batch(rs, N, trials, variant, seed, threads)
    ch = _chambers_from_arrays(rs, L)
    G = weyl_group(rs)
    counts = np.bincount(ch[ch >= 0], minlength=G.order)
    freq = {G[k]: counts[k] / trials for k in range(G.order)}
    freq[None] = float(np.sum(ch < 0)) / trials
    return freq


def _centroid_floats(rs: RootSystem, W: np.ndarray, L: np.ndarray) -> np.ndarray:
    G = weyl_group(rs)
    n = rs.rank
    c0 = np.array([float(c) for c in af.fundamental_centroid(rs)])
    # columns of M[w] are the images w(alpha_j^vee)
    M = rs.coroot_array[G.perm[:, :n]].transpose(0, 2, 1).astype(float)
    moved = np.einsum("wij,j->wi", M[G.inv[W]], c0)
    return moved - L


def coroot_gram(rs: RootSystem) -> np.ndarray:
    """Float Gram matrix of the simple coroots in the fixed invariant form."""
    n = rs.rank
    e = np.array([float(x) for x in rs.half_norms])
    return rs.cartan.astype(float) / e[None, :] * np.ones((n, 1))


def unit(rs: RootSystem, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / math.sqrt(v @ coroot_gram(rs) @ v)


def fold_dominant(rs: RootSystem, V: np.ndarray) -> np.ndarray:
    """Reflect each row into the dominant chamber ``<v, alpha_i> >= 0``."""
    V = np.array(V, dtype=float, copy=True)
    A = rs.cartan.astype(float)
    for _ in range(rs.num_positive + 1):
        pairs = V @ A
        moved = False
        for i in range(rs.rank):
            bad = pairs[:, i] < 0
            if bad.any():
                V[bad, i] -= pairs[bad, i]
                pairs = V @ A
                moved = True
        if not moved:
            break
    return V


def empirical_direction(rs: RootSystem, N: int, trials: int,
                        seed: int = DEFAULT_SEED, variant: str = "free",
                        threads: int = 1) -> np.ndarray:
    """Mean unit direction of the endpoint centroids, folded to the
    dominant chamber, in simple-coroot coordinates."""
    W, L = run_batch(rs, N, trials, variant, seed, threads)
    C = fold_dominant(rs, _centroid_floats(rs, W, L))
    Gm = coroot_gram(rs)
    norms = np.sqrt(np.einsum("ti,ij,tj->t", C, Gm, C))
    mean = (C / norms[:, None]).mean(axis=0)
    return unit(rs, mean)


def angle_degrees(rs: RootSystem, u, v) -> float:
    u, v = unit(rs, u), unit(rs, v)
    c = float(np.clip(u @ coroot_gram(rs) @ v, -1.0, 1.0))
    return math.degrees(math.acos(c))


def type_sequence(rs: RootSystem, steps: int, seed: int = DEFAULT_SEED,
                  variant: str = "delayed-grassmannian",
                  backend: str | None = None) -> np.ndarray:
    """Weyl indices ``Z_0..Z_steps`` of one long walk."""
    U = _uniforms(np.random.SeedSequence(seed), 1, steps)
    _, _, _, types = run_walks(tables(rs), _variant_code(variant), U,
                               record=True, backend=backend)
    return types[0]


def projected_kernel(rs: RootSystem, sample) -> np.ndarray:
    """Transition counts ``K[w, v]`` of the type sequence of a walk.

    ``sample`` is a :class:`Trajectory` or a sequence of Weyl indices.
    """
    if isinstance(sample, Trajectory):
        seq = np.array([x.w.index for x in sample.elements], dtype=np.int64)
    else:
        seq = np.asarray(sample, dtype=np.int64)
    order = weyl_group(rs).order
    K = np.zeros((order, order), dtype=np.int64)
    np.add.at(K, (seq[:-1], seq[1:]), 1)
    return K


# --------------------------------------------------------------------------
# exact distributions
# --------------------------------------------------------------------------

@dataclass
class StepDistribution:
    """Exact law of ``X_N``."""

    rs: RootSystem
    N: int
    variant: str
    probs: dict[af.AffineElement, Fraction]

    def __getitem__(self, x):
        return self.probs.get(x, Fraction(0))

    def __len__(self):
        return len(self.probs)

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))

    def to_json(self) -> str:
        rows = sorted(self.probs.items(),
                      key=lambda kv: (kv[0].length(), af.reduced_word(kv[0])))
        return json.dumps({
            "type": self.rs.name, "variant": self.variant, "N": self.N,
            "distribution": [dict(x.to_json(), probability=fmt(p))
                             for x, p in rows]})


def _guard(rs: RootSystem, N: int):
    if N < 0:
        raise ValueError("N must be nonnegative")
    if rs.rank > EXACT_MAX_RANK or N > EXACT_MAX_STEPS:
        raise StateSpaceTooLarge(
            f"exact computation limited to rank <= {EXACT_MAX_RANK} and "
            f"N <= {EXACT_MAX_STEPS}")


def exact_distribution(rs: RootSystem, N: int, variant: str = "free"
                       ) -> StepDistribution:
    """Law of ``X_N`` by dynamic programming over the walk's transitions."""
    _guard(rs, N)
    if variant not in ("free", "delayed"):
        raise ValueError("exact distributions support 'free' and 'delayed'")
    r = rs.rank + 1
    dist = {af.identity(rs): Fraction(1)}
    for _ in range(N):
        nxt: dict = defaultdict(Fraction)
        for x, p in dist.items():
            moves = [af.left_mul_gen(x, i) for i in range(r)]
            if variant == "delayed":
                share = p / r
                for y, up in moves:
                    nxt[y if up else x] += share
            else:
                ups = [y for y, up in moves if up]
                share = p / len(ups)
                for y in ups:
                    nxt[y] += share
        dist = dict(nxt)
    return StepDistribution(rs, N, variant, dist)


def reduced_word_counts(rs: RootSystem, N: int) -> dict[af.AffineElement, int]:
    """Number of reduced words of each element of length ``N``."""
    _guard(rs, N)
    counts = {af.identity(rs): 1}
    for _ in range(N):
        nxt: dict = defaultdict(int)
        for x, c in counts.items():
            for i in range(rs.rank + 1):
                y, up = af.left_mul_gen(x, i)
                if up:
                    nxt[y] += c
        counts = dict(nxt)
    return counts


def reduced_word_measure(rs: RootSystem, N: int) -> dict[af.AffineElement, Fraction]:
    counts = reduced_word_counts(rs, N)
    total = sum(counts.values())
    return {x: Fraction(c, total) for x, c in counts.items()}
