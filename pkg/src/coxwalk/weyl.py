"""Finite Weyl groups, enumerated as permutations of the root set.

Every element is stored by the permutation it induces on the ``2m`` roots
of its :class:`~coxwalk.roots.RootSystem` (positives first, negatives at
offset ``m``).  The canonical form of an element is the tuple of images of
the simple roots; reduced words ride along as non-canonical attachments.

Elements are numbered breadth-first by length, and within a length by
their lexicographically smallest reduced word.  Generator labels in words
are Bourbaki labels ``1..n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, RankTooLarge
from .roots import MAX_WEYL_ORDER, RootSystem


class WeylGroup:
    """Fully enumerated finite Weyl group with multiplication tables."""

    def __init__(self, rs: RootSystem):
        if rs.order > MAX_WEYL_ORDER:
            raise RankTooLarge(f"|W| = {rs.order} exceeds {MAX_WEYL_ORDER}")
        self.rs = rs
        n, m = rs.rank, rs.num_positive
        self.rank = n
        R = rs.root_array
        index = rs.root_index

        # permutation of all roots induced by each simple reflection
        sperm = np.empty((n, 2 * m), dtype=np.int64)
        for i in range(n):
            for k in range(2 * m):
                sperm[i, k] = index(rs.reflect_root(i, R[k]))
        self.simple_perms = sperm

        ident = np.arange(2 * m, dtype=np.int64)
        perms = [ident]
        words: list[tuple[int, ...]] = [()]
        lengths = [0]
        keys = {ident[:n].tobytes(): 0}
        layer = [0]
        while layer:
            nxt = []
            for i in range(n):
                for p in layer:
                    q = sperm[i][perms[p]]
                    key = q[:n].tobytes()
                    if key not in keys:
                        keys[key] = len(perms)
                        nxt.append(len(perms))
                        perms.append(q)
                        words.append((i + 1,) + words[p])
                        lengths.append(lengths[p] + 1)
            layer = nxt
        if len(perms) != rs.order:
            raise AssertionError(
                f"enumerated {len(perms)} elements, expected {rs.order}")

        self.order = len(perms)
        self.perm = np.array(perms, dtype=np.int64)
        self.perm.setflags(write=False)
        self.words = words
        self.length = np.array(lengths, dtype=np.int64)
        self._keys = keys

        self.lmul = np.empty((n, self.order), dtype=np.int64)
        for i in range(n):
            composed = sperm[i][self.perm]
            for w in range(self.order):
                self.lmul[i, w] = keys[composed[w, :n].tobytes()]
        inv = np.argsort(self.perm, axis=1)
        self.inv = np.array([keys[row[:n].tobytes()] for row in inv],
                            dtype=np.int64)

        # r_theta as a root permutation, then r_theta * w for all w
        th = rs.theta_index
        rperm = np.array([index(R[k] - rs.pairing_table[th, k] * R[th])
                          for k in range(2 * m)], dtype=np.int64)
        composed = rperm[self.perm]
        self.rtheta = np.array([keys[row[:n].tobytes()] for row in composed],
                               dtype=np.int64)
        self.rtheta_index = keys[rperm[:n].tobytes()]
        self.w0 = int(np.argmax(self.length))
        for arr in (self.length, self.lmul, self.inv, self.rtheta):
            arr.setflags(write=False)

    # -- element access ---------------------------------------------------
    def __len__(self):
        return self.order

    def __getitem__(self, index: int) -> WeylElement:
        return WeylElement(self, int(index))

    def __iter__(self):
        return (WeylElement(self, i) for i in range(self.order))

    def elements(self) -> list[WeylElement]:
        return list(self)

    @property
    def identity(self) -> WeylElement:
        return WeylElement(self, 0)

    @property
    def longest(self) -> WeylElement:
        return WeylElement(self, self.w0)

    @property
    def r_theta(self) -> WeylElement:
        return WeylElement(self, self.rtheta_index)

    def index_of_perm(self, perm) -> int:
        return self._keys[np.asarray(perm, dtype=np.int64)[:self.rank].tobytes()]

    def from_word(self, word) -> WeylElement:
        """Element ``s_{a_1} s_{a_2} ... s_{a_k}`` for ``word = (a_1, ..)``."""
        w = 0
        for a in reversed(tuple(word)):
            w = int(self.lmul[a - 1, w])
        return WeylElement(self, w)

    def from_inversions(self, inversions) -> WeylElement:
        """Element whose set of positive roots sent negative is given."""
        m = self.rs.num_positive
        target = np.zeros(m, dtype=bool)
        target[list(inversions)] = True
        hits = np.nonzero(np.all((self.perm[:, :m] >= m) == target, axis=1))[0]
        if len(hits) != 1:
            raise KeyError("no element with that inversion set")
        return WeylElement(self, int(hits[0]))

    def from_images(self, images) -> WeylElement:
        """Element from the images of the simple roots (root vectors)."""
        idx = np.array([self.rs.root_index(a) for a in images], dtype=np.int64)
        return WeylElement(self, self._keys[idx.tobytes()])

    def __repr__(self):
        return f"WeylGroup({self.rs.name}, order={self.order})"


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystem) -> WeylGroup:
    return WeylGroup(rs)


@dataclass(frozen=True)
class WeylElement:
    """An element of a finite Weyl group (a handle into its group)."""

    group: WeylGroup = field(repr=False, compare=False)
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise IndexError(self.index)

    def __eq__(self, other):
        return (isinstance(other, WeylElement) and other.group is self.group
                and other.index == self.index)

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __lt__(self, other):
        # deterministic order: length, then smallest reduced word
        return self.index < other.index

    # -- basic data -------------------------------------------------------
    @property
    def rs(self) -> RootSystem:
        return self.group.rs

    @property
    def length(self) -> int:
        return int(self.group.length[self.index])

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.words[self.index]

    @property
    def images(self) -> tuple[tuple[int, ...], ...]:
        """Canonical form: the images of the simple roots."""
        R = self.rs.root_array
        p = self.group.perm[self.index]
        return tuple(tuple(int(x) for x in R[p[i]]) for i in range(self.rs.rank))

    def word_str(self) -> str:
        return " ".join(str(a) for a in self.word)

    def __repr__(self):
        w = "".join(f"s{a}" for a in self.word) or "id"
        return f"<{self.rs.name}:{w}>"

    # -- group structure --------------------------------------------------
    def _same(self, other):
        if not isinstance(other, WeylElement) or other.group is not self.group:
            raise DimensionMismatch("elements of different Weyl groups")

    def __mul__(self, other: WeylElement) -> WeylElement:
        self._same(other)
        g = self.group
        composed = g.perm[self.index][g.perm[other.index]]
        return WeylElement(g, g.index_of_perm(composed))

    def inverse(self) -> WeylElement:
        return WeylElement(self.group, int(self.group.inv[self.index]))

    def left_mul(self, i: int) -> WeylElement:
        """``s_i * self`` for a finite generator label ``i``."""
        return WeylElement(self.group, int(self.group.lmul[i - 1, self.index]))

    def left_descents(self) -> frozenset[int]:
        g = self.group
        return frozenset(i for i in range(1, g.rank + 1)
                         if g.length[g.lmul[i - 1, self.index]]
                         < g.length[self.index])

    def theta_ascent(self) -> bool:
        """True iff ``l(r_theta w) > l(w)``."""
        g = self.group
        return bool(g.length[g.rtheta[self.index]] > g.length[self.index])

    def r_theta_times(self) -> WeylElement:
        return WeylElement(self.group, int(self.group.rtheta[self.index]))

    # -- actions ----------------------------------------------------------
    def root_image_index(self, k: int) -> int:
        return int(self.group.perm[self.index, k])

    def act_root(self, root) -> tuple[int, ...]:
        """Linear action on a root-lattice vector (simple-root basis)."""
        rs = self.rs
        if len(root) != rs.rank:
            raise DimensionMismatch("vector length does not match rank")
        p = self.group.perm[self.index]
        out = np.zeros(rs.rank, dtype=object)
        for j in range(rs.rank):
            if root[j]:
                out = out + root[j] * rs.root_array[p[j]].astype(object)
        return tuple(out.tolist())

    def act_coroot(self, coroot) -> tuple:
        """Linear action on a coroot-lattice vector (simple-coroot basis)."""
        rs = self.rs
        if len(coroot) != rs.rank:
            raise DimensionMismatch("vector length does not match rank")
        p = self.group.perm[self.index]
        out = np.zeros(rs.rank, dtype=object)
        for j in range(rs.rank):
            if coroot[j]:
                out = out + coroot[j] * rs.coroot_array[p[j]].astype(object)
        return tuple(out.tolist())

    def act(self, vector, kind: str = "root") -> tuple:
        if kind == "root":
            return self.act_root(vector)
        if kind == "coroot":
            return self.act_coroot(vector)
        raise ValueError("kind must be 'root' or 'coroot'")

    def inversion_indices(self) -> list[int]:
        """Indices of positive roots sent to negative roots."""
        m = self.rs.num_positive
        p = self.group.perm[self.index, :m]
        return [k for k in range(m) if p[k] >= m]


def enumerate_group(rs: RootSystem) -> list[WeylElement]:
    return weyl_group(rs).elements()


def longest_element(rs: RootSystem) -> WeylElement:
    return weyl_group(rs).longest


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v


def inverse(w: WeylElement) -> WeylElement:
    return w.inverse()


def left_descents(w: WeylElement) -> frozenset[int]:
    return w.left_descents()


def act(w: WeylElement, vector, kind: str = "root") -> tuple:
    return w.act(vector, kind)


def theta_ascent(w: WeylElement) -> bool:
    return w.theta_ascent()
