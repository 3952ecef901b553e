"""Finite crystallographic root systems in the simple-root basis.

Conventions
-----------
Simple roots follow Bourbaki numbering, 1-based in words and 0-based in
arrays.  The Cartan matrix is ``A[i, j] = <alpha_i^vee, alpha_j>``.

======  ======================================  ============================
type    Dynkin diagram (Bourbaki)               highest root coefficients
======  ======================================  ============================
A_n     1 - 2 - ... - n                         1, 1, ..., 1
B_n     1 - ... - (n-1) => n   (n short)        1, 2, ..., 2
C_n     1 - ... - (n-1) <= n   (n long)         2, ..., 2, 1
D_n     1 - ... - (n-2) < (n-1), n              1, 2, ..., 2, 1, 1
G_2     1 <= 2   (1 short)                      3, 2
F_4     1 - 2 => 3 - 4   (3, 4 short)           2, 3, 4, 2
E_6     1 - 3 - 4 - 5 - 6, 2 - 4                1, 2, 2, 3, 2, 1
======  ======================================  ============================

Roots are integer vectors in the simple-root basis and coroots integer
vectors in the simple-coroot basis.  A coroot ``lam`` pairs with a root
``c`` as ``lam @ A @ c``.  Euclidean quantities use the symmetrized form
``(alpha_i, alpha_j) = e_i A[i, j]`` with ``e_i = (alpha_i, alpha_i) / 2``
normalized so that short roots have ``e_i = 1``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, RankTooLarge, UnsupportedType

#: Largest Weyl group order accepted by :func:`build_root_system`.
MAX_WEYL_ORDER = 60_000

_TAG_RE = re.compile(r"^\s*([A-Ga-g])_?(\d+)\s*$")

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL = {("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)}

# classical counts, used as a self-check on the reflection closure
_NUM_POSITIVE = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
    "F": lambda n: 24,
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
}

_WEYL_ORDER = {
    "A": lambda n: math.factorial(n + 1),
    "B": lambda n: 2 ** n * math.factorial(n),
    "C": lambda n: 2 ** n * math.factorial(n),
    "D": lambda n: 2 ** (n - 1) * math.factorial(n),
    "G": lambda n: 12,
    "F": lambda n: 1152,
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
}

_COXETER_NUMBER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "G": lambda n: 6,
    "F": lambda n: 12,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
}


def parse_type(tag: str) -> tuple[str, int]:
    """Parse ``"A3"``, ``"b2"``, ``"G_2"`` into ``("A", 3)`` etc."""
    m = _TAG_RE.match(str(tag))
    if not m:
        raise UnsupportedType(f"cannot parse root system tag {tag!r}")
    family, rank = m.group(1).upper(), int(m.group(2))
    if family in _MIN_RANK:
        if rank < _MIN_RANK[family]:
            raise UnsupportedType(
                f"{family}_{rank} is not supported "
                f"(need rank >= {_MIN_RANK[family]})")
    elif (family, rank) not in _EXCEPTIONAL:
        raise UnsupportedType(f"{family}_{rank} is not a supported type")
    return family, rank


def cartan_matrix(family: str, n: int) -> np.ndarray:
    A = 2 * np.eye(n, dtype=np.int64)

    def link(i, j, aij=-1, aji=-1):
        # 1-based Bourbaki labels
        A[i - 1, j - 1] = aij
        A[j - 1, i - 1] = aji

    if family in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if family == "B":
            link(n - 1, n, -1, -2)
        elif family == "C":
            link(n - 1, n, -2, -1)
    elif family == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif family == "G":
        link(1, 2, -3, -1)
    elif family == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif family == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    else:  # pragma: no cover - guarded by parse_type
        raise UnsupportedType(family)
    return A


def _symmetrizer(A: np.ndarray) -> list[Fraction]:
    """Half squared lengths ``e_i`` with ``e_i A_ij = e_j A_ji``; short = 1."""
    n = len(A)
    e: list[Fraction | None] = [None] * n
    e[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and A[i, j] != 0 and e[j] is None:
                e[j] = e[i] * int(A[i, j]) / int(A[j, i])
                stack.append(j)
    smallest = min(e)
    return [x / smallest for x in e]


class RootSystem:
    """Immutable Cartan datum of a finite crystallographic type.

    Build instances with :func:`build_root_system`; they are cached, so two
    calls with the same tag return the same object.
    """

    def __init__(self, family: str, rank: int):
        self.family = family
        self.rank = rank
        self.name = f"{family}{rank}"
        n = rank
        A = cartan_matrix(family, n)
        A.setflags(write=False)
        self.cartan = A
        self.half_norms = tuple(_symmetrizer(A))

        roots = self._enumerate_positive_roots()
        expected = _NUM_POSITIVE[family](n)
        if len(roots) != expected:
            raise AssertionError(
                f"{self.name}: found {len(roots)} positive roots, "
                f"expected {expected}")
        self.positive_roots: tuple[tuple[int, ...], ...] = tuple(roots)
        self.num_positive = len(roots)
        self.positive_coroots = tuple(self.coroot(a) for a in roots)
        self._root_index = {a: k for k, a in enumerate(roots)}
        m = self.num_positive
        for k, a in enumerate(roots):
            self._root_index[tuple(-x for x in a)] = k + m

        heights = [sum(a) for a in roots]
        top = max(heights)
        if heights.count(top) != 1:
            raise AssertionError("highest root is not unique")
        self.theta_index = heights.index(top)
        self.theta = roots[self.theta_index]
        self.theta_coroot = self.positive_coroots[self.theta_index]
        self.marks = self.theta
        self.comarks = self.theta_coroot
        self.coxeter_number = top + 1
        if self.coxeter_number != _COXETER_NUMBER[family](n):
            raise AssertionError("Coxeter number mismatch")
        self.order = _WEYL_ORDER[family](n)

        two_rho = np.sum(np.array(roots, dtype=np.int64), axis=0)
        two_rho_vee = np.sum(np.array(self.positive_coroots, dtype=np.int64),
                             axis=0)
        self.two_rho = tuple(int(x) for x in two_rho)
        self.two_rho_vee = tuple(int(x) for x in two_rho_vee)
        self.rho = tuple(Fraction(int(x), 2) for x in two_rho)
        self.rho_vee = tuple(Fraction(int(x), 2) for x in two_rho_vee)

        # all roots, positives first; index k + m is the negative of k
        R = np.array(roots + [tuple(-x for x in a) for a in roots],
                     dtype=np.int64)
        Rv = np.array(self.positive_coroots
                      + tuple(tuple(-x for x in a)
                              for a in self.positive_coroots),
                      dtype=np.int64)
        R.setflags(write=False)
        Rv.setflags(write=False)
        self.root_array = R
        self.coroot_array = Rv
        # pairing[j, k] = <coroot_j, root_k>
        P = Rv @ A @ R.T
        P.setflags(write=False)
        self.pairing_table = P

    # -- construction -----------------------------------------------------
    def _enumerate_positive_roots(self) -> list[tuple[int, ...]]:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for a in frontier:
                for i in range(n):
                    b = self.reflect_root(i, a)
                    if all(x >= 0 for x in b) and b not in found:
                        found.add(b)
                        nxt.append(b)
            frontier = nxt
        # simple roots first in Bourbaki order, then by height
        return sorted(found, key=lambda a: (sum(a), tuple(-x for x in a)))

    # -- linear algebra ---------------------------------------------------
    def _check(self, *vectors):
        for v in vectors:
            if len(v) != self.rank:
                raise DimensionMismatch(
                    f"expected a vector of length {self.rank}, got {len(v)}")

    def pair(self, coroot, root) -> int:
        """Canonical pairing ``<coroot, root>`` (coroot basis x root basis)."""
        self._check(coroot, root)
        A = self.cartan
        return sum(coroot[i] * A[i, j] * root[j]
                   for i in range(self.rank) for j in range(self.rank)
                   if coroot[i] and root[j])

    def reflect_root(self, i: int, root) -> tuple[int, ...]:
        """``s_{i+1}`` applied to a root-lattice vector."""
        c = sum(int(self.cartan[i, j]) * root[j] for j in range(self.rank))
        out = list(root)
        out[i] -= c
        return tuple(out)

    def reflect_coroot(self, i: int, coroot) -> tuple[int, ...]:
        """``s_{i+1}`` applied to a coroot-lattice vector."""
        c = sum(coroot[k] * int(self.cartan[k, i]) for k in range(self.rank))
        out = list(coroot)
        out[i] -= c
        return tuple(out)

    def root_norm2(self, root) -> Fraction:
        """Squared length ``(alpha, alpha)`` under the symmetrized form."""
        e = self.half_norms
        A = self.cartan
        n = self.rank
        return sum((e[i] * int(A[i, j]) * root[i] * root[j]
                    for i in range(n) for j in range(n)), Fraction(0))

    def coroot(self, root) -> tuple[int, ...]:
        """Coroot ``2 alpha / (alpha, alpha)`` in the simple-coroot basis."""
        self._check(root)
        nrm = self.root_norm2(root)
        out = []
        for j in range(self.rank):
            x = 2 * root[j] * self.half_norms[j] / nrm
            if x.denominator != 1:
                raise AssertionError("coroot is not integral")
            out.append(int(x))
        return tuple(out)

    def coroot_inner(self, u, v) -> Fraction:
        """Exact inner product of two coroot-basis vectors."""
        self._check(u, v)
        e = self.half_norms
        A = self.cartan
        n = self.rank
        return sum((Fraction(u[i]) * int(A[i, j]) * v[j] / e[j]
                    for i in range(n) for j in range(n)), Fraction(0))

    def coroot_norm(self, v) -> float:
        return math.sqrt(float(self.coroot_inner(v, v)))

    # -- lookup -----------------------------------------------------------
    def root_index(self, root) -> int:
        """Index of a root in :attr:`root_array` (negatives offset by m)."""
        return self._root_index[tuple(int(x) for x in root)]

    def is_root(self, root) -> bool:
        return tuple(int(x) for x in root) in self._root_index

    def simple_root(self, i: int) -> tuple[int, ...]:
        """``alpha_i`` for Bourbaki label ``i`` (1-based)."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def simple_coroot(self, i: int) -> tuple[int, ...]:
        return self.simple_root(i)

    def height(self, root) -> int:
        return int(sum(root))

    def __repr__(self):
        return f"RootSystem({self.name!r})"

    def __reduce__(self):
        return (build_root_system, (self.name,))


@lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystem:
    return RootSystem(family, rank)


def build_root_system(tag: str) -> RootSystem:
    """Construct (or fetch from cache) the root system named by ``tag``.

    Raises :class:`UnsupportedType` for unknown tags and
    :class:`RankTooLarge` when ``|W|`` exceeds :data:`MAX_WEYL_ORDER`.
    """
    family, rank = parse_type(tag)
    order = _WEYL_ORDER[family](rank)
    if order > MAX_WEYL_ORDER:
        raise RankTooLarge(
            f"{family}{rank} has |W| = {order} > {MAX_WEYL_ORDER}")
    return _build(family, rank)


def pair(rs: RootSystem, coroot, root) -> int:
    return rs.pair(coroot, root)
