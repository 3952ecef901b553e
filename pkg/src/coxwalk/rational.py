"""Exact rational helpers: formatting, dense solves, sparse checks.

Dense solves go through python-flint when it is importable and fall back
to fraction Gaussian elimination otherwise.  Both paths return lists of
:class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularSystem

try:  # pragma: no cover - exercised implicitly
    import flint
except ImportError:  # pragma: no cover
    flint = None

Matrix = Sequence[Sequence[Fraction]]


def fmt(q) -> str:
    """Render a rational as ``"p/q"`` (always with a denominator)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse(s: str) -> Fraction:
    return Fraction(s)


def _to_fmpq(q: Fraction):
    return flint.fmpq(q.numerator, q.denominator)


def _solve_flint(A: Matrix, B: Matrix) -> list[list[Fraction]]:
    n = len(A)
    k = len(B[0])
    M = flint.fmpq_mat(n, n, [_to_fmpq(Fraction(v)) for row in A for v in row])
    R = flint.fmpq_mat(n, k, [_to_fmpq(Fraction(v)) for row in B for v in row])
    try:
        X = M.solve(R)
    except ZeroDivisionError as exc:
        raise SingularSystem(str(exc)) from exc
    return [[Fraction(int(X[i, j].p), int(X[i, j].q)) for j in range(k)]
            for i in range(n)]


def _solve_fraction(A: Matrix, B: Matrix) -> list[list[Fraction]]:
    n = len(A)
    k = len(B[0])
    M = [[Fraction(v) for v in A[i]] + [Fraction(v) for v in B[i]]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("singular matrix in solve()")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        prow = [v * inv for v in M[col]]
        M[col] = prow
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                row = M[r]
                M[r] = [a - f * b for a, b in zip(row, prow)]
    return [row[n:n + k] for row in M]


def solve_matrix(A: Matrix, B: Matrix, backend: str | None = None
                 ) -> list[list[Fraction]]:
    """Solve ``A X = B`` exactly.

    ``backend`` is ``"flint"``, ``"fraction"`` or None (flint if present).
    Raises :class:`SingularSystem` when ``A`` is not invertible.
    """
    if len(A) == 0:
        return []
    if any(len(row) != len(A) for row in A):
        raise ValueError("coefficient matrix must be square")
    if backend is None:
        backend = "flint" if flint is not None else "fraction"
    if backend == "flint":
        if flint is None:
            raise RuntimeError("python-flint is not installed")
        return _solve_flint(A, B)
    if backend == "fraction":
        return _solve_fraction(A, B)
    raise ValueError(f"unknown backend {backend!r}")


def solve(A: Matrix, b: Sequence[Fraction], backend: str | None = None
          ) -> list[Fraction]:
    """Solve ``A x = b`` exactly for a single right-hand side."""
    X = solve_matrix(A, [[v] for v in b], backend=backend)
    return [row[0] for row in X]


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers with the same direction."""
    from math import gcd, lcm

    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def is_proportional(u: Sequence, v: Sequence) -> bool:
    """True when ``u = c v`` for some rational ``c > 0``."""
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    if len(u) != len(v):
        return False
    if not any(u) or not any(v):
        return False
    return clear_denominators(u) == clear_denominators(v)
