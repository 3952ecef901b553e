"""n-cores and affine Grassmannian elements of type A_{n-1}.

Conventions

* Boxes ``(r, c)`` (row, column, 0-indexed) have residue ``(c - r) mod n``.
  Residue ``i`` corresponds to the generator ``s_i`` (``s_0`` affine).
* Standard coordinates of a coroot ``sum c_i alpha_i^vee`` are
  ``std[i] += c_i, std[i + 1] -= c_i``.
* ``core(w t_lam)`` is the core whose abacus charges are the standard
  coordinates of ``w lam``.  Its bead positions are ``rows[k] - (k + 1)``;
  runner ``j`` holds positions ``= j mod n``.
* The boundary runs from ``(0, -len(rows))`` to ``(rows[0], 0)`` with the
  two rays attached.  Its point on the anti-diagonal ``x + y = k`` is
  written ``P(k)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import affine as af
from .errors import NotAntiDominant, NotGrassmannian, ZeroDegree
from .roots import build_root_system
from .walker import DEFAULT_SEED, run_batch
from .weyl import weyl_group


@dataclass(frozen=True)
class CorePartition:
    rows: tuple[int, ...]
    n: int

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"not a partition: {rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def empty(cls, n: int) -> CorePartition:
        return cls((), n)

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __len__(self):
        return len(self.rows)

    def residue(self, r: int, c: int) -> int:
        return (c - r) % self.n

    def addable(self, i: int) -> list[int]:
        """Rows that can take one more box of residue ``i``."""
        rows = self.rows
        out = []
        for r in range(len(rows) + 1):
            c = rows[r] if r < len(rows) else 0
            if (r == 0 or c < rows[r - 1]) and (c - r) % self.n == i:
                out.append(r)
        return out

    def removable(self, i: int) -> list[int]:
        rows = self.rows
        out = []
        for r in range(len(rows)):
            below = rows[r + 1] if r + 1 < len(rows) else 0
            if rows[r] > below and (rows[r] - 1 - r) % self.n == i:
                out.append(r)
        return out

    def charges(self) -> tuple[int, ...]:
        """Abacus charges, one per runner (they sum to zero for a core)."""
        n = self.n
        K = len(self.rows)
        beads = [self.rows[k] - (k + 1) for k in range(K)]
        out = []
        for j in range(n):
            vacuum = [s for s in range(-K - 1, -K - 1 - n, -1) if s % n == j]
            top = max([s for s in beads if s % n == j] + vacuum)
            out.append((top - (j - n)) // n)
        return tuple(out)

    def is_core(self) -> bool:
        return not has_removable_ribbon(self.rows, self.n)

    def to_list(self) -> list[int]:
        return list(self.rows)


def has_removable_ribbon(rows, n: int) -> bool:
    """Direct search: is there a bead with an empty slot ``n`` below it?"""
    K = len(rows)
    beads = {rows[k] - (k + 1) for k in range(K)}
    beads |= set(range(-K - 1, -K - 1 - n - 1, -1))
    return any(s - n not in beads for s in beads if s - n >= -K - 1 - n)


def apply_generator(core: CorePartition, i: int) -> tuple[CorePartition, bool]:
    """Add every addable box of residue ``i``; failing that remove every
    removable one.  Returns ``(new_core, grew)``."""
    if not 0 <= i < core.n:
        raise ValueError(f"residue {i} out of range for n = {core.n}")
    rows = list(core.rows)
    add = core.addable(i)
    if add:
        for r in add:
            if r == len(rows):
                rows.append(1)
            else:
                rows[r] += 1
        return CorePartition(tuple(rows), core.n), True
    for r in core.removable(i):
        rows[r] -= 1
    while rows and rows[-1] == 0:
        rows.pop()
    return CorePartition(tuple(rows), core.n), False


def core_from_word(word, n: int) -> CorePartition:
    """Core of ``s_{a_1} ... s_{a_k}``: apply ``a_k`` first."""
    core = CorePartition.empty(n)
    for a in reversed(tuple(word)):
        core = apply_generator(core, a)[0]
    return core


def core_from_charges(charges, n: int) -> CorePartition:
    c = tuple(int(x) for x in charges)
    if len(c) != n or sum(c) != 0:
        raise ValueError("charges must have length n and sum to zero")
    lo = min(n * (cj - 1) + j for j, cj in enumerate(c)) - n
    beads = []
    for j, cj in enumerate(c):
        beads.extend(range(n * (cj - 1) + j, lo - 1, -n))
    beads.sort(reverse=True)
    rows = [beads[k] + (k + 1) for k in range(len(beads))]
    return CorePartition(tuple(r for r in rows if r > 0), n)


def to_standard(coroot) -> tuple[int, ...]:
    n = len(coroot) + 1
    std = [0] * n
    for i, c in enumerate(coroot):
        std[i] += int(c)
        std[i + 1] -= int(c)
    return tuple(std)


def from_standard(std) -> tuple[int, ...]:
    if sum(std) != 0:
        raise ValueError("standard coordinates must sum to zero")
    out, acc = [], 0
    for v in std[:-1]:
        acc += int(v)
        out.append(acc)
    return tuple(out)


def _rs(n: int):
    if n < 2:
        raise ValueError("n must be at least 2")
    return build_root_system(f"A{n - 1}")


def core_from_affine(x: af.AffineElement) -> CorePartition:
    rs = x.rs
    if rs.family != "A":
        raise ValueError("cores are defined for type A only")
    if not af.is_affine_grassmannian(x):
        raise NotGrassmannian(f"{x} is not affine Grassmannian")
    return core_from_charges(to_standard(x.w.act_coroot(x.lam)), rs.rank + 1)


def affine_from_core(core: CorePartition) -> af.AffineElement:
    rs = _rs(core.n)
    nu = from_standard(core.charges())
    mu, u = af.antidominant_sort(rs, nu)
    return af.AffineElement(u.inverse(), mu)


def degree(core: CorePartition) -> int:
    return af.length(affine_from_core(core))


def translation_core(mu_std) -> CorePartition:
    """Core of ``t_mu`` for ``mu`` in standard coordinates."""
    return core_from_charges(mu_std, len(mu_std))


# --------------------------------------------------------------------------
# boundaries and shapes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryProfile:
    """Monotone boundary curve, stored as ``x`` against ``s = x + y``.

    Between the breakpoints ``s`` the curve is linear; below the first
    breakpoint it is the ray ``x = 0`` and above the last it is ``y = 0``.
    """

    s: np.ndarray
    x: np.ndarray
    scale: float = 1.0
    label: str = ""

    def x_at(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        inside = np.interp(s, self.s, self.x)
        out = np.where(s < self.s[0], 0.0, inside)
        return np.where(s > self.s[-1], s, out)

    def vertices(self) -> np.ndarray:
        """Points ``(x, y)`` at the breakpoints."""
        return np.column_stack([self.x, self.s - self.x])

    def corners(self) -> np.ndarray:
        v = self.vertices()
        if len(v) <= 2:
            return v
        d = np.diff(v, axis=0)
        turn = np.abs(d[1:, 0] * d[:-1, 1] - d[1:, 1] * d[:-1, 0]) > 1e-12
        return np.vstack([v[:1], v[1:-1][turn], v[-1:]])

    def to_csv(self) -> str:
        lines = ["x,y"]
        lines += [f"{a:.12g},{b:.12g}" for a, b in self.corners()]
        return "\n".join(lines) + "\n"

    def to_svg_path(self, ray: float = 1.0) -> str:
        v = self.corners()
        pts = [(0.0, v[0, 1] - ray)] + [tuple(p) for p in v] + [(v[-1, 0] + ray, 0.0)]
        # SVG y grows downwards
        return "M " + " L ".join(f"{a:.12g} {-b:.12g}" for a, b in pts)

    def to_svg(self, ray: float = 1.0) -> str:
        v = self.corners()
        w = float(v[-1, 0]) + ray
        h = float(-v[0, 1]) + ray
        return (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'viewBox="-0.05 -0.05 {w + 0.1:.12g} {h + 0.1:.12g}">'
                f'<path d="{self.to_svg_path(ray)}" fill="none" '
                f'stroke="black" stroke-width="{max(w, h) / 400:.12g}"/></svg>\n')


def boundary_points(rows) -> dict[int, tuple[int, int]]:
    """Lattice points ``P(k)`` of the boundary between its two rays."""
    rows = list(rows)
    x, y = 0, -len(rows)
    pts = {x + y: (x, y)}
    for r in range(len(rows) - 1, -1, -1):
        while x < rows[r]:
            x += 1
            pts[x + y] = (x, y)
        y += 1
        pts[x + y] = (x, y)
    return pts


def boundary_point(pts: dict, k: int) -> tuple[int, int]:
    """``P(k)`` with the rays included."""
    if k in pts:
        return pts[k]
    return (0, k) if k < min(pts) else (k, 0)


def boundary_profile(core: CorePartition, scale: float | None = None
                     ) -> BoundaryProfile:
    """Boundary of ``core`` scaled by ``1/scale`` (default: its degree)."""
    if scale is None:
        scale = degree(core)
    if scale == 0:
        raise ZeroDegree("cannot scale the empty core by its degree")
    pts = boundary_points(core.rows)
    ks = sorted(pts)
    s = np.array(ks, dtype=float) / scale
    x = np.array([pts[k][0] for k in ks], dtype=float) / scale
    return BoundaryProfile(s, x, float(scale), f"core n={core.n}")


def profile_distance(D: BoundaryProfile, E: BoundaryProfile) -> float:
    """Sup over anti-diagonals ``x + y = s`` of the distance between the
    two curves.  Both are piecewise linear in ``s``, so the sup is attained
    at a breakpoint."""
    s = np.union1d(D.s, E.s)
    return float(math.sqrt(2.0) * np.max(np.abs(D.x_at(s) - E.x_at(s))))


def limit_alpha(n: int) -> Fraction:
    return Fraction(6, (n - 1) * n * (n + 1))


def limit_curve_vertices(n: int) -> list[tuple[Fraction, Fraction]]:
    """Corners of ``C_rho``; predicted limit conditional on psi || rho."""
    if n < 2:
        raise ValueError("n must be at least 2")
    a = limit_alpha(n)

    def tri(k):
        return Fraction(k * (k + 1), 2)

    return [(tri(k) * a, -tri(n - 1 - k) * a) for k in range(n)]


def limit_curve(n: int) -> BoundaryProfile:
    v = limit_curve_vertices(n)
    s = np.array([float(a + b) for a, b in v])
    x = np.array([float(a) for a, _ in v])
    return BoundaryProfile(s, x, 1.0, f"C_rho n={n} (assumes psi parallel to rho)")


def limit_curve_area(n: int) -> Fraction:
    """Area between ``C_rho`` and the axes, by the shoelace formula."""
    v = [(Fraction(0), Fraction(0))] + limit_curve_vertices(n)
    twice = sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(v, v[1:] + v[:1]))
    return abs(twice) / 2


# --------------------------------------------------------------------------
# slopes
# --------------------------------------------------------------------------

def _check_antidominant(mu, n: int):
    mu = tuple(int(m) for m in mu)
    if len(mu) != n or sum(mu) != 0:
        raise NotAntiDominant("mu must have n standard coordinates summing to 0")
    if any(a > b for a, b in zip(mu, mu[1:])):
        raise NotAntiDominant(f"{mu} is not anti-dominant")
    return mu


def slope_profile(mu, n: int) -> list[tuple[Fraction, tuple[int, int]]]:
    """Slope ``(n - i)/i`` on anti-diagonals ``[n mu_i + i - 2, n mu_{i+1} + i - 2]``."""
    mu = _check_antidominant(mu, n)
    return [(Fraction(n - i, i), (n * mu[i - 1] + i - 2, n * mu[i] + i - 2))
            for i in range(1, n)]


def measured_slopes(core: CorePartition, intervals) -> list[Fraction | None]:
    """Chord slope of the boundary across each diagonal interval."""
    pts = boundary_points(core.rows)
    out = []
    for a, b in intervals:
        (x1, y1), (x2, y2) = boundary_point(pts, a), boundary_point(pts, b)
        out.append(None if x1 == x2 else Fraction(y2 - y1, x2 - x1))
    return out


# --------------------------------------------------------------------------
# random cores
# --------------------------------------------------------------------------

def cores_from_arrays(n: int, W: np.ndarray, L: np.ndarray) -> list[CorePartition]:
    rs = _rs(n)
    G = weyl_group(rs)
    cores = []
    for w, lam in zip(W.tolist(), L.tolist()):
        nu = G[w].act_coroot(lam)
        cores.append(core_from_charges(to_standard(nu), n))
    return cores


def random_cores(n: int, N: int, trials: int, seed: int = DEFAULT_SEED,
                 threads: int = 1) -> list[CorePartition]:
    """Cores of ``trials`` independent Grassmannian walks of ``N`` steps."""
    if N == 0:
        return [CorePartition.empty(n)] * trials
    W, L = run_batch(_rs(n), N, trials, "grassmannian", seed, threads)
    return cores_from_arrays(n, W, L)


def random_core(n: int, N: int, seed: int = DEFAULT_SEED) -> CorePartition:
    return random_cores(n, N, 1, seed)[0]


def first_row_statistics(n: int, degree: int | None = None, trials: int = 0,
                         seed: int = DEFAULT_SEED, threads: int = 1) -> dict:
    """Predicted first-row asymptotics (assuming psi || rho) and, when
    ``trials > 0``, a Monte Carlo estimate at the given degree."""
    if n < 2:
        raise ValueError("n must be at least 2")
    intercept = limit_curve_vertices(n)[-1][0]
    out = {
        "conditional_on": "psi parallel to rho",
        "degree_coefficient": Fraction(3, n + 1),
        # closed form sqrt(3)(n-1)/sqrt(n^2-1); it assumes twice the true area
        "boxes_coefficient": math.sqrt(3) * (n - 1) / math.sqrt(n * n - 1),
        "boxes_coefficient_from_area":
            float(intercept) / math.sqrt(float(limit_curve_area(n))),
    }
    if degree is not None:
        out["predicted_first_row"] = Fraction(3 * degree, n + 1)
    if trials and degree:
        rows = [c.rows[0] if c.rows else 0
                for c in random_cores(n, degree, trials, seed, threads)]
        out["mc_mean_first_row"] = float(np.mean(rows))
        out["mc_stderr"] = float(np.std(rows, ddof=1) / math.sqrt(trials)) \
            if trials > 1 else float("nan")
    return out
