"""Walk kernels: a numba loop and a pure-numpy path vectorized over trials.

Both kernels consume the same array of uniforms ``U`` (one per trial and
step) and make identical choices, so results agree bit for bit.  Set
``COXWALK_DISABLE_NUMBA=1`` to force the numpy path.

State of one walker: Weyl index ``w``, coroot coordinates ``lam`` and the
pairings ``p[k] = <lam, alpha_k>`` over positive roots.  Generators are
tried in the order ``0, 1, ..., n``.

Variant codes: 0 free, 1 delayed, 2 grassmannian, 3 delayed grassmannian.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

FREE, DELAYED, GRASSMANNIAN, DELAYED_GRASSMANNIAN = 0, 1, 2, 3
VARIANTS = {
    "free": FREE,
    "delayed": DELAYED,
    "grassmannian": GRASSMANNIAN,
    "delayed-grassmannian": DELAYED_GRASSMANNIAN,
}

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    flag = os.environ.get("COXWALK_DISABLE_NUMBA", "").strip().lower()
    return HAVE_NUMBA and flag not in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class WalkTables:
    perm: np.ndarray      # (|W|, 2m) root permutation of each element
    inv: np.ndarray       # (|W|,)
    lmul: np.ndarray      # (n, |W|) index of s_i w
    rtheta: np.ndarray    # (|W|,) index of r_theta w
    cpair: np.ndarray     # (2m, m) <coroot_j, alpha_k>, k positive
    coroots: np.ndarray   # (2m, n)
    lam_pair: np.ndarray  # (n, m) maps lam to its pairings
    theta: int
    m: int
    n: int

    @classmethod
    def from_group(cls, G) -> WalkTables:
        rs = G.rs
        m = rs.num_positive
        return cls(
            perm=np.ascontiguousarray(G.perm, dtype=np.int64),
            inv=np.ascontiguousarray(G.inv, dtype=np.int64),
            lmul=np.ascontiguousarray(G.lmul, dtype=np.int64),
            rtheta=np.ascontiguousarray(G.rtheta, dtype=np.int64),
            cpair=np.ascontiguousarray(rs.pairing_table[:, :m], dtype=np.int64),
            coroots=np.ascontiguousarray(rs.coroot_array, dtype=np.int64),
            lam_pair=np.ascontiguousarray(
                rs.cartan @ rs.root_array[:m].T, dtype=np.int64),
            theta=int(rs.theta_index),
            m=m,
            n=rs.rank,
        )


# --------------------------------------------------------------------------
# numpy path
# --------------------------------------------------------------------------

def _up_masks_np(t: WalkTables, W, P):
    """(T, n+1) boolean: is s_i x > x, for the current states."""
    T = len(W)
    rows = np.arange(T)
    winv = t.inv[W]
    up = np.empty((T, t.n + 1), dtype=bool)
    g = t.perm[winv, t.theta]
    val = P[rows, g % t.m]
    up[:, 0] = np.where(g < t.m, val <= 0, val >= -1)
    for i in range(1, t.n + 1):
        b = t.perm[winv, i - 1]
        val = P[rows, b % t.m]
        up[:, i] = np.where(b < t.m, val >= 0, val < 0)
    return up


def _grass_np(t: WalkTables, W, P):
    neg = t.perm[W, :t.m] >= t.m
    return np.all(P <= 0, axis=1) & ~np.any(neg & (P >= 0), axis=1)


def _allowed_np(t: WalkTables, variant, W, P):
    up = _up_masks_np(t, W, P)
    if variant in (GRASSMANNIAN, DELAYED_GRASSMANNIAN):
        g = t.perm[t.inv[W], t.theta]
        P0 = P - t.cpair[g]
        up[:, 0] &= _grass_np(t, t.rtheta[W], P0)
        for i in range(1, t.n + 1):
            up[:, i] &= _grass_np(t, t.lmul[i - 1, W], P)
    return up


def walk_numpy(t: WalkTables, variant: int, U: np.ndarray, W0, L0,
               record: bool = False):
    T, N = U.shape
    r = t.n + 1
    W = np.array(W0, dtype=np.int64, copy=True)
    L = np.array(L0, dtype=np.int64, copy=True).reshape(T, t.n)
    P = L @ t.lam_pair
    gens = np.full((T, N), -1, dtype=np.int8) if record else None
    types = np.empty((T, N + 1), dtype=np.int64) if record else None
    if record:
        types[:, 0] = W
    rows = np.arange(T)
    for step in range(N):
        allowed = _allowed_np(t, variant, W, P)
        u = U[:, step]
        if variant in (FREE, GRASSMANNIAN):
            cnt = allowed.sum(axis=1)
            k = (u * cnt).astype(np.int64)
            csum = np.cumsum(allowed, axis=1)
            choice = np.argmax(allowed & (csum == (k + 1)[:, None]), axis=1)
            move = cnt > 0
        else:
            choice = (u * r).astype(np.int64)
            move = allowed[rows, choice]
        aff = move & (choice == 0)
        if aff.any():
            idx = np.nonzero(aff)[0]
            g = t.perm[t.inv[W[idx]], t.theta]
            L[idx] -= t.coroots[g]
            P[idx] -= t.cpair[g]
            W[idx] = t.rtheta[W[idx]]
        fin = move & (choice > 0)
        if fin.any():
            idx = np.nonzero(fin)[0]
            W[idx] = t.lmul[choice[idx] - 1, W[idx]]
        if record:
            gens[:, step] = np.where(move, choice, -1)
            types[:, step + 1] = W
    return W, L, gens, types


# --------------------------------------------------------------------------
# numba path
# --------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _is_up(perm, inv, theta, m, w, p, i):
        winv = inv[w]
        if i == 0:
            g = perm[winv, theta]
            if g < m:
                return p[g] <= 0
            return p[g - m] >= -1
        b = perm[winv, i - 1]
        if b < m:
            return p[b] >= 0
        return p[b - m] < 0

    @njit(cache=True, nogil=True)
    def _is_grass(perm, m, w, p):
        for k in range(m):
            v = p[k]
            if v > 0:
                return False
            if perm[w, k] >= m and v >= 0:
                return False
        return True

    @njit(cache=True, nogil=True)
    def _allowed(perm, inv, lmul, rtheta, cpair, theta, m, n, variant, w, p,
                 scratch, out):
        for i in range(n + 1):
            ok = _is_up(perm, inv, theta, m, w, p, i)
            if ok and (variant == 2 or variant == 3):
                if i == 0:
                    g = perm[inv[w], theta]
                    for k in range(m):
                        scratch[k] = p[k] - cpair[g, k]
                    ok = _is_grass(perm, m, rtheta[w], scratch)
                else:
                    ok = _is_grass(perm, m, lmul[i - 1, w], p)
            out[i] = ok

    @njit(cache=True, nogil=True)
    def _walk_numba(perm, inv, lmul, rtheta, cpair, coroots, lam_pair, theta,
                    m, n, variant, U, W0, L0, record, gens, types):
        T, N = U.shape
        r = n + 1
        Wout = np.empty(T, dtype=np.int64)
        Lout = np.empty((T, n), dtype=np.int64)
        p = np.empty(m, dtype=np.int64)
        scratch = np.empty(m, dtype=np.int64)
        allowed = np.empty(r, dtype=np.bool_)
        lam = np.empty(n, dtype=np.int64)
        for tr in range(T):
            w = W0[tr]
            for j in range(n):
                lam[j] = L0[tr, j]
            for k in range(m):
                acc = 0
                for j in range(n):
                    acc += lam[j] * lam_pair[j, k]
                p[k] = acc
            if record:
                types[tr, 0] = w
            for step in range(N):
                _allowed(perm, inv, lmul, rtheta, cpair, theta, m, n, variant,
                         w, p, scratch, allowed)
                u = U[tr, step]
                choice = -1
                if variant == 0 or variant == 2:
                    cnt = 0
                    for i in range(r):
                        if allowed[i]:
                            cnt += 1
                    if cnt > 0:
                        kk = np.int64(u * cnt)
                        seen = 0
                        for i in range(r):
                            if allowed[i]:
                                if seen == kk:
                                    choice = i
                                    break
                                seen += 1
                else:
                    i = np.int64(u * r)
                    if allowed[i]:
                        choice = i
                if choice == 0:
                    g = perm[inv[w], theta]
                    for j in range(n):
                        lam[j] -= coroots[g, j]
                    for k in range(m):
                        p[k] -= cpair[g, k]
                    w = rtheta[w]
                elif choice > 0:
                    w = lmul[choice - 1, w]
                if record:
                    gens[tr, step] = choice
                    types[tr, step + 1] = w
            Wout[tr] = w
            for j in range(n):
                Lout[tr, j] = lam[j]
        return Wout, Lout


def walk_numba(t: WalkTables, variant: int, U: np.ndarray, W0, L0,
               record: bool = False):
    T, N = U.shape
    W0 = np.ascontiguousarray(W0, dtype=np.int64)
    L0 = np.ascontiguousarray(L0, dtype=np.int64).reshape(T, t.n)
    if record:
        gens = np.empty((T, N), dtype=np.int8)
        types = np.empty((T, N + 1), dtype=np.int64)
    else:
        gens = np.empty((0, 0), dtype=np.int8)
        types = np.empty((0, 0), dtype=np.int64)
    W, L = _walk_numba(t.perm, t.inv, t.lmul, t.rtheta, t.cpair, t.coroots,
                       t.lam_pair, t.theta, t.m, t.n, variant,
                       np.ascontiguousarray(U, dtype=np.float64), W0, L0,
                       record, gens, types)
    if not record:
        return W, L, None, None
    return W, L, gens, types


def run_walks(t: WalkTables, variant: int, U: np.ndarray, W0=None, L0=None,
              record: bool = False, backend: str | None = None):
    """Advance ``len(U)`` independent walkers by ``U.shape[1]`` steps.

    Returns ``(W, L, gens, types)``; ``gens``/``types`` are None unless
    ``record``.  ``gens[t, k]`` is the generator applied at step ``k`` (-1
    for a delayed stay) and ``types[t, k]`` the Weyl index after ``k`` steps.
    """
    U = np.atleast_2d(np.asarray(U, dtype=np.float64))
    T = U.shape[0]
    if W0 is None:
        W0 = np.zeros(T, dtype=np.int64)
    if L0 is None:
        L0 = np.zeros((T, t.n), dtype=np.int64)
    if backend is None:
        backend = "numba" if numba_enabled() else "numpy"
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not installed")
        return walk_numba(t, variant, U, W0, L0, record)
    if backend == "numpy":
        return walk_numpy(t, variant, U, W0, L0, record)
    raise ValueError(f"unknown backend {backend!r}")
