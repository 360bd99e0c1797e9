"""Integer brute-force kernels for the quantifier oracles.

Every kernel works on int64 arrays: ``grid`` has shape (G, n) and lists
candidate group elements, ``psi`` has shape (n, n) with row i = psi(e_i).
Rational data is scaled to a common denominator by the caller.

Two interchangeable backends exist.  The numba one is used when numba imports
and ``HAHNFIELD_DISABLE_NUMBA`` is unset or "0"; otherwise the numpy one.
Both return the first violation in row-major order, so results are identical.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("HAHNFIELD_DISABLE_NUMBA", "0") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("disabled by HAHNFIELD_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------- numpy path

def _lex_sign_np(a: np.ndarray) -> np.ndarray:
    nz = a != 0
    first = nz.argmax(axis=-1)
    lead = np.take_along_axis(a, first[..., None], axis=-1)[..., 0]
    return np.sign(lead) * nz.any(axis=-1)


def _classes_np(grid: np.ndarray) -> np.ndarray:
    nz = grid != 0
    return np.where(nz.any(axis=1), nz.argmax(axis=1), -1)


def a3_violation_np(grid: np.ndarray, psi: np.ndarray) -> tuple[int, int]:
    cls = _classes_np(grid)
    sgn = _lex_sign_np(grid)
    alphas = np.flatnonzero(sgn > 0)
    betas = np.flatnonzero(cls >= 0)
    if alphas.size == 0 or betas.size == 0:
        return -1, -1
    lhs = grid[alphas] + psi[cls[alphas]]
    rhs = psi[cls[betas]]
    ok = _lex_sign_np(lhs[:, None, :] - rhs[None, :, :]) > 0
    bad = np.argwhere(~ok)
    if bad.size == 0:
        return -1, -1
    a, b = bad[0]
    return int(alphas[a]), int(betas[b])


def small_violation_np(grid: np.ndarray, psi: np.ndarray) -> int:
    cls = _classes_np(grid)
    alphas = np.flatnonzero(_lex_sign_np(grid) > 0)
    if alphas.size == 0:
        return -1
    ok = _lex_sign_np(grid[alphas] + psi[cls[alphas]]) > 0
    bad = np.flatnonzero(~ok)
    return int(alphas[bad[0]]) if bad.size else -1


def a1_violation_np(grid: np.ndarray, psi: np.ndarray) -> tuple[int, int]:
    cls = _classes_np(grid)
    nzr = np.flatnonzero(cls >= 0)
    if nzr.size == 0:
        return -1, -1
    g = grid[nzr]
    sums = g[:, None, :] + g[None, :, :]
    sum_nz = sums != 0
    has = sum_nz.any(axis=-1)
    sum_cls = np.where(has, sum_nz.argmax(axis=-1), 0)
    psa = psi[cls[nzr]]
    left = psi[sum_cls]
    pa = np.broadcast_to(psa[:, None, :], left.shape)
    pb = np.broadcast_to(psa[None, :, :], left.shape)
    a_le_b = (_lex_sign_np(pa - pb) <= 0)[..., None]
    mins = np.where(a_le_b, pa, pb)
    ok = (_lex_sign_np(left - mins) >= 0) | ~has
    bad = np.argwhere(~ok)
    if bad.size == 0:
        return -1, -1
    a, b = bad[0]
    return int(nzr[a]), int(nzr[b])


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _lex_sign_nb(a):
        for k in range(a.shape[0]):
            if a[k] > 0:
                return 1
            if a[k] < 0:
                return -1
        return 0

    @njit(cache=True)
    def _cmp_sum_nb(x, y, z):
        # sign of (x + y - z), lexicographically, without temporaries
        for k in range(x.shape[0]):
            d = x[k] + y[k] - z[k]
            if d > 0:
                return 1
            if d < 0:
                return -1
        return 0

    @njit(cache=True)
    def _cmp_nb(x, z):
        for k in range(x.shape[0]):
            if x[k] > z[k]:
                return 1
            if x[k] < z[k]:
                return -1
        return 0

    @njit(cache=True)
    def _cls_nb(a):
        for k in range(a.shape[0]):
            if a[k] != 0:
                return k
        return -1

    @njit(cache=True)
    def _classes_nb(grid):
        out = np.empty(grid.shape[0], dtype=np.int64)
        for a in range(grid.shape[0]):
            out[a] = _cls_nb(grid[a])
        return out

    @njit(cache=True)
    def _a3_violation_nb(grid, psi):
        G = grid.shape[0]
        cls = _classes_nb(grid)
        for a in range(G):
            if _lex_sign_nb(grid[a]) <= 0:
                continue
            ia = cls[a]
            for b in range(G):
                ib = cls[b]
                if ib < 0:
                    continue
                if _cmp_sum_nb(grid[a], psi[ia], psi[ib]) <= 0:
                    return a, b
        return -1, -1

    @njit(cache=True)
    def _small_violation_nb(grid, psi):
        zero = np.zeros(grid.shape[1], dtype=np.int64)
        for a in range(grid.shape[0]):
            if _lex_sign_nb(grid[a]) <= 0:
                continue
            if _cmp_sum_nb(grid[a], psi[_cls_nb(grid[a])], zero) <= 0:
                return a
        return -1

    @njit(cache=True)
    def _a1_violation_nb(grid, psi):
        G, n = grid.shape
        cls = _classes_nb(grid)
        for a in range(G):
            ia = cls[a]
            if ia < 0:
                continue
            for b in range(G):
                ib = cls[b]
                if ib < 0:
                    continue
                isum = -1
                for k in range(n):
                    if grid[a, k] + grid[b, k] != 0:
                        isum = k
                        break
                if isum < 0:
                    continue
                m = ia if _cmp_nb(psi[ia], psi[ib]) <= 0 else ib
                for k in range(n):
                    d = psi[isum, k] - psi[m, k]
                    if d > 0:
                        break
                    if d < 0:
                        return a, b
        return -1, -1


def _prep(grid, psi):
    return np.ascontiguousarray(grid, dtype=np.int64), np.ascontiguousarray(psi, dtype=np.int64)


def a3_violation(grid, psi, backend: str | None = None) -> tuple[int, int]:
    """First (alpha, beta) row pair with alpha > 0 and alpha+psi(alpha) <= psi(beta)."""
    grid, psi = _prep(grid, psi)
    if _use_numba(backend):
        a, b = _a3_violation_nb(grid, psi)
        return int(a), int(b)
    return a3_violation_np(grid, psi)


def small_violation(grid, psi, backend: str | None = None) -> int:
    """First row alpha > 0 with alpha + psi(alpha) <= 0, or -1."""
    grid, psi = _prep(grid, psi)
    if _use_numba(backend):
        return int(_small_violation_nb(grid, psi))
    return small_violation_np(grid, psi)


def a1_violation(grid, psi, backend: str | None = None) -> tuple[int, int]:
    """First (alpha, beta) pair with psi(alpha+beta) < min(psi(alpha), psi(beta))."""
    grid, psi = _prep(grid, psi)
    if _use_numba(backend):
        a, b = _a1_violation_nb(grid, psi)
        return int(a), int(b)
    return a1_violation_np(grid, psi)


def _use_numba(backend: str | None) -> bool:
    if backend is None:
        return HAVE_NUMBA
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return True
    if backend == "numpy":
        return False
    raise ValueError(f"unknown backend {backend!r}")


def active_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
