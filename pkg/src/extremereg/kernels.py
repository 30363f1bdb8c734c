"""Array kernels behind the Hilbert-series recursion and the Betti rank checks.

Every kernel has a numba implementation and a pure-numpy implementation with
the same signature.  The public names dispatch on ``HAVE_NUMBA``; both
variants stay importable so tests and ``benchmarks/bench_kernels.py`` can
compare them directly.
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit

__all__ = [
    "HAVE_NUMBA",
    "minimal_rows",
    "colon_rows",
    "rank_mod_p",
    "divisible_rows",
]


# -- minimal generators of a monomial ideal ---------------------------------


@njit
def _minimal_rows_numba(E):
    k, n = E.shape
    keep = np.ones(k, dtype=np.bool_)
    for i in range(k):
        for j in range(k):
            if i == j or not keep[j]:
                continue
            # does row j divide row i?
            div = True
            for c in range(n):
                if E[j, c] > E[i, c]:
                    div = False
                    break
            if div:
                same = True
                for c in range(n):
                    if E[j, c] != E[i, c]:
                        same = False
                        break
                if not same or j < i:
                    keep[i] = False
                    break
    return keep


def _minimal_rows_numpy(E):
    k = E.shape[0]
    if k == 0:
        return np.ones(0, dtype=bool)
    # divides[i, j]: row j divides row i
    divides = np.all(E[:, None, :] >= E[None, :, :], axis=2)
    equal = divides & divides.T
    idx = np.arange(k)
    strict = divides & ~equal
    earlier_dup = equal & (idx[None, :] < idx[:, None])
    return ~np.any(strict | earlier_dup, axis=1)


def minimal_rows(E):
    """Mask of rows of ``E`` that are minimal generators (first copy of duplicates)."""
    E = np.ascontiguousarray(E, dtype=np.int64)
    if HAVE_NUMBA:
        return _minimal_rows_numba(E)
    return _minimal_rows_numpy(E)


# -- colon by a monomial ------------------------------------------------------


@njit
def _colon_rows_numba(E, v):
    k, n = E.shape
    out = np.empty_like(E)
    for i in range(k):
        for c in range(n):
            d = E[i, c] - v[c]
            out[i, c] = d if d > 0 else 0
    return out


def _colon_rows_numpy(E, v):
    return np.maximum(E - v[None, :], 0)


def colon_rows(E, v):
    """Exponent rows of ``(I : x^v)`` before minimalization."""
    E = np.ascontiguousarray(E, dtype=np.int64)
    v = np.ascontiguousarray(v, dtype=np.int64)
    if HAVE_NUMBA:
        return _colon_rows_numba(E, v)
    return _colon_rows_numpy(E, v)


# -- divisibility of rows by a monomial ---------------------------------------


@njit
def _divisible_rows_numba(E, v):
    k, n = E.shape
    out = np.zeros(k, dtype=np.bool_)
    for i in range(k):
        ok = True
        for c in range(n):
            if E[i, c] < v[c]:
                ok = False
                break
        out[i] = ok
    return out


def _divisible_rows_numpy(E, v):
    return np.all(E >= v[None, :], axis=1)


def divisible_rows(E, v):
    """Mask of rows of ``E`` divisible by the monomial ``x^v``."""
    E = np.ascontiguousarray(E, dtype=np.int64)
    v = np.ascontiguousarray(v, dtype=np.int64)
    if HAVE_NUMBA:
        return _divisible_rows_numba(E, v)
    return _divisible_rows_numpy(E, v)


# -- rank over F_p --------------------------------------------------------------


@njit
def _rank_mod_p_numba(A, p):
    M = A.copy()
    rows, cols = M.shape
    for i in range(rows):
        for j in range(cols):
            M[i, j] %= p
    rank = 0
    for c in range(cols):
        piv = -1
        for r in range(rank, rows):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = M[piv, j]
                M[piv, j] = M[rank, j]
                M[rank, j] = tmp
        # inverse by Fermat
        a = M[rank, c]
        inv = 1
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * a) % p
            a = (a * a) % p
            e >>= 1
        for j in range(c, cols):
            M[rank, j] = (M[rank, j] * inv) % p
        for r in range(rank + 1, rows):
            f = M[r, c]
            if f != 0:
                for j in range(c, cols):
                    M[r, j] = (M[r, j] - f * M[rank, j]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def _rank_mod_p_numpy(A, p):
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), p - 2, p)
        M[rank, c:] = (M[rank, c:] * inv) % p
        below = M[rank + 1 :, c].copy()
        if below.any():
            M[rank + 1 :, c:] = (M[rank + 1 :, c:] - np.outer(below, M[rank, c:])) % p
        rank += 1
    return rank


def rank_mod_p(A, p):
    """Rank of an integer matrix over the prime field F_p (p < 2**31)."""
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    if HAVE_NUMBA:
        return int(_rank_mod_p_numba(A, np.int64(p)))
    return int(_rank_mod_p_numpy(A, p))
