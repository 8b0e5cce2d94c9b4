"""Pairing kernels for sparse series multiplication.

Multiplying two sparse series means visiting every pair of stored terms,
adding their exponent vectors, and keeping the pairs whose sum lands inside
the ring's truncation window.  That index work is pure integer arithmetic and
is where multiplication spends its time, so it lives here in two flavours:

* a numba ``@njit`` loop (default when numba imports), and
* a blocked, broadcasting numpy fallback.

Set ``FOCKCHERN_KERNEL=numpy`` to force the fallback, or call
:func:`set_backend` at runtime.  Both return identical arrays; the exact
rational accumulation happens afterwards in :mod:`fockchern.series`.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - import guard
    import numba
except ImportError:  # pragma: no cover
    numba = None

ENV_FLAG = "FOCKCHERN_KERNEL"
_BLOCK = 1 << 22  # pair budget per numpy block


def _pairs_loop(ea, eb, lo, hi, wa, wb, lim, ka, kb):
    n = ea.shape[0]
    m = eb.shape[0]
    nv = ea.shape[1]
    nc = wa.shape[1]
    count = 0
    for i in range(n):
        for j in range(m):
            ok = True
            for v in range(nv):
                s = ea[i, v] + eb[j, v]
                if s < lo[v] or s > hi[v]:
                    ok = False
                    break
            if ok:
                for c in range(nc):
                    if wa[i, c] + wb[j, c] > lim[c]:
                        ok = False
                        break
            if ok:
                count += 1
    ii = np.empty(count, np.int64)
    jj = np.empty(count, np.int64)
    kk = np.empty(count, np.int64)
    pos = 0
    for i in range(n):
        for j in range(m):
            ok = True
            for v in range(nv):
                s = ea[i, v] + eb[j, v]
                if s < lo[v] or s > hi[v]:
                    ok = False
                    break
            if ok:
                for c in range(nc):
                    if wa[i, c] + wb[j, c] > lim[c]:
                        ok = False
                        break
            if ok:
                ii[pos] = i
                jj[pos] = j
                kk[pos] = ka[i] + kb[j]
                pos += 1
    return ii, jj, kk


def pairs_numpy(ea, eb, lo, hi, wa, wb, lim, ka, kb):
    """Blocked broadcasting version of the pairing loop."""
    n, m = ea.shape[0], eb.shape[0]
    rows = max(1, _BLOCK // max(m, 1))
    out_i, out_j = [], []
    for start in range(0, n, rows):
        stop = min(n, start + rows)
        mask = np.ones((stop - start, m), dtype=bool)
        for v in range(ea.shape[1]):
            s = ea[start:stop, v, None] + eb[None, :, v]
            mask &= (s >= lo[v]) & (s <= hi[v])
        for c in range(wa.shape[1]):
            mask &= (wa[start:stop, c, None] + wb[None, :, c]) <= lim[c]
        i, j = np.nonzero(mask)
        out_i.append(i + start)
        out_j.append(j)
    ii = np.concatenate(out_i).astype(np.int64) if out_i else np.empty(0, np.int64)
    jj = np.concatenate(out_j).astype(np.int64) if out_j else np.empty(0, np.int64)
    return ii, jj, ka[ii] + kb[jj]


pairs_python = _pairs_loop
pairs_numba = numba.njit(cache=True, nogil=True)(_pairs_loop) if numba is not None else None


def _initial_backend() -> str:
    choice = os.environ.get(ENV_FLAG, "").strip().lower()
    if choice in ("numpy", "python"):
        return "numpy"
    return "numba" if pairs_numba is not None else "numpy"


_backend = _initial_backend()


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name == "numba" and pairs_numba is None:
        raise RuntimeError("numba is not installed")
    _backend = name


def pair_products(ea, eb, lo, hi, wa, wb, lim, ka, kb):
    """Return ``(i, j, key)`` for every in-window pair of terms."""
    if _backend == "numba":
        return pairs_numba(ea, eb, lo, hi, wa, wb, lim, ka, kb)
    return pairs_numpy(ea, eb, lo, hi, wa, wb, lim, ka, kb)
