"""Dense matrix routines over GF(q) symbols.

Matrices are 2-D ``int64`` numpy arrays holding symbols ``0..q-1``;
arithmetic goes through the tables of a :class:`~mincodes.galois.SmallField`.
"""

from __future__ import annotations

import numpy as np

from .galois import SmallField


def as_matrix(a, F: SmallField) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
    if m.size and (m.min() < 0 or m.max() >= F.q):
        raise ValueError(f"matrix entries must lie in 0..{F.q - 1}")
    return m


def matmul(a: np.ndarray, b: np.ndarray, F: SmallField) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.is_prime:
        if a.shape[1] * (F.q - 1) ** 2 < 1 << 52:
            # float64 BLAS is exact below 2**53 and far faster than integer matmul
            out = (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
            out %= F.q  # integer remainder is an order of magnitude faster than float fmod
            return out
        return (a @ b) % F.q
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = F.add[out, F.mul[a[:, j, None], b[None, j, :]]]
    return out


def rref(a, F: SmallField) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.  Zero rows are kept at the bottom."""
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = F.mul[F.inv[a[r, c]], a[r]]
        factors = a[:, c].copy()
        factors[r] = 0
        if factors.any():
            a = F.sub(a, F.mul[factors[:, None], a[r][None, :]])
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a, F: SmallField) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, F)[1])


def row_basis(a, F: SmallField) -> np.ndarray:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    a = np.asarray(a)
    if a.shape[0] == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0).astype(np.int64)
    r, piv = rref(a, F)
    return r[: len(piv)]


def nullspace(a, F: SmallField) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}``, one row per free column of the RREF."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(a, F)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    basis[np.arange(len(free)), free] = 1
    if piv and free:
        basis[:, piv] = F.neg[r[: len(piv)][:, free]].T
    return basis


def solve(a, b, F: SmallField) -> np.ndarray | None:
    """One solution x of ``a @ x = b``, or ``None`` when the system is inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    rows, cols = a.shape
    aug = np.hstack([a, b]) if cols else b
    r, piv = rref(aug, F)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return x


def all_vectors(q: int, k: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows ``start..stop`` of GF(q)^k in lexicographic order (first coordinate slowest)."""
    stop = q**k if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, q)
    return out


def vector_index(v, q: int) -> int:
    """Inverse of :func:`all_vectors`."""
    i = 0
    for x in v:
        i = i * q + int(x)
    return i
