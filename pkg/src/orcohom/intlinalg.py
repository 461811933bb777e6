"""Exact linear algebra over the integers and over coefficient domains.

Matrices are numpy arrays with dtype=object holding Python ints (or
BaseRing elements for the generic routines), so everything stays
arbitrary precision.  The workhorses are row Hermite normal form,
Smith normal form invariants, integer kernels, and a fraction-free
determinant for unit tests over arbitrary integral domains.
"""

from __future__ import annotations

import math

import numpy as np

from .coefficients import BaseRing


def int_matrix(rows, ncols: int | None = None) -> np.ndarray:
    """Object-dtype integer matrix from an iterable of rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def hnf(mat: np.ndarray, transform: bool = False):
    """Row Hermite normal form.

    Returns (H, pivot_columns) where H contains only the nonzero rows,
    pivots are positive, and entries above each pivot are reduced into
    [0, pivot).  With transform=True also returns a unimodular U with
    U @ mat == (H padded with zero rows).
    """
    m = np.array(mat, dtype=object, copy=True)
    nrows, ncols = m.shape
    u = np.eye(nrows, dtype=object) if transform else None
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        # gcd whirl on rows r.. in column c
        while True:
            nz = [i for i in range(r, nrows) if m[i, c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(m[i, c]))
            if i0 != r:
                m[[r, i0]] = m[[i0, r]]
                if transform:
                    u[[r, i0]] = u[[i0, r]]
            p = m[r, c]
            done = True
            for i in range(r + 1, nrows):
                if m[i, c] != 0:
                    q = m[i, c] // p
                    if q:
                        m[i] = m[i] - q * m[r]
                        if transform:
                            u[i] = u[i] - q * u[r]
                    if m[i, c] != 0:
                        done = False
            if done:
                break
        if r < nrows and m[r, c] != 0:
            if m[r, c] < 0:
                m[r] = -m[r]
                if transform:
                    u[r] = -u[r]
            p = m[r, c]
            for i in range(r):
                q = m[i, c] // p
                if q:
                    m[i] = m[i] - q * m[r]
                    if transform:
                        u[i] = u[i] - q * u[r]
            pivots.append(c)
            r += 1
    h = m[:r]
    if transform:
        return h, pivots, u
    return h, pivots


def rank(mat: np.ndarray) -> int:
    if mat.size == 0:
        return 0
    _, pivots = hnf(mat)
    return len(pivots)


def kernel_basis(mat: np.ndarray) -> np.ndarray:
    """Basis of the saturated integer lattice {x : mat @ x = 0}.

    Rows of the returned matrix are the basis vectors.
    """
    if mat.shape[1] == 0:
        return np.zeros((0, 0), dtype=object)
    if mat.shape[0] == 0:
        return np.eye(mat.shape[1], dtype=object)
    h, _, u = hnf(mat.T, transform=True)
    r = h.shape[0]
    return u[r:]


def snf_invariants(mat: np.ndarray) -> list[int]:
    """Nonzero Smith normal form invariants d1 | d2 | ... of the matrix."""
    m = np.array(mat, dtype=object, copy=True)
    if m.size == 0:
        return []
    nrows, ncols = m.shape
    invariants: list[int] = []
    top = 0
    while top < min(nrows, ncols):
        sub = m[top:, top:]
        if not sub.any():
            break
        while True:
            # move the smallest nonzero entry to the corner
            best = None
            for i in range(top, nrows):
                for j in range(top, ncols):
                    v = m[i, j]
                    if v != 0 and (best is None or abs(v) < abs(m[best[0], best[1]])):
                        best = (i, j)
            bi, bj = best
            if bi != top:
                m[[top, bi]] = m[[bi, top]]
            if bj != top:
                m[:, [top, bj]] = m[:, [bj, top]]
            p = m[top, top]
            dirty = False
            for i in range(top + 1, nrows):
                if m[i, top] != 0:
                    q = m[i, top] // p
                    if q:
                        m[i] = m[i] - q * m[top]
                    if m[i, top] != 0:
                        dirty = True
            for j in range(top + 1, ncols):
                if m[top, j] != 0:
                    q = m[top, j] // p
                    if q:
                        m[:, j] = m[:, j] - q * m[:, top]
                    if m[top, j] != 0:
                        dirty = True
            if dirty:
                continue
            # enforce divisibility: pivot must divide the whole block
            p = m[top, top]
            offender = None
            for i in range(top + 1, nrows):
                for j in range(top + 1, ncols):
                    if m[i, j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            m[top] = m[top] + m[offender]
        invariants.append(abs(int(m[top, top])))
        top += 1
    return invariants


def cokernel_data(mat: np.ndarray, ngens: int) -> tuple[int, list[int]]:
    """Free rank and torsion of Z^ngens modulo the row span of mat."""
    if mat.size == 0:
        return ngens, []
    invs = snf_invariants(mat)
    torsion = [d for d in invs if d != 1]
    return ngens - len(invs), torsion


def det_bareiss_int(mat: np.ndarray) -> int:
    """Determinant of a square integer matrix, fraction free."""
    m = np.array(mat, dtype=object, copy=True)
    n = m.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i, k] != 0), None)
            if swap is None:
                return 0
            m[[k, swap]] = m[[swap, k]]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i, j] = (m[i, j] * m[k, k] - m[i, k] * m[k, j]) // prev
            m[i, k] = 0
        prev = m[k, k]
    return sign * int(m[n - 1, n - 1])


def det_bareiss_ring(rows: list[list], ring: BaseRing):
    """Bareiss determinant over an integral coefficient domain.

    Requires exact division (always available against previous pivots),
    so it works for Z, Q, Z/p and Laurent extensions.
    """
    n = len(rows)
    if n == 0:
        return ring.one()
    m = [list(r) for r in rows]
    sign = False
    prev = ring.one()
    for k in range(n - 1):
        if ring.is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not ring.is_zero(m[i][k])), None)
            if swap is None:
                return ring.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = not sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(m[i][j], m[k][k]), ring.mul(m[i][k], m[k][j]))
                q = ring.divide_exact(num, prev)
                if q is None:
                    raise ArithmeticError("non-exact division in Bareiss elimination")
                m[i][j] = q
            m[i][k] = ring.zero()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return ring.neg(d) if sign else d


def field_rref(rows: list[list], ring: BaseRing):
    """Reduced row echelon form over a field domain (Q or Z/p).

    Returns (reduced nonzero rows, pivot column indices).
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    r = 0
    pivots = []
    for c in range(ncols):
        sel = next((i for i in range(r, len(m)) if not ring.is_zero(m[i][c])), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = ring.inv_unit(m[r][c])
        m[r] = [ring.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and not ring.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [ring.sub(a, ring.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def minor_gcd_invariants(mat: np.ndarray) -> list[int]:
    """Invariant factors via gcds of k x k minors (slow, oracle grade)."""
    from itertools import combinations

    nrows, ncols = mat.shape
    d_prev = 1
    out = []
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for ri in combinations(range(nrows), k):
            for ci in combinations(range(ncols), k):
                sub = mat[np.ix_(ri, ci)]
                g = math.gcd(g, abs(det_bareiss_int(sub)))
        if g == 0:
            break
        out.append(g // d_prev)
        d_prev = g
    return out
