"""Exact integer linear algebra on lists of rows.

Matrices are plain ``list[list[int]]`` in row-major order; Python integers
never overflow, so nothing here depends on entries staying small.  A matrix
with no rows carries no column count, so functions that need one accept an
explicit ``ncols``.
"""

from __future__ import annotations

from math import gcd
from typing import Optional, Sequence

from .errors import DomainError

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(map(int, row)) for row in m]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[int]:
    """Row vector times matrix, i.e. the combination sum_i v[i] * m[i]."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    out = [0] * ncols
    for c, row in zip(v, m):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return out


def transpose(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def hnf(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ m == H``.  ``H`` is in
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows at the bottom.

    Pivot rows are chosen by smallest absolute value in the pivot column, ties
    broken by smallest row index, so the output is reproducible.
    """
    h = copy(m)
    nrows = len(h)
    ncols = len(h[0]) if h else 0
    u = identity(nrows)

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def addmul(dst, src, q):
        # row[dst] -= q * row[src]
        if q:
            hs, hd = h[src], h[dst]
            for j in range(ncols):
                hd[j] -= q * hs[j]
            us, ud = u[src], u[dst]
            for j in range(nrows):
                ud[j] -= q * us[j]

    def negate(i):
        h[i] = [-x for x in h[i]]
        u[i] = [-x for x in u[i]]

    row = 0
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        while True:
            nz = [i for i in range(row, nrows) if h[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: (abs(h[i][col]), i))
            swap(row, best)
            done = True
            for i in range(row + 1, nrows):
                if h[i][col]:
                    addmul(i, row, h[i][col] // h[row][col])
                    if h[i][col]:
                        done = False
            if done:
                break
        if not h[row][col]:
            continue
        if h[row][col] < 0:
            negate(row)
        piv = h[row][col]
        for i in range(row):
            addmul(i, row, h[i][col] // piv)
        pivots.append(col)
        row += 1
    return h, u


def is_hnf(h: Sequence[Sequence[int]]) -> bool:
    last = -1
    seen_zero = False
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        piv = nz[0]
        if piv <= last or row[piv] <= 0:
            return False
        if any(not 0 <= h[a][piv] < row[piv] for a in range(i)):
            return False
        last = piv
    return True


def rank(m: Sequence[Sequence[int]]) -> int:
    h, _ = hnf(m)
    return sum(1 for row in h if any(row))


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square matrix by fraction-free (Bareiss) elimination."""
    a = copy(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise DomainError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def snf_invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariant factors d_1 | d_2 | ... (length = rank)."""
    a = copy(m)
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(nrows, ncols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nrows)
                   for j in range(t, ncols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            piv = a[t][t]
            changed = False
            for i in range(t + 1, nrows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    changed = True
            for j in range(t + 1, ncols):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    changed = True
            if not changed:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, nrows)
                            for j in range(t + 1, ncols) if a[i][j] % piv), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, pi, pj = min(cands)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    # the diagonal already forms a divisibility chain; normalise defensively
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return diag


def integer_kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Z-basis (rows, in Hermite form) of {v : m v = 0}.

    The kernel of an integer matrix is always saturated, and the basis comes
    from unimodular row operations on m^T, so it spans the whole kernel.
    """
    if ncols is None:
        if not m:
            raise DomainError("ncols required for a matrix with no rows")
        ncols = len(m[0])
    if not m:
        return identity(ncols)
    h, u = hnf(transpose(m))
    kernel = [u[i] for i, row in enumerate(h) if not any(row)]
    if not kernel:
        return []
    kh, _ = hnf(kernel)
    return [row for row in kh if any(row)]


def solve_in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[list[int]]:
    """Integer coefficients c with c @ basis == v, or None if v is not in the
    row lattice.  Rows of ``basis`` must be linearly independent."""
    if not basis:
        return [] if not any(v) else None
    ncols = len(basis[0])
    if len(v) != ncols or any(len(row) != ncols for row in basis):
        raise DomainError(f"dimension mismatch: vector of length {len(v)}, basis width {ncols}")
    h, u = hnf(basis)
    if any(not any(row) for row in h):
        raise DomainError("basis rows are linearly dependent")
    residual = list(v)
    y = []
    for row in h:
        piv = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(residual[piv], row[piv])
        if rem:
            return None
        y.append(q)
        if q:
            for j in range(piv, ncols):
                residual[j] -= q * row[j]
    if any(residual):
        return None
    return vecmat(y, u, len(basis))
