"""Integer and mod-n linear algebra: Smith normal form, coboundary solving.

The coboundary solver works over Q/Z: a system A x = b (mod Z) with integer A
and rational b is decided exactly via the Smith normal form U A V = S, because
Q/Z is divisible (every nonzero diagonal entry divides exactly in Q).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_OVERFLOW_LIMIT = 1 << 56


class _Overflow(Exception):
    pass


def _identity(n, dtype):
    eye = np.zeros((n, n), dtype=dtype)
    for i in range(n):
        eye[i, i] = 1
    return eye


def smith_normal_form(mat) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (S, U, V) with U @ mat @ V = S, U and V unimodular, S diagonal.

    Diagonal entries satisfy s_i | s_{i+1}.  Uses int64 with an overflow
    guard and falls back to exact Python-int arithmetic on breach.
    """
    a = np.array(mat, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("matrix required")
    try:
        return _snf(a.copy(), check_overflow=True)
    except _Overflow:
        obj = np.array([[int(x) for x in row] for row in mat], dtype=object)
        if obj.size == 0:
            obj = obj.reshape(a.shape)
        return _snf(obj, check_overflow=False)


def _snf(a, check_overflow):
    n, m = a.shape
    u = _identity(n, a.dtype)
    v = _identity(m, a.dtype)

    def guard():
        if check_overflow and a.size and (
                np.abs(a).max() > _OVERFLOW_LIMIT
                or np.abs(u).max() > _OVERFLOW_LIMIT
                or np.abs(v).max() > _OVERFLOW_LIMIT):
            raise _Overflow

    t = 0
    while t < min(n, m):
        sub = a[t:, t:]
        if not np.any(sub):
            break
        nz = np.nonzero(sub)
        k = int(np.argmin(np.abs(sub[nz])))
        i, j = int(nz[0][k]) + t, int(nz[1][k]) + t
        if i != t:
            a[[t, i]] = a[[i, t]]
            u[[t, i]] = u[[i, t]]
        if j != t:
            a[:, [t, j]] = a[:, [j, t]]
            v[:, [t, j]] = v[:, [j, t]]
        dirty = False
        piv = a[t, t]
        for i in range(t + 1, n):
            if a[i, t]:
                q = a[i, t] // piv
                if q:
                    a[i, :] -= q * a[t, :]
                    u[i, :] -= q * u[t, :]
                if a[i, t]:
                    dirty = True
        for j in range(t + 1, m):
            if a[t, j]:
                q = a[t, j] // piv
                if q:
                    a[:, j] -= q * a[:, t]
                    v[:, j] -= q * v[:, t]
                if a[t, j]:
                    dirty = True
        guard()
        if dirty:
            continue
        rem = a[t + 1:, t + 1:]
        if rem.size and np.any(rem % piv):
            i = t + 1 + int(np.nonzero(np.any(rem % piv, axis=1))[0][0])
            a[t, :] += a[i, :]
            u[t, :] += u[i, :]
            guard()
            continue
        if a[t, t] < 0:
            a[t, :] = -a[t, :]
            u[t, :] = -u[t, :]
        t += 1
    return a, u, v


def solve_mod1(mat, rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve A x = rhs (mod Z) for rational x in [0,1); None if unsolvable.

    A is an integer matrix (rows x cols).  Returns the solution with all free
    coordinates fixed to 0 under the Smith basis, reduced mod 1.
    """
    a = np.array(mat, dtype=np.int64)
    rows, cols = a.shape
    if rows != len(rhs):
        raise ValueError("rhs length mismatch")
    s, u, v = smith_normal_form(a)
    # transformed right-hand side: U @ rhs, exact rationals
    urhs = [sum(Fraction(int(u[i, j])) * rhs[j] for j in range(rows) if u[i, j])
            for i in range(rows)]
    rank = 0
    y = [Fraction(0)] * cols
    for i in range(min(rows, cols)):
        if s[i, i]:
            rank = i + 1
    for i in range(rows):
        si = int(s[i, i]) if i < min(rows, cols) else 0
        if si:
            y[i] = urhs[i] / si
        elif urhs[i].denominator != 1:
            return None
    x = [Fraction(0)] * cols
    for i in range(cols):
        acc = Fraction(0)
        for j in range(rank):
            if v[i, j]:
                acc += Fraction(int(v[i, j])) * y[j]
        x[i] = acc % 1
    return x


def gf2_row_reduce(rows: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a dense 0/1 matrix over GF(2); returns (echelon, pivot cols)."""
    a = np.array(rows, dtype=np.uint8) % 2
    nr, nc = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        hit = np.nonzero(a[r:, c])[0]
        if hit.size == 0:
            continue
        i = int(hit[0]) + r
        if i != r:
            a[[r, i]] = a[[i, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def gf2_nullspace(rows: np.ndarray, ncols: int) -> list[np.ndarray]:
    """Basis of the right nullspace over GF(2) of a 0/1 matrix."""
    if len(rows) == 0:
        return [np.eye(ncols, dtype=np.uint8)[i] for i in range(ncols)]
    ech, pivots = gf2_row_reduce(rows)
    pivset = set(pivots)
    basis = []
    for c in range(ncols):
        if c in pivset:
            continue
        vec = np.zeros(ncols, dtype=np.uint8)
        vec[c] = 1
        for r, pc in enumerate(pivots):
            if ech[r, c]:
                vec[pc] = 1
        basis.append(vec)
    return basis


def nullspace_mod(mat, n: int) -> list[np.ndarray]:
    """Generators of {x mod n : A x = 0 (mod n)} via Smith normal form.

    Returned vectors are int arrays mod n; every solution is a Z_n-combination
    of them.  For n=2 prefer gf2_nullspace.
    """
    a = np.array(mat, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return [np.eye(cols, dtype=np.int64)[i] for i in range(cols)]
    s, _, v = smith_normal_form(a)
    gens = []
    for j in range(cols):
        sj = int(s[j, j]) if j < min(rows, cols) else 0
        if sj == 0:
            scale = 1
        else:
            g = np.gcd(sj, n)
            scale = n // g
        if scale % n == 0 and sj != 0:
            continue
        vec = (np.array([int(v[i, j]) for i in range(cols)], dtype=np.int64)
               * scale) % n
        if vec.any():
            gens.append(vec)
    return gens
