"""Hermite and Smith normal forms over Z, reduced row echelon form over Q."""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError
from .matrix import Matrix
from .rings import QQ, ZZ, xgcd


def _require_int(m: Matrix, name: str):
    if m.ring != ZZ:
        raise UsageError(f"{name} expects an integer matrix, got ring {m.ring}")


def _hnf_lists(h: list[list[int]], u: list[list[int]], ncols: int) -> int:
    """In-place row HNF of ``h`` tracking ``u``; returns the rank."""
    m = len(h)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        # gcd-combine all rows below r into row r at column c
        for i in range(r + 1, m):
            b = h[i][c]
            if not b:
                continue
            a = h[r][c]
            if not a:
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
                continue
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            hr, hi, ur, ui = h[r], h[i], u[r], u[i]
            h[r] = [s * x + t * y for x, y in zip(hr, hi)]
            h[i] = [-bg * x + ag * y for x, y in zip(hr, hi)]
            u[r] = [s * x + t * y for x, y in zip(ur, ui)]
            u[i] = [-bg * x + ag * y for x, y in zip(ur, ui)]
        p = h[r][c]
        if not p:
            continue
        if p < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
            p = -p
        for i in range(r):
            q = h[i][c] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return r


def hnf(m: Matrix) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form: returns ``(H, U)`` with ``U @ m == H``, ``U`` unimodular.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows come last.
    """
    _require_int(m, "hnf")
    h = [list(r) for r in m.rows]
    u = [[1 if i == j else 0 for j in range(m.nrows)] for i in range(m.nrows)]
    _hnf_lists(h, u, m.ncols)
    return (Matrix(ZZ, m.nrows, m.ncols, tuple(map(tuple, h))),
            Matrix(ZZ, m.nrows, m.nrows, tuple(map(tuple, u))))


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form over Q (zero rows last)."""
    if m.ring != QQ:
        raise UsageError(f"rref expects a rational matrix, got ring {m.ring}")
    a = [list(r) for r in m.rows]
    nr = len(a)
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return Matrix(QQ, m.nrows, m.ncols, tuple(tuple(Fraction(x) for x in row) for row in a))


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: ``(S, U, V)`` with ``U @ m @ V == S``.

    ``S`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``; ``U`` and
    ``V`` are unimodular.
    """
    _require_int(m, "snf")
    nr, nc = m.nrows, m.ncols
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_comb(i, k, s, t, x, y):
        # rows (i, k) <- (s*r_i + t*r_k, x*r_i + y*r_k)
        for mat in (a, u):
            ri, rk = mat[i], mat[k]
            mat[i] = [s * p + t * q for p, q in zip(ri, rk)]
            mat[k] = [x * p + y * q for p, q in zip(ri, rk)]

    def col_comb(j, k, s, t, x, y):
        for mat in (a, v):
            for row in mat:
                cj, ck = row[j], row[k]
                row[j] = s * cj + t * ck
                row[k] = x * cj + y * ck

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for mat in (a, v):
            for row in mat:
                row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(nr, nc):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            done = True
            for i in range(t + 1, nr):
                b = a[i][t]
                if b:
                    p = a[t][t]
                    if b % p == 0:
                        row_comb(t, i, 1, 0, -(b // p), 1)
                        continue
                    g, s, tt = xgcd(p, b)
                    row_comb(t, i, s, tt, -b // g, p // g)
                    done = False
            for j in range(t + 1, nc):
                b = a[t][j]
                if b:
                    p = a[t][t]
                    if b % p == 0:
                        col_comb(t, j, 1, 0, -(b // p), 1)
                        continue
                    g, s, tt = xgcd(p, b)
                    col_comb(t, j, s, tt, -b // g, p // g)
                    done = False
            if done:
                p = a[t][t]
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                # fold the offending row into row t to restore divisibility
                row_comb(t, bad[0], 1, 1, 0, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (Matrix(ZZ, nr, nc, tuple(map(tuple, a))),
            Matrix(ZZ, nr, nr, tuple(map(tuple, u))),
            Matrix(ZZ, nc, nc, tuple(map(tuple, v))))


def smith_invariants(m: Matrix) -> list[int]:
    """Diagonal entries of the Smith form (length ``min(rows, cols)``)."""
    s, _, _ = snf(m)
    return [s[i, i] for i in range(min(s.nrows, s.ncols))]
