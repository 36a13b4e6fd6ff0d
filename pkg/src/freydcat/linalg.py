"""Left linear systems ``X A = B`` and row syzygies over Z, Q and Z/n.

All three rings share one sparse row-echelon engine that tracks the
transformation applied to the original rows.

* ``Z``: Euclidean pivoting, every step unimodular.
* ``Q``: Gaussian elimination.
* ``Z/n``: integer elimination on the lifted matrix ``[A; n*I]``.  The rows
  ``n*e_c`` are never materialised; they enter implicitly when a pivot is
  combined with the modulus, which produces the annihilator row ``(n/g)*p``.
  Entries and the kept part of the transform are reduced mod ``n``, which is
  legitimate because adding multiples of the virtual rows only changes the
  discarded coordinates of the lifted solution.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import UsageError
from .matrix import Matrix, vstack
from .rings import Ring, ZZ, xgcd


class Echelon:
    """Result of the elimination: pivot rows in column order plus syzygies."""

    __slots__ = ("ring", "ncols", "pivots", "kernel")

    def __init__(self, ring, ncols, pivots, kernel):
        self.ring = ring
        self.ncols = ncols
        # list of (column, row dict, transform dict)
        self.pivots = pivots
        # transforms of rows that became zero
        self.kernel = kernel

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _axpy(dst: dict, q, src: dict, mod: int | None):
    """dst -= q * src (in place)."""
    for k, v in src.items():
        nv = dst.get(k, 0) - q * v
        if mod is not None:
            nv %= mod
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


def _scaled(src: dict, q, mod: int | None) -> dict:
    out = {}
    for k, v in src.items():
        nv = q * v
        if mod is not None:
            nv %= mod
        if nv:
            out[k] = nv
    return out


def _echelon(ring: Ring, rows: tuple, ncols: int) -> Echelon:
    kind = ring.kind
    mod = ring.modulus if kind == "Zmod" else None
    active = []
    for i, r in enumerate(rows):
        vec = {j: v for j, v in enumerate(r) if v}
        active.append((vec, {i: ring.one}))
    pivots = []
    for c in range(ncols):
        cand = [rt for rt in active if c in rt[0]]
        if not cand:
            continue
        if kind == "Q":
            p = min(cand, key=lambda rt: len(rt[0]))
            pv = p[0][c]
            for rt in cand:
                if rt is not p:
                    q = rt[0][c] / pv
                    _axpy(rt[0], q, p[0], None)
                    _axpy(rt[1], q, p[1], None)
        else:
            while len(cand) > 1:
                p = min(cand, key=lambda rt: (abs(rt[0][c]), len(rt[0])))
                pv = p[0][c]
                for rt in cand:
                    if rt is not p:
                        q = rt[0][c] // pv
                        if mod is None and 2 * (rt[0][c] - q * pv) > abs(pv):
                            q += 1
                        _axpy(rt[0], q, p[0], mod)
                        _axpy(rt[1], q, p[1], mod)
                cand = [rt for rt in cand if c in rt[0]]
            p = cand[0]
        active = [rt for rt in active if rt is not p]
        if mod is not None:
            g, s, _ = xgcd(p[0][c], mod)
            annihilator = (_scaled(p[0], mod // g, mod), _scaled(p[1], mod // g, mod))
            if s % mod != 1:
                p = (_scaled(p[0], s, mod), _scaled(p[1], s, mod))
            active.append(annihilator)
        pivots.append((c, p[0], p[1]))
    kernel = [t for vec, t in active if not vec]
    return Echelon(ring, ncols, pivots, kernel)


@lru_cache(maxsize=4096)
def echelon(a: Matrix) -> Echelon:
    return _echelon(a.ring, a.rows, a.ncols)


def _reduce_row(ech: Echelon, row: dict):
    """Write ``row`` as a combination of pivot rows; return (coeffs, remainder)."""
    kind = ech.ring.kind
    mod = ech.ring.modulus if kind == "Zmod" else None
    b = dict(row)
    x = {}
    for c, vec, trans in ech.pivots:
        bc = b.get(c)
        if not bc:
            continue
        pv = vec[c]
        if kind == "Q":
            q = bc / pv
        else:
            # over Z/n the pivot divides n, over Z division must be exact
            if bc % pv:
                return None, b
            q = bc // pv
        _axpy(b, q, vec, mod)
        _axpy(x, -q, trans, mod)
    return x, b


def solve_left(a: Matrix, b: Matrix) -> Matrix | None:
    """Return some ``X`` with ``X @ a == b``, or ``None`` if no solution exists."""
    if a.ring != b.ring:
        raise UsageError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.ncols != b.ncols:
        raise UsageError(f"solve_left: A has {a.ncols} columns but B has {b.ncols}")
    ring = a.ring
    if b.nrows == 0:
        return Matrix.zero(ring, 0, a.nrows)
    if b.is_zero():
        return Matrix.zero(ring, b.nrows, a.nrows)
    ech = echelon(a)
    z = ring.zero
    out = []
    for brow in b.rows:
        x, rest = _reduce_row(ech, {j: v for j, v in enumerate(brow) if v})
        if x is None or rest:
            return None
        out.append(tuple(ring.coerce(x.get(i, 0)) if ring.kind != "Q" else x.get(i, z) for i in range(a.nrows)))
    return Matrix(ring, b.nrows, a.nrows, tuple(out))


def solve_right(a: Matrix, b: Matrix) -> Matrix | None:
    """Return some ``X`` with ``a @ X == b`` (valid since our rings commute)."""
    x = solve_left(a.T, b.T)
    return None if x is None else x.T


def row_syzygies(a: Matrix) -> Matrix:
    """Generators ``L`` of all ``T`` with ``T @ a == 0``, in canonical row form."""
    ring = a.ring
    ech = echelon(a)
    rows = []
    for t in ech.kernel:
        if t:
            rows.append(tuple(t.get(i, 0) for i in range(a.nrows)))
    if ring.kind == "Q":
        rows = [tuple(ring.coerce(v) for v in r) for r in rows]
    raw = Matrix(ring, len(rows), a.nrows, tuple(rows))
    return canonical_rows(raw)


def column_syzygies(a: Matrix) -> Matrix:
    """Generators ``C`` (as columns) of all ``Y`` with ``a @ Y == 0``."""
    return row_syzygies(a.T).T


@lru_cache(maxsize=4096)
def canonical_rows(a: Matrix) -> Matrix:
    """A canonical generating set of the row span of ``a`` (zero rows dropped).

    Z: Hermite normal form; Q: reduced row echelon form; Z/n: the Hermite
    form of the lifted lattice ``[a; n*I]`` reduced mod n.
    """
    from .normal_forms import hnf, rref

    ring = a.ring
    if a.nrows == 0:
        return a
    if ring.kind == "Z":
        h, _ = hnf(a)
        r = sum(1 for row in h.rows if any(row))
        return h.row_block(0, r)
    if ring.kind == "Q":
        e = rref(a)
        r = sum(1 for row in e.rows if any(row))
        return e.row_block(0, r)
    n = ring.modulus
    lifted = vstack(a.lift_to_int(), Matrix.identity(ZZ, a.ncols).scale(n))
    h, _ = hnf(lifted)
    rows = [tuple(v % n for v in row) for row in h.rows]
    rows = [row for row in rows if any(row)]
    return Matrix(ring, len(rows), a.ncols, tuple(rows))


def in_row_span(a: Matrix, v: Matrix) -> bool:
    return solve_left(a, v) is not None
