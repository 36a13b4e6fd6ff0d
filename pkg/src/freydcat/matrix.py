"""Immutable dense matrices over a :class:`~freydcat.rings.Ring`.

Morphisms ``R^{1 x m} -> R^{1 x n}`` act on row vectors from the right, so an
``m x n`` matrix is a morphism from rank ``m`` to rank ``n`` and composition
"first ``A`` then ``B``" is the product ``A @ B``.
"""

from __future__ import annotations

from .errors import UsageError
from .rings import Ring


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring: Ring, nrows: int, ncols: int, rows: tuple):
        # trusted constructor: entries must already be canonical tuples
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def from_rows(cls, ring: Ring, rows, ncols: int | None = None) -> Matrix:
        rows = [tuple(ring.coerce(v) for v in row) for row in rows]
        if ncols is None:
            if not rows:
                raise UsageError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise UsageError(f"ragged matrix: expected {ncols} columns, got {len(row)}")
        return cls(ring, len(rows), ncols, tuple(rows))

    @classmethod
    def zero(cls, ring: Ring, nrows: int, ncols: int) -> Matrix:
        z = ring.zero
        return cls(ring, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        z, o = ring.zero, ring.one
        return cls(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, ring: Ring, values, nrows: int | None = None, ncols: int | None = None) -> Matrix:
        values = [ring.coerce(v) for v in values]
        nrows = len(values) if nrows is None else nrows
        ncols = len(values) if ncols is None else ncols
        z = ring.zero
        rows = []
        for i in range(nrows):
            rows.append(tuple(values[i] if i == j and i < len(values) else z for j in range(ncols)))
        return cls(ring, nrows, ncols, tuple(rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.ring}, {self.nrows}x{self.ncols}, {self.tolist()})"

    def _check_ring(self, other: Matrix):
        if self.ring != other.ring:
            raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_ring(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot add {self.shape} and {other.shape} matrices")
        add = self.ring.add
        rows = tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix(self.ring, self.nrows, self.ncols, rows)

    def __neg__(self) -> Matrix:
        neg = self.ring.neg
        return Matrix(self.ring, self.nrows, self.ncols, tuple(tuple(neg(a) for a in r) for r in self.rows))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_ring(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot subtract {other.shape} from {self.shape} matrix")
        sub = self.ring.sub
        rows = tuple(tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix(self.ring, self.nrows, self.ncols, rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        z = ring.zero
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            if not nz:
                out.append((z,) * other.ncols)
                continue
            out.append(tuple(sum((a * c[k] for k, a in nz), z) for c in cols))
        if ring.kind == "Zmod":
            n = ring.modulus
            out = [tuple(v % n for v in r) for r in out]
        return Matrix(ring, self.nrows, other.ncols, tuple(out))

    def scale(self, c) -> Matrix:
        c = self.ring.coerce(c)
        mul = self.ring.mul
        return Matrix(self.ring, self.nrows, self.ncols, tuple(tuple(mul(c, a) for a in r) for r in self.rows))

    @property
    def T(self) -> Matrix:
        if self.nrows == 0:
            return Matrix.zero(self.ring, self.ncols, 0)
        return Matrix(self.ring, self.ncols, self.nrows, tuple(zip(*self.rows)))

    def transpose(self) -> Matrix:
        return self.T

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def submatrix(self, row_slice: slice, col_slice: slice) -> Matrix:
        rows = tuple(r[col_slice] for r in self.rows[row_slice])
        nrows = len(range(*row_slice.indices(self.nrows)))
        ncols = len(range(*col_slice.indices(self.ncols)))
        return Matrix(self.ring, nrows, ncols, rows)

    def row_block(self, start: int, stop: int) -> Matrix:
        return self.submatrix(slice(start, stop), slice(None))

    def col_block(self, start: int, stop: int) -> Matrix:
        return self.submatrix(slice(None), slice(start, stop))

    def lift_to_int(self) -> Matrix:
        """Reinterpret a ``Z/n`` matrix over ``Z`` via residues in ``[0, n)``."""
        from .rings import ZZ
        if self.ring.kind != "Zmod":
            raise UsageError("lift_to_int expects a Z/n matrix")
        return Matrix(ZZ, self.nrows, self.ncols, self.rows)

    def change_ring(self, ring: Ring) -> Matrix:
        return Matrix.from_rows(ring, self.rows, self.ncols)


def hstack(*blocks: Matrix, ring: Ring | None = None, nrows: int | None = None) -> Matrix:
    if not blocks:
        if ring is None or nrows is None:
            raise UsageError("empty hstack needs ring and nrows")
        return Matrix.zero(ring, nrows, 0)
    ring = blocks[0].ring
    m = blocks[0].nrows
    for b in blocks:
        if b.ring != ring:
            raise UsageError("ring mismatch in hstack")
        if b.nrows != m:
            raise UsageError(f"hstack of blocks with {m} and {b.nrows} rows")
    rows = tuple(sum((b.rows[i] for b in blocks), ()) for i in range(m))
    return Matrix(ring, m, sum(b.ncols for b in blocks), rows)


def vstack(*blocks: Matrix, ring: Ring | None = None, ncols: int | None = None) -> Matrix:
    if not blocks:
        if ring is None or ncols is None:
            raise UsageError("empty vstack needs ring and ncols")
        return Matrix.zero(ring, 0, ncols)
    ring = blocks[0].ring
    n = blocks[0].ncols
    for b in blocks:
        if b.ring != ring:
            raise UsageError("ring mismatch in vstack")
        if b.ncols != n:
            raise UsageError(f"vstack of blocks with {n} and {b.ncols} columns")
    rows = sum((b.rows for b in blocks), ())
    return Matrix(ring, sum(b.nrows for b in blocks), n, rows)


def block_diag(*blocks: Matrix, ring: Ring | None = None) -> Matrix:
    if not blocks:
        if ring is None:
            raise UsageError("empty block_diag needs a ring")
        return Matrix.zero(ring, 0, 0)
    ring = blocks[0].ring
    total = sum(b.ncols for b in blocks)
    z = ring.zero
    rows = []
    offset = 0
    for b in blocks:
        if b.ring != ring:
            raise UsageError("ring mismatch in block_diag")
        left = (z,) * offset
        right = (z,) * (total - offset - b.ncols)
        rows.extend(left + r + right for r in b.rows)
        offset += b.ncols
    return Matrix(ring, len(rows), total, tuple(rows))


def block_matrix(blocks: list[list[Matrix]]) -> Matrix:
    """Assemble a matrix from a rectangular grid of blocks."""
    return vstack(*(hstack(*row) for row in blocks))


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with row-major index pairing ``(i, k) -> i*b.nrows + k``."""
    a._check_ring(b)
    ring = a.ring
    mul = ring.mul
    z = ring.zero
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            row = []
            for x in ra:
                if x:
                    row.extend(mul(x, y) for y in rb)
                else:
                    row.extend((z,) * b.ncols)
            rows.append(tuple(row))
    return Matrix(ring, a.nrows * b.nrows, a.ncols * b.ncols, tuple(rows))


def mat_ops(op: str, *args, ring: Ring | None = None) -> Matrix:
    """Dispatch table for the basic matrix operations by name."""
    if op == "mul":
        a, b = args
        return a @ b
    if op == "add":
        a, b = args
        return a + b
    if op == "neg":
        (a,) = args
        return -a
    if op == "hstack":
        return hstack(*args, ring=ring)
    if op == "vstack":
        return vstack(*args, ring=ring)
    if op == "identity":
        (n,) = args
        return Matrix.identity(ring, n)
    if op == "zero":
        m, n = args
        return Matrix.zero(ring, m, n)
    if op == "transpose":
        (a,) = args
        return a.T
    raise UsageError(f"unknown matrix operation {op!r}")
