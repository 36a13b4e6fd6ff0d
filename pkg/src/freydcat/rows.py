"""The category Rows_R: objects are ranks, morphisms are matrices."""

from __future__ import annotations

from .category import Category, Freyd, HomStructure, Mor, Obj, Rows, precondition
from .errors import ConfigurationError, UsageError
from .linalg import column_syzygies, row_syzygies, solve_left, solve_right
from .matrix import Matrix, block_diag, hstack, kron, vstack
from .rings import Ring


def rows_obj(ring: Ring, rank: int) -> Obj:
    if rank < 0:
        raise UsageError(f"rank must be nonnegative, got {rank}")
    return Obj(Rows(ring), rank)


def rows_mor(m: Matrix) -> Mor:
    """Wrap an ``a x b`` matrix as a morphism ``R^{1 x a} -> R^{1 x b}``."""
    d = Rows(m.ring)
    return Mor(d, Obj(d, m.nrows), Obj(d, m.ncols), m)


class RowsCategory(Category):
    has_weak_kernels = True
    has_weak_cokernels = True
    has_lifts = True
    has_colifts = True

    def __init__(self, ring: Ring):
        if not isinstance(ring, Ring):
            raise ConfigurationError(f"unsupported ring {ring!r}")
        # every supported ring is commutative, so colifts may use transposes
        self.ring = ring
        self.desc = Rows(ring)
        self._hs = None

    def obj(self, rank: int) -> Obj:
        return Obj(self.desc, rank)

    def mor(self, m: Matrix, source: Obj | None = None, target: Obj | None = None) -> Mor:
        if m.ring != self.ring:
            raise UsageError(f"matrix over {m.ring} in {self.desc}")
        source = source or self.obj(m.nrows)
        target = target or self.obj(m.ncols)
        if (source.payload, target.payload) != m.shape:
            raise UsageError(f"matrix shape {m.shape} does not match {source.payload} -> {target.payload}")
        return Mor(self.desc, source, target, m)

    def _m(self, rows, cols, m: Matrix) -> Mor:
        return Mor(self.desc, self.obj(rows), self.obj(cols), m)

    def identity(self, a: Obj) -> Mor:
        return Mor(self.desc, a, a, Matrix.identity(self.ring, a.payload))

    def _compose(self, f, g):
        return Mor(self.desc, f.source, g.target, f.payload @ g.payload)

    def _add(self, f, g):
        return Mor(self.desc, f.source, f.target, f.payload + g.payload)

    def neg(self, f):
        return Mor(self.desc, f.source, f.target, -f.payload)

    def zero_mor(self, a, b):
        return Mor(self.desc, a, b, Matrix.zero(self.ring, a.payload, b.payload))

    def zero_object(self):
        return self.obj(0)

    def is_zero(self, f):
        return f.payload.is_zero()

    def mor_eq(self, f, g):
        if not (f.source.same(g.source) and f.target.same(g.target)):
            raise UsageError("morphisms are not parallel")
        return f.payload == g.payload

    def is_zero_object(self, a):
        return a.payload == 0

    def direct_sum(self, objs):
        objs = list(objs)
        total = sum(o.payload for o in objs)
        s = self.obj(total)
        inj, proj = [], []
        off = 0
        for o in objs:
            n = o.payload
            e = Matrix.identity(self.ring, total).row_block(off, off + n)
            inj.append(Mor(self.desc, o, s, e))
            proj.append(Mor(self.desc, s, o, e.T))
            off += n
        return s, inj, proj

    def to_direct_sum(self, mors, source, target=None):
        mors = list(mors)
        if target is None:
            target = self.obj(sum(f.target.payload for f in mors))
        m = hstack(*(f.payload for f in mors), ring=self.ring, nrows=source.payload)
        return Mor(self.desc, source, target, m)

    def from_direct_sum(self, mors, target, source=None):
        mors = list(mors)
        if source is None:
            source = self.obj(sum(f.source.payload for f in mors))
        m = vstack(*(f.payload for f in mors), ring=self.ring, ncols=target.payload)
        return Mor(self.desc, source, target, m)

    def direct_sum_mor(self, mors):
        mors = list(mors)
        m = block_diag(*(f.payload for f in mors), ring=self.ring)
        return self._m(m.nrows, m.ncols, m)

    def block_mor(self, sources, targets, grid):
        z = self.ring
        rows = []
        for j, s in enumerate(sources):
            cells = [grid[j][i].payload if grid[j][i] is not None
                     else Matrix.zero(z, s.payload, targets[i].payload) for i in range(len(targets))]
            rows.append(hstack(*cells, ring=z, nrows=s.payload))
        m = vstack(*rows, ring=z, ncols=sum(t.payload for t in targets))
        return self._m(m.nrows, m.ncols, m)

    # --- weak (co)kernels -------------------------------------------------
    def weak_kernel(self, f):
        """Row syzygies: ``κ`` generates every ``T`` with ``T·f = 0``."""
        L = row_syzygies(f.payload)
        return self.obj(L.nrows), Mor(self.desc, self.obj(L.nrows), f.source, L)

    def weak_kernel_lift(self, f, tau):
        _, kappa = self.weak_kernel(f)
        x = solve_left(kappa.payload, tau.payload)
        precondition(x is not None, "weak_kernel_lift: tau does not compose to zero")
        return Mor(self.desc, tau.source, kappa.source, x)

    def weak_cokernel(self, f):
        C = column_syzygies(f.payload)
        return self.obj(C.ncols), Mor(self.desc, f.target, self.obj(C.ncols), C)

    def weak_cokernel_colift(self, f, tau):
        _, c = self.weak_cokernel(f)
        x = solve_right(c.payload, tau.payload)
        precondition(x is not None, "weak_cokernel_colift: tau does not vanish on f")
        return Mor(self.desc, c.target, tau.target, x)

    def weak_pullback(self, alpha, gamma):
        if not alpha.target.same(gamma.target):
            raise UsageError("weak pullback needs a cospan A -> B <- C")
        return super().weak_pullback(alpha, gamma)

    # --- lifts --------------------------------------------------------------
    def lift(self, alpha, gamma):
        if not alpha.target.same(gamma.target):
            raise UsageError("lift needs alpha: A -> B and gamma: C -> B")
        x = solve_left(gamma.payload, alpha.payload)
        return None if x is None else Mor(self.desc, alpha.source, gamma.source, x)

    def colift(self, alpha, gamma):
        if not alpha.source.same(gamma.source):
            raise UsageError("colift needs alpha: B -> A and gamma: B -> C")
        x = solve_right(gamma.payload, alpha.payload)
        return None if x is None else Mor(self.desc, gamma.target, alpha.target, x)

    # --- linear systems -----------------------------------------------------
    def hom_structure(self, required: bool = True):
        if self._hs is None:
            self._hs = RowsHomStructure(self.ring)
        return self._hs

    def _solve_default(self, sys):
        from .category import solve_via_hom_structure
        return solve_via_hom_structure(sys, self.hom_structure())


class RowsHomStructure(HomStructure):
    """Hom structure of Rows_R with values in relation-free objects of FREYD(ROWS(R)).

    ``H(a, b)`` has rank ``a·b``; ``ν`` flattens row-major, index ``(j, k) -> j·b + k``;
    ``H(α, β)`` has entry ``((j, k), (i, l)) = α_ij β_kl``, i.e. ``kron(αᵀ, β)``.
    """

    def __init__(self, ring: Ring):
        from .freyd import free_object
        self.ring = ring
        self.P = Rows(ring)
        self.B = Freyd(Rows(ring))
        self._free = free_object
        self._one = free_object(ring, 1)

    @property
    def one(self):
        return self._one

    def h_obj(self, a, b):
        return self._free(self.ring, a.payload * b.payload)

    def h_mor(self, alpha, beta):
        from .freyd import FreydMorphism
        src = self.h_obj(alpha.target, beta.source)
        tgt = self.h_obj(alpha.source, beta.target)
        datum = rows_mor(kron(alpha.payload.T, beta.payload))
        return Mor(self.B, src, tgt, FreydMorphism.relation_free(datum, src, tgt))

    def nu(self, x):
        from .freyd import FreydMorphism
        m = x.payload
        flat = Matrix(self.ring, 1, m.nrows * m.ncols, (sum(m.rows, ()),))
        tgt = self.h_obj(x.source, x.target)
        return Mor(self.B, self._one, tgt, FreydMorphism.relation_free(rows_mor(flat), self._one, tgt))

    def nu_inv(self, psi, a, b):
        row = psi.payload.datum.payload.rows[0] if psi.payload.datum.payload.nrows else ()
        na, nb = a.payload, b.payload
        if len(row) != na * nb:
            raise UsageError("nu_inv: element does not live in H(a, b)")
        m = Matrix(self.ring, na, nb, tuple(tuple(row[j * nb:(j + 1) * nb]) for j in range(na)))
        return Mor(self.P, a, b, m)
