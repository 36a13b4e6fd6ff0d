"""Freyd categories A(P), opposite categories and their homomorphism structures.

An object of A(P) is a morphism ``ρ_A : R_A -> A`` of P (generators ``A``
with relations ``R_A``).  A morphism ``(A <- R_A) -> (B <- R_B)`` is a datum
``α : A -> B`` together with a witness ``ρ_α : R_A -> R_B`` satisfying
``ρ_A·α = ρ_α·ρ_B``; two data are equal iff their difference factors
through ``ρ_B``.
"""

from __future__ import annotations

from .category import (Category, Freyd, HomStructure, LinearSystem, Mor, Obj, Op, Rows,
                       category_for, precondition)
from .errors import ConfigurationError, PreconditionError, UsageError
from .matrix import Matrix
from .rings import Ring


class FreydObject:
    __slots__ = ("relation",)

    def __init__(self, relation: Mor):
        self.relation = relation

    @property
    def range(self) -> Obj:
        return self.relation.target

    @property
    def relations(self) -> Obj:
        return self.relation.source

    def __repr__(self):
        return f"FreydObject({self.relation.payload!r})"


class FreydMorphism:
    """Datum plus (write-once, possibly lazily computed) witness."""

    __slots__ = ("datum", "_witness")

    def __init__(self, datum: Mor, witness: Mor | None = None):
        self.datum = datum
        self._witness = witness

    @property
    def witness(self) -> Mor | None:
        return self._witness

    @classmethod
    def relation_free(cls, datum: Mor, source: Obj, target: Obj) -> FreydMorphism:
        """Payload for a morphism whose witness is forced to be zero."""
        inner = category_for(datum.desc)
        return cls(datum, inner.zero_mor(source.payload.relations, target.payload.relations))

    def __repr__(self):
        return f"FreydMorphism({self.datum.payload!r})"


def trivially_zero(o: Obj) -> bool:
    """Cheap structural test for objects that are visibly zero."""
    d = o.desc
    if isinstance(d, Rows):
        return o.payload == 0
    if isinstance(d, Op):
        return trivially_zero(o.payload)
    return trivially_zero(o.payload.range)


def freyd_object(relation: Mor) -> Obj:
    return Obj(Freyd(relation.desc), FreydObject(relation))


def free_object(ring: Ring, n: int) -> Obj:
    """The relation-free object ``(R^{1 x n} <- 0)`` of FREYD(ROWS(ring))."""
    from .rows import rows_mor
    return freyd_object(rows_mor(Matrix.zero(ring, 0, n)))


def present(relations: Matrix) -> Obj:
    """The module presented by ``relations`` (an ``r x g`` matrix, one relation per row)."""
    from .rows import rows_mor
    return freyd_object(rows_mor(relations))


def _pieces(o: Obj):
    p = o.payload
    return p.range, p.relations, p.relation


class FreydCategory(Category):
    has_weak_cokernels = True

    def __init__(self, inner_desc):
        self.desc = Freyd(inner_desc)
        self.inner = category_for(inner_desc)
        self.has_weak_kernels = self.inner.has_weak_kernels
        self.is_abelian = self.inner.has_weak_kernels
        self.has_lifts = self.has_colifts = self.inner.has_lifts
        self._hs = None

    # --- construction -----------------------------------------------------
    def obj(self, relation: Mor) -> Obj:
        if relation.desc != self.inner.desc:
            raise UsageError(f"relation lives in {relation.desc}, expected {self.inner.desc}")
        return Obj(self.desc, FreydObject(relation))

    def mor(self, source: Obj, target: Obj, datum: Mor, witness: Mor | None = None) -> Mor:
        """Trusted constructor (the witness, if omitted, is computed on demand)."""
        return Mor(self.desc, source, target, FreydMorphism(datum, witness))

    def freyd_morphism(self, source: Obj, target: Obj, datum: Mor) -> Mor | None:
        """The morphism with the given datum, or ``None`` if it is not well defined."""
        a, _, rho_a = _pieces(source)
        b, _, rho_b = _pieces(target)
        if not (datum.source.same(a) and datum.target.same(b)):
            raise UsageError("datum does not map range(source) to range(target)")
        w = self.inner.lift(self.inner.compose(rho_a, datum), rho_b)
        if w is None:
            return None
        return self.mor(source, target, datum, w)

    def witness(self, f: Mor) -> Mor:
        p = f.payload
        if p._witness is None:
            rho_a = f.source.payload.relation
            rho_b = f.target.payload.relation
            w = self.inner.lift(self.inner.compose(rho_a, p.datum), rho_b)
            if w is None:
                raise PreconditionError("datum does not respect the relations")
            p._witness = w
        return p._witness

    def datum(self, f: Mor) -> Mor:
        return f.payload.datum

    # --- additive structure -----------------------------------------------
    def identity(self, a):
        r, rr, _ = _pieces(a)
        return self.mor(a, a, self.inner.identity(r), self.inner.identity(rr))

    def _compose(self, f, g):
        i = self.inner
        return self.mor(f.source, g.target, i.compose(f.payload.datum, g.payload.datum),
                        i.compose(self.witness(f), self.witness(g)))

    def _add(self, f, g):
        i = self.inner
        return self.mor(f.source, f.target, i.add(f.payload.datum, g.payload.datum),
                        i.add(self.witness(f), self.witness(g)))

    def neg(self, f):
        i = self.inner
        return self.mor(f.source, f.target, i.neg(f.payload.datum), i.neg(self.witness(f)))

    def zero_mor(self, a, b):
        i = self.inner
        return self.mor(a, b, i.zero_mor(a.payload.range, b.payload.range),
                        i.zero_mor(a.payload.relations, b.payload.relations))

    def zero_object(self):
        z = self.inner.zero_object()
        return self.obj(self.inner.identity(z))

    def is_zero(self, f):
        return self.inner.lift(f.payload.datum, f.target.payload.relation) is not None

    def equality_witness(self, f: Mor, g: Mor) -> Mor | None:
        """``λ`` with ``λ·ρ_B = datum(f) - datum(g)``, or ``None`` if ``f ≠ g``."""
        d = self.inner.sub(f.payload.datum, g.payload.datum)
        return self.inner.lift(d, f.target.payload.relation)

    def is_zero_object(self, a):
        r, _, rho = _pieces(a)
        return self.inner.lift(self.inner.identity(r), rho) is not None

    def direct_sum(self, objs):
        objs = list(objs)
        i = self.inner
        rs, rinj, rproj = i.direct_sum([o.payload.range for o in objs])
        qs, qinj, qproj = i.direct_sum([o.payload.relations for o in objs])
        if objs:
            rel = i.direct_sum_mor([o.payload.relation for o in objs])
            rel = Mor(i.desc, qs, rs, rel.payload)
        else:
            rel = i.zero_mor(qs, rs)
        s = self.obj(rel)
        inj = [self.mor(o, s, a, b) for o, a, b in zip(objs, rinj, qinj)]
        proj = [self.mor(s, o, a, b) for o, a, b in zip(objs, rproj, qproj)]
        return s, inj, proj

    def to_direct_sum(self, mors, source, target=None):
        mors = list(mors)
        if target is None:
            target, _, _ = self.direct_sum([f.target for f in mors])
        i = self.inner
        d = i.to_direct_sum([f.payload.datum for f in mors], source.payload.range, target.payload.range)
        w = i.to_direct_sum([self.witness(f) for f in mors], source.payload.relations,
                            target.payload.relations)
        return self.mor(source, target, d, w)

    def from_direct_sum(self, mors, target, source=None):
        mors = list(mors)
        if source is None:
            source, _, _ = self.direct_sum([f.source for f in mors])
        i = self.inner
        d = i.from_direct_sum([f.payload.datum for f in mors], target.payload.range, source.payload.range)
        w = i.from_direct_sum([self.witness(f) for f in mors], target.payload.relations,
                              source.payload.relations)
        return self.mor(source, target, d, w)

    # --- cokernels ----------------------------------------------------------
    def _coker_relation(self, f: Mor):
        """``[ρ_B; α] : R_B ⊕ A -> B`` together with the sum data."""
        memo = f.cache.get("coker_rel")
        if memo is None:
            i = self.inner
            b, rb, rho_b = _pieces(f.target)
            a = f.source.payload.range
            s, inj, proj = i.direct_sum([rb, a])
            rel = i.from_direct_sum([rho_b, f.payload.datum], b, s)
            memo = (rel, inj, proj)
            f.cache["coker_rel"] = memo
        return memo

    def cokernel(self, f: Mor) -> tuple[Obj, Mor]:
        """``(B <- [ρ_B; α])`` with projection datum ``id_B``."""
        memo = f.cache.get("coker")
        if memo is None:
            _check(self, f)
            rel, inj, _ = self._coker_relation(f)
            k = self.obj(rel)
            b = f.target.payload.range
            memo = (k, self.mor(f.target, k, self.inner.identity(b), inj[0]))
            f.cache["coker"] = memo
        return memo

    def cokernel_colift(self, f: Mor, tau: Mor, sigma: Mor | None = None) -> Mor:
        """The morphism ``coker(f) -> T`` induced by ``tau`` with ``f·tau = 0``.

        ``sigma : A -> R_T`` with ``sigma·ρ_T = α·τ`` certifies the vanishing; it is
        computed when omitted.
        """
        _check(self, f, tau)
        if not tau.source.same(f.target):
            raise UsageError("cokernel_colift: tau must start at the target of f")
        i = self.inner
        k, _ = self.cokernel(f)
        rho_t = tau.target.payload.relation
        if sigma is None:
            sigma = i.lift(i.compose(f.payload.datum, tau.payload.datum), rho_t)
            precondition(sigma is not None, "cokernel_colift: f·tau is not zero")
        w = i.from_direct_sum([self.witness(tau), sigma], tau.target.payload.relations,
                              k.payload.relations)
        return self.mor(k, tau.target, tau.payload.datum, w)

    weak_cokernel = cokernel
    weak_cokernel_colift = cokernel_colift

    # --- kernels --------------------------------------------------------------
    def _kernel_data(self, f: Mor):
        memo = f.cache.get("kernel_data")
        if memo is None:
            if not self.is_abelian:
                raise ConfigurationError(f"{self.inner.desc} has no weak kernels, so {self.desc} has no kernels")
            i = self.inner
            _, _, rho_a = _pieces(f.source)
            _, _, rho_b = _pieces(f.target)
            alpha = f.payload.datum
            p1, pr1, pr2 = i.weak_pullback(rho_b, alpha)
            p2, q1, q2 = i.weak_pullback(pr2, rho_a)
            memo = (rho_b, alpha, pr1, pr2, rho_a, q1, q2)
            f.cache["kernel_data"] = memo
        return memo

    def kernel(self, f: Mor) -> tuple[Obj, Mor]:
        """``(R_B ×_B A <- (R_B ×_B A) ×_A R_A)`` with embedding datum the projection to ``A``."""
        memo = f.cache.get("kernel")
        if memo is None:
            _check(self, f)
            _, _, _, pr2, _, q1, q2 = self._kernel_data(f)
            k = self.obj(q1)
            memo = (k, self.mor(k, f.source, pr2, q2))
            f.cache["kernel"] = memo
        return memo

    def kernel_lift(self, f: Mor, tau: Mor, sigma: Mor | None = None) -> Mor:
        """The morphism ``T -> ker(f)`` induced by ``tau`` with ``tau·f = 0``.

        ``sigma : T -> R_B`` with ``sigma·ρ_B = τ·α`` certifies the vanishing.
        """
        _check(self, f, tau)
        if not tau.target.same(f.source):
            raise UsageError("kernel_lift: tau must end at the source of f")
        i = self.inner
        rho_b, alpha, _, pr2, rho_a, _, _ = self._kernel_data(f)
        k, _ = self.kernel(f)
        t = tau.payload.datum
        if sigma is None:
            sigma = i.lift(i.compose(t, alpha), rho_b)
            precondition(sigma is not None, "kernel_lift: tau·f is not zero")
        u = i.weak_pullback_lift(rho_b, alpha, sigma, t)
        rho_t = tau.source.payload.relation
        w = i.weak_pullback_lift(pr2, rho_a, i.compose(rho_t, u), self.witness(tau))
        return self.mor(tau.source, k, u, w)

    def weak_kernel(self, f):
        return self.kernel(f)

    def weak_kernel_lift(self, f, tau):
        return self.kernel_lift(f, tau)

    # --- predicates ---------------------------------------------------------
    def _mono_sigma(self, f: Mor):
        """``σ`` with ``pr2 = σ·ρ_A`` (exists iff ``f`` is a monomorphism)."""
        if "mono_sigma" not in f.cache:
            _, _, _, pr2, rho_a, _, _ = self._kernel_data(f)
            f.cache["mono_sigma"] = self.inner.lift(pr2, rho_a)
        return f.cache["mono_sigma"]

    def _epi_split(self, f: Mor):
        """``x : B -> R_B ⊕ A`` with ``x·[ρ_B; α] = id_B`` (exists iff ``f`` is an epimorphism)."""
        if "epi_split" not in f.cache:
            rel, _, _ = self._coker_relation(f)
            b = f.target.payload.range
            f.cache["epi_split"] = self.inner.lift(self.inner.identity(b), rel)
        return f.cache["epi_split"]

    def is_mono(self, f: Mor) -> bool:
        _check(self, f)
        return self._mono_sigma(f) is not None

    def is_epi(self, f: Mor) -> bool:
        _check(self, f)
        return self._epi_split(f) is not None

    def is_iso(self, f: Mor) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    def predicates(self, f: Mor) -> dict:
        return {"is_mono": self.is_mono(f), "is_epi": self.is_epi(f),
                "is_iso": self.is_iso(f), "is_zero": self.is_zero(f)}

    # --- lifts along monos, colifts along epis ------------------------------
    def lift_along_mono(self, mono: Mor, tau: Mor) -> Mor:
        """``χ`` with ``χ·mono = tau`` for a monomorphism ``mono``."""
        _check(self, mono, tau)
        if not tau.target.same(mono.target):
            raise UsageError("lift_along_mono: tau must end at the target of the mono")
        i = self.inner
        sigma = self._mono_sigma(mono)
        precondition(sigma is not None, "lift_along_mono: not a monomorphism")
        rel, _, proj = self._coker_relation(mono)
        x = i.lift(tau.payload.datum, rel)
        precondition(x is not None, "lift_along_mono: tau does not factor through the mono")
        t_rb, t_a = i.compose(x, proj[0]), i.compose(x, proj[1])
        rho_b, alpha, _, _, _, _, _ = self._kernel_data(mono)
        rho_t = tau.source.payload.relation
        u = i.weak_pullback_lift(rho_b, alpha,
                                 i.sub(self.witness(tau), i.compose(rho_t, t_rb)),
                                 i.compose(rho_t, t_a))
        return self.mor(tau.source, mono.source, t_a, i.compose(u, sigma))

    def colift_along_epi(self, epi: Mor, tau: Mor) -> Mor:
        """``χ`` with ``epi·χ = tau`` for an epimorphism ``epi``."""
        _check(self, epi, tau)
        if not tau.source.same(epi.source):
            raise UsageError("colift_along_epi: tau must start at the source of the epi")
        i = self.inner
        x = self._epi_split(epi)
        precondition(x is not None, "colift_along_epi: not an epimorphism")
        _, _, proj = self._coker_relation(epi)
        s_rb, s_a = i.compose(x, proj[0]), i.compose(x, proj[1])
        rho_b, alpha, _, pr2, _, _, _ = self._kernel_data(epi)
        rho_t = tau.target.payload.relation
        sigma = i.lift(i.compose(pr2, tau.payload.datum), rho_t)
        precondition(sigma is not None, "colift_along_epi: tau does not vanish on the kernel")
        rb = epi.target.payload.relations
        u = i.weak_pullback_lift(rho_b, alpha,
                                 i.sub(i.identity(rb), i.compose(rho_b, s_rb)),
                                 i.compose(rho_b, s_a))
        return self.mor(epi.target, tau.target, i.compose(s_a, tau.payload.datum), i.compose(u, sigma))

    def inverse(self, f: Mor) -> Mor:
        precondition(self.is_iso(f), "inverse: not an isomorphism")
        return self.lift_along_mono(f, self.identity(f.target))

    def image(self, f: Mor) -> tuple[Obj, Mor, Mor]:
        """``(I, e, m)`` with ``f = e·m``, ``e`` epi and ``m`` the kernel of the cokernel."""
        _, p = self.cokernel(f)
        im, m = self.kernel(p)
        e = self.lift_along_mono(m, f)
        return im, e, m

    def pullback(self, alpha: Mor, gamma: Mor) -> tuple[Obj, Mor, Mor]:
        """Genuine pullback (the weak pullback built from a genuine kernel)."""
        return self.weak_pullback(alpha, gamma)

    def pullback_lift(self, alpha, gamma, p, q):
        return self.weak_pullback_lift(alpha, gamma, p, q)

    # --- lifts and linear systems -------------------------------------------
    def lift(self, alpha, gamma):
        _check(self, alpha, gamma)
        if not alpha.target.same(gamma.target):
            raise UsageError("lift needs alpha: A -> B and gamma: C -> B")
        i = self.inner
        if trivially_zero(alpha.source.payload.relations):
            # no relations to respect: lift the datum along [γ; ρ_B]
            b, rb, rho_b = _pieces(gamma.target)
            c = gamma.source.payload.range
            s, _, proj = i.direct_sum([c, rb])
            x = i.lift(alpha.payload.datum, i.from_direct_sum([gamma.payload.datum, rho_b], b, s))
            if x is None:
                return None
            src = alpha.source
            return self.mor(src, gamma.source, i.compose(x, proj[0]),
                            i.zero_mor(src.payload.relations, gamma.source.payload.relations))
        sys = LinearSystem([[self.identity(alpha.source)]], [[gamma]], [alpha],
                           unknowns=[(alpha.source, gamma.source)], desc=self.desc)
        sol = self.solve_linear_system(sys)
        return None if sol is None else sol[0]

    def colift(self, alpha, gamma):
        _check(self, alpha, gamma)
        if not alpha.source.same(gamma.source):
            raise UsageError("colift needs alpha: B -> A and gamma: B -> C")
        sys = LinearSystem([[gamma]], [[self.identity(alpha.target)]], [alpha],
                           unknowns=[(gamma.target, alpha.target)], desc=self.desc)
        sol = self.solve_linear_system(sys)
        return None if sol is None else sol[0]

    def reduce_linear_system(self, sys):
        """Equivalent system over the inner category.

        Unknowns ``[X1_j (data), X2_j (witnesses), Z_i (equality witnesses)]``;
        equations ``Σ α_ij·X1_j·β_ij - Z_i·ρ_{D_i} = γ_i`` followed by
        ``ρ_{B_j}·X1_j - X2_j·ρ_{C_j} = 0``.
        """
        if sys.desc != self.desc:
            raise UsageError(f"system lives in {sys.desc}, not {self.desc}")
        i = self.inner
        m, n = sys.shape
        unk = sys.unknowns
        unknowns = ([(b.payload.range, c.payload.range) for b, c in unk]
                    + [(b.payload.relations, c.payload.relations) for b, c in unk]
                    + [(g.source.payload.range, g.target.payload.relations) for g in sys.rhs])
        width = 2 * n + m
        left, right, rhs = [], [], []
        for r, g in enumerate(sys.rhs):
            lrow, rrow = [None] * width, [None] * width
            for j in range(n):
                if sys.left[r][j] is not None:
                    lrow[j] = sys.left[r][j].payload.datum
                    rrow[j] = sys.right[r][j].payload.datum
            lrow[2 * n + r] = i.neg(i.identity(g.source.payload.range))
            rrow[2 * n + r] = g.target.payload.relation
            left.append(lrow)
            right.append(rrow)
            rhs.append(g.payload.datum)
        for j, (b, c) in enumerate(unk):
            lrow, rrow = [None] * width, [None] * width
            lrow[j] = b.payload.relation
            rrow[j] = i.identity(c.payload.range)
            lrow[n + j] = i.neg(i.identity(b.payload.relations))
            rrow[n + j] = c.payload.relation
            left.append(lrow)
            right.append(rrow)
            rhs.append(i.zero_mor(b.payload.relations, c.payload.range))
        reduced = LinearSystem(left, right, rhs, unknowns=unknowns, desc=i.desc)

        def back(sol):
            return [self.mor(b, c, sol[j], sol[n + j]) for j, (b, c) in enumerate(unk)]

        return reduced, back

    def hom_structure(self, required: bool = True):
        if self._hs is None:
            inner_hs = self.inner.hom_structure(required=False)
            if inner_hs is not None:
                self._hs = FreydHomStructure(inner_hs)
        if self._hs is None and required:
            raise ConfigurationError(f"{self.desc} has no homomorphism structure")
        return self._hs


def _check(cat: Category, *mors: Mor):
    for f in mors:
        if f.desc != cat.desc:
            raise UsageError(f"expected a morphism of {cat.desc}, got one of {f.desc}")


# --------------------------------------------------------------------------
# opposite categories


class OppositeCategory(Category):
    """``P^op``: same objects, reversed morphisms, dual constructions."""

    def __init__(self, inner_desc):
        self.desc = Op(inner_desc)
        self.inner = category_for(inner_desc)
        self.has_weak_kernels = self.inner.has_weak_cokernels
        self.has_weak_cokernels = self.inner.has_weak_kernels
        self.has_lifts = self.inner.has_colifts
        self.has_colifts = self.inner.has_lifts
        self.is_abelian = self.inner.is_abelian
        self._hs = None

    def obj(self, inner_obj: Obj) -> Obj:
        return Obj(self.desc, inner_obj)

    def op(self, f: Mor) -> Mor:
        """The opposite of an inner morphism ``f : X -> Y`` (a morphism ``Y -> X`` here)."""
        return Mor(self.desc, self.obj(f.target), self.obj(f.source), f)

    def identity(self, a):
        return Mor(self.desc, a, a, self.inner.identity(a.payload))

    def _compose(self, f, g):
        return Mor(self.desc, f.source, g.target, self.inner.compose(g.payload, f.payload))

    def _add(self, f, g):
        return Mor(self.desc, f.source, f.target, self.inner.add(f.payload, g.payload))

    def neg(self, f):
        return Mor(self.desc, f.source, f.target, self.inner.neg(f.payload))

    def zero_mor(self, a, b):
        return Mor(self.desc, a, b, self.inner.zero_mor(b.payload, a.payload))

    def zero_object(self):
        return self.obj(self.inner.zero_object())

    def is_zero(self, f):
        return self.inner.is_zero(f.payload)

    def mor_eq(self, f, g):
        return self.inner.mor_eq(f.payload, g.payload)

    def is_zero_object(self, a):
        return self.inner.is_zero_object(a.payload)

    def direct_sum(self, objs):
        s, inj, proj = self.inner.direct_sum([o.payload for o in objs])
        so = self.obj(s)
        return (so, [Mor(self.desc, o, so, p) for o, p in zip(objs, proj)],
                [Mor(self.desc, so, o, e) for o, e in zip(objs, inj)])

    def to_direct_sum(self, mors, source, target=None):
        t = None if target is None else target.payload
        f = self.inner.from_direct_sum([g.payload for g in mors], source.payload, t)
        return Mor(self.desc, source, target or self.obj(f.source), f)

    def from_direct_sum(self, mors, target, source=None):
        s = None if source is None else source.payload
        f = self.inner.to_direct_sum([g.payload for g in mors], target.payload, s)
        return Mor(self.desc, source or self.obj(f.target), target, f)

    # --- dual constructions -------------------------------------------------
    def weak_kernel(self, f):
        k, c = self.inner.weak_cokernel(f.payload)
        return self.obj(k), self.op(c)

    def weak_kernel_lift(self, f, tau):
        return self.op(self.inner.weak_cokernel_colift(f.payload, tau.payload))

    def weak_cokernel(self, f):
        k, e = self.inner.weak_kernel(f.payload)
        return self.obj(k), self.op(e)

    def weak_cokernel_colift(self, f, tau):
        return self.op(self.inner.weak_kernel_lift(f.payload, tau.payload))

    def _need_abelian(self):
        if not self.is_abelian:
            raise ConfigurationError(f"{self.desc} is not abelian")

    def kernel(self, f):
        self._need_abelian()
        k, c = self.inner.cokernel(f.payload)
        return self.obj(k), self.op(c)

    def kernel_lift(self, f, tau, sigma=None):
        self._need_abelian()
        return self.op(self.inner.cokernel_colift(f.payload, tau.payload))

    def cokernel(self, f):
        self._need_abelian()
        k, e = self.inner.kernel(f.payload)
        return self.obj(k), self.op(e)

    def cokernel_colift(self, f, tau, sigma=None):
        self._need_abelian()
        return self.op(self.inner.kernel_lift(f.payload, tau.payload))

    def is_mono(self, f):
        return self.inner.is_epi(f.payload)

    def is_epi(self, f):
        return self.inner.is_mono(f.payload)

    def is_iso(self, f):
        return self.inner.is_iso(f.payload)

    def predicates(self, f):
        return {"is_mono": self.is_mono(f), "is_epi": self.is_epi(f),
                "is_iso": self.is_iso(f), "is_zero": self.is_zero(f)}

    def lift_along_mono(self, mono, tau):
        return self.op(self.inner.colift_along_epi(mono.payload, tau.payload))

    def colift_along_epi(self, epi, tau):
        return self.op(self.inner.lift_along_mono(epi.payload, tau.payload))

    def inverse(self, f):
        return self.op(self.inner.inverse(f.payload))

    def pullback(self, alpha, gamma):
        self._need_abelian()
        return self.weak_pullback(alpha, gamma)

    def lift(self, alpha, gamma):
        if not alpha.target.same(gamma.target):
            raise UsageError("lift needs alpha: A -> B and gamma: C -> B")
        x = self.inner.colift(alpha.payload, gamma.payload)
        return None if x is None else self.op(x)

    def colift(self, alpha, gamma):
        if not alpha.source.same(gamma.source):
            raise UsageError("colift needs alpha: B -> A and gamma: B -> C")
        x = self.inner.lift(alpha.payload, gamma.payload)
        return None if x is None else self.op(x)

    def reduce_linear_system(self, sys):
        """Reverse every term: ``α·X·β`` here is ``β·X·α`` inside."""
        if sys.desc != self.desc:
            raise UsageError(f"system lives in {sys.desc}, not {self.desc}")
        flip = lambda grid: [[None if c is None else c.payload for c in row] for row in grid]
        reduced = LinearSystem(flip(sys.right), flip(sys.left), [g.payload for g in sys.rhs],
                               unknowns=[(c.payload, b.payload) for b, c in sys.unknowns],
                               desc=self.inner.desc)
        return reduced, lambda sol: [self.op(x) for x in sol]

    def hom_structure(self, required: bool = True):
        if self._hs is None:
            inner_hs = self.inner.hom_structure(required=False)
            if inner_hs is not None:
                self._hs = OppositeHomStructure(inner_hs)
        if self._hs is None and required:
            raise ConfigurationError(f"{self.desc} has no homomorphism structure")
        return self._hs


# --------------------------------------------------------------------------
# homomorphism structures


class OppositeHomStructure(HomStructure):
    """``H^op(A, B) = H(B, A)`` with the arguments of ``H`` and ``ν`` swapped."""

    def __init__(self, hs: HomStructure):
        self.base = hs
        self.P = Op(hs.P)
        self.B = hs.B

    @property
    def one(self):
        return self.base.one

    def h_obj(self, a, b):
        return self.base.h_obj(b.payload, a.payload)

    def h_mor(self, alpha, beta):
        return self.base.h_mor(beta.payload, alpha.payload)

    def nu(self, x):
        return self.base.nu(x.payload)

    def nu_inv(self, psi, a, b):
        return category_for(self.P).op(self.base.nu_inv(psi, b.payload, a.payload))


class _HomData:
    __slots__ = ("h1", "p1", "fbar", "obj", "emb")

    def __init__(self, h1, p1, fbar, obj, emb):
        self.h1, self.p1, self.fbar, self.obj, self.emb = h1, p1, fbar, obj, emb


class FreydHomStructure(HomStructure):
    """Hom structure of A(P) induced from one of P with abelian target and projective ``one``.

    ``H(A, B)`` is the kernel of the map
    ``coker H(A, ρ_B) -> coker H(R_A, ρ_B)`` induced by ``H(ρ_A, B)``.
    """

    def __init__(self, hs: HomStructure):
        self.base = hs
        self.P = Freyd(hs.P)
        self.B = hs.B
        self.bcat = category_for(hs.B)
        if not self.bcat.is_abelian:
            raise ConfigurationError(f"target {hs.B} of the homomorphism structure is not abelian")
        self.pcat = category_for(self.P)
        self.inner = category_for(hs.P)
        self._memo = {}

    @property
    def one(self):
        return self.base.one

    def data(self, a: Obj, b: Obj) -> _HomData:
        key = (a.key, b.key)
        d = self._memo.get(key)
        if d is None:
            hs, bc, i = self.base, self.bcat, self.inner
            ra, rra, rho_a = _pieces(a)
            rb, _, rho_b = _pieces(b)
            h1 = hs.h_mor(i.identity(ra), rho_b)
            _, p1 = bc.cokernel(h1)
            h2 = hs.h_mor(i.identity(rra), rho_b)
            _, p2 = bc.cokernel(h2)
            g = hs.h_mor(rho_a, i.identity(rb))
            fbar = bc.cokernel_colift(h1, bc.compose(g, p2))
            k, emb = bc.kernel(fbar)
            d = _HomData(h1, p1, fbar, k, emb)
            self._memo[key] = d
        return d

    def h_obj(self, a, b):
        return self.data(a, b).obj

    def h_mor(self, alpha, beta):
        bc = self.bcat
        d1 = self.data(alpha.target, beta.source)
        d2 = self.data(alpha.source, beta.target)
        base = self.base.h_mor(alpha.payload.datum, beta.payload.datum)
        q = bc.cokernel_colift(d1.h1, bc.compose(base, d2.p1))
        return bc.kernel_lift(d2.fbar, bc.compose(d1.emb, q))

    def nu(self, x):
        bc = self.bcat
        d = self.data(x.source, x.target)
        return bc.kernel_lift(d.fbar, bc.compose(self.base.nu(x.payload.datum), d.p1))

    def nu_inv(self, psi, a, b):
        bc = self.bcat
        d = self.data(a, b)
        lam = bc.lift(bc.compose(psi, d.emb), d.p1)
        if lam is None:
            raise PreconditionError("nu_inv: element has no preimage (is `one` projective?)")
        x = self.base.nu_inv(lam, a.payload.range, b.payload.range)
        f = self.pcat.freyd_morphism(a, b, x)
        if f is None:
            raise PreconditionError("nu_inv: recovered datum is not well defined")
        return f


# --------------------------------------------------------------------------
# induced functor


class Functor:
    """An additive functor given by object and morphism maps into a category with cokernels.

    The target must offer ``cokernel(f) -> (obj, projection)`` and
    ``cokernel_colift(f, tau)``.
    """

    def __init__(self, on_obj, on_mor, target):
        self.on_obj = on_obj
        self.on_mor = on_mor
        self.target = target


def induced_functor(F: Functor, x):
    """Extend ``F : P -> T`` to ``A(P) -> T``: ``(A <- R_A) ↦ coker F(ρ_A)``."""
    if isinstance(x, Obj):
        obj, _ = F.target.cokernel(F.on_mor(x.payload.relation))
        return obj
    if isinstance(x, Mor):
        src_rel = F.on_mor(x.source.payload.relation)
        tgt_rel = F.on_mor(x.target.payload.relation)
        _, p_tgt = F.target.cokernel(tgt_rel)
        tau = F.target.compose(F.on_mor(x.payload.datum), p_tgt)
        return F.target.cokernel_colift(src_rel, tau)
    raise UsageError("induced_functor expects an object or morphism of a Freyd category")
