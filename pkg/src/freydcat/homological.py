"""Finitely presented modules and functors: invariants, Hom, ⊗, Ext, Tor, exactness.

Modules are objects of FREYD(ROWS(R)): ``present_module(rho)`` is the
cokernel of the ``r x g`` relation matrix ``rho``.  Covariant finitely
presented functors on modules are objects of FREYD(OP(FREYD(ROWS(R)))),
contravariant ones objects of FREYD(FREYD(ROWS(R))).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import Freyd, Mor, Obj, Op, Rows, category_for
from .errors import PreconditionError, UsageError
from .freyd import free_object, freyd_object, present
from .linalg import row_syzygies
from .matrix import Matrix, kron, vstack
from .normal_forms import smith_invariants
from .rings import QQ, ZZ, Ring
from .rows import rows_mor


def fpmod(ring: Ring):
    """The category FREYD(ROWS(ring)) of finitely presented modules."""
    return category_for(Freyd(Rows(ring)))


def _check_module(m: Obj) -> Ring:
    d = m.desc
    if not (isinstance(d, Freyd) and isinstance(d.inner, Rows)):
        raise UsageError(f"expected a module (object of FREYD(ROWS)), got an object of {d}")
    return d.inner.ring


def relation_matrix(m: Obj) -> Matrix:
    _check_module(m)
    return m.payload.relation.payload


def present_module(relations: Matrix) -> Obj:
    """The module ``R^{1 x g} / (row span of relations)``."""
    return present(relations)


def free_module(ring: Ring, rank: int) -> Obj:
    return free_object(ring, rank)


def free_cover(m: Obj) -> Mor:
    """The epimorphism ``(range <- 0) -> m`` with identity datum."""
    ring = _check_module(m)
    g = m.payload.range.payload
    src = free_object(ring, g)
    c = fpmod(ring)
    return c.mor(src, m, c.inner.identity(m.payload.range), c.inner.zero_mor(src.payload.relations,
                                                                           m.payload.relations))


# --------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class ModuleInvariants:
    """``R^free_rank ⊕ R/d_1 ⊕ ... ⊕ R/d_k`` with ``d_1 | ... | d_k``, each ``d_i >= 2``.

    Over Q ``free_rank`` is the dimension; over Z/n the module is reported as an
    abelian group (``free_rank`` 0, ``torsion`` the invariant factors).
    """

    ring: Ring
    free_rank: int
    torsion: tuple = field(default_factory=tuple)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def size(self) -> int | None:
        """Number of elements, or ``None`` for infinite modules."""
        if self.free_rank and self.ring.kind != "Zmod":
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def pretty(self) -> str:
        base = "Q" if self.ring == QQ else "Z"
        parts = []
        if self.free_rank:
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def __str__(self):
        return self.pretty()

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def module_invariants(m: Obj) -> ModuleInvariants:
    ring = _check_module(m)
    rho = relation_matrix(m)
    g = rho.ncols
    if ring == QQ:
        from .linalg import echelon
        return ModuleInvariants(ring, g - echelon(rho).rank)
    if ring == ZZ:
        ds = smith_invariants(rho)
        nonzero = [d for d in ds if d]
        return ModuleInvariants(ring, g - len(nonzero), tuple(d for d in nonzero if d > 1))
    n = ring.modulus
    lifted = vstack(rho.lift_to_int(), Matrix.identity(ZZ, g).scale(n))
    ds = smith_invariants(lifted)
    return ModuleInvariants(ring, 0, tuple(d for d in ds if d > 1))


# --------------------------------------------------------------------------
# Hom and tensor


def hom_module(m: Obj, n: Obj) -> Obj:
    """``Hom(m, n)`` as a module (the induced hom structure's ``H(m, n)``)."""
    rm, rn = _check_module(m), _check_module(n)
    if rm != rn:
        raise UsageError(f"ring mismatch: {rm} vs {rn}")
    return fpmod(rm).hom_structure().h_obj(m, n)


def tensor_module(m: Obj, n: Obj) -> Obj:
    """``m ⊗ n`` presented by ``[ρ ⊗ I_h ; I_g ⊗ σ]`` on ``g·h`` generators."""
    rm, rn = _check_module(m), _check_module(n)
    if rm != rn:
        raise UsageError(f"ring mismatch: {rm} vs {rn}")
    rho, sigma = relation_matrix(m), relation_matrix(n)
    g, h = rho.ncols, sigma.ncols
    rel = vstack(kron(rho, Matrix.identity(rm, h)), kron(Matrix.identity(rm, g), sigma))
    return present(rel)


# --------------------------------------------------------------------------
# resolutions, Ext, Tor


@dataclass(frozen=True)
class FreeResolutionSegment:
    """``P_i -d_i-> P_{i-1} -> ... -> P_0 -> M`` truncated at the syzygy ``Ω^i M``.

    ``differentials[k]`` is ``d_{k+1} : P_{k+1} -> P_k`` (a matrix); ``omega``
    is ``Ω^i M = coker(d_{i+1})`` on ``P_i`` and ``embedding`` its inclusion
    into ``P_{i-1}`` (datum ``d_i``).
    """

    module: Obj
    index: int
    ranks: tuple
    differentials: tuple
    omega: Obj
    embedding: Mor


def resolution(m: Obj, i: int) -> FreeResolutionSegment:
    ring = _check_module(m)
    if i < 1:
        raise UsageError(f"resolution index must be positive, got {i}")
    ds = [relation_matrix(m)]
    while len(ds) < i + 1:
        ds.append(row_syzygies(ds[-1]))
    ranks = tuple([ds[0].ncols] + [d.nrows for d in ds[:i]])
    omega = present(ds[i])
    target = free_object(ring, ds[i - 1].ncols)
    emb = fpmod(ring).mor(omega, target, rows_mor(ds[i - 1]))
    return FreeResolutionSegment(m, i, ranks[:i], tuple(ds[:i]), omega, emb)


def ext_module(a: Obj, b: Obj, i: int) -> Obj:
    """``Ext^i(a, b) = coker(Hom(P_{i-1}, b) -> Hom(Ω^i a, b))``; ``Ext^0 = Hom``."""
    ring = _check_module(a)
    if _check_module(b) != ring:
        raise UsageError("ring mismatch")
    if i < 0:
        raise UsageError(f"Ext index must be nonnegative, got {i}")
    if i == 0:
        return hom_module(a, b)
    c = fpmod(ring)
    hs = c.hom_structure()
    seg = resolution(a, i)
    induced = hs.h_mor(seg.embedding, c.identity(b))
    obj, _ = category_for(hs.B).cokernel(induced)
    return obj


def tor_module(m: Obj, n: Obj, i: int) -> Obj:
    """``Tor_i(m, n) = ker(Ω^i m ⊗ n -> P_{i-1} ⊗ n)``; ``Tor_0 = ⊗``."""
    ring = _check_module(m)
    if _check_module(n) != ring:
        raise UsageError("ring mismatch")
    if i < 0:
        raise UsageError(f"Tor index must be nonnegative, got {i}")
    if i == 0:
        return tensor_module(m, n)
    seg = resolution(m, i)
    h = n.payload.range.payload
    src = tensor_module(seg.omega, n)
    tgt = tensor_module(free_object(ring, seg.differentials[-1].ncols), n)
    c = fpmod(ring)
    datum = rows_mor(kron(seg.differentials[-1], Matrix.identity(ring, h)))
    f = c.freyd_morphism(src, tgt, datum)
    if f is None:  # pragma: no cover - d_i ⊗ 1 always respects the relations
        raise PreconditionError("induced map on tensor products is not well defined")
    obj, _ = c.kernel(f)
    return obj


# --------------------------------------------------------------------------
# finitely presented functors


COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


@dataclass(frozen=True)
class FpFunctor:
    """A finitely presented functor on modules, stored as a Freyd object.

    Covariant: an object ``(A -ρ-> R)`` of FREYD(OP(fpmod)), the functor
    ``coker(Hom(R, -) -> Hom(A, -))``.  Contravariant: an object
    ``(A <-ρ- R)`` of FREYD(fpmod), the functor ``coker(Hom(-, R) -> Hom(-, A))``.
    """

    obj: Obj
    variance: str

    def __post_init__(self):
        if self.variance not in (COVARIANT, CONTRAVARIANT):
            raise UsageError(f"unknown variance {self.variance!r}")
        want = covariant_descriptor if self.variance == COVARIANT else contravariant_descriptor
        if self.obj.desc != want(self.ring):
            raise UsageError(f"{self.variance} functor must live in {want(self.ring)}, not {self.obj.desc}")

    @property
    def ring(self) -> Ring:
        return self.obj.desc.base_ring

    @property
    def cat(self):
        return category_for(self.obj.desc)

    @property
    def source_module(self) -> Obj:
        """``A`` (the generator object) as a module."""
        p = self.obj.payload.range
        return p.payload if self.variance == COVARIANT else p

    @property
    def relation_module(self) -> Obj:
        p = self.obj.payload.relations
        return p.payload if self.variance == COVARIANT else p

    @property
    def relation_mor(self) -> Mor:
        """The module map ``A -> R`` (covariant) or ``R -> A`` (contravariant)."""
        rel = self.obj.payload.relation
        return rel.payload if self.variance == COVARIANT else rel


def covariant_descriptor(ring: Ring):
    return Freyd(Op(Freyd(Rows(ring))))


def contravariant_descriptor(ring: Ring):
    return Freyd(Freyd(Rows(ring)))


def covariant_functor(rho: Mor) -> FpFunctor:
    """``coker(Hom(R, -) -> Hom(A, -))`` for a module map ``rho : A -> R``."""
    ring = _check_module(rho.source)
    opc = category_for(Op(Freyd(Rows(ring))))
    return FpFunctor(freyd_object(opc.op(rho)), COVARIANT)


def contravariant_functor(rho: Mor) -> FpFunctor:
    """``coker(Hom(-, R) -> Hom(-, A))`` for a module map ``rho : R -> A``."""
    _check_module(rho.source)
    return FpFunctor(freyd_object(rho), CONTRAVARIANT)


def hom_functor(a: Obj) -> FpFunctor:
    """The representable ``Hom(a, -)``, i.e. ``(a -> 0)``."""
    c = fpmod(_check_module(a))
    return covariant_functor(c.zero_mor(a, c.zero_object()))


def contravariant_hom_functor(a: Obj) -> FpFunctor:
    """The representable ``Hom(-, a)``, i.e. ``(a <- 0)``."""
    c = fpmod(_check_module(a))
    return contravariant_functor(c.zero_mor(c.zero_object(), a))


def zero_functor(ring: Ring, variance: str = COVARIANT) -> FpFunctor:
    c = fpmod(ring)
    z = c.zero_object()
    f = covariant_functor if variance == COVARIANT else contravariant_functor
    return f(c.identity(z))


def tensor_functor(m: Obj) -> FpFunctor:
    """``m ⊗ -`` as ``(P_0^∨ -> P_1^∨)``: free ``g`` to free ``r`` with datum ``ρᵀ``."""
    ring = _check_module(m)
    rho = relation_matrix(m)
    c = fpmod(ring)
    src = free_object(ring, rho.ncols)
    tgt = free_object(ring, rho.nrows)
    return covariant_functor(c.mor(src, tgt, rows_mor(rho.T), c.inner.zero_mor(src.payload.relations,
                                                                              tgt.payload.relations)))


def ext_functor(a: Obj, i: int) -> FpFunctor:
    """``Ext^i(a, -)`` as ``(Ω^i a -> P_{i-1})`` (``i >= 1``)."""
    if i < 1:
        raise UsageError("the Ext functor object needs i >= 1")
    return covariant_functor(resolution(a, i).embedding)


def tor_functor(m: Obj, i: int) -> FpFunctor:
    """``Tor_i(m, -)``: ``m ⊗ -`` for ``i = 0``, else ``ker(Ω^i m ⊗ - -> P_{i-1} ⊗ -)``."""
    if i < 0:
        raise UsageError(f"Tor index must be nonnegative, got {i}")
    if i == 0:
        return tensor_functor(m)
    ring = _check_module(m)
    seg = resolution(m, i)
    d = seg.differentials[-1]
    t_omega = tensor_functor(seg.omega)
    t_p = tensor_functor(free_object(ring, d.ncols))
    c = fpmod(ring)
    opc = category_for(Op(Freyd(Rows(ring))))
    inner = c.mor(t_p.source_module, t_omega.source_module, rows_mor(d.T))
    nat = category_for(t_omega.obj.desc).mor(t_omega.obj, t_p.obj, opc.op(inner))
    obj, _ = category_for(nat.desc).kernel(nat)
    return FpFunctor(obj, COVARIANT)


def ext_module_via_functor(a: Obj, b: Obj, i: int) -> ModuleInvariants:
    """Invariants of ``Ext^i(a, b)`` by evaluating the functor object at ``b``."""
    return module_invariants(evaluate_covariant(ext_functor(a, i), b))


def evaluate_covariant(f: FpFunctor, x: Obj) -> Obj:
    """``F(x) = coker(Hom(R, x) -> Hom(A, x))`` for a covariant functor ``F``."""
    if f.variance != COVARIANT:
        raise UsageError("evaluate_covariant needs a covariant functor")
    c = fpmod(f.ring)
    hs = c.hom_structure()
    induced = hs.h_mor(f.relation_mor, c.identity(x))
    obj, _ = category_for(hs.B).cokernel(induced)
    return obj


def nat_hom(f: FpFunctor, g: FpFunctor) -> Obj:
    """The module of natural transformations ``f -> g``."""
    if f.variance != g.variance or f.obj.desc != g.obj.desc:
        raise UsageError("nat_hom needs two functors of the same variance and ring")
    return f.cat.hom_structure().h_obj(f.obj, g.obj)


def nat_hom_element(f: FpFunctor, g: FpFunctor, coords: Matrix) -> Mor:
    """The natural transformation with coordinates ``coords`` in ``nat_hom(f, g)``."""
    hs = f.cat.hom_structure()
    h = hs.h_obj(f.obj, g.obj)
    bc = category_for(hs.B)
    psi = bc.freyd_morphism(hs.one, h, rows_mor(coords))
    if psi is None:
        raise UsageError("coordinates do not define an element")
    return hs.nu_inv(psi, f.obj, g.obj)


def decide_left_exact(f: FpFunctor) -> bool:
    """Is the contravariant ``f = (A <- R)`` left exact?

    Equivalently: ``{ε, 0} : (A <- R) -> (coker ρ <- 0)`` is an isomorphism.
    """
    if f.variance != CONTRAVARIANT:
        raise UsageError("decide_left_exact needs a contravariant functor")
    c = fpmod(f.ring)
    rho = f.relation_mor
    coker, eps = c.cokernel(rho)
    target = contravariant_hom_functor(coker).obj
    ff = f.cat
    phi = ff.mor(f.obj, target, eps, c.zero_mor(f.relation_module, target.payload.relations))
    return ff.is_iso(phi)


def injective_embedding(f: FpFunctor) -> Mor:
    """A monomorphism from the covariant ``f = (A -ρ-> R)`` into an injective ``(P -> Q)``.

    ``ε_Q : Q ->> R`` and ``ε_P : P ->> A ×_R Q`` are free covers; the map has
    datum ``ε_P·pr_A`` and witness ``ε_Q`` (read in the opposite category).
    """
    if f.variance != COVARIANT:
        raise UsageError("injective_embedding needs a covariant functor")
    c = fpmod(f.ring)
    rho = f.relation_mor
    eps_q = free_cover(rho.target)
    _, pr_a, pr_q = c.pullback(rho, eps_q)
    eps_p = free_cover(pr_a.source)
    rho_p = c.compose(eps_p, pr_q)
    opc = category_for(Op(c.desc))
    target = freyd_object(opc.op(rho_p))
    return f.cat.mor(f.obj, target, opc.op(c.compose(eps_p, pr_a)), opc.op(eps_q))


def decide_right_exact(f: FpFunctor) -> bool:
    """Is the covariant ``f`` right exact, i.e. does its injective embedding split?"""
    if f.variance != COVARIANT:
        raise UsageError("decide_right_exact needs a covariant functor")
    iota = injective_embedding(f)
    return f.cat.colift(f.cat.identity(f.obj), iota) is not None
