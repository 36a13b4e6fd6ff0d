"""Descriptors, generic objects/morphisms and the constructive category interface.

A category is selected by a descriptor tree ``ROWS(ring) | FREYD(d) | OP(d)``.
Objects and morphisms carry their descriptor plus a level-specific payload;
all operations are dispatched to the category returned by :func:`category_for`.

Composition is written left to right: ``compose(f, g)`` (also ``f @ g``) is
"first ``f``, then ``g``", matching the row-vector convention of matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ConfigurationError, PreconditionError, UsageError
from .rings import Ring, parse_ring


# --------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Rows:
    ring: Ring

    def __str__(self):
        return f"ROWS({self.ring})"

    @property
    def base_ring(self) -> Ring:
        return self.ring


@dataclass(frozen=True)
class Freyd:
    inner: object

    def __str__(self):
        return f"FREYD({self.inner})"

    @property
    def base_ring(self) -> Ring:
        return self.inner.base_ring


@dataclass(frozen=True)
class Op:
    inner: object

    def __str__(self):
        return f"OP({self.inner})"

    @property
    def base_ring(self) -> Ring:
        return self.inner.base_ring


Descriptor = Rows | Freyd | Op


def descriptor_from_tags(tags, ring: Ring | str):
    """Build a descriptor from e.g. ``["FREYD", "OP", "FREYD", "ROWS"]``."""
    if isinstance(ring, str):
        ring = parse_ring(ring)
    tags = [str(t).upper() for t in tags]
    if not tags or tags[-1] != "ROWS" or "ROWS" in tags[:-1]:
        raise UsageError(f"descriptor must end with a single ROWS, got {tags}")
    d = Rows(ring)
    for t in reversed(tags[:-1]):
        if t == "FREYD":
            d = Freyd(d)
        elif t == "OP":
            d = Op(d)
        else:
            raise UsageError(f"unknown descriptor tag {t!r}")
    return d


def descriptor_tags(d) -> list[str]:
    out = []
    while not isinstance(d, Rows):
        out.append("FREYD" if isinstance(d, Freyd) else "OP")
        d = d.inner
    out.append("ROWS")
    return out


# --------------------------------------------------------------------------
# objects and morphisms


class Obj:
    """An object of the category named by ``desc``.

    Payload: ``int`` rank for ROWS, :class:`FreydObject` for FREYD, inner
    :class:`Obj` for OP.
    """

    __slots__ = ("desc", "payload", "_key")

    def __init__(self, desc, payload):
        self.desc = desc
        self.payload = payload
        self._key = None

    @property
    def cat(self) -> Category:
        return category_for(self.desc)

    @property
    def key(self):
        """Structural identity of the object (its presentation)."""
        if self._key is None:
            p = self.payload
            if isinstance(self.desc, Rows):
                self._key = p
            elif isinstance(self.desc, Op):
                self._key = ("op", p.key)
            else:
                self._key = ("freyd", p.relation.key)
        return self._key

    def same(self, other: Obj) -> bool:
        return self is other or (self.desc == other.desc and self.key == other.key)

    def __repr__(self):
        return f"Obj({self.desc}, {self.payload!r})"


class Mor:
    """A morphism ``source -> target``; equality is decided by ``mor_eq``."""

    __slots__ = ("desc", "source", "target", "payload", "_key", "cache")

    def __init__(self, desc, source: Obj, target: Obj, payload):
        self.desc = desc
        self.source = source
        self.target = target
        self.payload = payload
        self._key = None
        # write-once memo of derived constructions (kernel, cokernel, ...)
        self.cache = {}

    @property
    def cat(self) -> Category:
        return category_for(self.desc)

    @property
    def key(self):
        """Structural key of the representative (not of the equivalence class)."""
        if self._key is None:
            p = self.payload
            if isinstance(self.desc, Rows):
                pk = p
            elif isinstance(self.desc, Op):
                pk = p.key
            else:
                pk = p.datum.key
            self._key = (self.source.key, self.target.key, pk)
        return self._key

    def __matmul__(self, other: Mor) -> Mor:
        return self.cat.compose(self, other)

    def __add__(self, other: Mor) -> Mor:
        return self.cat.add(self, other)

    def __sub__(self, other: Mor) -> Mor:
        return self.cat.sub(self, other)

    def __neg__(self) -> Mor:
        return self.cat.neg(self)

    def __repr__(self):
        return f"Mor({self.desc}, {self.payload!r})"


def _check_desc(desc, *items):
    for x in items:
        if x.desc != desc:
            raise UsageError(f"expected an item of {desc}, got one of {x.desc}")


def require_same(a: Obj, b: Obj, what: str = "objects"):
    if not a.same(b):
        raise UsageError(f"{what} do not match")


# --------------------------------------------------------------------------
# the category interface


class Category:
    """Base class: additive category with the operations of the interface.

    Subclasses implement the level-specific primitives; derived operations
    (weak pullbacks, direct-sum plumbing, linear systems) live here.
    """

    desc = None

    # capability table (structural; see ``capabilities``)
    has_weak_kernels = False
    has_weak_cokernels = False
    has_lifts = False
    has_colifts = False
    is_abelian = False

    def capabilities(self) -> dict:
        return {
            "weak_kernels": self.has_weak_kernels,
            "weak_cokernels": self.has_weak_cokernels,
            "lifts": self.has_lifts,
            "colifts": self.has_colifts,
            "abelian": self.is_abelian,
            "hom_structure": self.hom_structure(required=False) is not None,
        }

    # --- primitives (subclasses) ----------------------------------------
    def identity(self, a: Obj) -> Mor:
        raise NotImplementedError

    def _compose(self, f: Mor, g: Mor) -> Mor:
        raise NotImplementedError

    def _add(self, f: Mor, g: Mor) -> Mor:
        raise NotImplementedError

    def neg(self, f: Mor) -> Mor:
        raise NotImplementedError

    def zero_mor(self, a: Obj, b: Obj) -> Mor:
        raise NotImplementedError

    def zero_object(self) -> Obj:
        raise NotImplementedError

    def is_zero(self, f: Mor) -> bool:
        raise NotImplementedError

    def direct_sum(self, objs) -> tuple[Obj, list[Mor], list[Mor]]:
        raise NotImplementedError

    def to_direct_sum(self, mors, source: Obj, target: Obj | None = None) -> Mor:
        """The morphism ``source -> ⊕ targets`` with components ``mors``."""
        raise NotImplementedError

    def from_direct_sum(self, mors, target: Obj, source: Obj | None = None) -> Mor:
        """The morphism ``⊕ sources -> target`` with components ``mors``."""
        raise NotImplementedError

    # --- checked generic operations --------------------------------------
    def compose(self, f: Mor, g: Mor) -> Mor:
        _check_desc(self.desc, f, g)
        if not f.target.same(g.source):
            raise UsageError("morphisms are not composable")
        return self._compose(f, g)

    def compose_all(self, *fs: Mor) -> Mor:
        out = fs[0]
        for f in fs[1:]:
            out = self.compose(out, f)
        return out

    def add(self, f: Mor, g: Mor) -> Mor:
        _check_desc(self.desc, f, g)
        if not (f.source.same(g.source) and f.target.same(g.target)):
            raise UsageError("morphisms are not parallel")
        return self._add(f, g)

    def sub(self, f: Mor, g: Mor) -> Mor:
        return self.add(f, self.neg(g))

    def mor_eq(self, f: Mor, g: Mor) -> bool:
        return self.is_zero(self.sub(f, g))

    def is_zero_object(self, a: Obj) -> bool:
        return self.is_zero(self.identity(a))

    def cat_ops(self, op: str, *args):
        """Dispatch ``compose|identity|add|neg|zero_mor|mor_eq|is_zero`` by name."""
        table = {
            "compose": self.compose, "identity": self.identity, "add": self.add,
            "neg": self.neg, "zero_mor": self.zero_mor, "mor_eq": self.mor_eq,
            "is_zero": self.is_zero, "sub": self.sub,
        }
        if op not in table:
            raise UsageError(f"unknown category operation {op!r}")
        return table[op](*args)

    def direct_sum_mor(self, mors) -> Mor:
        """Diagonal morphism ``⊕ f_i : ⊕ A_i -> ⊕ B_i``."""
        s, _, proj = self.direct_sum([f.source for f in mors])
        t, inj, _ = self.direct_sum([f.target for f in mors])
        total = self.zero_mor(s, t)
        for p, f, i in zip(proj, mors, inj):
            total = self.add(total, self.compose_all(p, f, i))
        return total

    def block_mor(self, sources, targets, grid) -> Mor:
        """``⊕ sources -> ⊕ targets`` from a grid ``grid[j][i] : sources[j] -> targets[i]``.

        ``None`` cells stand for zero morphisms.
        """
        t_sum, _, _ = self.direct_sum(targets)
        s_sum, _, _ = self.direct_sum(sources)
        rows = []
        for j, s in enumerate(sources):
            comps = [grid[j][i] if grid[j][i] is not None else self.zero_mor(s, targets[i])
                     for i in range(len(targets))]
            rows.append(self.to_direct_sum(comps, s, t_sum))
        return self.from_direct_sum(rows, t_sum, s_sum)

    # --- weak (co)kernels, pullbacks ------------------------------------
    def weak_kernel(self, f: Mor) -> tuple[Obj, Mor]:
        raise ConfigurationError(f"{self.desc} has no weak kernels")

    def weak_kernel_lift(self, f: Mor, tau: Mor) -> Mor:
        raise ConfigurationError(f"{self.desc} has no weak kernels")

    def weak_cokernel(self, f: Mor) -> tuple[Obj, Mor]:
        raise ConfigurationError(f"{self.desc} has no weak cokernels")

    def weak_cokernel_colift(self, f: Mor, tau: Mor) -> Mor:
        raise ConfigurationError(f"{self.desc} has no weak cokernels")

    def _pullback_cospan(self, alpha: Mor, gamma: Mor) -> Mor:
        if not alpha.target.same(gamma.target):
            raise UsageError("weak pullback needs a cospan A -> B <- C")
        return self.from_direct_sum([alpha, self.neg(gamma)], alpha.target)

    def weak_pullback(self, alpha: Mor, gamma: Mor) -> tuple[Obj, Mor, Mor]:
        """Weak pullback of ``A -alpha-> B <-gamma- C`` from a weak kernel of (alpha, -gamma)."""
        memo = alpha.cache.get(("wpb", id(gamma)))
        if memo is not None and memo[0] is gamma:
            return memo[1]
        cospan = self._pullback_cospan(alpha, gamma)
        k, kappa = self.weak_kernel(cospan)
        _, _, proj = self.direct_sum([alpha.source, gamma.source])
        out = (k, self.compose(kappa, proj[0]), self.compose(kappa, proj[1]))
        alpha.cache[("wpb", id(gamma))] = (gamma, out, cospan)
        return out

    def weak_pullback_lift(self, alpha: Mor, gamma: Mor, p: Mor, q: Mor) -> Mor:
        """A morphism ``u`` with ``u·pr1 = p`` and ``u·pr2 = q`` (requires ``p·alpha = q·gamma``)."""
        self.weak_pullback(alpha, gamma)
        cospan = alpha.cache[("wpb", id(gamma))][2]
        s, _, _ = self.direct_sum([alpha.source, gamma.source])
        tau = self.to_direct_sum([p, q], p.source, s)
        return self.weak_kernel_lift(cospan, tau)

    # --- lifts ------------------------------------------------------------
    def lift(self, alpha: Mor, gamma: Mor) -> Mor | None:
        """Some ``λ`` with ``λ·gamma = alpha`` or ``None`` if none exists."""
        raise ConfigurationError(f"{self.desc} has no decidable lifts")

    def colift(self, alpha: Mor, gamma: Mor) -> Mor | None:
        """Some ``λ`` with ``gamma·λ = alpha`` or ``None`` if none exists."""
        raise ConfigurationError(f"{self.desc} has no decidable colifts")

    # --- linear systems ---------------------------------------------------
    def hom_structure(self, required: bool = True):
        if required:
            raise ConfigurationError(f"{self.desc} has no homomorphism structure")
        return None

    def reduce_linear_system(self, sys: LinearSystem):
        """Return ``(reduced_system, back)`` where ``back`` maps solutions back."""
        raise ConfigurationError(f"{self.desc} is a base category; nothing to reduce")

    def solve_linear_system(self, sys: LinearSystem, hs=None) -> list[Mor] | None:
        """Solve ``Σ_j α_ij·X_j·β_ij = γ_i``; ``None`` proves unsolvability.

        With ``hs`` the system is solved by a single lift in the target of
        the homomorphism structure; otherwise iterated layers are reduced to
        the base first.
        """
        if sys.desc != self.desc:
            raise UsageError(f"system lives in {sys.desc}, not {self.desc}")
        if hs is not None:
            if hs.P != self.desc:
                raise UsageError(f"homomorphism structure is for {hs.P}, not {self.desc}")
            return solve_via_hom_structure(sys, hs)
        return self._solve_default(sys)

    def _solve_default(self, sys):
        reduced, back = self.reduce_linear_system(sys)
        sol = reduced.cat.solve_linear_system(reduced)
        return None if sol is None else back(sol)


# --------------------------------------------------------------------------
# linear systems


class LinearSystem:
    """Equations ``Σ_j left[i][j] · X_j · right[i][j] = rhs[i]`` (``None`` cells are zero).

    ``left[i][j] : A_i -> B_j``, ``right[i][j] : C_j -> D_i``,
    ``rhs[i] : A_i -> D_i``, unknown ``X_j : B_j -> C_j``.  ``unknowns``
    lists the pairs ``(B_j, C_j)``; it is inferred from the cells when omitted.

    An unknown occurring twice in the same equation is expressed by a copy
    ``X_j'`` and an extra equation ``X_j - X_j' = 0``.
    """

    def __init__(self, left, right, rhs, unknowns=None, desc=None):
        m = len(rhs)
        self.left = [list(r) for r in left]
        self.right = [list(r) for r in right]
        self.rhs = list(rhs)
        if len(self.left) != m or len(self.right) != m:
            raise UsageError("left/right grids need one row per equation")
        if unknowns is None:
            unknowns = self._infer_unknowns()
        self.unknowns = [tuple(u) for u in unknowns]
        n = len(self.unknowns)
        for r in self.left + self.right:
            if len(r) != n:
                raise UsageError(f"grid rows must have {n} cells")
        if desc is None:
            if self.rhs:
                desc = self.rhs[0].desc
            elif self.unknowns:
                desc = self.unknowns[0][0].desc
            else:
                raise UsageError("empty system needs an explicit descriptor")
        self.desc = desc
        self._validate()

    def _infer_unknowns(self):
        n = max([len(r) for r in self.left] + [0])
        out = []
        for j in range(n):
            b = next((r[j].target for r in self.left if r[j] is not None), None)
            c = next((r[j].source for r in self.right if r[j] is not None), None)
            if b is None or c is None:
                raise UsageError(f"cannot infer the type of unknown {j}; pass unknowns explicitly")
            out.append((b, c))
        return out

    def _validate(self):
        for i, g in enumerate(self.rhs):
            _check_desc(self.desc, g)
            for j, (b, c) in enumerate(self.unknowns):
                a_ij, b_ij = self.left[i][j], self.right[i][j]
                if (a_ij is None) != (b_ij is None):
                    # a half-present term is still zero; normalise it away
                    self.left[i][j] = self.right[i][j] = None
                    continue
                if a_ij is None:
                    continue
                _check_desc(self.desc, a_ij, b_ij)
                if not (a_ij.source.same(g.source) and a_ij.target.same(b)):
                    raise UsageError(f"left[{i}][{j}] has the wrong type")
                if not (b_ij.source.same(c) and b_ij.target.same(g.target)):
                    raise UsageError(f"right[{i}][{j}] has the wrong type")

    @property
    def cat(self) -> Category:
        return category_for(self.desc)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rhs), len(self.unknowns)

    def evaluate(self, xs) -> list[Mor]:
        cat = self.cat
        out = []
        for i, g in enumerate(self.rhs):
            total = cat.zero_mor(g.source, g.target)
            for j, x in enumerate(xs):
                if self.left[i][j] is not None:
                    total = cat.add(total, cat.compose_all(self.left[i][j], x, self.right[i][j]))
            out.append(total)
        return out

    def verify(self, xs) -> bool:
        if len(xs) != len(self.unknowns):
            return False
        cat = self.cat
        for x, (b, c) in zip(xs, self.unknowns):
            if not (x.source.same(b) and x.target.same(c)):
                return False
        return all(cat.mor_eq(v, g) for v, g in zip(self.evaluate(xs), self.rhs))


# --------------------------------------------------------------------------
# homomorphism structures


class HomStructure:
    """``(one, H, ν)`` externalising Hom-sets of ``P`` as morphisms ``one -> H(A, B)`` in ``B``."""

    P = None
    B = None

    @property
    def one(self) -> Obj:
        raise NotImplementedError

    def h_obj(self, a: Obj, b: Obj) -> Obj:
        raise NotImplementedError

    def h_mor(self, alpha: Mor, beta: Mor) -> Mor:
        """``H(alpha, beta) : H(A', B) -> H(A, B')`` for ``alpha: A -> A'``, ``beta: B -> B'``."""
        raise NotImplementedError

    def nu(self, x: Mor) -> Mor:
        raise NotImplementedError

    def nu_inv(self, psi: Mor, a: Obj, b: Obj) -> Mor:
        raise NotImplementedError


def solve_via_hom_structure(sys: LinearSystem, hs: HomStructure) -> list[Mor] | None:
    """One lift in ``B``: ``(ν γ_i)_i`` along the block matrix ``(H(α_ij, β_ij))_{j,i}``."""
    bcat = category_for(hs.B)
    m, n = sys.shape
    unk_objs = [hs.h_obj(b, c) for b, c in sys.unknowns]
    eq_objs = [hs.h_obj(g.source, g.target) for g in sys.rhs]
    if n == 0:
        ok = all(sys.cat.is_zero(g) for g in sys.rhs)
        return [] if ok else None
    grid = [[None if sys.left[i][j] is None else hs.h_mor(sys.left[i][j], sys.right[i][j])
             for i in range(m)] for j in range(n)]
    block = bcat.block_mor(unk_objs, eq_objs, grid)
    t_sum = block.target
    rhs = bcat.to_direct_sum([hs.nu(g) for g in sys.rhs], hs.one, t_sum)
    lam = bcat.lift(rhs, block)
    if lam is None:
        return None
    _, _, proj = bcat.direct_sum(unk_objs)
    return [hs.nu_inv(bcat.compose(lam, p), b, c) for p, (b, c) in zip(proj, sys.unknowns)]


# --------------------------------------------------------------------------
# dispatch


@lru_cache(maxsize=None)
def category_for(desc) -> Category:
    from .freyd import FreydCategory, OppositeCategory
    from .rows import RowsCategory

    if isinstance(desc, Rows):
        return RowsCategory(desc.ring)
    if isinstance(desc, Freyd):
        return FreydCategory(desc.inner)
    if isinstance(desc, Op):
        return OppositeCategory(desc.inner)
    raise UsageError(f"not a category descriptor: {desc!r}")


def precondition(ok: bool, msg: str):
    if not ok:
        raise PreconditionError(msg)
