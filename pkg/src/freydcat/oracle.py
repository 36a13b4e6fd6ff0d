"""Brute-force ground truth over Z/n by explicit enumeration.

Everything here works on explicit finite sets of residue vectors and never
calls into the Freyd or homological layers; it only reads relation and datum
matrices.  Bounds keep enumerations small; exceeding them raises
:class:`ResourceError`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .errors import ResourceError, UsageError
from .matrix import Matrix

MAX_MODULUS = 8
MAX_RANK = 4
MAX_SEARCH = 10**6


def _vec_add(a, b, n):
    return tuple((x + y) % n for x, y in zip(a, b))


def _vec_scale(c, a, n):
    return tuple((c * x) % n for x in a)


def _vecmat(v, rows, ncols, n):
    out = [0] * ncols
    for c, r in zip(v, rows):
        if c:
            for j, x in enumerate(r):
                out[j] += c * x
    return tuple(x % n for x in out)


def span(vectors, n: int, k: int) -> frozenset:
    """The subgroup of ``(Z/n)^k`` generated by ``vectors`` (closure by search)."""
    zero = (0,) * k
    seen = {zero}
    frontier = [zero]
    gens = [tuple(v) for v in vectors if any(v)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _vec_add(x, g, n)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


class FiniteModule:
    """A finite Z/n-module given by its explicit element list.

    ``elements`` are canonical hashable representatives; ``add`` returns the
    canonical sum.  Scalar multiplication is repeated addition unless a
    faster ``scale`` is supplied.
    """

    def __init__(self, n: int, elements, add, zero, scale=None, canon=None):
        self.n = n
        self.elements = tuple(elements)
        self._add = add
        self.zero = zero
        self._scale = scale
        self._canon = canon
        self._index = frozenset(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def add(self, a, b):
        return self._add(a, b)

    def canon(self, x):
        return x if self._canon is None else self._canon(x)

    def scale(self, c: int, a):
        if self._scale is not None:
            return self._scale(c, a)
        c %= self.n
        out, base = self.zero, a
        while c:
            if c & 1:
                out = self.add(out, base)
            base = self.add(base, base)
            c >>= 1
        return out

    def neg(self, a):
        return self.scale(self.n - 1, a)


def quotient(module: FiniteModule, sub) -> FiniteModule:
    """``module / sub`` for a subgroup ``sub`` (set of elements); representatives are coset minima."""
    sub = list(sub)
    rep = {}
    for x in sorted(module.elements):
        if x in rep:
            continue
        for s in sub:
            rep[module.add(x, s)] = x
    elements = sorted(set(rep.values()))

    def canon(x):
        return rep[module.canon(x)]

    def add(a, b):
        return rep[module.add(a, b)]

    def scale(c, a):
        return rep[module.scale(c, a)]

    return FiniteModule(module.n, elements, add, rep[module.zero], scale, canon)


def free_finite(n: int, k: int) -> FiniteModule:
    elements = list(itertools.product(range(n), repeat=k))
    return FiniteModule(n, elements, lambda a, b: _vec_add(a, b, n), (0,) * k,
                        lambda c, a: _vec_scale(c, a, n))


@dataclass
class PresentedFinite:
    """``(Z/n)^g / span(relations)`` with its generator count and relation rows."""

    module: FiniteModule
    gens: int
    relations: tuple


def _check_bounds(n: int, k: int, max_modulus: int, max_rank: int):
    if n > max_modulus:
        raise ResourceError(f"modulus {n} exceeds the enumeration bound {max_modulus}")
    if k > max_rank:
        raise ResourceError(f"rank {k} exceeds the enumeration bound {max_rank}")


def enumerate_presentation(relations: Matrix, max_modulus: int = MAX_MODULUS,
                           max_rank: int = MAX_RANK) -> PresentedFinite:
    ring = relations.ring
    if ring.kind != "Zmod":
        raise UsageError("the oracle only handles Z/n")
    n, g = ring.modulus, relations.ncols
    _check_bounds(n, g, max_modulus, max_rank)
    free = free_finite(n, g)
    m = quotient(free, span(relations.rows, n, g))
    return PresentedFinite(m, g, relations.rows)


def enumerate_module(module_obj, max_modulus: int = MAX_MODULUS, max_rank: int = MAX_RANK) -> PresentedFinite:
    """Explicit finite module of an object of FREYD(ROWS(Z/n)) (reads its relation matrix)."""
    rel = module_obj.payload.relation.payload
    return enumerate_presentation(rel, max_modulus, max_rank)


class FiniteMap:
    """A homomorphism given by its full value table."""

    def __init__(self, source: FiniteModule, target: FiniteModule, table: dict):
        self.source = source
        self.target = target
        self.table = table

    def __call__(self, x):
        return self.table[self.source.canon(x)]

    def is_additive(self) -> bool:
        s, t = self.source, self.target
        return all(self.table[s.add(a, b)] == t.add(self.table[a], self.table[b])
                   for a in s.elements for b in s.elements)


def map_from_datum(src: PresentedFinite, tgt: PresentedFinite, datum: Matrix) -> FiniteMap:
    """The map ``x ↦ x·datum`` between presented modules; checks the relations are respected."""
    n = tgt.module.n
    rows = datum.rows
    if datum.shape != (src.gens, tgt.gens):
        raise UsageError("datum shape does not match the modules")
    for r in src.relations:
        if tgt.module.canon(_vecmat(r, rows, tgt.gens, n)) != tgt.module.zero:
            raise UsageError("datum does not respect the relations")
    table = {x: tgt.module.canon(_vecmat(x, rows, tgt.gens, n)) for x in src.module.elements}
    return FiniteMap(src.module, tgt.module, table)


def brute_hom(src: PresentedFinite, tgt: PresentedFinite, limit: int = MAX_SEARCH) -> FiniteModule:
    """All homomorphisms, as tuples of generator images, under pointwise addition."""
    t = tgt.module
    n = t.n
    if t.size ** src.gens > limit:
        raise ResourceError("hom enumeration exceeds the search bound")
    maps = []
    for imgs in itertools.product(t.elements, repeat=src.gens):
        ok = True
        for r in src.relations:
            acc = t.zero
            for c, x in zip(r, imgs):
                if c:
                    acc = t.add(acc, t.scale(c, x))
            if acc != t.zero:
                ok = False
                break
        if ok:
            maps.append(imgs)

    def add(a, b):
        return tuple(t.add(x, y) for x, y in zip(a, b))

    return FiniteModule(n, maps, add, tuple(t.zero for _ in range(src.gens)))


def hom_as_maps(src: PresentedFinite, tgt: PresentedFinite, hom: FiniteModule) -> list[FiniteMap]:
    """Expand each element of ``brute_hom`` to a full value table."""
    out = []
    t = tgt.module
    for imgs in hom.elements:
        table = {}
        for x in src.module.elements:
            acc = t.zero
            for c, y in zip(x, imgs):
                if c:
                    acc = t.add(acc, t.scale(c, y))
            table[x] = acc
        out.append(FiniteMap(src.module, t, table))
    return out


def brute_kernel(f: FiniteMap) -> FiniteModule:
    s = f.source
    elements = [x for x in s.elements if f.table[x] == f.target.zero]
    return FiniteModule(s.n, elements, s.add, s.zero, s.scale, s.canon)


def brute_image(f: FiniteMap) -> frozenset:
    return frozenset(f.table.values())


def brute_cokernel(f: FiniteMap) -> FiniteModule:
    return quotient(f.target, brute_image(f))


def brute_tensor(m: PresentedFinite, k: PresentedFinite, limit: int = MAX_SEARCH) -> FiniteModule:
    """A module isomorphic to ``m ⊗ k``: the group of bilinear forms ``m × k -> Z/n``.

    For finite modules of exponent dividing ``n``, bilinear forms are
    ``Hom(m ⊗ k, Z/n)``, the Pontryagin dual of the tensor product, which is
    (non-canonically) isomorphic to it.  A form is its ``g x h`` value matrix
    on generators; it must vanish on the relations of both factors.
    """
    n = m.module.n
    g, h = m.gens, k.gens
    if n ** (g * h) > limit:
        raise ResourceError("tensor enumeration exceeds the search bound")
    forms = []
    for flat in itertools.product(range(n), repeat=g * h):
        b = [flat[i * h:(i + 1) * h] for i in range(g)]
        if any(any(sum(r[i] * b[i][j] for i in range(g)) % n for j in range(h)) for r in m.relations):
            continue
        if any(any(sum(b[i][j] * s[j] for j in range(h)) % n for i in range(g)) for s in k.relations):
            continue
        forms.append(flat)
    return FiniteModule(n, forms, lambda a, c: _vec_add(a, c, n), (0,) * (g * h),
                        lambda c, a: _vec_scale(c, a, n))


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def iso_invariants(m: FiniteModule) -> tuple:
    """Invariant factors ``d_1 | d_2 | ...`` (each ``>= 2``) from an element-order census.

    ``|m[p^j]|`` for all prime powers dividing ``n`` determines the number of
    cyclic ``p``-factors of order at least ``p^j``.
    """
    n = m.n
    exps = {}
    for p in _prime_factors(n):
        e = 0
        while n % p ** (e + 1) == 0:
            e += 1
        counts = []
        for j in range(e + 1):
            q = p ** j
            counts.append(sum(1 for x in m.elements if m.scale(q, x) == m.zero))
        logs = []
        for c in counts:
            lg = 0
            while p ** lg < c:
                lg += 1
            if p ** lg != c:
                raise UsageError("element census is inconsistent with a Z/n-module")
            logs.append(lg)
        # factors of order >= p^j, j = 1..e
        ge = [logs[j] - logs[j - 1] for j in range(1, e + 1)]
        parts = []
        for j in range(e, 0, -1):
            exact = ge[j - 1] - (ge[j] if j < e else 0)
            parts.extend([j] * exact)
        exps[p] = sorted(parts, reverse=True)
    width = max((len(v) for v in exps.values()), default=0)
    factors = []
    for idx in range(width):
        d = 1
        for p, v in exps.items():
            if idx < len(v):
                d *= p ** v[idx]
        factors.append(d)
    return tuple(sorted(d for d in factors if d > 1))


def brute_ops(op: str, *args):
    """Dispatch ``hom|kernel|cokernel|tensor|iso_invariants`` by name."""
    table = {"hom": brute_hom, "kernel": brute_kernel, "cokernel": brute_cokernel,
             "tensor": brute_tensor, "iso_invariants": iso_invariants}
    if op not in table:
        raise UsageError(f"unknown oracle operation {op!r}")
    return table[op](*args)


def brute_linear_solve(sys, limit: int = MAX_SEARCH) -> list[Matrix] | None:
    """Exhaustive search for ``Σ_j α_ij X_j β_ij = γ_i`` over ROWS(Z/n).

    Candidates are enumerated in index order; each is evaluated by summing the
    precomputed images of the elementary matrices.
    """
    ring = sys.desc.ring
    if ring.kind != "Zmod":
        raise UsageError("brute_linear_solve only handles Z/n")
    n = ring.modulus
    shapes = [(b.payload, c.payload) for b, c in sys.unknowns]
    nvars = sum(p * q for p, q in shapes)
    if n ** nvars > limit:
        raise ResourceError(f"search space {n}^{nvars} exceeds {limit}")
    target = []
    for g in sys.rhs:
        target.extend(v for row in g.payload.rows for v in row)
    target = np.array(target, dtype=np.int64)
    basis = []
    for j, (p, q) in enumerate(shapes):
        for a in range(p):
            for b in range(q):
                img = []
                for i, g in enumerate(sys.rhs):
                    al, be = sys.left[i][j], sys.right[i][j]
                    rows, cols = g.payload.shape
                    if al is None:
                        img.extend([0] * (rows * cols))
                        continue
                    A, B = al.payload, be.payload
                    img.extend(A[r, a] * B[b, c] % n for r in range(rows) for c in range(cols))
                basis.append(img)
    basis = np.array(basis, dtype=np.int64).reshape(nvars, target.size)
    total = n ** nvars
    powers = n ** np.arange(nvars, dtype=np.int64)
    chunk = 1 << 15
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % n
        vals = (coeffs @ basis) % n if nvars else np.zeros((idx.size, target.size), dtype=np.int64)
        hits = np.nonzero((vals == target[None, :]).all(axis=1))[0]
        if hits.size:
            c = [int(v) for v in coeffs[hits[0]]]
            out, off = [], 0
            for p, q in shapes:
                out.append(Matrix(ring, p, q, tuple(tuple(c[off + a * q + b] for b in range(q))
                                                    for a in range(p))))
                off += p * q
            return out
    return None


class FiniteModuleCategory:
    """Explicit finite modules as a target for the induced functor.

    Objects are :class:`FiniteModule`; morphisms :class:`FiniteMap`.
    """

    def __init__(self, n: int):
        self.n = n

    def compose(self, f: FiniteMap, g: FiniteMap) -> FiniteMap:
        return FiniteMap(f.source, g.target, {x: g.table[y] for x, y in f.table.items()})

    def cokernel(self, f: FiniteMap):
        q = brute_cokernel(f)
        proj = FiniteMap(f.target, q, {x: q.canon(x) for x in f.target.elements})
        return q, proj

    def cokernel_colift(self, f: FiniteMap, tau: FiniteMap) -> FiniteMap:
        q, proj = self.cokernel(f)
        table = {}
        for x, y in proj.table.items():
            v = tau.table[x]
            if table.setdefault(y, v) != v:
                raise UsageError("tau does not vanish on the image")
        return FiniteMap(q, tau.target, table)


def evaluation_functor(n: int):
    """``Rows_{Z/n} -> finite modules``: rank ``k`` to ``(Z/n)^k``, matrices act on rows."""
    cat = FiniteModuleCategory(n)

    def on_obj(o):
        return free_finite(n, o.payload)

    def on_mor(f):
        src, tgt = on_obj(f.source), on_obj(f.target)
        m = f.payload
        table = {x: _vecmat(x, m.rows, m.ncols, n) for x in src.elements}
        return FiniteMap(src, tgt, table)

    return SimpleNamespace(on_obj=on_obj, on_mor=on_mor, target=cat)
