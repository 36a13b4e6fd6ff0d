"""JSON interchange formats: matrices, presentations, morphisms, functors, systems, reports.

Integers are written as decimal strings and rationals as ``"a/b"`` so that
arbitrary-precision values survive any JSON implementation.  Every top-level
document may carry ``"version": 1``; other versions are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .matrix import Matrix
from .rings import Ring, Zmod, parse_ring

FORMAT_VERSION = 1


def _fail(where: str, msg: str):
    raise UsageError(f"{where}: {msg}" if where else msg)


def check_version(obj, where: str = ""):
    if isinstance(obj, dict) and "version" in obj and obj["version"] != FORMAT_VERSION:
        _fail(where, f"unsupported format version {obj['version']!r} (expected {FORMAT_VERSION})")


# --- rings and matrices -----------------------------------------------------

def ring_to_json(ring: Ring):
    if ring.kind == "Zmod":
        return {"Zmod": ring.modulus}
    return ring.kind


def ring_from_json(obj, where: str = "ring") -> Ring:
    if isinstance(obj, str):
        try:
            return parse_ring(obj)
        except UsageError as e:
            _fail(where, str(e))
    if isinstance(obj, dict) and set(obj) == {"Zmod"}:
        n = obj["Zmod"]
        if isinstance(n, str) and n.isdigit():
            n = int(n)
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            _fail(where, f"invalid modulus {n!r}")
        return Zmod(n)
    _fail(where, f"invalid ring tag {obj!r}")


def _entry_to_json(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _entry_from_json(v, ring: Ring, where: str):
    if isinstance(v, bool):
        _fail(where, f"invalid entry {v!r}")
    if isinstance(v, int):
        val = v
    elif isinstance(v, str):
        s = v.strip()
        try:
            val = Fraction(s) if "/" in s else int(s)
        except (ValueError, ZeroDivisionError):
            _fail(where, f"invalid entry {v!r}")
    else:
        _fail(where, f"invalid entry {v!r}")
    try:
        return ring.coerce(val)
    except UsageError as e:
        _fail(where, str(e))


def matrix_to_json(m: Matrix) -> dict:
    return {"ring": ring_to_json(m.ring), "rows": m.nrows, "cols": m.ncols,
            "entries": [[_entry_to_json(v) for v in row] for row in m.rows]}


def matrix_from_json(obj, ring: Ring | None = None, where: str = "matrix") -> Matrix:
    """Parse a matrix document; a bare list of rows is accepted when ``ring`` is known."""
    if isinstance(obj, list):
        if ring is None:
            _fail(where, "a bare list of rows needs a ring (use --ring)")
        if not obj:
            _fail(where, "a bare empty list has no column count; use the full matrix format")
        rows, cols, entries = len(obj), None, obj
    elif isinstance(obj, dict):
        check_version(obj, where)
        if "ring" in obj:
            r = ring_from_json(obj["ring"], f"{where}.ring")
            if ring is not None and r != ring:
                _fail(where, f"ring {r} conflicts with {ring}")
            ring = r
        if ring is None:
            _fail(where, "missing ring")
        if "entries" not in obj:
            _fail(where, "missing entries")
        entries = obj["entries"]
        rows, cols = obj.get("rows"), obj.get("cols")
    else:
        _fail(where, "expected a matrix object")
    if not isinstance(entries, list):
        _fail(f"{where}.entries", "expected a list of rows")
    if rows is None:
        rows = len(entries)
    if cols is None:
        if not entries:
            _fail(where, "cols required for a matrix without rows")
        cols = len(entries[0]) if isinstance(entries[0], list) else None
    for name, v in (("rows", rows), ("cols", cols)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            _fail(f"{where}.{name}", f"invalid dimension {v!r}")
    if len(entries) != rows:
        _fail(f"{where}.entries", f"expected {rows} rows, got {len(entries)}")
    out = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            _fail(f"{where}.entries[{i}]", f"expected a row of {cols} entries")
        out.append(tuple(_entry_from_json(v, ring, f"{where}.entries[{i}][{j}]") for j, v in enumerate(row)))
    return Matrix(ring, rows, cols, tuple(out))


# --- presentations ------------------------------------------------------------

def presentation_to_json(relations: Matrix) -> dict:
    return {"version": FORMAT_VERSION, "ring": ring_to_json(relations.ring),
            "relations": matrix_to_json(relations)}


def presentation_from_json(obj, ring: Ring | None = None, where: str = "presentation") -> Matrix:
    """Relation matrix of a presentation; a plain matrix document is read as the relations."""
    if isinstance(obj, dict) and "relations" in obj:
        check_version(obj, where)
        if "ring" in obj:
            r = ring_from_json(obj["ring"], f"{where}.ring")
            if ring is not None and r != ring:
                _fail(where, f"ring {r} conflicts with {ring}")
            ring = r
        return matrix_from_json(obj["relations"], ring, f"{where}.relations")
    return matrix_from_json(obj, ring, where)


# --- module morphisms ------------------------------------------------------------

@dataclass(frozen=True)
class MorphismSpec:
    """A module map ``coker(source) -> coker(target)`` given by its datum."""

    source: Matrix
    target: Matrix
    datum: Matrix

    def to_json(self) -> dict:
        return {"version": FORMAT_VERSION, "ring": ring_to_json(self.datum.ring),
                "source": matrix_to_json(self.source), "target": matrix_to_json(self.target),
                "datum": matrix_to_json(self.datum)}

    @classmethod
    def from_json(cls, obj, ring: Ring | None = None, where: str = "morphism") -> MorphismSpec:
        if not isinstance(obj, dict):
            _fail(where, "expected a morphism object")
        check_version(obj, where)
        if "ring" in obj:
            r = ring_from_json(obj["ring"], f"{where}.ring")
            if ring is not None and r != ring:
                _fail(where, f"ring {r} conflicts with {ring}")
            ring = r
        for k in ("source", "target", "datum"):
            if k not in obj:
                _fail(where, f"missing {k}")
        src = presentation_from_json(obj["source"], ring, f"{where}.source")
        tgt = presentation_from_json(obj["target"], src.ring, f"{where}.target")
        datum = matrix_from_json(obj["datum"], src.ring, f"{where}.datum")
        if datum.shape != (src.ncols, tgt.ncols):
            _fail(f"{where}.datum", f"shape {datum.shape} does not map {src.ncols} to {tgt.ncols} generators")
        return cls(src, tgt, datum)


# --- functors ------------------------------------------------------------------------

COVARIANT_TAGS = ["FREYD", "OP", "FREYD", "ROWS"]
CONTRAVARIANT_TAGS = ["FREYD", "FREYD", "ROWS"]
FUNCTOR_KINDS = ("general", "representable", "tensor", "ext", "tor")


@dataclass(frozen=True)
class FunctorSpec:
    """A finitely presented functor inside a descriptor envelope.

    ``kind == "general"``: ``range`` and ``relation_object`` are module
    presentations and ``datum`` the module map between them (``range ->
    relation_object`` when covariant, the reverse when contravariant).  The
    other kinds name a standard functor of ``module``: ``representable``
    (``Hom(M, -)`` or ``Hom(-, M)``), ``tensor`` (``M ⊗ -``), ``ext`` and
    ``tor`` (with ``index``).
    """

    descriptor: tuple
    ring: Ring
    kind: str = "general"
    range: Matrix | None = None
    relation_object: Matrix | None = None
    datum: Matrix | None = None
    module: Matrix | None = None
    index: int | None = None

    @property
    def variance(self) -> str:
        return "covariant" if list(self.descriptor) == COVARIANT_TAGS else "contravariant"

    def to_json(self) -> dict:
        out = {"version": FORMAT_VERSION, "descriptor": list(self.descriptor),
               "ring": ring_to_json(self.ring)}
        if self.kind != "general":
            out["kind"] = self.kind
        for k in ("range", "relation_object", "datum", "module"):
            v = getattr(self, k)
            if v is not None:
                out[k] = matrix_to_json(v)
        if self.index is not None:
            out["index"] = self.index
        return out

    @classmethod
    def from_json(cls, obj, ring: Ring | None = None, where: str = "functor") -> FunctorSpec:
        if not isinstance(obj, dict):
            _fail(where, "expected a functor envelope object")
        check_version(obj, where)
        tags = obj.get("descriptor")
        if not isinstance(tags, list) or [str(t).upper() for t in tags] not in (COVARIANT_TAGS, CONTRAVARIANT_TAGS):
            _fail(f"{where}.descriptor", f"expected {COVARIANT_TAGS} or {CONTRAVARIANT_TAGS}, got {tags!r}")
        tags = tuple(str(t).upper() for t in tags)
        if "ring" in obj:
            r = ring_from_json(obj["ring"], f"{where}.ring")
            if ring is not None and r != ring:
                _fail(where, f"ring {r} conflicts with {ring}")
            ring = r
        if ring is None:
            _fail(where, "missing ring")
        kind = obj.get("kind", "general")
        if kind not in FUNCTOR_KINDS:
            _fail(f"{where}.kind", f"unknown kind {kind!r}")
        parts = {}
        for k in ("range", "relation_object", "datum", "module"):
            if k in obj:
                parts[k] = (presentation_from_json if k != "datum" else matrix_from_json)(
                    obj[k], ring, f"{where}.{k}")
        index = obj.get("index")
        if kind == "general":
            for k in ("range", "relation_object", "datum"):
                if k not in parts:
                    _fail(where, f"missing {k}")
            a, r, d = parts["range"], parts["relation_object"], parts["datum"]
            want = (a.ncols, r.ncols) if list(tags) == COVARIANT_TAGS else (r.ncols, a.ncols)
            if d.shape != want:
                _fail(f"{where}.datum", f"shape {d.shape}, expected {want}")
        else:
            if "module" not in parts:
                _fail(where, f"kind {kind!r} needs a module")
            if kind in ("tensor", "ext", "tor") and list(tags) != COVARIANT_TAGS:
                _fail(where, f"kind {kind!r} is a covariant functor")
            if kind in ("ext", "tor"):
                if not isinstance(index, int) or isinstance(index, bool) or index < (1 if kind == "ext" else 0):
                    _fail(f"{where}.index", f"invalid index {index!r}")
        return cls(tags, ring, kind, parts.get("range"), parts.get("relation_object"),
                   parts.get("datum"), parts.get("module"), index)

    def build(self):
        """The :class:`~freydcat.homological.FpFunctor` described by this envelope."""
        from . import homological as H
        from .rows import rows_mor

        covariant = self.variance == "covariant"
        if self.kind == "general":
            c = H.fpmod(self.ring)
            a, r = H.present_module(self.range), H.present_module(self.relation_object)
            src, tgt = (a, r) if covariant else (r, a)
            f = c.freyd_morphism(src, tgt, rows_mor(self.datum))
            if f is None:
                raise UsageError("functor datum does not respect the module relations")
            return H.covariant_functor(f) if covariant else H.contravariant_functor(f)
        m = H.present_module(self.module)
        if self.kind == "representable":
            return H.hom_functor(m) if covariant else H.contravariant_hom_functor(m)
        if self.kind == "tensor":
            return H.tensor_functor(m)
        if self.kind == "ext":
            return H.ext_functor(m, self.index)
        return H.tor_functor(m, self.index)


# --- linear systems ---------------------------------------------------------------------

@dataclass(frozen=True)
class SystemSpec:
    """``Σ_j left[i][j] · X_j · right[i][j] = rhs[i]`` over ROWS(ring); ``None`` cells are zero."""

    ring: Ring
    unknowns: tuple  # (rows, cols) of each X_j
    left: tuple
    right: tuple
    rhs: tuple

    def to_json(self) -> dict:
        cell = lambda c: None if c is None else matrix_to_json(c)
        return {"version": FORMAT_VERSION, "ring": ring_to_json(self.ring),
                "unknowns": [list(u) for u in self.unknowns],
                "left": [[cell(c) for c in row] for row in self.left],
                "right": [[cell(c) for c in row] for row in self.right],
                "rhs": [matrix_to_json(g) for g in self.rhs]}

    @classmethod
    def from_json(cls, obj, ring: Ring | None = None, where: str = "system") -> SystemSpec:
        if not isinstance(obj, dict):
            _fail(where, "expected a system object")
        check_version(obj, where)
        if "ring" in obj:
            r = ring_from_json(obj["ring"], f"{where}.ring")
            if ring is not None and r != ring:
                _fail(where, f"ring {r} conflicts with {ring}")
            ring = r
        if ring is None:
            _fail(where, "missing ring")
        for k in ("unknowns", "left", "right", "rhs"):
            if not isinstance(obj.get(k), list):
                _fail(where, f"missing or invalid {k}")
        unknowns = []
        for j, u in enumerate(obj["unknowns"]):
            if (not isinstance(u, list) or len(u) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in u)):
                _fail(f"{where}.unknowns[{j}]", "expected [rows, cols]")
            unknowns.append(tuple(u))
        rhs = tuple(matrix_from_json(g, ring, f"{where}.rhs[{i}]") for i, g in enumerate(obj["rhs"]))
        m, n = len(rhs), len(unknowns)

        def grid(name):
            g = obj[name]
            if len(g) != m:
                _fail(f"{where}.{name}", f"expected {m} rows")
            out = []
            for i, row in enumerate(g):
                if not isinstance(row, list) or len(row) != n:
                    _fail(f"{where}.{name}[{i}]", f"expected {n} cells")
                out.append(tuple(None if c is None else matrix_from_json(c, ring, f"{where}.{name}[{i}][{j}]")
                                 for j, c in enumerate(row)))
            return tuple(out)

        left, right = grid("left"), grid("right")
        for i in range(m):
            for j in range(n):
                a, b = left[i][j], right[i][j]
                if (a is None) != (b is None):
                    _fail(f"{where}.left[{i}][{j}]", "left and right cells must both be null or both present")
                if a is None:
                    continue
                if a.shape != (rhs[i].nrows, unknowns[j][0]):
                    _fail(f"{where}.left[{i}][{j}]", f"shape {a.shape} does not fit")
                if b.shape != (unknowns[j][1], rhs[i].ncols):
                    _fail(f"{where}.right[{i}][{j}]", f"shape {b.shape} does not fit")
        return cls(ring, tuple(unknowns), left, right, rhs)

    def build(self):
        from .category import LinearSystem, Rows
        from .rows import RowsCategory, rows_mor

        c = RowsCategory(self.ring)
        cell = lambda x: None if x is None else rows_mor(x)
        return LinearSystem([[cell(x) for x in row] for row in self.left],
                            [[cell(x) for x in row] for row in self.right],
                            [rows_mor(g) for g in self.rhs],
                            unknowns=[(c.obj(b), c.obj(cc)) for b, cc in self.unknowns],
                            desc=Rows(self.ring))


# --- documents -----------------------------------------------------------------------------

def dumps(obj) -> str:
    """Deterministic serialisation (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, where: str = ""):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        _fail(where, f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")


def load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"{path}: cannot read ({e.strerror})") from None
    return loads(text, path)
