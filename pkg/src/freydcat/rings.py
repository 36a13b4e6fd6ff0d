"""Computable commutative rings: the integers, the rationals and Z/n.

Elements are stored in canonical form (Python ``int`` for ``Z`` and ``Z/n``
with residues in ``[0, n)``, ``fractions.Fraction`` for ``Q``), so equality
of elements is plain equality of the stored values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
import re

from .errors import UsageError


@dataclass(frozen=True)
class Ring:
    """Identifier of a supported ring: ``Z``, ``Q`` or ``Z/n``."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zmod"):
            raise UsageError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise UsageError(f"modulus must be an integer >= 2, got {self.modulus!r}")
        elif self.modulus is not None:
            raise UsageError(f"ring {self.kind} takes no modulus")

    def __str__(self):
        if self.kind == "Zmod":
            return f"Z/{self.modulus}"
        return self.kind

    @property
    def is_field(self) -> bool:
        if self.kind == "Q":
            return True
        if self.kind == "Zmod":
            n = self.modulus
            return all(n % p for p in range(2, math.isqrt(n) + 1))
        return False

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, value):
        """Return the canonical representative of ``value`` in this ring."""
        if self.kind == "Z":
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise UsageError(f"{value} is not an integer")
                return value.numerator
            if isinstance(value, bool) or not isinstance(value, int):
                raise UsageError(f"cannot coerce {value!r} into Z")
            return value
        if self.kind == "Q":
            if isinstance(value, bool):
                raise UsageError(f"cannot coerce {value!r} into Q")
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise UsageError(f"{value} has no image in {self}")
            value = value.numerator
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"cannot coerce {value!r} into {self}")
        return value % self.modulus

    def add(self, a, b):
        if self.kind == "Zmod":
            return (a + b) % self.modulus
        return a + b

    def sub(self, a, b):
        if self.kind == "Zmod":
            return (a - b) % self.modulus
        return a - b

    def mul(self, a, b):
        if self.kind == "Zmod":
            return (a * b) % self.modulus
        return a * b

    def neg(self, a):
        if self.kind == "Zmod":
            return (-a) % self.modulus
        return -a

    def element(self, value) -> RingElement:
        return RingElement(self, self.coerce(value))


ZZ = Ring("Z")
QQ = Ring("Q")


def Zmod(n: int) -> Ring:
    return Ring("Zmod", n)


_ZMOD_RE = re.compile(r"^\s*(?:Z/|Zmod\(?|Z_)(\d+)\)?\s*$")


def parse_ring(text: str) -> Ring:
    """Parse ``Z``, ``Q``, ``Z/6`` (also ``Zmod(6)``, ``Zmod6``, ``Z_6``)."""
    t = text.strip()
    if t in ("Z", "ZZ"):
        return ZZ
    if t in ("Q", "QQ"):
        return QQ
    m = _ZMOD_RE.match(t)
    if m:
        return Zmod(int(m.group(1)))
    raise UsageError(f"invalid ring {text!r}; expected Z, Q or Z/n")


@dataclass(frozen=True)
class RingElement:
    ring: Ring
    value: object

    def _check(self, other: RingElement):
        if not isinstance(other, RingElement) or other.ring != self.ring:
            raise UsageError("ring mismatch")

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __str__(self):
        return str(self.value)


def ring_arith(op: str, a: RingElement, b: RingElement | None = None):
    """Apply ``op`` in {add, mul, neg, eq} to canonical elements."""
    if op == "neg":
        return -a
    if b is None:
        raise UsageError(f"{op} needs two operands")
    a._check(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eq":
        return a.value == b.value
    raise UsageError(f"unknown ring operation {op!r}")


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
