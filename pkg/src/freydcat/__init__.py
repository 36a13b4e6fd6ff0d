"""Constructive Freyd categories over computable rings."""

from .errors import ConfigurationError, FreydError, PreconditionError, ResourceError, UsageError
from .rings import QQ, ZZ, Ring, RingElement, Zmod, parse_ring, ring_arith, xgcd
from .matrix import Matrix, block_diag, hstack, kron, mat_ops, vstack
from .linalg import canonical_rows, column_syzygies, in_row_span, row_syzygies, solve_left, solve_right
from .normal_forms import hnf, rref, smith_invariants, snf

__version__ = "0.1.0"
