"""Hopf invariant bookkeeping and Arf invariants of quadratic forms over Z/2.

Vectors in ``Z_2^{2g}`` are packed into Python ints in the order
``a_1, b_1, ..., a_g, b_g`` with ``a_1`` as bit 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classification import ContactStructureId, StructureKind

BRUTE_FORCE_MAX_GENUS = 8
FORMULA_MAX_GENUS = 16


@dataclass(frozen=True)
class QuadraticFormZ2:
    genus: int
    basis_values: tuple[int, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        vals = tuple(int(v) for v in self.basis_values)
        if len(vals) != 2 * self.genus:
            raise ValueError(f"need {2 * self.genus} basis values, got {len(vals)}")
        if any(v not in (0, 1) for v in vals):
            raise ValueError("basis values must be 0 or 1")
        object.__setattr__(self, "basis_values", vals)

    @property
    def dimension(self) -> int:
        return 2 * self.genus

    def direct_sum(self, other: "QuadraticFormZ2") -> "QuadraticFormZ2":
        return QuadraticFormZ2(self.genus + other.genus, self.basis_values + other.basis_values)


@dataclass(frozen=True)
class HopfClass:
    h: int


_EVEN_BITS = int("01" * 64, 2)  # bits at a_i positions, enough for g <= 64


def _pack(v: Sequence[int] | int, dim: int) -> int:
    if isinstance(v, int):
        if v < 0 or v >> dim:
            raise ValueError(f"vector {v} does not fit in dimension {dim}")
        return v
    if len(v) != dim:
        raise ValueError(f"vector has {len(v)} coordinates, form has dimension {dim}")
    out = 0
    for i, x in enumerate(v):
        if x not in (0, 1):
            raise ValueError("coordinates must be 0 or 1")
        out |= x << i
    return out


def intersection(x: int, y: int) -> int:
    """Symplectic pairing: sum over i of a_i(x) b_i(y) + b_i(x) a_i(y)."""
    cross = (x & _EVEN_BITS) & ((y >> 1) & _EVEN_BITS)
    cross ^= ((x >> 1) & _EVEN_BITS) & (y & _EVEN_BITS)
    return bin(cross).count("1") & 1


def _basis_mask(q: QuadraticFormZ2) -> int:
    return sum(v << i for i, v in enumerate(q.basis_values))


def _eval_packed(q: QuadraticFormZ2, mask: int, v: int) -> int:
    linear = bin(v & mask).count("1")
    pairs = bin(v & (v >> 1) & _EVEN_BITS).count("1")
    return (linear + pairs) & 1


def evaluate_form(q: QuadraticFormZ2, v: Sequence[int] | int) -> int:
    """Value of the quadratic extension of ``q`` at ``v``."""
    return _eval_packed(q, _basis_mask(q), _pack(v, q.dimension))


def arf_brute_force(q: QuadraticFormZ2) -> int:
    """1 iff strictly more than half of all vectors evaluate to 1."""
    if q.genus > BRUTE_FORCE_MAX_GENUS:
        raise ValueError(f"brute force limited to genus <= {BRUTE_FORCE_MAX_GENUS}")
    mask = _basis_mask(q)
    size = 1 << q.dimension
    ones = sum(_eval_packed(q, mask, v) for v in range(size))
    return int(2 * ones > size)


def arf_formula(q: QuadraticFormZ2) -> int:
    if q.genus > FORMULA_MAX_GENUS:
        raise ValueError(f"Arf invariant limited to genus <= {FORMULA_MAX_GENUS}")
    vals = q.basis_values
    return sum(vals[2 * i] * vals[2 * i + 1] for i in range(q.genus)) % 2


def arf_invariant(q: QuadraticFormZ2) -> int:
    value = arf_formula(q)
    if q.genus <= BRUTE_FORCE_MAX_GENUS:
        majority = arf_brute_force(q)
        if majority != value:
            raise ArithmeticError(f"Arf cross-check failed: majority {majority}, formula {value}")
    return value


def hopf_after_pi_lutz(h: int, sl: int) -> int:
    """Hopf invariant after a pi-Lutz twist along a transverse knot with self-linking ``sl``."""
    if sl % 2 == 0:
        raise ValueError(f"self-linking of a null-homologous transverse knot is odd, got {sl}")
    return h + sl


def hopf_fibers(k: int) -> int:
    """Hopf invariant after pi-Lutz twists along ``k`` fibers of the Hopf fibration."""
    if k < 0:
        raise ValueError("number of fibers must be non-negative")
    return (k - 2) * k


def structure_from_hopf(h: int, overtwisted: bool) -> ContactStructureId:
    if not overtwisted and h != 0:
        raise ValueError("the tight structure on S^3 has Hopf invariant 0")
    return ContactStructureId(StructureKind.OVERTWISTED if overtwisted else StructureKind.TIGHT, h)
