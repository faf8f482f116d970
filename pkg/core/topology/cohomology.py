"""
Z2 cohomology arithmetic for closed surfaces.

Rings are stored as the mod 2 intersection form Q on H^1 together with the
torsion class b. Nonorientable surfaces use the connected-sum-of-RP^2 basis
(Q = identity, b = all ones); orientable ones the hyperbolic basis.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import sympy

from core.errors import DimensionMismatchError, InputError, InvalidRingError
from core.topology.surfaces import ClosedSurfaceInfo

logger = logging.getLogger(__name__)

Bits = Tuple[int, ...]


@dataclass(frozen=True)
class OneClass:
    """A class in H^1(Σ; Z2), as bits in the basis dual to the H_1 basis."""
    bits: Bits

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(x) & 1 for x in self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __add__(self, other: "OneClass") -> "OneClass":
        _require_same_length(self, other)
        return OneClass(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    @classmethod
    def zero(cls, rank: int) -> "OneClass":
        return cls((0,) * rank)


@dataclass(frozen=True)
class SurfaceCohomology:
    """H^1(Σ; Z2) with intersection form and torsion class."""
    orientable: bool
    h1_rank: int
    intersection_form: Tuple[Bits, ...]
    torsion_class: Bits

    @property
    def form(self) -> np.ndarray:
        return np.array(self.intersection_form, dtype=np.int64).reshape(self.h1_rank, self.h1_rank)


@dataclass
class H1Presentation:
    """H_1(M; Z) ≅ Z^{r0} ⊕ ⨁ Z_{m_i}^{r_i}."""
    free_rank: int = 0
    torsion_orders: List[Tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if self.free_rank < 0:
            raise InputError(f"free rank must be nonnegative, got {self.free_rank}")
        for m, r in self.torsion_orders:
            if m < 2 or r < 1:
                raise InputError(f"torsion summand Z_{m}^{r} needs m >= 2 and r >= 1")


def _require_same_length(*classes: OneClass, rank: int = None):
    lengths = {len(c) for c in classes}
    if rank is not None:
        lengths.add(rank)
    if len(lengths) > 1:
        raise DimensionMismatchError(f"class lengths disagree: {sorted(lengths)}")


def validate_ring(ring: SurfaceCohomology) -> SurfaceCohomology:
    """
    Check symmetry, Poincaré duality and the Wu relation diag(Q) = b.

    Raises:
        InvalidRingError: if any check fails
    """
    q = ring.form
    if q.shape != (ring.h1_rank, ring.h1_rank) or len(ring.torsion_class) != ring.h1_rank:
        raise InvalidRingError("intersection form / torsion class shape does not match h1_rank")
    if not np.array_equal(q % 2, q.T % 2):
        raise InvalidRingError("intersection form is not symmetric")
    if ring.h1_rank and sympy.Matrix(q.tolist()).det() % 2 == 0:
        raise InvalidRingError("intersection form is degenerate over Z2")
    if tuple(int(x) for x in np.diag(q) % 2) != tuple(ring.torsion_class):
        raise InvalidRingError("torsion class does not match the diagonal of the intersection form")
    if ring.orientable and any(ring.torsion_class):
        raise InvalidRingError("orientable ring with nonzero torsion class")
    return ring


def ring_of(info: ClosedSurfaceInfo) -> SurfaceCohomology:
    """
    Cohomology ring of a closed surface.

    Args:
        info: Closed surface (boundary_count must be 0)

    Returns:
        Validated SurfaceCohomology

    Raises:
        InputError: if the surface has boundary
    """
    if info.boundary_count != 0:
        raise InputError(f"ring_of needs a closed surface, got {info.boundary_count} boundary circles")

    if info.orientable:
        g = info.genus_or_crosscap_number
        q = np.zeros((2 * g, 2 * g), dtype=np.int64)
        for i in range(g):
            q[2 * i, 2 * i + 1] = q[2 * i + 1, 2 * i] = 1
        b = (0,) * (2 * g)
    else:
        k = info.genus_or_crosscap_number
        q = np.eye(k, dtype=np.int64)
        b = (1,) * k

    ring = SurfaceCohomology(
        orientable=info.orientable,
        h1_rank=q.shape[0],
        intersection_form=tuple(tuple(int(x) for x in row) for row in q),
        torsion_class=b,
    )
    logger.debug("ring_of(%s): h1_rank=%d", info, ring.h1_rank)
    return validate_ring(ring)


def torus_ring() -> SurfaceCohomology:
    return ring_of(ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=1))


def cup_pair(kappa: OneClass, lam: OneClass, ring: SurfaceCohomology) -> int:
    """⟨κ ∪ λ, [Σ]⟩ = κᵀ Q λ over Z2."""
    _require_same_length(kappa, lam, rank=ring.h1_rank)
    if ring.h1_rank == 0:
        return 0
    k = np.array(kappa.bits, dtype=np.int64)
    l = np.array(lam.bits, dtype=np.int64)
    return int(k @ ring.form @ l) % 2


def square_pairing(kappa: OneClass, ring: SurfaceCohomology) -> int:
    """
    ⟨κ², [Σ]⟩, checked against ⟨κ, b_Σ⟩.

    Raises:
        InvalidRingError: if the two disagree
    """
    square = cup_pair(kappa, kappa, ring)
    torsion = sum(a & b for a, b in zip(kappa.bits, ring.torsion_class)) % 2
    if square != torsion:
        raise InvalidRingError(f"κ² = {square} but ⟨κ, b⟩ = {torsion} for κ = {kappa.bits}")
    return square


def is_square_class(w: int, ring: SurfaceCohomology) -> bool:
    """Whether the degree-2 class with pairing w is κ² for some 1-class κ."""
    return (w & 1) == 0 or any(ring.torsion_class)


def square_class_cokernel(h: H1Presentation) -> int:
    """Z2-rank of classes vanishing on integral H_2 that are not squares: Σ_{4|m_i} r_i."""
    return sum(r for m, r in h.torsion_orders if m % 4 == 0)


def whitney_w2(lines: Sequence[OneClass], ring: SurfaceCohomology) -> int:
    """
    ⟨w2(L_1 ⊕ … ⊕ L_n), [Σ]⟩ for real line bundles with w1(L_i) = lines[i].

    w2 of a sum of lines is the second elementary symmetric polynomial in
    their w1 classes.
    """
    if not lines:
        return 0
    _require_same_length(*lines, rank=ring.h1_rank)
    total = 0
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            total ^= cup_pair(lines[i], lines[j], ring)
    return total
