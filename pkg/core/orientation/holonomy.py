"""
Holonomy of the determinant line over a loop of real Cauchy-Riemann operators.

Loops are described by the Z2 pairings that determine ⟨w1(det D), S¹⟩:
three bits per standard boundary circle and one equivariant w2 bit per
crosscap. Also hosts the trivialization-change sign and the orientability
criteria built on top of the holonomy formula.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple

from core.errors import InputError, MalformedLoopError, MissingChangeDataError
from core.topology.bundles import KleinTorusPair, klein_eqw2, klein_top, mobius_twisted_trivial
from core.topology.surfaces import BoundaryKind, ShSurface, parse_surface_name

logger = logging.getLogger(__name__)


def _bit(value, name: str) -> int:
    if value not in (0, 1) or isinstance(value, float):
        raise MalformedLoopError(f"{name} must be 0 or 1, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class StdBoundaryLoopData:
    """Pairings over one standard circle: w1 on (∂Σ)_i, on α_i, and w2 on (∂M_ψ)_i."""
    w1_b: int = 0
    w1_alpha: int = 0
    w2_beta: int = 0

    def __post_init__(self):
        for name in ("w1_b", "w1_alpha", "w2_beta"):
            object.__setattr__(self, name, _bit(getattr(self, name), name))

    def contribution(self) -> int:
        return ((self.w1_b + 1) * self.w1_alpha + self.w2_beta) % 2


@dataclass(frozen=True)
class CrosscapLoopData:
    """Equivariant w2 of Λ^top V over the mapping torus of one crosscap circle."""
    eqw2: int = 0

    def __post_init__(self):
        object.__setattr__(self, "eqw2", _bit(self.eqw2, "eqw2"))

    @classmethod
    def from_pair(cls, k: KleinTorusPair) -> "CrosscapLoopData":
        """Bit induced by the restriction of (V, c̃) to the crosscap mapping torus."""
        return cls(eqw2=klein_eqw2(klein_top(k)))


@dataclass(frozen=True)
class OperatorLoop:
    """Pairing data of a loop of real Cauchy-Riemann operators over a mapping torus."""
    base: ShSurface
    std: Tuple[StdBoundaryLoopData, ...] = field(default_factory=tuple)
    cc: Tuple[CrosscapLoopData, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "std", tuple(self.std))
        object.__setattr__(self, "cc", tuple(self.cc))
        if len(self.std) != self.base.std_count or len(self.cc) != self.base.crosscap_count:
            raise MalformedLoopError(
                f"loop has {len(self.std)} standard / {len(self.cc)} crosscap entries, "
                f"surface has {self.base.std_count} / {self.base.crosscap_count}"
            )


def holonomy(loop: OperatorLoop) -> int:
    """
    ⟨w1(det D), S¹⟩ for a loop of real Cauchy-Riemann operators.

    Args:
        loop: Pairing data of the loop

    Returns:
        Σ_std ((w1_b + 1)·w1_alpha + w2_beta) + Σ_cc eqw2, mod 2
    """
    std_part = sum(d.contribution() for d in loop.std)
    cc_part = sum(d.eqw2 for d in loop.cc)
    return (std_part + cc_part) % 2


def decompose(loop: OperatorLoop) -> Tuple[OperatorLoop, List[int]]:
    """
    Pinch off every crosscap circle.

    Returns:
        (loop over the surface with crosscaps deleted, crosscap bits in order)
    """
    reduced = OperatorLoop(base=loop.base.without_crosscaps(), std=loop.std, cc=())
    return reduced, [d.eqw2 for d in loop.cc]


# ---- Trivialization changes ----

@dataclass
class TrivializationChange:
    """
    Change of trivialization data for a real bundle pair over the target.

    o_R maps components of X^φ to bits, s_R and o_C map loop classes to bits.
    For rank 1 the spin change s_R is always 0.
    """
    rank: int = 1
    o_R: Dict[str, int] = field(default_factory=dict)
    s_R: Dict[str, int] = field(default_factory=dict)
    o_C: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.rank < 1:
            raise InputError(f"rank must be at least 1, got {self.rank}")
        if self.rank == 1 and any(self.s_R.values()):
            logger.warning("s_R given for a rank-1 bundle; forcing it to 0")
            self.s_R = {key: 0 for key in self.s_R}


@dataclass(frozen=True)
class BoundaryChangeEntry:
    """One boundary circle of the domain and where it lands."""
    kind: BoundaryKind
    loop_class: str
    w1_b: int = 0
    component: str = ""


def trivialization_sign(t: TrivializationChange, boundary: Sequence[BoundaryChangeEntry]) -> int:
    """
    Sign by which a change of trivialization acts on the determinant orientation.

    Args:
        t: Change maps o_R, s_R, o_C
        boundary: Per-circle data (kind, w1 bit, component of X^φ, loop class)

    Returns:
        +1 or -1

    Raises:
        MissingChangeDataError: if a referenced component or class has no entry
    """
    def lookup(table: Dict[str, int], key: str, name: str) -> int:
        if key not in table:
            raise MissingChangeDataError(f"{name} has no entry for {key!r}")
        return int(table[key]) & 1

    epsilon = 0
    for entry in boundary:
        if entry.kind is BoundaryKind.STANDARD:
            o_r = lookup(t.o_R, entry.component, "o_R")
            # rank-1 pairs have no spin structure to change
            s_r = 0 if t.rank == 1 else lookup(t.s_R, entry.loop_class, "s_R")
            epsilon += (entry.w1_b + 1) * o_r + s_r
        else:
            epsilon += lookup(t.o_C, entry.loop_class, "o_C")
    return -1 if epsilon % 2 else 1


# ---- Orientability criteria ----

class Verdict(Enum):
    ORIENTABLE_GUARANTEED = "orientable_guaranteed"
    LAGRANGIAN_PULLBACK = "lagrangian_pullback"
    NO_CONCLUSION = "no_conclusion"


def corollary17_verdict(no_std_boundary: bool, pi1_trivial: bool, c1_even: bool,
                        has_square_root: bool) -> Verdict:
    """Orientability of det over real maps from surfaces with only crosscap boundary."""
    if no_std_boundary and ((pi1_trivial and c1_even) or has_square_root):
        return Verdict.ORIENTABLE_GUARANTEED
    return Verdict.NO_CONCLUSION


def corollary18_verdict(pi1_trivial: bool, c1_even: bool, has_square_root: bool) -> Verdict:
    """Same criterion for moduli of disks with one crosscap, where no standard boundary exists."""
    return corollary17_verdict(True, pi1_trivial, c1_even, has_square_root)


def corollary62_verdict(std_count: int, crosscap_count: int, fixed_orientable: bool,
                        fixed_w2_relative_square: bool, top_eqw2_square: bool) -> Verdict:
    """
    Orientability of moduli of real maps from an sh-surface into (X, φ).

    Args:
        std_count: Number of standard boundary circles |c|₀
        crosscap_count: Number of crosscaps |c|₁
        fixed_orientable: X^φ is orientable
        fixed_w2_relative_square: w2(X^φ) = κ² + ϖ|X^φ for some κ, ϖ
        top_eqw2_square: equivariant w2 of Λ^top(TX, dφ) is a square class

    Returns:
        ORIENTABLE_GUARANTEED when every condition the boundary calls for holds;
        LAGRANGIAN_PULLBACK when only orientability of X^φ fails, so the
        orientation system is pulled back from copies of that of X^φ
    """
    if std_count < 0 or crosscap_count < 0:
        raise InputError(f"boundary counts must be nonnegative, got {std_count}, {crosscap_count}")
    needs_fixed = std_count > 0
    needs_square = crosscap_count > 0
    if needs_square and not top_eqw2_square:
        return Verdict.NO_CONCLUSION
    if not needs_fixed or (fixed_orientable and fixed_w2_relative_square):
        return Verdict.ORIENTABLE_GUARANTEED
    if fixed_w2_relative_square:
        return Verdict.LAGRANGIAN_PULLBACK
    return Verdict.NO_CONCLUSION


@dataclass(frozen=True)
class Corollary63Result:
    applies: bool
    sign_product: int


def corollary63_check(n: int, a: Sequence[int]) -> Corollary63Result:
    """
    Parity criterion for real complete intersections X ⊂ ℙ^n of multidegree a.

    Args:
        n: Dimension of the ambient projective space
        a: Degrees of the defining polynomials

    Returns:
        applies = (n − Σa odd), sign_product = (−1)^{n+1+Σa}
    """
    if n < 1 or any(x < 1 for x in a):
        raise InputError(f"need n >= 1 and positive degrees, got n={n}, a={tuple(a)}")
    total = sum(a)
    return Corollary63Result(applies=(n - total) % 2 == 1, sign_product=-1 if (n + 1 + total) % 2 else 1)


# ---- Fixtures ----

def lemma42_loop() -> OperatorLoop:
    """Disk with one crosscap, Maslov 0 on each fiber, twisted over the loop."""
    return OperatorLoop(base=parse_surface_name("disk-crosscap"), cc=(CrosscapLoopData(eqw2=1),))


def example29_loop() -> OperatorLoop:
    """
    Disk-with-crosscap loop induced by the Möbius-twisted trivial pair.

    The target's c1 may be divisible by any integer; the crosscap bit is
    still 1, so the determinant line is not orientable along this loop.
    """
    return OperatorLoop(
        base=parse_surface_name("disk-crosscap"),
        cc=(CrosscapLoopData.from_pair(mobius_twisted_trivial()),),
    )
