"""
Real bundle pairs by classifying data.

A pair (V, c̃) over an sh-surface is determined by its complex rank, its
Maslov index and the orientability bit of V^c̃ over each standard boundary
circle. Pairs over the Klein torus S¹ × ℝℙ¹ are one of two classes,
recorded as a twist bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from core.errors import BaseMismatchError, DimensionMismatchError, InputError, MaslovParityError
from core.topology.cohomology import OneClass, torus_ring, whitney_w2
from core.topology.surfaces import ShSurface, double


@dataclass(frozen=True)
class RealBundlePair:
    """Classifying data of a real bundle pair over `base`."""
    rank: int
    maslov: int
    std_w1: Tuple[int, ...] = field(default_factory=tuple)
    base: ShSurface = field(default_factory=lambda: ShSurface(0))

    def __post_init__(self):
        if self.rank < 1:
            raise InputError(f"rank must be at least 1, got {self.rank}")
        bits = tuple(int(b) for b in self.std_w1)
        if any(b not in (0, 1) for b in bits):
            raise InputError(f"std_w1 entries must be bits, got {self.std_w1}")
        object.__setattr__(self, "std_w1", bits)
        if len(bits) != self.base.std_count:
            raise DimensionMismatchError(
                f"{len(bits)} std_w1 bits for a base with {self.base.std_count} standard circles"
            )
        # crosscap circles contribute even Maslov index
        if (self.maslov - sum(bits)) % 2 != 0:
            raise MaslovParityError(f"Maslov index {self.maslov} has the wrong parity for std_w1 {bits}")

    @property
    def is_trivializable(self) -> bool:
        """Over a disk the pair is trivial iff μ = 0 (and w1 = 0 on a standard circle)."""
        if self.base.genus != 0 or len(self.base.boundary) != 1:
            raise InputError("trivializability is only decided over the disk")
        return self.maslov == 0 and not any(self.std_w1)


@dataclass(frozen=True)
class KleinTorusPair:
    """Real bundle pair over S¹ × ℝℙ¹ with involution id × antipodal."""
    rank: int
    twist: int = 0  # 0: nV₊, 1: V₋ ⊕ (n−1)V₊

    def __post_init__(self):
        if self.rank < 1:
            raise InputError(f"rank must be at least 1, got {self.rank}")
        if self.twist not in (0, 1):
            raise InputError(f"twist must be a bit, got {self.twist}")


def direct_sum(p: RealBundlePair, q: RealBundlePair) -> RealBundlePair:
    """Rank and Maslov index add; orientability bits XOR."""
    if p.base != q.base:
        raise BaseMismatchError("direct sum of pairs over different surfaces")
    return RealBundlePair(
        rank=p.rank + q.rank,
        maslov=p.maslov + q.maslov,
        std_w1=tuple(a ^ b for a, b in zip(p.std_w1, q.std_w1)),
        base=p.base,
    )


def top_exterior(p: RealBundlePair) -> RealBundlePair:
    return RealBundlePair(rank=1, maslov=p.maslov, std_w1=p.std_w1, base=p.base)


def fredholm_index(p: RealBundlePair, s: ShSurface) -> int:
    """
    Real index of a real Cauchy-Riemann operator on (V, c̃).

    Args:
        p: Bundle pair
        s: Its base surface

    Returns:
        μ + (1 − ĝ)·n, with ĝ the genus of the double
    """
    if p.base != s:
        raise BaseMismatchError("bundle pair is not over the given surface")
    g_hat = double(s).genus_or_crosscap_number
    return p.maslov + (1 - g_hat) * p.rank


# ---- Klein torus pairs ----

def klein_eqw2(k: KleinTorusPair) -> int:
    """⟨w2^{c̃}(V), [S¹ × S¹]^{id × c}⟩, which is the twist bit."""
    return k.twist


def klein_top(k: KleinTorusPair) -> KleinTorusPair:
    return KleinTorusPair(rank=1, twist=k.twist)


def klein_tensor(a: KleinTorusPair, b: KleinTorusPair) -> KleinTorusPair:
    """Tensor product of rank-1 pairs; twists add."""
    if a.rank != 1 or b.rank != 1:
        raise InputError(f"klein_tensor takes rank-1 pairs, got ranks {a.rank} and {b.rank}")
    return KleinTorusPair(rank=1, twist=a.twist ^ b.twist)


def klein_lines(k: KleinTorusPair) -> List[OneClass]:
    """
    w1 classes of the real line bundles in the Borel quotient of k.

    On S¹ × ℝℙ¹ with α = w1(γ1) and β = w1(γ2), V₊ splits as τ ⊕ γ2 and
    V₋ as γ1 ⊕ γ1⊗γ2.
    """
    zero, alpha, beta = OneClass((0, 0)), OneClass((1, 0)), OneClass((0, 1))
    plus = [zero, beta]
    if k.twist == 0:
        return plus * k.rank
    return [alpha, alpha + beta] + plus * (k.rank - 1)


def klein_eqw2_oracle(k: KleinTorusPair) -> int:
    """klein_eqw2 recomputed through whitney_w2 on the torus."""
    return whitney_w2(klein_lines(k), torus_ring())


def has_real_square_root(k: KleinTorusPair) -> bool:
    """Λ^top of k is a square of a rank-1 pair iff its equivariant w2 vanishes."""
    return klein_eqw2(klein_top(k)) == 0


def mobius_twisted_trivial() -> KleinTorusPair:
    """Trivial rank-1 pair tensored with the Möbius line."""
    return klein_tensor(KleinTorusPair(rank=1, twist=0), KleinTorusPair(rank=1, twist=1))
