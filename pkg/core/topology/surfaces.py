"""
Combinatorial model of oriented symmetric half-surfaces.

A surface is a genus plus an ordered list of boundary circles. Each circle
carries either the identity involution (standard) or the antipodal one
(crosscap). Doubles and quotients are tracked through their topological
invariants only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from core.errors import InputError


class BoundaryKind(Enum):
    """Involution type carried by a boundary circle."""
    STANDARD = "standard"   # c = id
    CROSSCAP = "crosscap"   # c = antipodal map


@dataclass(frozen=True)
class ShSurface:
    """Oriented bordered surface with a boundary involution."""
    genus: int
    boundary: Tuple[BoundaryKind, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if isinstance(self.genus, bool) or not isinstance(self.genus, int) or self.genus < 0:
            raise InputError(f"genus must be a nonnegative integer, got {self.genus!r}")
        kinds = tuple(BoundaryKind(b) if not isinstance(b, BoundaryKind) else b for b in self.boundary)
        object.__setattr__(self, "boundary", kinds)

    @property
    def std_count(self) -> int:
        return sum(1 for b in self.boundary if b is BoundaryKind.STANDARD)

    @property
    def crosscap_count(self) -> int:
        return sum(1 for b in self.boundary if b is BoundaryKind.CROSSCAP)

    @property
    def is_closed(self) -> bool:
        return not self.boundary

    def without_crosscaps(self) -> "ShSurface":
        """Same genus, crosscap circles deleted, standard order kept."""
        return ShSurface(self.genus, tuple(b for b in self.boundary if b is BoundaryKind.STANDARD))


@dataclass(frozen=True)
class ClosedSurfaceInfo:
    """Topological type of a compact surface, possibly with boundary."""
    orientable: bool
    genus_or_crosscap_number: int
    boundary_count: int = 0

    def __post_init__(self):
        if self.genus_or_crosscap_number < 0 or self.boundary_count < 0:
            raise InputError("genus/crosscap number and boundary count must be nonnegative")
        if not self.orientable and self.genus_or_crosscap_number == 0:
            raise InputError("a nonorientable surface has crosscap number at least 1")

    @property
    def euler_char(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus_or_crosscap_number - self.boundary_count
        return 2 - self.genus_or_crosscap_number - self.boundary_count


def double(s: ShSurface) -> ClosedSurfaceInfo:
    """
    Double of an sh-surface: two copies glued along the boundary via c.

    Args:
        s: Surface to double

    Returns:
        Closed orientable surface of genus 2g + b - 1 (identity on closed input)
    """
    b = len(s.boundary)
    if b == 0:
        return ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=s.genus, boundary_count=0)
    return ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=2 * s.genus + b - 1, boundary_count=0)


def quotient(s: ShSurface) -> ClosedSurfaceInfo:
    """
    Quotient of the surface by c on its boundary.

    Crosscap circles close up with a Möbius band; standard circles remain boundary.

    Args:
        s: Surface to quotient

    Returns:
        Topological type of the quotient
    """
    if s.crosscap_count == 0:
        return ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=s.genus, boundary_count=s.std_count)
    return ClosedSurfaceInfo(
        orientable=False,
        genus_or_crosscap_number=2 * s.genus + s.crosscap_count,
        boundary_count=s.std_count,
    )


def euler_char(s: ShSurface) -> int:
    return 2 - 2 * s.genus - len(s.boundary)


# ---- Named surfaces ----

_NAMED = {
    "sphere": (0, ()),
    "disk": (0, (BoundaryKind.STANDARD,)),
    "disk-crosscap": (0, (BoundaryKind.CROSSCAP,)),
    "annulus": (0, (BoundaryKind.STANDARD, BoundaryKind.STANDARD)),
    "mobius": (0, (BoundaryKind.STANDARD, BoundaryKind.CROSSCAP)),
}

_GRAMMAR = re.compile(r"^g(\d+)-s(\d+)-c(\d+)$")


def parse_surface_name(name: str) -> ShSurface:
    """
    Resolve a CLI surface name.

    Accepts the fixed names (sphere, disk, disk-crosscap, annulus, mobius) or
    g<G>-s<S>-c<C>, which lists S standard circles followed by C crosscaps.
    """
    key = name.strip().lower()
    if key in _NAMED:
        genus, boundary = _NAMED[key]
        return ShSurface(genus, boundary)

    match = _GRAMMAR.match(key)
    if not match:
        raise InputError(f"unknown surface name: {name!r}")
    g, s, c = (int(x) for x in match.groups())
    return ShSurface(g, (BoundaryKind.STANDARD,) * s + (BoundaryKind.CROSSCAP,) * c)
