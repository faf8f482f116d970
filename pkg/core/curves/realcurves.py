"""
Real rational maps ℙ¹ → ℙⁿ intertwining η[x, y] = [−ȳ, x̄] with coordinatewise conjugation.

Each coordinate is

    p_i(x, y) = A_i ∏_r (x − b_{i,r} y)(conj(b_{i,r}) x + y)

with A real. Coefficient lists are ordered by x^{d−k} y^k, k = 0..d.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from core.config import get_config
from core.errors import BasePointError, DimensionMismatchError, InputError

logger = logging.getLogger(__name__)

_ZERO = 1e-12


@dataclass(frozen=True, eq=False)
class RealMapParams:
    """A point A of ℝℙⁿ and d/2 roots per coordinate."""
    n: int
    d: int
    A: np.ndarray
    roots: List[np.ndarray]

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"target dimension must be positive, got {self.n}")
        if self.d < 2 or self.d % 2:
            raise InputError(f"degree must be even and positive, got {self.d}")
        A = np.asarray(self.A, dtype=float)
        if A.shape != (self.n + 1,):
            raise DimensionMismatchError(f"A must have {self.n + 1} entries, got shape {A.shape}")
        if not np.any(A):
            raise InputError("A must not be the zero vector")
        roots = [np.asarray(r, dtype=np.complex128).reshape(-1) for r in self.roots]
        if len(roots) != self.n + 1 or any(len(r) != self.d // 2 for r in roots):
            raise DimensionMismatchError(f"need {self.n + 1} root lists of length {self.d // 2}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "roots", roots)


@dataclass(frozen=True, eq=False)
class PolyTuple:
    """n+1 homogeneous degree-d polynomials, coefficients of shape (n+1, d+1)."""
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 2 or c.shape[0] < 2 or c.shape[1] < 2:
            raise DimensionMismatchError(f"coefficients must have shape (n+1, d+1), got {c.shape}")
        if not np.any(c):
            raise InputError("all polynomials are zero")
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def d(self) -> int:
        return self.coeffs.shape[1] - 1


def build(p: RealMapParams) -> PolyTuple:
    """Expand p_i = A_i ∏ (x − b y)(b̄ x + y) for every coordinate."""
    rows = []
    for a, roots in zip(p.A, p.roots):
        poly = np.array([a], dtype=np.complex128)
        for b in roots:
            poly = np.convolve(poly, [1.0, -b])
            poly = np.convolve(poly, [np.conj(b), 1.0])
        rows.append(poly)
    return PolyTuple(np.vstack(rows))


def evaluate(t: PolyTuple, points: np.ndarray) -> np.ndarray:
    """
    Evaluate at homogeneous points.

    Args:
        t: Polynomial tuple
        points: (S, 2) array of [x, y]

    Returns:
        (S, n+1) array of coordinates
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.complex128))
    k = np.arange(t.d + 1)
    monomials = pts[:, :1] ** (t.d - k) * pts[:, 1:2] ** k
    return monomials @ t.coeffs.T


def projective_distance(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """‖u ∧ v‖ / (‖u‖ ‖v‖) row by row: sine of the angle between the lines."""
    u = np.atleast_2d(u)
    v = np.atleast_2d(v)
    u = u / np.linalg.norm(u, axis=1, keepdims=True)
    v = v / np.linalg.norm(v, axis=1, keepdims=True)
    wedge = u[:, :, None] * v[:, None, :] - u[:, None, :] * v[:, :, None]
    # each pair (i, j) appears twice in the antisymmetric array
    return np.sqrt(np.sum(np.abs(wedge) ** 2, axis=(1, 2)) / 2)


def random_points(samples: int, rng: np.random.Generator) -> np.ndarray:
    pts = rng.standard_normal((samples, 2)) + 1j * rng.standard_normal((samples, 2))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def check_equivariance(t: PolyTuple, samples: int = None, tol: float = None,
                       rng: np.random.Generator = None) -> float:
    """
    Largest projective distance between u(η[x, y]) and τ(u[x, y]) over random points.

    Raises:
        BasePointError: if a sample is a common zero of every coordinate
    """
    config = get_config()
    samples = samples or config.equivariance_samples
    tol = config.equivariance_tol if tol is None else tol
    rng = rng if rng is not None else np.random.default_rng(config.default_seed)

    pts = random_points(samples, rng)
    eta = np.column_stack([-np.conj(pts[:, 1]), np.conj(pts[:, 0])])
    lhs = evaluate(t, eta)
    rhs = np.conj(evaluate(t, pts))

    scale = np.max(np.abs(t.coeffs))
    if np.any(np.linalg.norm(rhs, axis=1) <= _ZERO * scale) or np.any(np.linalg.norm(lhs, axis=1) <= _ZERO * scale):
        raise BasePointError("a sample point is a common zero of the coordinates")

    deviation = float(np.max(projective_distance(lhs, rhs)))
    logger.debug("check_equivariance: deviation %.3e (tol %.1e, within=%s)", deviation, tol, deviation <= tol)
    return deviation


def equivariance_residual(t: PolyTuple) -> float:
    """
    Least-squares residual of c_{i,d−j}(−1)^j = λ·conj(c_{i,j}) over complex λ.

    Zero exactly for equivariant tuples. For odd d the best λ is 0 and the
    residual is 1.
    """
    j = np.arange(t.d + 1)
    u = (t.coeffs[:, ::-1] * (-1.0) ** j).ravel()
    v = np.conj(t.coeffs).ravel()
    lam = np.vdot(v, u) / np.vdot(v, v)
    return float(np.linalg.norm(u - lam * v) / np.linalg.norm(u))


def _orbit(roots: np.ndarray) -> np.ndarray:
    """Homogeneous orbit points b ↦ [b : 1] and −1/b̄ ↦ [−1 : b̄]."""
    own = np.column_stack([roots, np.ones_like(roots)])
    mirrored = np.column_stack([-np.ones_like(roots), np.conj(roots)])
    return np.vstack([own, mirrored])


def chordal_distance(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Chordal distance on the Riemann sphere between rows of homogeneous points."""
    cross = np.abs(p[:, None, 0] * q[None, :, 1] - p[:, None, 1] * q[None, :, 0])
    return cross / (np.linalg.norm(p, axis=1)[:, None] * np.linalg.norm(q, axis=1)[None, :])


def in_delta(p: RealMapParams, tol: float = None) -> int:
    """
    1 iff the coordinates share a zero: the orbit sets {b, −1/b̄} of all
    coordinates with A_i ≠ 0 intersect, matching points within tol.
    """
    tol = get_config().delta_tol if tol is None else tol
    orbits = [_orbit(r) for a, r in zip(p.A, p.roots) if a != 0]
    if len(orbits) < len(p.A):
        # a vanishing coordinate imposes nothing
        logger.debug("in_delta: %d coordinates vanish identically", len(p.A) - len(orbits))
    candidates = orbits[0]
    for orbit in orbits[1:]:
        close = chordal_distance(candidates, orbit) <= tol
        candidates = candidates[np.any(close, axis=1)]
        if not len(candidates):
            return 0
    return int(len(candidates) > 0)


# ---- Parameter manipulation ----

def random_params(n: int, d: int, rng: np.random.Generator, margin: float = 1e-2) -> RealMapParams:
    """Random parameters at chordal distance above margin from Δ."""
    while True:
        params = RealMapParams(
            n=n,
            d=d,
            A=rng.standard_normal(n + 1),
            roots=[rng.standard_normal(d // 2) + 1j * rng.standard_normal(d // 2) for _ in range(n + 1)],
        )
        if not in_delta(params, margin):
            return params


def random_tuple(n: int, d: int, rng: np.random.Generator) -> PolyTuple:
    """Generic complex tuple, with no real structure."""
    return PolyTuple(rng.standard_normal((n + 1, d + 1)) + 1j * rng.standard_normal((n + 1, d + 1)))


def swap_root(p: RealMapParams, i: int, r: int, compensate: bool = True) -> RealMapParams:
    """
    Replace b_{i,r} by −1/conj(b_{i,r}).

    The factor pair picks up the real scalar −1/|b|²; with compensate the
    same factor is absorbed into A_i so the map is unchanged.
    """
    b = p.roots[i][r]
    if abs(b) <= _ZERO:
        raise InputError("cannot swap the root 0 with the point at infinity")
    roots = [row.copy() for row in p.roots]
    roots[i][r] = -1.0 / np.conj(b)
    A = p.A.copy()
    if compensate:
        A[i] *= -abs(b) ** 2
    return RealMapParams(n=p.n, d=p.d, A=A, roots=roots)


def conjugate_params(p: RealMapParams) -> RealMapParams:
    """Conjugate every root; A is real and stays put."""
    return RealMapParams(n=p.n, d=p.d, A=p.A.copy(), roots=[np.conj(r) for r in p.roots])


def max_projective_gap(t1: PolyTuple, t2: PolyTuple, points: np.ndarray) -> float:
    """Largest projective distance between two maps at the given points."""
    if t1.coeffs.shape != t2.coeffs.shape:
        raise DimensionMismatchError("tuples have different shapes")
    return float(np.max(projective_distance(evaluate(t1, points), evaluate(t2, points))))
