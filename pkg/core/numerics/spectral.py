"""
Kernel and index of the standard real ∂̄-operator on the disk with one crosscap.

Holomorphic sections ξ(z) = Σ a_m z^m of the twisted pair with class d
satisfy the boundary condition

    ξ(−z) = (−1)^d z^{2d} conj ξ(z)   on |z| = 1,

i.e. a_m (−1)^m = (−1)^d conj a_{2d−m} with a_m = 0 for m < 0. The exact
count from this recurrence is checked against an SVD of the collocated
boundary system. The contour-integral identity for −Re z^{2k} lives here too.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List

import mpmath
import numpy as np
import scipy.linalg

from core.config import get_config
from core.errors import InputError, SpectralGapError
from core.topology.bundles import RealBundlePair, fredholm_index
from core.topology.surfaces import parse_surface_name

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiskProblem:
    """Truncated boundary problem: degrees 0..K, M collocation points on S¹."""
    d: int
    K: int
    M: int
    tol: float = None

    def __post_init__(self):
        if self.K < 2 * abs(self.d) + 2:
            raise InputError(f"truncation K={self.K} must be at least 2|d| + 2 = {2 * abs(self.d) + 2}")
        # boundary exponents run over 2d−K..K and must not alias on M points
        needed = 2 * self.K + 2 + 2 * max(0, -self.d)
        if self.M < needed:
            raise InputError(f"collocation M={self.M} must be at least {needed} for d={self.d}, K={self.K}")
        if self.tol is None:
            object.__setattr__(self, "tol", get_config().kernel_tol)

    @classmethod
    def for_twist(cls, d: int, K: int = None, M: int = None, tol: float = None) -> "DiskProblem":
        """
        Problem sized for twist d.

        K defaults to 2|d| + margin from config; M defaults to
        max(factor·K, the aliasing bound) for whichever K is used.
        """
        config = get_config()
        K = 2 * abs(d) + config.trunc_margin if K is None else K
        M = max(config.colloc_factor * K, 2 * K + 2 + 2 * max(0, -d)) if M is None else M
        return cls(d=d, K=K, M=M, tol=tol)


@dataclass
class RecurrenceResult:
    dim: int
    relations: List[str] = field(default_factory=list)


def _pair_window(d: int, lo: int, hi: int) -> int:
    """Real dimension freed by pairs (m, 2d − m) with lo <= m <= hi."""
    dim = 0
    for m in range(lo, hi + 1):
        partner = 2 * d - m
        if m < partner:
            dim += 2
        elif m == partner:
            dim += 1
    return dim


def boundary_recurrence_kernel(d: int) -> RecurrenceResult:
    """
    Exact real kernel dimension from the Taylor-coefficient recurrence.

    Returns:
        dim = 2d + 1 for d >= 0, else 0, with the relations that cut it out
    """
    if d < 0:
        return RecurrenceResult(dim=0, relations=["a_m = 0 for all m"])

    relations = []
    for m in range(d):
        relations.append(f"a_{2 * d - m} = {'-' if (m + d) % 2 else ''}conj(a_{m}), a_{m} free")
    relations.append(f"a_{d} real")
    relations.append(f"a_m = 0 for m > {2 * d}")
    return RecurrenceResult(dim=_pair_window(d, 0, 2 * d), relations=relations)


def boundary_recurrence_cokernel(d: int) -> int:
    """Real cokernel dimension: the unmatched relations on exponents 2d < m < 0."""
    if d >= 0:
        return 0
    return _pair_window(d, 2 * d + 1, -1)


def boundary_system(p: DiskProblem) -> np.ndarray:
    """
    Real (2M × 2(K+1)) matrix of the boundary condition.

    Unknowns are (Re a_0..Re a_K, Im a_0..Im a_K); rows are the real and
    imaginary parts of ξ(−z) − (−1)^d z^{2d} conj ξ(z) at each collocation point.
    """
    z = np.exp(2j * np.pi * np.arange(p.M) / p.M)
    m = np.arange(p.K + 1)
    sign_m = (-1.0) ** m
    sign_d = (-1.0) ** p.d
    direct = sign_m * z[:, None] ** m
    mirrored = sign_d * z[:, None] ** (2 * p.d - m)
    complex_system = np.hstack([direct - mirrored, 1j * (direct + mirrored)])
    return np.vstack([complex_system.real, complex_system.imag])


def numerical_kernel_dim(p: DiskProblem) -> int:
    """
    Kernel dimension of the collocated boundary system.

    Counts singular values below tol relative to the largest, and requires a
    gap of at least the configured ratio between the smallest kept and the
    largest discarded value.

    Raises:
        SpectralGapError: if no clear gap separates kernel from range
    """
    s = scipy.linalg.svd(boundary_system(p), compute_uv=False)
    rel = s / s[0]
    small = rel < p.tol
    dim = int(np.count_nonzero(small))

    if dim:
        kept = rel[~small]
        smallest_kept = float(kept[-1]) if kept.size else 1.0
        largest_dropped = float(rel[small][0])
        ratio = np.inf if largest_dropped == 0 else smallest_kept / largest_dropped
        if ratio < get_config().gap_ratio:
            raise SpectralGapError(f"singular-value gap {ratio:.3e} below required {get_config().gap_ratio:.0e}")

    logger.debug("numerical_kernel_dim(d=%d, K=%d, M=%d) = %d, smallest rel sv %.3e",
                 p.d, p.K, p.M, dim, float(rel[-1]))
    return dim


def fredholm_cross_check(d: int) -> int:
    """1 iff the numerical index matches μ + (1 − ĝ)·n for (rank 1, μ = 2d) on the crosscap disk."""
    surface = parse_surface_name("disk-crosscap")
    expected = fredholm_index(RealBundlePair(rank=1, maslov=2 * d, base=surface), surface)
    numeric = numerical_kernel_dim(DiskProblem.for_twist(d)) - boundary_recurrence_cokernel(d)
    if numeric != expected:
        logger.warning("index mismatch for d=%d: numeric %d, formula %d", d, numeric, expected)
    return int(numeric == expected)


# ---- Contour quadrature ----

def remark37_expected(k: int, m: int) -> float:
    return -math.factorial(2 * k) / 2 if m == 2 * k else 0.0


def remark37_integral(k: int, m: int, N: int = None) -> float:
    """
    h^{(m)}(0) = (m!/2πi) ∮ −Re(z^{2k}) dz / z^{m+1}, by the N-point trapezoid rule.

    The rule is exact for trigonometric polynomials below the Nyquist degree;
    the sum runs in extended precision so the m! scaling keeps the result
    exact in double precision.
    """
    config = get_config()
    N = N or config.quadrature_points
    if k < 1 or m < 0:
        raise InputError(f"need k >= 1 and m >= 0, got k={k}, m={m}")
    if N < 2 * k + m + 2:
        raise InputError(f"quadrature needs N >= 2k + m + 2 = {2 * k + m + 2}, got {N}")

    with mpmath.workdps(config.quadrature_precision):
        total = mpmath.mpc(0)
        for j in range(N):
            theta = 2 * mpmath.pi * j / N
            total += -mpmath.cos(2 * k * theta) * mpmath.expj(-m * theta)
        value = mpmath.factorial(m) * total / N
        return float(mpmath.re(value))


@dataclass
class Reconstruction:
    coefficients: List[float]
    residual: float


def remark37_reconstruction(k: int, points: int = 100) -> Reconstruction:
    """
    Rebuild h from its Taylor coefficients and evaluate Re(z^{2k} + h(z)) on S¹.

    h comes out as −z^{2k}/2, so the residual is 1/2 rather than 0: no
    holomorphic h cancels Re z^{2k} on the boundary.
    """
    degree = 2 * k + 2
    coefficients = [remark37_integral(k, m) / math.factorial(m) for m in range(degree + 1)]
    z = np.exp(2j * np.pi * np.arange(points) / points)
    h = np.polynomial.polynomial.polyval(z, coefficients)
    residual = float(np.max(np.abs(np.real(z ** (2 * k) + h))))
    return Reconstruction(coefficients=coefficients, residual=residual)
