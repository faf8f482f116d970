"""
Reality-constrained clutching loops S¹ → GL_n(ℂ) sampled at equispaced points.

Samples sit at z_j = exp(2πij/N) with N even, so the antipodal map
z ↦ −z sends sample j to sample j + N/2 exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from core.config import get_config
from core.errors import (
    AliasingError,
    DimensionMismatchError,
    InconsistentSamplesError,
    InputError,
    MalformedLoopError,
    RealityError,
)
from core.topology.bundles import KleinTorusPair

logger = logging.getLogger(__name__)

_SINGULAR_DET = 1e-12


@dataclass(frozen=True, eq=False)
class SampledLoop:
    """Matrix samples of a loop; samples has shape (N, n, n)."""
    n: int
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.complex128)
        if samples.ndim != 3 or samples.shape[1:] != (self.n, self.n):
            raise MalformedLoopError(f"expected samples of shape (N, {self.n}, {self.n}), got {samples.shape}")
        if samples.shape[0] < 2 or samples.shape[0] % 2:
            raise MalformedLoopError(f"sample count must be even and positive, got {samples.shape[0]}")
        dets = np.linalg.det(samples)
        if np.min(np.abs(dets)) <= _SINGULAR_DET:
            raise MalformedLoopError("loop passes through a singular matrix")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.N) / self.N)

    def dets(self) -> np.ndarray:
        return np.linalg.det(self.samples)

    def antipodal(self) -> np.ndarray:
        """Samples of z ↦ A(−z)."""
        return np.roll(self.samples, -self.N // 2, axis=0)


# ---- Constructors ----

def loop_from_function(f: Callable[[np.ndarray], np.ndarray], n: int, N: int) -> SampledLoop:
    """Sample f(z) -> (n, n) matrix at the N-th roots of unity."""
    z = np.exp(2j * np.pi * np.arange(N) / N)
    return SampledLoop(n=n, samples=np.stack([np.asarray(f(zj), dtype=np.complex128).reshape(n, n) for zj in z]))


def canonical_loop(n: int, d: int, N: int = None) -> SampledLoop:
    """A_d(z) = diag(z^d, 1, …, 1)."""
    N = N or get_config().default_samples
    z = np.exp(2j * np.pi * np.arange(N) / N)
    samples = np.tile(np.eye(n, dtype=np.complex128), (N, 1, 1))
    samples[:, 0, 0] = z ** d
    return SampledLoop(n=n, samples=samples)


def constant_loop(matrix, N: int = None) -> SampledLoop:
    m = np.atleast_2d(np.asarray(matrix, dtype=np.complex128))
    N = N or get_config().default_samples
    return SampledLoop(n=m.shape[0], samples=np.tile(m, (N, 1, 1)))


def scalar_loop(f: Callable[[np.ndarray], np.ndarray], N: int = None) -> SampledLoop:
    """Rank-1 loop from a function of the angle θ."""
    N = N or get_config().default_samples
    theta = 2 * np.pi * np.arange(N) / N
    return SampledLoop(n=1, samples=np.asarray(f(theta), dtype=np.complex128).reshape(N, 1, 1))


def loop_product(a: SampledLoop, b: SampledLoop) -> SampledLoop:
    """Pointwise matrix product a(z)·b(z)."""
    if a.n != b.n or a.N != b.N:
        raise DimensionMismatchError(f"cannot multiply loops of shapes {a.samples.shape} and {b.samples.shape}")
    return SampledLoop(n=a.n, samples=a.samples @ b.samples)


def conjugation_loop(a: SampledLoop) -> SampledLoop:
    """
    G(z) = A(−z)·conj(A(z))⁻¹.

    The boundary involution c̃(z, v) = (−z, A(−z)·conj(A(z)⁻¹v)) equals
    (−z, G(z)·conj v).
    """
    return SampledLoop(n=a.n, samples=a.antipodal() @ np.linalg.inv(np.conj(a.samples)))


def reality_perturbation(n: int, N: int, eps: float, rng: np.random.Generator, degree: int = 3) -> SampledLoop:
    """
    I + εB(z) with B(−z) = conj B(z) and max_z ‖B(z)‖ = 1.

    B(z) = Σ_{|k| ≤ degree} B_k z^k with B_{−k} = (−1)^k conj(B_k) and B_0 real.
    """
    z = np.exp(2j * np.pi * np.arange(N) / N)
    b = np.tile(rng.standard_normal((n, n)).astype(np.complex128), (N, 1, 1))
    for k in range(1, degree + 1):
        coeff = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b += np.multiply.outer(z ** k, coeff) + (-1) ** k * np.multiply.outer(z ** (-k), np.conj(coeff))
    scale = max(np.linalg.norm(m, 2) for m in b)
    samples = np.eye(n, dtype=np.complex128) + eps * b / scale
    return SampledLoop(n=n, samples=samples)


# ---- Invariants ----

def _tol(tol: Optional[float]) -> float:
    return get_config().reality_tol if tol is None else tol


def reality_deviation(L: SampledLoop) -> float:
    """max |A(−z) − conj A(z)| over samples and entries."""
    return float(np.max(np.abs(L.antipodal() - np.conj(L.samples))))


def check_reality(L: SampledLoop, tol: float = None) -> int:
    """1 iff A(−z) = conj A(z) at every sample within tol."""
    if L.N % 2:
        raise MalformedLoopError(f"reality check needs an even sample count, got {L.N}")
    return int(reality_deviation(L) <= _tol(tol))


def check_involution(G: SampledLoop, tol: float = None) -> int:
    """1 iff G(−z)·conj G(z) = I at every sample, i.e. v ↦ G(z)·conj v covers an involution."""
    residual = np.abs(np.roll(G.samples, -G.N // 2, axis=0) @ np.conj(G.samples) - np.eye(G.n))
    return int(float(np.max(residual)) <= _tol(tol))


def _phase_steps(values: np.ndarray) -> np.ndarray:
    """
    Wrapped phase increments between consecutive samples, closing the loop.

    Raises:
        AliasingError: if any increment reaches the aliasing guard
    """
    steps = np.angle(np.roll(values, -1) / values)
    limit = get_config().aliasing_fraction * np.pi
    worst = float(np.max(np.abs(steps)))
    if worst >= limit:
        raise AliasingError(f"phase jump {worst:.3f} rad reaches the aliasing guard {limit:.3f}; sample more densely")
    return steps


def unwrapped_phase(values: np.ndarray) -> np.ndarray:
    """Continuous phase along the samples, starting on the principal branch."""
    steps = _phase_steps(values)
    psi = np.empty(len(values))
    psi[0] = np.angle(values[0])
    np.cumsum(steps[:-1], out=psi[1:])
    psi[1:] += psi[0]
    return psi


def det_winding(L: SampledLoop) -> int:
    """Winding number of det ∘ L around 0."""
    total = float(np.sum(_phase_steps(L.dets()))) / (2 * np.pi)
    return int(round(total))


@dataclass(frozen=True)
class DiskClassification:
    d: int
    maslov: int


def classify_disk(L: SampledLoop, tol: float = None, form: str = "trivialization") -> DiskClassification:
    """
    Class of a real bundle pair over the disk with one crosscap.

    Args:
        L: Trivialization loop A (form "trivialization") or conjugation loop G
            (form "conjugation") of the boundary involution
        tol: Tolerance for the involution identity G(−z)·conj G(z) = I
            (conjugation form only; any A yields an involution)
        form: Which loop L is

    Returns:
        DiskClassification with d and Maslov index 2d

    Raises:
        RealityError: if a conjugation loop does not define an involution
        InconsistentSamplesError: if the windings of A and G disagree, which
            happens when G, winding twice as fast, is undersampled
    """
    if form == "trivialization":
        d = det_winding(L)
        g_winding = det_winding(conjugation_loop(L))
        if g_winding != 2 * d:
            raise InconsistentSamplesError(
                f"det winding {d} of A disagrees with winding {g_winding} of G; sample more densely"
            )
    elif form == "conjugation":
        if not check_involution(L, tol):
            raise RealityError("conjugation loop fails G(−z)·conj G(z) = I")
        w = det_winding(L)
        if w % 2:
            raise InconsistentSamplesError(f"conjugation loop has odd winding {w}")
        d = w // 2
    else:
        raise InputError(f"unknown loop form: {form!r}")

    logger.debug("classify_disk(form=%s): d=%d", form, d)
    return DiskClassification(d=d, maslov=2 * d)


def klein_class(L: SampledLoop, tol: float = None) -> int:
    """
    Two-class invariant of a reality-constrained loop.

    With ψ the continuous phase of det L, ψ(θ + π) + ψ(θ) = 2πk for a
    constant integer k; the class is k mod 2.

    Raises:
        RealityError: if the loop is not reality-constrained
        InconsistentSamplesError: if k varies along the loop
    """
    if not check_reality(L, tol):
        raise RealityError(f"loop fails A(−z) = conj A(z) (deviation {reality_deviation(L):.3e})")
    psi = unwrapped_phase(L.dets())
    half = L.N // 2
    k_values = (psi[half:] + psi[:half]) / (2 * np.pi)
    k = np.rint(k_values)
    if np.max(np.abs(k_values - k)) > 0.25 or np.any(k != k[0]):
        raise InconsistentSamplesError(
            f"phase-shift integer is not constant along the loop: range {k_values.min():.3f}..{k_values.max():.3f}"
        )
    return int(k[0]) % 2


def induced_klein_pair(L: SampledLoop, tol: float = None) -> KleinTorusPair:
    """Pair over the Klein torus whose clutching along the crosscap circle is L."""
    return KleinTorusPair(rank=L.n, twist=klein_class(L, tol))
