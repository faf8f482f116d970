"""
Acceptance suites.

Each suite recomputes one family of results through an independent route
(cohomology oracle, exhaustive bit enumeration, perturbed samples, SVD,
extended-precision quadrature, explicit polynomial maps) and records every
disagreement. All randomness derives from a single seed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from core.config import get_config
from core.errors import InputError
from core.curves.realcurves import (
    build,
    check_equivariance,
    equivariance_residual,
    in_delta,
    random_params,
    random_tuple,
    RealMapParams,
)
from core.numerics.clutching import (
    canonical_loop,
    classify_disk,
    constant_loop,
    induced_klein_pair,
    klein_class,
    loop_product,
    reality_perturbation,
    scalar_loop,
)
from core.numerics.spectral import (
    DiskProblem,
    boundary_recurrence_kernel,
    fredholm_cross_check,
    numerical_kernel_dim,
    remark37_expected,
    remark37_integral,
)
from core.orientation.holonomy import (
    CrosscapLoopData,
    OperatorLoop,
    StdBoundaryLoopData,
    corollary63_check,
    decompose,
    holonomy,
)
from core.shared.report import Stopwatch
from core.topology.bundles import KleinTorusPair, klein_eqw2, klein_eqw2_oracle
from core.topology.cohomology import H1Presentation, OneClass, ring_of, square_class_cokernel, square_pairing
from core.topology.surfaces import BoundaryKind, ClosedSurfaceInfo, ShSurface

logger = logging.getLogger(__name__)

_MAX_REPORTED_FAILURES = 10


@dataclass
class SuiteResult:
    """Outcome of one acceptance suite."""
    suite_id: int
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, message: str):
        self.cases += 1
        if not ok and len(self.failures) < _MAX_REPORTED_FAILURES:
            self.failures.append(message)
        elif not ok:
            self.details["suppressed_failures"] = self.details.get("suppressed_failures", 0) + 1


@dataclass
class AcceptanceResults:
    seed: int
    suites: List[SuiteResult] = field(default_factory=list)
    aggregate_stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)


# ---- Suites ----

def suite_klein_pairs(result: SuiteResult, rng: np.random.Generator):
    for n in range(1, 7):
        for twist in (0, 1):
            pair = KleinTorusPair(rank=n, twist=twist)
            result.expect(klein_eqw2(pair) == twist, f"klein_eqw2({n}, {twist}) != {twist}")
            result.expect(klein_eqw2_oracle(pair) == klein_eqw2(pair), f"whitney oracle disagrees at ({n}, {twist})")


def suite_square_classes(result: SuiteResult, rng: np.random.Generator):
    for k in range(1, 9):
        ring = ring_of(ClosedSurfaceInfo(orientable=False, genus_or_crosscap_number=k))
        for bits in itertools.product((0, 1), repeat=k):
            kappa = OneClass(bits)
            result.expect(square_pairing(kappa, ring) == sum(bits) % 2, f"κ² != ⟨κ, b⟩ for κ={bits}")
    for g in range(0, 4):
        ring = ring_of(ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=g))
        for bits in itertools.product((0, 1), repeat=2 * g):
            result.expect(square_pairing(OneClass(bits), ring) == 0, f"nonzero square on genus {g}: {bits}")

    for m in range(2, 65):
        for r in range(1, 4):
            count = square_class_cokernel(H1Presentation(free_rank=1, torsion_orders=[(m, r)]))
            expected = r if m % 4 == 0 else 0
            result.expect(count == expected, f"cokernel of Z_{m}^{r}: {count} != {expected}")
            result.expect((count == 0) == (m % 4 != 0), f"cokernel zero-test wrong for Z_{m}")


def suite_decomposition(result: SuiteResult, rng: np.random.Generator):
    for s in range(4):
        for c in range(4):
            base = ShSurface(1, (BoundaryKind.STANDARD,) * s + (BoundaryKind.CROSSCAP,) * c)
            for bits in itertools.product((0, 1), repeat=3 * s + c):
                std = tuple(StdBoundaryLoopData(*bits[3 * i:3 * i + 3]) for i in range(s))
                cc = tuple(CrosscapLoopData(b) for b in bits[3 * s:])
                loop = OperatorLoop(base=base, std=std, cc=cc)
                reduced, cc_bits = decompose(loop)
                expected = holonomy(reduced) ^ (sum(cc_bits) % 2)
                result.expect(holonomy(loop) == expected, f"decomposition fails for s={s}, c={c}, bits={bits}")
    result.details["loops"] = result.cases


def suite_disk_classification(result: SuiteResult, rng: np.random.Generator):
    config = get_config()
    N = config.default_samples
    for d in range(-4, 5):
        base = canonical_loop(2, d, N)
        cls = classify_disk(base)
        result.expect(cls.d == d and cls.maslov == 2 * d, f"canonical A_{d} classified as {cls}")
        for _ in range(config.perturbations):
            perturbed = loop_product(base, reality_perturbation(2, N, config.perturbation_size, rng))
            cls = classify_disk(perturbed)
            result.expect(cls.d == d, f"perturbed A_{d} classified as d={cls.d}")


def _klein_representatives(N: int) -> List[Tuple[str, Any, int]]:
    return [
        ("identity", constant_loop(np.eye(2), N), 0),
        ("diag(-1, 1)", constant_loop(np.diag([-1.0, 1.0]), N), 1),
        ("exp(iπ(1+cos θ))", scalar_loop(lambda t: np.exp(1j * np.pi * (1 + np.cos(t))), N), 1),
    ]


def suite_klein_class(result: SuiteResult, rng: np.random.Generator):
    config = get_config()
    N = config.default_samples
    for name, loop, expected in _klein_representatives(N):
        result.expect(klein_class(loop) == expected, f"klein_class({name}) != {expected}")
        for _ in range(config.perturbations):
            perturbed = loop_product(loop, reality_perturbation(loop.n, N, config.perturbation_size, rng))
            bit = klein_class(perturbed)
            result.expect(bit == expected, f"perturbed {name} gave {bit}")
            result.expect(klein_eqw2(induced_klein_pair(perturbed)) == bit,
                          f"induced pair of perturbed {name} disagrees with klein_eqw2")


def suite_spectral_index(result: SuiteResult, rng: np.random.Generator):
    for d in range(-4, 5):
        dim = numerical_kernel_dim(DiskProblem.for_twist(d))
        expected = 2 * d + 1 if d >= 0 else 0
        result.expect(dim == expected, f"numerical kernel for d={d}: {dim} != {expected}")
        result.expect(dim == boundary_recurrence_kernel(d).dim, f"recurrence disagrees at d={d}")
        result.expect(fredholm_cross_check(d) == 1, f"index cross-check fails at d={d}")


def suite_contour_quadrature(result: SuiteResult, rng: np.random.Generator):
    worst = 0.0
    for k in range(1, 5):
        for m in range(0, 11):
            error = abs(remark37_integral(k, m, 64) - remark37_expected(k, m))
            worst = max(worst, error)
            result.expect(error <= 1e-12, f"quadrature error {error:.2e} at k={k}, m={m}")
    result.details["max_error"] = worst


def _common_orbit_case(rng: np.random.Generator) -> RealMapParams:
    """Parameters whose coordinates all vanish at one point of the orbit {b, −1/b̄}."""
    n = int(rng.integers(1, 4))
    d = int(rng.choice([2, 4]))
    params = random_params(n, d, rng)
    b = complex(rng.standard_normal() + 1j * rng.standard_normal())
    roots = [row.copy() for row in params.roots]
    for i, row in enumerate(roots):
        r = int(rng.integers(0, len(row)))
        row[r] = b if rng.random() < 0.5 else -1.0 / np.conj(b)
    return RealMapParams(n=n, d=d, A=params.A, roots=roots)


def suite_real_curves(result: SuiteResult, rng: np.random.Generator):
    config = get_config()
    worst = 0.0
    for _ in range(50):
        params = random_params(int(rng.integers(1, 4)), int(rng.choice([2, 4])), rng)
        deviation = check_equivariance(build(params), config.equivariance_samples, rng=rng)
        worst = max(worst, deviation)
        result.expect(deviation <= config.equivariance_tol, f"equivariance deviation {deviation:.2e}")
    result.details["max_deviation"] = worst

    for _ in range(20):
        params = _common_orbit_case(rng)
        result.expect(in_delta(params) == 1, "constructed common-orbit case not flagged")

    smallest = np.inf
    for _ in range(100):
        residual = equivariance_residual(random_tuple(int(rng.integers(1, 4)), 3, rng))
        smallest = min(smallest, residual)
        result.expect(residual >= 0.01, f"odd-degree residual {residual:.3e} below 0.01")
    result.details["min_odd_residual"] = float(smallest)


def suite_complete_intersections(result: SuiteResult, rng: np.random.Generator):
    for n in range(1, 13):
        for length in range(0, 4):
            for a in itertools.product(range(1, 7), repeat=length):
                check = corollary63_check(n, a)
                result.expect(check.applies == (check.sign_product == 1), f"parity mismatch at n={n}, a={a}")
    result.expect(corollary63_check(4, (5,)).applies, "quintic threefold does not apply")


SUITES: List[Tuple[int, str, Callable[[SuiteResult, np.random.Generator], None]]] = [
    (1, "klein torus equivariant w2", suite_klein_pairs),
    (2, "square classes and cokernel", suite_square_classes),
    (3, "holonomy decomposition", suite_decomposition),
    (4, "disk clutching classification", suite_disk_classification),
    (5, "two-class clutching invariant", suite_klein_class),
    (6, "index of the crosscap disk", suite_spectral_index),
    (7, "contour quadrature", suite_contour_quadrature),
    (8, "real rational curves", suite_real_curves),
    (9, "complete intersection parity", suite_complete_intersections),
]


def run_suite(suite_id: int, seed: int) -> SuiteResult:
    """Run one suite with its own generator derived from seed."""
    entry = next((s for s in SUITES if s[0] == suite_id), None)
    if entry is None:
        raise InputError(f"unknown acceptance suite {suite_id}")
    _, name, fn = entry
    result = SuiteResult(suite_id=suite_id, name=name)
    rng = np.random.default_rng([seed, suite_id])
    with Stopwatch() as sw:
        fn(result, rng)
    result.elapsed_ms = sw.elapsed_ms
    return result


def compute_aggregate_stats(suites: List[SuiteResult]) -> Dict[str, Any]:
    """Totals across suites."""
    if not suites:
        return {}
    return {
        "total_suites": len(suites),
        "passed_suites": sum(1 for s in suites if s.passed),
        "total_cases": sum(s.cases for s in suites),
        "failed_suites": [s.suite_id for s in suites if not s.passed],
    }


def run_acceptance(seed: Optional[int] = None, suite_ids: Optional[List[int]] = None) -> AcceptanceResults:
    """
    Run the acceptance suites.

    Args:
        seed: Master seed (default from config)
        suite_ids: Subset of suites to run (default all)

    Returns:
        AcceptanceResults with per-suite outcomes and totals
    """
    seed = get_config().default_seed if seed is None else seed
    ids = suite_ids or [s[0] for s in SUITES]

    logger.info("=" * 60)
    logger.info("ACCEPTANCE RUN (seed=%d, suites=%s)", seed, ids)
    logger.info("=" * 60)

    results = AcceptanceResults(seed=seed)
    for suite_id in ids:
        suite = run_suite(suite_id, seed)
        results.suites.append(suite)
        status = "PASS" if suite.passed else "FAIL"
        logger.info("[%d] %-32s %s  %d cases  %.1f ms", suite.suite_id, suite.name, status, suite.cases, suite.elapsed_ms)
        for failure in suite.failures:
            logger.warning("    %s", failure)

    results.aggregate_stats = compute_aggregate_stats(results.suites)
    logger.info("=" * 60)
    logger.info("%d/%d suites passed", results.aggregate_stats["passed_suites"], results.aggregate_stats["total_suites"])
    return results


def suite_result_to_dict(result: SuiteResult) -> Dict[str, Any]:
    """Convert SuiteResult to a JSON-serializable dictionary (wall time excluded)."""
    return {
        "suite_id": result.suite_id,
        "name": result.name,
        "cases": result.cases,
        "passed": result.passed,
        "failures": result.failures,
        "details": result.details,
    }


def acceptance_results_to_dict(results: AcceptanceResults) -> Dict[str, Any]:
    return {
        "seed": results.seed,
        "passed": results.passed,
        "suites": [suite_result_to_dict(s) for s in results.suites],
        "aggregate_stats": results.aggregate_stats,
    }
