"""
Unit tests for the determinant-line holonomy formula and orientability criteria.
"""

import itertools
import unittest
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import InputError, MalformedLoopError, MissingChangeDataError
from core.orientation.holonomy import (
    BoundaryChangeEntry,
    CrosscapLoopData,
    OperatorLoop,
    StdBoundaryLoopData,
    TrivializationChange,
    Verdict,
    corollary17_verdict,
    corollary18_verdict,
    corollary62_verdict,
    corollary63_check,
    decompose,
    example29_loop,
    holonomy,
    lemma42_loop,
    trivialization_sign,
)
from core.topology.bundles import KleinTorusPair, klein_tensor
from core.topology.surfaces import BoundaryKind, ShSurface, parse_surface_name

S, C = BoundaryKind.STANDARD, BoundaryKind.CROSSCAP


def all_loops(max_std=3, max_cc=3):
    for s in range(max_std + 1):
        for c in range(max_cc + 1):
            base = ShSurface(0, (S,) * s + (C,) * c)
            for bits in itertools.product((0, 1), repeat=3 * s + c):
                yield OperatorLoop(
                    base=base,
                    std=tuple(StdBoundaryLoopData(*bits[3 * i:3 * i + 3]) for i in range(s)),
                    cc=tuple(CrosscapLoopData(b) for b in bits[3 * s:]),
                )


class TestHolonomy(unittest.TestCase):
    """Test evaluation of ⟨w1(det D), S¹⟩."""

    def test_zero_data(self):
        loop = OperatorLoop(parse_surface_name("mobius"), (StdBoundaryLoopData(),), (CrosscapLoopData(),))
        self.assertEqual(holonomy(loop), 0)

    def test_single_crosscap(self):
        self.assertEqual(holonomy(lemma42_loop()), 1)

    def test_standard_arithmetic(self):
        loop = OperatorLoop(parse_surface_name("disk"), (StdBoundaryLoopData(1, 1, 0),))
        self.assertEqual(holonomy(loop), 0)

    def test_example29_fixture(self):
        self.assertEqual(holonomy(example29_loop()), 1)

    def test_malformed_loop(self):
        with self.assertRaises(MalformedLoopError):
            OperatorLoop(parse_surface_name("disk-crosscap"), (StdBoundaryLoopData(),), ())
        with self.assertRaises(MalformedLoopError):
            StdBoundaryLoopData(w1_b=2)

    def test_flip_sensitivity(self):
        """Flipping eqw2 flips the output; flipping w1_alpha flips it iff w1_b = 0."""
        base = parse_surface_name("mobius")
        for w1_b, w1_alpha, w2_beta, eqw2 in itertools.product((0, 1), repeat=4):
            loop = OperatorLoop(base, (StdBoundaryLoopData(w1_b, w1_alpha, w2_beta),), (CrosscapLoopData(eqw2),))
            flipped_cc = OperatorLoop(base, loop.std, (CrosscapLoopData(1 - eqw2),))
            flipped_alpha = OperatorLoop(base, (StdBoundaryLoopData(w1_b, 1 - w1_alpha, w2_beta),), loop.cc)
            self.assertNotEqual(holonomy(loop), holonomy(flipped_cc))
            self.assertEqual(holonomy(loop) != holonomy(flipped_alpha), w1_b == 0)

    def test_square_root_crosscaps_contribute_nothing(self):
        """Crosscap bits from pairs with a real square root sum to 0."""
        squares = [klein_tensor(KleinTorusPair(1, t), KleinTorusPair(1, t)) for t in (0, 1, 1)]
        loop = OperatorLoop(ShSurface(0, (C, C, C)), (), tuple(CrosscapLoopData.from_pair(k) for k in squares))
        self.assertEqual(holonomy(loop), 0)


class TestDecompose(unittest.TestCase):
    """Test pinching off crosscaps."""

    def test_pure_crosscap(self):
        reduced, bits = decompose(OperatorLoop(ShSurface(1, (C, C)), (), (CrosscapLoopData(1), CrosscapLoopData(0))))
        self.assertTrue(reduced.base.is_closed)
        self.assertEqual(reduced.base.genus, 1)
        self.assertEqual(holonomy(reduced), 0)
        self.assertEqual(bits, [1, 0])

    def test_exhaustive_identity(self):
        """holonomy = holonomy(standard part) ⊕ XOR(crosscap bits) for ≤ 3 + 3 circles."""
        for loop in all_loops():
            reduced, bits = decompose(loop)
            self.assertEqual(holonomy(loop), holonomy(reduced) ^ (sum(bits) % 2))


class TestTrivializationSign(unittest.TestCase):
    """Test the sign of a change of trivialization."""

    def test_standard_component(self):
        t = TrivializationChange(rank=2, o_R={"x": 1}, s_R={"b": 0})
        entry = BoundaryChangeEntry(kind=S, loop_class="b", w1_b=0, component="x")
        self.assertEqual(trivialization_sign(t, [entry]), -1)

    def test_nonorientable_standard_component(self):
        """With w1_b = 1 the o_R term drops out."""
        t = TrivializationChange(rank=2, o_R={"x": 1}, s_R={"b": 0})
        entry = BoundaryChangeEntry(kind=S, loop_class="b", w1_b=1, component="x")
        self.assertEqual(trivialization_sign(t, [entry]), 1)

    def test_crosscap_component(self):
        t = TrivializationChange(o_C={"b": 1})
        self.assertEqual(trivialization_sign(t, [BoundaryChangeEntry(kind=C, loop_class="b")]), -1)

    def test_no_change(self):
        t = TrivializationChange(rank=3, o_R={"x": 0}, s_R={"b": 0}, o_C={"c": 0})
        entries = [BoundaryChangeEntry(S, "b", 0, "x"), BoundaryChangeEntry(C, "c")]
        self.assertEqual(trivialization_sign(t, entries), 1)

    def test_rank_one_forces_spin_change_to_zero(self):
        with self.assertLogs("core.orientation.holonomy", level="WARNING"):
            t = TrivializationChange(rank=1, o_R={"x": 0}, s_R={"b": 1})
        self.assertEqual(trivialization_sign(t, [BoundaryChangeEntry(S, "b", 0, "x")]), 1)

    def test_rank_one_needs_no_spin_entry(self):
        """A rank-1 change with only o_R data still has a sign."""
        t = TrivializationChange(rank=1, o_R={"x": 1})
        self.assertEqual(trivialization_sign(t, [BoundaryChangeEntry(S, "b", 0, "x")]), -1)

    def test_higher_rank_still_needs_spin_entry(self):
        t = TrivializationChange(rank=2, o_R={"x": 0})
        with self.assertRaises(MissingChangeDataError):
            trivialization_sign(t, [BoundaryChangeEntry(S, "b", 0, "x")])

    def test_missing_entry(self):
        t = TrivializationChange(rank=2, o_R={"x": 1})
        with self.assertRaises(MissingChangeDataError):
            trivialization_sign(t, [BoundaryChangeEntry(S, "b", 0, "x")])


class TestCriteria(unittest.TestCase):
    """Test orientability predicates."""

    def test_corollary17(self):
        self.assertEqual(corollary17_verdict(1, 1, 1, 0), Verdict.ORIENTABLE_GUARANTEED)
        self.assertEqual(corollary17_verdict(1, 0, 0, 1), Verdict.ORIENTABLE_GUARANTEED)
        self.assertEqual(corollary17_verdict(1, 1, 0, 0), Verdict.NO_CONCLUSION)
        self.assertEqual(corollary17_verdict(0, 1, 1, 1), Verdict.NO_CONCLUSION)

    def test_corollary18(self):
        self.assertEqual(corollary18_verdict(True, True, False), Verdict.ORIENTABLE_GUARANTEED)
        self.assertEqual(corollary18_verdict(True, False, False), Verdict.NO_CONCLUSION)

    def test_corollary62_boundary_combinations(self):
        """Each condition is needed only when its kind of boundary is present."""
        G, P, N = Verdict.ORIENTABLE_GUARANTEED, Verdict.LAGRANGIAN_PULLBACK, Verdict.NO_CONCLUSION
        # closed domain: nothing to check
        self.assertEqual(corollary62_verdict(0, 0, False, False, False), G)
        # crosscaps only: the square-class condition decides
        self.assertEqual(corollary62_verdict(0, 2, False, False, True), G)
        self.assertEqual(corollary62_verdict(0, 2, True, True, False), N)
        # standard circles only: the fixed-locus conditions decide
        self.assertEqual(corollary62_verdict(3, 0, True, True, False), G)
        self.assertEqual(corollary62_verdict(3, 0, False, True, False), P)
        self.assertEqual(corollary62_verdict(3, 0, True, False, True), N)
        # both kinds
        self.assertEqual(corollary62_verdict(1, 1, True, True, True), G)
        self.assertEqual(corollary62_verdict(1, 1, False, True, True), P)
        self.assertEqual(corollary62_verdict(1, 1, True, True, False), N)
        self.assertEqual(corollary62_verdict(1, 1, True, False, True), N)

    def test_corollary62_exhaustive(self):
        for std, cc in itertools.product(range(3), repeat=2):
            for orientable, w2_square, eq_square in itertools.product((False, True), repeat=3):
                verdict = corollary62_verdict(std, cc, orientable, w2_square, eq_square)
                fixed_ok = std == 0 or (orientable and w2_square)
                square_ok = cc == 0 or eq_square
                self.assertEqual(verdict is Verdict.ORIENTABLE_GUARANTEED, fixed_ok and square_ok)
                if verdict is Verdict.LAGRANGIAN_PULLBACK:
                    self.assertTrue(std > 0 and w2_square and not orientable and square_ok)

    def test_corollary62_quintic(self):
        """A real quintic threefold has orientable spin fixed locus and pi1 = 0, w2 = 0."""
        self.assertEqual(corollary62_verdict(2, 3, True, True, True), Verdict.ORIENTABLE_GUARANTEED)

    def test_corollary62_agrees_with_corollary17(self):
        for cc, eq_square in itertools.product(range(1, 4), (False, True)):
            self.assertEqual(corollary62_verdict(0, cc, False, False, eq_square),
                             corollary17_verdict(True, eq_square, True, False))

    def test_corollary62_negative_counts(self):
        with self.assertRaises(InputError):
            corollary62_verdict(-1, 0, True, True, True)

    def test_corollary63_examples(self):
        quintic = corollary63_check(4, (5,))
        self.assertTrue(quintic.applies)
        self.assertEqual(quintic.sign_product, 1)
        self.assertTrue(corollary63_check(3, ()).applies)
        self.assertEqual(corollary63_check(5, (2, 2)).sign_product, 1)
        self.assertFalse(corollary63_check(4, ()).applies)

    def test_corollary63_exhaustive(self):
        """applies ⇔ sign_product = +1 for n ≤ 12, entries ≤ 6, length ≤ 3."""
        for n in range(1, 13):
            for length in range(4):
                for a in itertools.product(range(1, 7), repeat=length):
                    check = corollary63_check(n, a)
                    self.assertEqual(check.applies, check.sign_product == 1)


if __name__ == "__main__":
    unittest.main()
