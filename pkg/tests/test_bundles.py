"""
Unit tests for real bundle pairs and Klein torus pairs.
"""

import unittest
import sys
from pathlib import Path

import numpy as np

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import BaseMismatchError, DimensionMismatchError, InputError, MaslovParityError
from core.topology.bundles import (
    KleinTorusPair,
    RealBundlePair,
    direct_sum,
    fredholm_index,
    has_real_square_root,
    klein_eqw2,
    klein_eqw2_oracle,
    klein_lines,
    klein_tensor,
    klein_top,
    mobius_twisted_trivial,
    top_exterior,
)
from core.topology.surfaces import parse_surface_name

DISK_CC = parse_surface_name("disk-crosscap")
DISK = parse_surface_name("disk")
ANNULUS = parse_surface_name("annulus")


class TestRealBundlePairs(unittest.TestCase):
    """Test classifying-data arithmetic."""

    def test_direct_sum_examples(self):
        self.assertEqual(
            direct_sum(RealBundlePair(1, 2, (), DISK_CC), RealBundlePair(1, 0, (), DISK_CC)),
            RealBundlePair(2, 2, (), DISK_CC),
        )
        self.assertEqual(
            direct_sum(RealBundlePair(1, 1, (1,), DISK), RealBundlePair(1, 1, (1,), DISK)),
            RealBundlePair(2, 2, (0,), DISK),
        )
        self.assertEqual(
            direct_sum(RealBundlePair(2, 0, (0, 0), ANNULUS), RealBundlePair(1, 3, (1, 0), ANNULUS)),
            RealBundlePair(3, 3, (1, 0), ANNULUS),
        )

    def test_direct_sum_base_mismatch(self):
        with self.assertRaises(BaseMismatchError):
            direct_sum(RealBundlePair(1, 0, (), DISK_CC), RealBundlePair(1, 0, (0,), DISK))

    def test_top_exterior(self):
        p = RealBundlePair(3, 4, (0,), DISK)
        self.assertEqual(top_exterior(p), RealBundlePair(1, 4, (0,), DISK))
        q = RealBundlePair(1, 1, (1,), DISK)
        self.assertEqual(top_exterior(q), q)

    def test_top_of_sum_is_product_of_tops(self):
        p, q = RealBundlePair(2, 1, (1, 0), ANNULUS), RealBundlePair(3, 1, (0, 1), ANNULUS)
        top = top_exterior(direct_sum(p, q))
        self.assertEqual(top.maslov, top_exterior(p).maslov + top_exterior(q).maslov)
        self.assertEqual(top.std_w1, (1, 1))

    def test_maslov_parity_enforced(self):
        with self.assertRaises(MaslovParityError):
            RealBundlePair(1, 1, (), DISK_CC)
        with self.assertRaises(MaslovParityError):
            RealBundlePair(1, 2, (1,), DISK)

    def test_bit_count_must_match_base(self):
        with self.assertRaises(DimensionMismatchError):
            RealBundlePair(1, 0, (0, 0), DISK)

    def test_trivializable_disk(self):
        self.assertTrue(RealBundlePair(2, 0, (), DISK_CC).is_trivializable)
        self.assertFalse(RealBundlePair(2, 4, (), DISK_CC).is_trivializable)
        with self.assertRaises(InputError):
            RealBundlePair(1, 0, (0, 0), ANNULUS).is_trivializable


class TestFredholmIndex(unittest.TestCase):
    """Test μ + (1 − ĝ)·n."""

    def test_trivial_pair_over_crosscap_disk(self):
        for n in range(1, 5):
            self.assertEqual(fredholm_index(RealBundlePair(n, 0, (), DISK_CC), DISK_CC), n)

    def test_twisted_rank_one(self):
        for d in range(-3, 4):
            self.assertEqual(fredholm_index(RealBundlePair(1, 2 * d, (), DISK_CC), DISK_CC), 2 * d + 1)

    def test_annulus(self):
        self.assertEqual(fredholm_index(RealBundlePair(1, 0, (0, 0), ANNULUS), ANNULUS), 0)

    def test_wrong_surface(self):
        with self.assertRaises(BaseMismatchError):
            fredholm_index(RealBundlePair(1, 0, (), DISK_CC), DISK)

    def test_index_additive(self):
        """index(p ⊕ q) = index(p) + index(q) for 100 random pairs."""
        rng = np.random.default_rng(0)
        surface = parse_surface_name("g1-s2-c1")
        for _ in range(100):
            pairs = []
            for _ in range(2):
                bits = tuple(int(b) for b in rng.integers(0, 2, size=2))
                maslov = 2 * int(rng.integers(-5, 6)) + sum(bits)
                pairs.append(RealBundlePair(int(rng.integers(1, 5)), maslov, bits, surface))
            p, q = pairs
            self.assertEqual(
                fredholm_index(direct_sum(p, q), surface),
                fredholm_index(p, surface) + fredholm_index(q, surface),
            )


class TestKleinPairs(unittest.TestCase):
    """Test pairs over the Klein torus."""

    def test_eqw2_examples(self):
        self.assertEqual(klein_eqw2(KleinTorusPair(5, 0)), 0)
        self.assertEqual(klein_eqw2(KleinTorusPair(1, 1)), 1)

    def test_oracle_agrees(self):
        """Whitney-sum recomputation over {τ, γ₁, γ₂, γ₁⊗γ₂} matches for n ≤ 6."""
        for n in range(1, 7):
            for twist in (0, 1):
                k = KleinTorusPair(n, twist)
                self.assertEqual(klein_eqw2_oracle(k), klein_eqw2(k))

    def test_lines_have_rank_2n(self):
        self.assertEqual(len(klein_lines(KleinTorusPair(3, 1))), 6)

    def test_top(self):
        self.assertEqual(klein_top(KleinTorusPair(4, 0)), KleinTorusPair(1, 0))
        self.assertEqual(klein_top(KleinTorusPair(4, 1)), KleinTorusPair(1, 1))
        for n in range(1, 5):
            for twist in (0, 1):
                k = KleinTorusPair(n, twist)
                self.assertEqual(klein_eqw2(klein_top(k)), klein_eqw2(k))

    def test_tensor(self):
        self.assertEqual(klein_tensor(KleinTorusPair(1, 1), KleinTorusPair(1, 1)), KleinTorusPair(1, 0))
        self.assertEqual(klein_tensor(KleinTorusPair(1, 0), KleinTorusPair(1, 1)), KleinTorusPair(1, 1))
        self.assertEqual(klein_tensor(KleinTorusPair(1, 0), KleinTorusPair(1, 0)), KleinTorusPair(1, 0))

    def test_tensor_is_homomorphism(self):
        for a in (0, 1):
            for b in (0, 1):
                product = klein_tensor(KleinTorusPair(1, a), KleinTorusPair(1, b))
                self.assertEqual(klein_eqw2(product), a ^ b)

    def test_tensor_rejects_higher_rank(self):
        with self.assertRaises(InputError):
            klein_tensor(KleinTorusPair(2, 0), KleinTorusPair(1, 0))

    def test_squares_have_real_square_roots(self):
        for t in (0, 1):
            square = klein_tensor(KleinTorusPair(1, t), KleinTorusPair(1, t))
            self.assertTrue(has_real_square_root(square))
        self.assertFalse(has_real_square_root(KleinTorusPair(3, 1)))

    def test_mobius_twist(self):
        """Trivial pair twisted by the Möbius line pairs to 1."""
        self.assertEqual(klein_eqw2(mobius_twisted_trivial()), 1)


if __name__ == "__main__":
    unittest.main()
