"""
Unit tests for sh-surfaces, their doubles and quotients.
"""

import itertools
import unittest
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import InputError
from core.topology.surfaces import (
    BoundaryKind,
    ClosedSurfaceInfo,
    ShSurface,
    double,
    euler_char,
    parse_surface_name,
    quotient,
)

S, C = BoundaryKind.STANDARD, BoundaryKind.CROSSCAP


class TestDouble(unittest.TestCase):
    """Test doubling along the boundary involution."""

    def test_disk_with_crosscap_doubles_to_sphere(self):
        """The disk with one crosscap doubles to ℙ¹."""
        info = double(ShSurface(0, (C,)))
        self.assertEqual(info, ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=0))

    def test_annulus_doubles_to_torus(self):
        info = double(ShSurface(0, (S, S)))
        self.assertTrue(info.orientable)
        self.assertEqual(info.genus_or_crosscap_number, 1)

    def test_genus_one_two_boundaries(self):
        """(g=1, [Standard, Crosscap]) doubles to genus 3."""
        self.assertEqual(double(ShSurface(1, (S, C))).genus_or_crosscap_number, 3)

    def test_closed_input_is_identity(self):
        info = double(ShSurface(2))
        self.assertEqual(info.genus_or_crosscap_number, 2)
        self.assertEqual(info.boundary_count, 0)

    def test_euler_characteristic_doubles(self):
        """χ(double) = 2χ for every surface with boundary."""
        for g in range(4):
            for b in range(1, 5):
                for kinds in itertools.product((S, C), repeat=b):
                    s = ShSurface(g, kinds)
                    self.assertEqual(double(s).euler_char, 2 * euler_char(s))

    def test_permutation_invariance(self):
        """Reordering the boundary list does not change the double."""
        kinds = (S, C, C, S, C)
        reference = double(ShSurface(1, kinds))
        for perm in itertools.permutations(kinds):
            self.assertEqual(double(ShSurface(1, perm)), reference)


class TestQuotient(unittest.TestCase):
    """Test the quotient by c on the boundary."""

    def test_projective_plane(self):
        """(g=0, [Crosscap]) → ℝℙ²."""
        info = quotient(ShSurface(0, (C,)))
        self.assertFalse(info.orientable)
        self.assertEqual(info.genus_or_crosscap_number, 1)
        self.assertEqual(info.boundary_count, 0)

    def test_disk_unchanged(self):
        info = quotient(ShSurface(0, (S,)))
        self.assertEqual(info, ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=0, boundary_count=1))

    def test_mobius_band(self):
        info = quotient(ShSurface(0, (S, C)))
        self.assertEqual(info, ClosedSurfaceInfo(orientable=False, genus_or_crosscap_number=1, boundary_count=1))

    def test_crosscap_number(self):
        """k = 2g + |c|₁ for nonorientable quotients."""
        info = quotient(ShSurface(2, (C, S, C)))
        self.assertEqual(info.genus_or_crosscap_number, 6)
        self.assertEqual(info.boundary_count, 1)

    def test_euler_characteristic_preserved(self):
        for g in range(4):
            for b in range(0, 5):
                for kinds in itertools.product((S, C), repeat=b):
                    s = ShSurface(g, kinds)
                    self.assertEqual(quotient(s).euler_char, euler_char(s))


class TestEulerAndNames(unittest.TestCase):
    """Test Euler characteristic and the named-surface grammar."""

    def test_euler_char_examples(self):
        self.assertEqual(euler_char(ShSurface(0)), 2)
        self.assertEqual(euler_char(ShSurface(0, (C,))), 1)
        self.assertEqual(euler_char(ShSurface(2, (S, S))), -4)

    def test_counts(self):
        s = ShSurface(1, (S, C, C))
        self.assertEqual(s.std_count, 1)
        self.assertEqual(s.crosscap_count, 2)
        self.assertFalse(s.is_closed)
        self.assertEqual(s.without_crosscaps(), ShSurface(1, (S,)))

    def test_named_surfaces(self):
        self.assertEqual(parse_surface_name("disk-crosscap"), ShSurface(0, (C,)))
        self.assertEqual(parse_surface_name("annulus"), ShSurface(0, (S, S)))
        self.assertEqual(parse_surface_name("Sphere"), ShSurface(0))
        self.assertEqual(parse_surface_name("g2-s1-c3"), ShSurface(2, (S, C, C, C)))

    def test_unknown_name_rejected(self):
        with self.assertRaises(InputError):
            parse_surface_name("klein-bottle")

    def test_string_boundary_kinds_accepted(self):
        self.assertEqual(ShSurface(0, ("crosscap",)), ShSurface(0, (C,)))

    def test_negative_genus_rejected(self):
        with self.assertRaises(InputError):
            ShSurface(-1)


if __name__ == "__main__":
    unittest.main()
