"""
Tests for coefficient maps, the shipped families and their serializers.
"""

from django.test import SimpleTestCase

from gauss.types import GaussInt
from hecke.api.serializers import CoeffEntrySerializer, CoeffMapSerializer
from hecke.coeff_maps import (
    CoeffMap,
    build_family,
    random_phase_map,
    random_sign_map,
    unit_map,
)
from shared.exceptions import DomainError


class CoeffMapTest(SimpleTestCase):
    """Test CoeffMap construction, norms and ordering."""

    def test_keys_are_not_canonicalised(self):
        """Test A(mu) and A(i mu) are stored independently."""
        coeffs = CoeffMap.from_items(5, [((1, 2), 2.0), ((-2, 1), 3.0)])
        self.assertEqual(coeffs[GaussInt(1, 2)], 2.0)
        self.assertEqual(coeffs[(-2, 1)], 3.0)
        self.assertEqual(coeffs[GaussInt(2, 1)], 0j)
        self.assertFalse(coeffs.is_unit_invariant())

    def test_support_outside_bound(self):
        """Test keys outside 0 < N(mu) <= M are rejected."""
        with self.assertRaises(DomainError):
            CoeffMap.from_items(4, [((2, 1), 1.0)])
        with self.assertRaises(DomainError):
            CoeffMap.from_items(4, [((0, 0), 1.0)])
        with self.assertRaises(DomainError):
            CoeffMap(norm_bound=0)

    def test_ordering(self):
        """Test iteration is norm-ascending with the lattice tie order."""
        coeffs = CoeffMap.from_items(2, [((-1, 1), 1), ((1, 0), 2), ((1, -1), 3), ((0, 1), 4)])
        keys = [mu for mu, _ in coeffs.ordered_items()]
        self.assertEqual(keys, [GaussInt(1, 0), GaussInt(0, 1), GaussInt(1, -1), GaussInt(-1, 1)])
        re, im, values = coeffs.arrays
        self.assertEqual(re.tolist(), [1, 0, 1, -1])
        self.assertEqual(values.tolist(), [2, 4, 3, 1])

    def test_norms(self):
        """Test the l2, sup and l1 norms."""
        coeffs = CoeffMap.from_items(5, [((1, 0), 3.0), ((2, 1), 4.0j)])
        self.assertEqual(coeffs.l2_squared(), 25.0)
        self.assertEqual(coeffs.sup_squared(), 16.0)
        self.assertEqual(coeffs.l1(), 7.0)
        self.assertEqual(CoeffMap(norm_bound=3).sup_squared(), 0.0)


class FamilyTest(SimpleTestCase):
    """Test the shipped coefficient families."""

    def test_unit_map(self):
        """Test the unit family covers every lattice point and is unit invariant."""
        coeffs = unit_map(10)
        self.assertEqual(len(coeffs), 36)
        self.assertTrue(coeffs.is_unit_invariant())
        self.assertEqual(coeffs.l2_squared(), 36.0)

    def test_random_phase_is_reproducible(self):
        """Test equal seeds give equal maps and different seeds differ."""
        first = random_phase_map(20, seed=11)
        self.assertEqual(first.as_records(), random_phase_map(20, seed=11).as_records())
        self.assertNotEqual(first.as_records(), random_phase_map(20, seed=12).as_records())
        self.assertAlmostEqual(first.sup_squared(), 1.0, places=14)

    def test_random_sign_values(self):
        """Test signs are +-1."""
        coeffs = random_sign_map(20, seed=5)
        self.assertTrue(all(a in (1.0, -1.0) for _, a in coeffs.ordered_items()))

    def test_build_family(self):
        """Test construction by name."""
        self.assertEqual(len(build_family("zero", 9)), 0)
        self.assertEqual(len(build_family("unit", 2)), 8)
        with self.assertRaises(DomainError):
            build_family("gaussian", 9)


class CoeffMapSerializerTest(SimpleTestCase):
    """Test the configuration serializers."""

    def test_entries(self):
        """Test an explicit support list builds the map."""
        serializer = CoeffMapSerializer(
            data={
                "norm_bound": 5,
                "entries": [{"re": 1, "im": 0, "a_re": 1.0}, {"re": 2, "im": 1, "a_re": 0.5,
                                                                "a_im": -0.5}],
            }
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        coeffs = serializer.build()
        self.assertEqual(coeffs[GaussInt(1, 0)], 1.0)
        self.assertEqual(coeffs[GaussInt(2, 1)], complex(0.5, -0.5))

    def test_family(self):
        """Test a named family uses the seed."""
        serializer = CoeffMapSerializer(data={"norm_bound": 10, "family": "random-phase"})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(
            serializer.build(seed=4).as_records(), random_phase_map(10, seed=4).as_records()
        )

    def test_exactly_one_source(self):
        """Test entries and family are mutually exclusive and one is required."""
        both = CoeffMapSerializer(
            data={"norm_bound": 5, "family": "unit", "entries": [{"re": 1, "im": 0, "a_re": 1}]}
        )
        self.assertFalse(both.is_valid())
        neither = CoeffMapSerializer(data={"norm_bound": 5})
        self.assertFalse(neither.is_valid())

    def test_entry_outside_bound(self):
        """Test entries beyond the norm bound are rejected."""
        serializer = CoeffMapSerializer(
            data={"norm_bound": 4, "entries": [{"re": 2, "im": 1, "a_re": 1.0}]}
        )
        self.assertFalse(serializer.is_valid())

    def test_zero_entry(self):
        """Test the origin is not a support point."""
        serializer = CoeffEntrySerializer(data={"re": 0, "im": 0, "a_re": 1.0})
        self.assertFalse(serializer.is_valid())

    def test_unknown_family(self):
        """Test family names are validated."""
        serializer = CoeffMapSerializer(data={"norm_bound": 5, "family": "gaussian"})
        self.assertFalse(serializer.is_valid())
        self.assertIn("family", serializer.errors)

    def test_dump_round_trip(self):
        """Test dump output validates back to the same map."""
        coeffs = random_sign_map(8, seed=2)
        serializer = CoeffMapSerializer(data=CoeffMapSerializer.dump(coeffs))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.build().as_records(), coeffs.as_records())
