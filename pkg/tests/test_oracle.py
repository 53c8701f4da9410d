"""Unit tests for the emptiness decision engine."""

import pytest

from topogen.algebra_core import GroupSpec, semisimple, unipotent, validate_class
from topogen.errors import BadCharacteristic, MissingSpin8Profile, SchemaError
from topogen.oracle import (
    decide,
    min_generators,
    scott_lower_bound,
    so6_transfer,
    spin8_profile,
)

SP4 = GroupSpec("Sp", 4, 0)
MI22 = semisimple(ones=2, minus_ones=2, order=2)


def lampair(n_half, order=2):
    return semisimple(
        pairs=[("l", n_half)], relations={"l": "square_is_minus_one"}, order=order
    )


class TestDispatchOrder:
    def test_needs_two_classes(self):
        with pytest.raises(SchemaError):
            decide(SP4, [MI22])

    def test_dim_obstruction_fires_first(self):
        g = GroupSpec("SL", 4, 0)
        big = semisimple(free=[("a", 3), ("b", 1)])
        v = decide(g, [big, big])
        assert v.empty and v.reason == "DimObstruction"
        assert v.witnesses["sum_d"] == 6

    def test_sp_char2_fixed_vector_rule(self):
        g = GroupSpec("Sp", 4, 2)
        # a2 pair: sum d = 4 = n(r-1) passes the eigenspace rule, but the
        # fixed-vector rule (>= rather than >) still rejects it
        a2 = unipotent(decoration=[{"W": 2, "mult": 1}], order=2)
        v = decide(g, [a2, a2])
        assert v.empty and v.reason == "SpChar2FixedVector"
        b1 = unipotent(decoration=[{"V": 2, "mult": 1}, {"W": 1, "mult": 1}], order=2)
        ss = semisimple(ones=2, pairs=[1], order=3)
        v2 = decide(g, [ss, b1, b1])
        assert v2.empty and v2.reason == "SpChar2FixedVector"
        assert v2.witnesses["sum_e"] == 8

    def test_quadratic_pair(self):
        g = GroupSpec("Sp", 6, 3)
        c = unipotent(partition=(2, 2, 2))
        v = decide(g, [c, c])
        assert v.empty and v.reason == "QuadraticPair"

    def test_sl2_order2_pair(self):
        g = GroupSpec("SL", 2, 0)
        c = lampair(1)
        v = decide(g, [c, c])
        assert v.empty and v.reason == "FamilyTheoremCase" and v.case_id == "sl2"

    def test_generic_nonempty(self):
        g = GroupSpec("SL", 5, 0)
        reg = semisimple(free=[(f"l{i}", 1) for i in range(5)])
        v = decide(g, [reg, reg])
        assert not v.empty and v.reason == "Generic"


class TestFamilyCases:
    def test_sp6_exception_both_partners(self):
        g = GroupSpec("Sp", 6, 3)
        mi = semisimple(ones=4, minus_ones=2, order=2)
        for partner in (unipotent(partition=(3, 3)), semisimple(ones=2, pairs=[2])):
            v = decide(g, [mi, partner])
            assert v.empty and v.case_id == "sp6odd-ii"
            # order of the tuple must not matter
            assert decide(g, [partner, mi]).case_id == "sp6odd-ii"

    def test_sp8_exception(self):
        g = GroupSpec("Sp", 8, 3)
        mi = semisimple(ones=4, minus_ones=4, order=2)
        for partner in (
            semisimple(ones=4, pairs=[2]),
            semisimple(ones=4, pairs=[1, 1]),
            unipotent(partition=(3, 3, 1, 1)),
        ):
            v = decide(g, [mi, partner])
            assert v.empty and v.case_id == "spodd-ii"

    def test_minus_twist_matching(self):
        # (-I2, I4) and (I2, -I4) label the same projective pair
        g = GroupSpec("Sp", 6, 3)
        mi_twisted = semisimple(ones=2, minus_ones=4, order=2)
        v = decide(g, [mi_twisted, unipotent(partition=(3, 3))])
        assert v.empty and v.case_id == "sp6odd-ii"

    def test_so_odd_semisimple_not_twisted(self):
        # the SO_{2m+1} r=2 row pairs (J2^m, J1) with (I1, lam I_m, ...) only
        g = GroupSpec("SO", 13, 3)
        u = unipotent(partition=(2,) * 6 + (1,))
        good = semisimple(ones=1, pairs=[6])
        v = decide(g, [u, good])
        assert v.empty and v.reason == "TableRow" and v.case_id == "SO13-r2"

    def test_sp4_char2_cases(self):
        g = GroupSpec("Sp", 4, 2)
        a2 = unipotent(decoration=[{"W": 2, "mult": 1}], order=2)
        c2 = unipotent(decoration=[{"V": 2, "mult": 2}], order=2)
        v3 = decide(g, [a2, a2, c2])
        assert v3.empty and v3.reason == "TableRow" and v3.case_id == "Sp4-r3"
        v4 = decide(g, [a2, a2, a2, a2])
        assert v4.empty and v4.reason == "TableRow" and v4.case_id == "Sp4-r4"


class TestSO6Route:
    def test_quadratic_on_natural_module(self):
        g = GroupSpec("SO", 6, 0)
        # (a I3, b): pairwise products a^2 (x3) and ab (x3), so the class is
        # quadratic on the 6-dimensional module with d = 3
        c = semisimple(free=[("a", 3), ("b", 1)])
        v = decide(g, [c, c])
        assert v.empty and v.reason == "QuadraticPair" and v.case_id == "so6"
        assert v.witnesses["sum_d"] == 6

    def test_dim_obstruction_on_natural_module(self):
        g = GroupSpec("SO", 6, 0)
        # (lam I2, lam^-1 I2), lam^2 = -1: d = 4 on V, 4 + 4 > 6
        c = lampair(2)
        v = decide(g, [c, c])
        assert v.empty and v.reason == "DimObstruction"

    def test_companion_obstruction(self):
        g = GroupSpec("SO", 6, 0)
        # mixed pair passing the V rules but with d = 3 + 2 > 4 on the
        # companion 4-dimensional module
        s = semisimple(free=[("a", 3), ("b", 1)])
        u = unipotent(partition=(3, 1))
        v = decide(g, [s, u])
        assert v.empty and v.reason == "FamilyTheoremCase" and v.case_id == "so6"
        assert v.witnesses["d_on_W"] == [3, 2]

    def test_generic_pair(self):
        g = GroupSpec("SO", 6, 0)
        c = semisimple(free=[("a", 1), ("b", 1), ("c", 1), ("d", 1)])
        v = decide(g, [c, c])
        assert not v.empty

    def test_transfer_profile(self):
        c = validate_class(
            GroupSpec("SL", 4, 0), semisimple(free=[("a", 2), ("b", 2)])
        )
        pr = so6_transfer(c)
        assert pr.d == 4  # the product a*b appears with multiplicity 4


class TestSpin8:
    def test_catalog_profile(self):
        g = GroupSpec("Spin8", 8, 0)
        c = validate_class(g, unipotent(partition=(2, 2, 2, 2)))
        assert spin8_profile(c) == (4, 6, 4)

    def test_triality_obstruction_on_other_module(self):
        g = GroupSpec("Spin8", 8, 0)
        c = unipotent(partition=(2, 2, 2, 2))
        # 6 + 6 > 8 on the second module even though 4 + 4 <= 8 on the first
        v = decide(g, [c, c])
        assert v.empty and v.reason == "DimObstruction" and v.case_id == "module-3"

    def test_missing_profile(self):
        g = GroupSpec("Spin8", 8, 0)
        c = semisimple(ones=2, pairs=[2, 1])
        with pytest.raises(MissingSpin8Profile):
            decide(g, [c, c])

    def test_explicit_profiles_override(self):
        g = GroupSpec("Spin8", 8, 0)
        c = semisimple(ones=2, pairs=[2, 1])
        v = decide(g, [c, c, c], spin8_profiles=[(2, 2, 2)] * 3)
        assert not v.empty

    def test_first_module_obstruction(self):
        g = GroupSpec("Spin8", 8, 3)
        c = unipotent(partition=(3, 1, 1, 1, 1, 1))
        # profile (6,4,4): 6 + 6 > 8 already on the first module
        v = decide(g, [c, c])
        assert v.empty and v.reason == "DimObstruction" and v.case_id == "module-1"

    def test_profile_boundary_pair_is_not_obstructed(self):
        g = GroupSpec("Spin8", 8, 3)
        c = unipotent(partition=(3, 3, 1, 1))
        # profile (4,4,4): sums exactly 8 on every module, and the class is
        # not quadratic, so the pair survives to Generic
        v = decide(g, [c, c])
        assert not v.empty

    def test_spin8_involutions_quadratic_pair(self):
        g = GroupSpec("Spin8", 8, 0)
        c = semisimple(ones=4, minus_ones=4, order=2)
        v = decide(g, [c, c])
        assert v.empty and v.reason == "QuadraticPair" and v.case_id == "so8"


class TestScottBound:
    def test_so11_anchor(self):
        g = GroupSpec("SO", 11, 0)
        u = unipotent(partition=(2, 2, 2, 2, 2, 1))
        s = semisimple(ones=1, pairs=[5])
        holds, lhs, rhs = scott_lower_bound(g, [u, s])
        assert (holds, lhs, rhs) == (False, 55, 60)

    def test_dimension_check_still_applies(self):
        g = GroupSpec("SO", 11, 0)
        with pytest.raises(SchemaError):
            scott_lower_bound(g, [unipotent(partition=(2, 2, 1))])

    def test_bad_characteristic(self):
        g = GroupSpec("Sp", 4, 2)
        with pytest.raises(BadCharacteristic):
            scott_lower_bound(g, [unipotent(decoration=[{"W": 2, "mult": 1}], order=2)])

    def test_sl_center_term(self):
        g = GroupSpec("SL", 3, 3)
        u = unipotent(partition=(2, 1))
        holds, lhs, rhs = scott_lower_bound(g, [u] * 3)
        assert rhs == 8 + 2 - 1
        assert holds and lhs == 12


class TestMinGenerators:
    def test_sp4_minus_involution(self):
        assert min_generators(SP4, MI22) == 5

    def test_sl5_regular_semisimple(self):
        g = GroupSpec("SL", 5, 0)
        reg = semisimple(free=[(f"l{i}", 1) for i in range(5)])
        assert min_generators(g, reg) == 2

    def test_sp6_char2_transvection(self):
        g = GroupSpec("Sp", 6, 2)
        b1 = unipotent(decoration=[{"V": 2, "mult": 1}, {"W": 1, "mult": 2}], order=2)
        assert min_generators(g, b1) == 7
