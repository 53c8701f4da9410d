"""Unit tests for generically-free thresholds, shape enumeration and c(G)."""

from fractions import Fraction

import pytest

from topogen.algebra_core import GroupSpec
from topogen.errors import BoundExceeded, UnsupportedGroup
from topogen.stabilizers import (
    c_value,
    d_value,
    dprime_value,
    enumerate_class_shapes,
    generically_free,
)


class TestThresholds:
    def test_sl2_row(self):
        assert d_value(GroupSpec("SL", 2, 0)) == 6
        assert dprime_value(GroupSpec("SL", 2, 0)) == 9

    def test_sl_general(self):
        assert d_value(GroupSpec("SL", 4, 0)) == Fraction(9, 4) * 16

    def test_sp_correction_terms(self):
        assert d_value(GroupSpec("Sp", 4, 0)) == Fraction(9, 8) * 16 + 2
        assert d_value(GroupSpec("Sp", 6, 2)) == Fraction(9, 8) * 36 + 2
        assert d_value(GroupSpec("Sp", 6, 3)) == Fraction(9, 8) * 36
        assert dprime_value(GroupSpec("Sp", 6, 3)) == Fraction(3, 2) * 36

    def test_orthogonal_rows(self):
        assert d_value(GroupSpec("SO", 9, 3)) == Fraction(9, 8) * 81
        assert dprime_value(GroupSpec("SO", 9, 3)) == 2 * 64
        assert d_value(GroupSpec("Spin8", 8, 0)) == Fraction(9, 8) * 64

    def test_exceptional_lookup(self):
        assert d_value("E8") == 720
        assert dprime_value("G2") == 48
        with pytest.raises(UnsupportedGroup):
            d_value("E9")

    def test_small_orthogonal_untabulated(self):
        with pytest.raises(UnsupportedGroup):
            d_value(GroupSpec("SO", 5, 3))


class TestGenericallyFree:
    def test_strict_inequality(self):
        g = GroupSpec("SL", 2, 0)
        assert not generically_free(g, 6, 0)  # 6 is not > 6
        assert generically_free(g, 7, 0)
        assert not generically_free(g, 10, 4)

    def test_fixed_space_sanity(self):
        with pytest.raises(UnsupportedGroup):
            generically_free("E8", 10, 11)


class TestShapeEnumeration:
    def test_bound_exceeded(self):
        with pytest.raises(BoundExceeded):
            enumerate_class_shapes(GroupSpec("SL", 14, 0))

    def test_constraints_filter(self):
        g = GroupSpec("Sp", 4, 0)
        unip = enumerate_class_shapes(g, constraints={"kind": "unipotent"})
        assert all(c.kind == "unipotent" for c in unip)
        invols = enumerate_class_shapes(g, constraints={"kind": "semisimple", "order": 2})
        assert all(c.kind == "semisimple" for c in invols)
        assert len(invols) >= 2  # (-I2, I2) and the lam-pair at least

    def test_char2_decorated_involutions(self):
        g = GroupSpec("Sp", 6, 2)
        unip = enumerate_class_shapes(g, constraints={"kind": "unipotent"})
        labels = sorted(c.unip.as_type for c in unip)
        # a1..a?, b1, b2, c... : all types occur
        assert "a" in labels and "b" in labels and "c" in labels
        assert all(max(c.unip.partition) == 2 for c in unip)

    def test_no_duplicates(self):
        g = GroupSpec("SO", 9, 3)
        shapes = enumerate_class_shapes(g)
        reprs = [repr(c) for c in shapes]
        assert len(reprs) == len(set(reprs))


class TestCValue:
    def test_sp4_odd(self):
        cv = c_value(GroupSpec("Sp", 4, 0))
        assert cv.c == 20
        assert cv.r == 5
        pat = cv.witness.eigen
        assert (pat.mult_one, pat.mult_minus_one) in ((2, 2),)

    def test_sp4_char2(self):
        cv = c_value(GroupSpec("Sp", 4, 2))
        assert cv.c == 20

    def test_spin8(self):
        cv = c_value(GroupSpec("Spin8", 8, 0))
        assert cv.c == 48
        assert cv.r == 3
        assert cv.skipped  # some shapes have no catalogued dimension data
