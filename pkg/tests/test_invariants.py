"""Unit tests for eigenspace profiles, class dimensions and induced actions."""

import pytest

from topogen.algebra_core import GroupSpec, semisimple, unipotent, validate_class
from topogen.errors import NotApplicable, UnsupportedChar2Class
from topogen.invariants import (
    class_dim,
    eigen_profile,
    grassmannian_fixed_dim,
    induced_block_count,
    is_quadratic,
    sym2_fixed_dim,
    wedge2_fixed_dim,
)


class TestEigenProfile:
    def test_unipotent_profile_counts_blocks(self):
        g = GroupSpec("Sp", 6, 3)
        c = validate_class(g, unipotent(partition=(2, 2, 2)))
        pr = eigen_profile(g, c)
        assert (pr.d, pr.e) == (3, 3)

    def test_semisimple_profile(self):
        g = GroupSpec("Sp", 8, 0)
        c = validate_class(g, semisimple(ones=4, pairs=[2], order=3))
        pr = eigen_profile(g, c)
        assert (pr.d, pr.e) == (4, 4)

    def test_minus_one_eigenspace_can_dominate(self):
        g = GroupSpec("Sp", 8, 0)
        c = validate_class(g, semisimple(ones=2, minus_ones=6, order=2))
        pr = eigen_profile(g, c)
        assert (pr.d, pr.e) == (6, 2)


class TestIsQuadratic:
    def test_unipotent(self):
        g = GroupSpec("Sp", 4, 0)
        assert is_quadratic(validate_class(g, unipotent(partition=(2, 2))))
        g6 = GroupSpec("Sp", 6, 3)
        assert not is_quadratic(validate_class(g6, unipotent(partition=(3, 3))))

    def test_semisimple(self):
        g = GroupSpec("Sp", 4, 0)
        assert is_quadratic(validate_class(g, semisimple(ones=2, minus_ones=2, order=2)))
        assert not is_quadratic(validate_class(g, semisimple(ones=2, pairs=[1])))


class TestClassDim:
    def test_sl_regular_semisimple(self):
        g = GroupSpec("SL", 5, 0)
        c = validate_class(g, semisimple(free=[("a", 1), ("b", 1), ("c", 1), ("d", 1), ("e", 1)]))
        assert class_dim(g, c).dim_class == 20

    def test_sp4_minus_involution(self):
        g = GroupSpec("Sp", 4, 0)
        c = validate_class(g, semisimple(ones=2, minus_ones=2, order=2))
        assert class_dim(g, c).dim_class == 4

    def test_sp_odd_unipotent(self):
        g = GroupSpec("Sp", 6, 3)
        c = validate_class(g, unipotent(partition=(2, 2, 2)))
        # conjugate partition (3,3), no odd parts: (9 + 9 + 0)/2 = 9
        assert class_dim(g, c).dim_centralizer == 9
        assert class_dim(g, c).dim_class == 12

    def test_so_odd_unipotent(self):
        g = GroupSpec("SO", 9, 3)
        c = validate_class(g, unipotent(partition=(3, 3, 3)))
        # conjugate (3,3,3): (9+9+9 - 3)/2 = 12
        assert class_dim(g, c).dim_centralizer == 12
        assert class_dim(g, c).dim_class == 24

    def test_char2_beyond_involutions_unsupported(self):
        g = GroupSpec("Sp", 6, 2)
        c = validate_class(
            g,
            unipotent(
                decoration=[{"V": 4, "mult": 1}, {"W": 1, "mult": 1}], order=None
            ),
        )
        with pytest.raises(UnsupportedChar2Class):
            class_dim(g, c)


class TestInducedBlockCount:
    def test_tensor(self):
        assert induced_block_count("tensor", 4, 7) == 4
        with pytest.raises(NotApplicable):
            induced_block_count("tensor", 4)

    def test_wedge2(self):
        assert induced_block_count("wedge2", 5) == 2
        assert induced_block_count("wedge2", 6) == 3

    def test_sym2_epsilon(self):
        assert induced_block_count("sym2", 4, p=3) == 2
        assert induced_block_count("sym2", 4, p=2) == 3
        assert induced_block_count("sym2", 5, p=2) == 3

    def test_unknown_functor(self):
        with pytest.raises(NotApplicable):
            induced_block_count("cube", 3)


class TestFixedSpaces:
    def test_sym2_fixed_dim_cross_terms(self):
        # S^2(J2 + J2): 1 + 1 + min(2,2) = 4 blocks at odd p
        assert sym2_fixed_dim((2, 2), 3) == 4

    def test_wedge2_upper_tightened(self):
        g = GroupSpec("Sp", 8, 0)
        c = validate_class(g, semisimple(ones=4, minus_ones=4, order=2))
        exact, upper = wedge2_fixed_dim(8, c)
        assert exact == 12
        assert upper == (4 * 7 - 1) // 2  # below d(n-1)/2 when +-1 both occur

    def test_wedge2_unipotent(self):
        g = GroupSpec("Sp", 6, 3)
        c = validate_class(g, unipotent(partition=(3, 3)))
        exact, upper = wedge2_fixed_dim(6, c)
        assert exact == 1 + 1 + 3
        assert exact <= upper


class TestGrassmannianCatalog:
    def test_so9_entries(self):
        g = GroupSpec("SO", 9, 0)
        u = validate_class(g, unipotent(partition=(3, 3, 3)))
        assert grassmannian_fixed_dim(g, u, 4) == 3
        w = validate_class(g, unipotent(partition=(2, 2, 2, 2, 1)))
        assert grassmannian_fixed_dim(g, w, 4) == 6
        s = validate_class(g, semisimple(ones=3, pairs=[3], order=3))
        assert grassmannian_fixed_dim(g, s, 4) == 3

    def test_sp6_lagrangian_levi_path(self):
        g = GroupSpec("Sp", 6, 3)
        c = validate_class(g, unipotent(partition=(2, 2, 1, 1)))
        # doubled Levi class (2,1): S^2 fixed space 1 + 1 + min(2,1) = 3
        assert grassmannian_fixed_dim(g, c, 3) == 3

    def test_outside_catalog_is_none(self):
        g = GroupSpec("SO", 9, 5)
        c = validate_class(g, unipotent(partition=(5, 3, 1), order=5))
        assert grassmannian_fixed_dim(g, c, 4) is None

    def test_non_singular_type_is_none(self):
        g = GroupSpec("SO", 9, 3)
        c = validate_class(g, unipotent(partition=(3, 3, 3)))
        assert grassmannian_fixed_dim(g, c, 4, subspace_type="arbitrary") is None
