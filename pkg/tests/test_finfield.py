"""Unit tests for the finite-field verification layer."""

import pytest

from topogen import finfield
from topogen.algebra_core import GroupSpec, semisimple, unipotent, validate_class
from topogen.errors import (
    NonSplit,
    SchemaError,
    Uninstantiable,
)
from topogen.finfield import (
    Field,
    GFMatrix,
    centralizer_lie_dim,
    fixed_space_dim,
    group_closure,
    group_order,
    induced_matrix,
    invariant_subspace_count,
    jordan_type,
    kron,
    matrix_from_class,
    projective_order,
    standard_generators,
    unipotent_matrix,
)


class TestField:
    def test_prime_field(self):
        F = Field(5)
        assert F.mul(3, 4) == 2
        assert F.inv(2) == 3
        assert F.element_order(2) == 4

    def test_extension_field(self):
        F = Field(9)
        assert len(F.elements()) == 9
        # multiplicative group is cyclic of order 8
        orders = {F.element_order(a) for a in F.elements() if a != F.zero}
        assert max(orders) == 8

    def test_element_of_order(self):
        F = Field(7)
        a = F.element_of_order(3)
        assert F.element_order(a) == 3
        assert F.element_of_order(5) is None  # 5 does not divide 6

    def test_non_prime_power_rejected(self):
        with pytest.raises(SchemaError):
            Field(6)


class TestJordanType:
    def test_diagonalizable(self):
        m = GFMatrix(5, ((2, 0), (0, 3)))
        jt = jordan_type(m)
        assert jt == {2: (1,), 3: (1,)}

    def test_nilpotent_blocks(self):
        F = finfield._field(5)
        m = GFMatrix(
            5, finfield._block_diag(F, [finfield._jordan_block(F, 3, F.one), finfield._jordan_block(F, 1, F.one)])
        )
        assert jordan_type(m) == {1: (3, 1)}

    def test_nonsplit_detected(self):
        # x^2 + 1 is irreducible over GF(3)
        m = GFMatrix(3, ((0, 2), (1, 0)))
        with pytest.raises(NonSplit):
            jordan_type(m)

    def test_restricted_eigenvalue_scan_skips_nonsplit(self):
        F = finfield._field(3)
        m = GFMatrix(3, ((0, 2), (1, 0)))
        assert jordan_type(m, eigenvalues=[F.one]) == {}

    def test_fixed_space(self):
        F = finfield._field(7)
        m = GFMatrix(7, finfield._jordan_block(F, 4, F.one))
        assert fixed_space_dim(m) == 1


class TestInducedMatrices:
    def test_wedge2_of_j5(self):
        F = finfield._field(7)
        m = GFMatrix(7, finfield._jordan_block(F, 5, F.one))
        w = induced_matrix(m, "wedge2")
        assert w.n == 10
        assert len(jordan_type(w, eigenvalues=[F.one])[F.one]) == 2

    def test_sym2_of_j4_char2(self):
        F = finfield._field(2)
        m = GFMatrix(2, finfield._jordan_block(F, 4, F.one))
        s = induced_matrix(m, "sym2")
        assert len(jordan_type(s, eigenvalues=[F.one])[F.one]) == 3

    def test_kron_of_jordan_blocks(self):
        F = finfield._field(3)
        a = GFMatrix(3, finfield._jordan_block(F, 2, F.one))
        t = kron(a, a)
        assert len(jordan_type(t, eigenvalues=[F.one])[F.one]) == 2


class TestMatrixFromClass:
    def test_unipotent_symplectic(self):
        g = GroupSpec("Sp", 4, 3)
        c = validate_class(g, unipotent(partition=(2, 1, 1)))
        m = matrix_from_class(g, c, 3)
        assert m.form_kind == "symplectic"
        assert jordan_type(m) == {1: (2, 1, 1)}

    def test_semisimple_involution(self):
        g = GroupSpec("Sp", 4, 0)
        c = validate_class(g, semisimple(ones=2, minus_ones=2, order=2))
        m = matrix_from_class(g, c, 5)
        jt = jordan_type(m)
        assert sorted(sum(v) for v in jt.values()) == [2, 2]

    def test_order_label_needs_root_of_unity(self):
        g = GroupSpec("Sp", 4, 0)
        c = validate_class(
            g, semisimple(pairs=[("a", 2)], relations={"a": "order:5"}, order=5)
        )
        with pytest.raises(Uninstantiable):
            matrix_from_class(g, c, 3)  # 5 does not divide 3 - 1 or 3 + 1
        m = matrix_from_class(g, c, 11)
        assert m.form_kind == "symplectic"

    def test_quadratic_form_at_char2(self):
        g = GroupSpec("SO", 10, 2)
        c = validate_class(
            g,
            unipotent(
                decoration=[{"W": 2, "mult": 2}, {"W": 1, "mult": 1}], order=2
            ),
        )
        m = matrix_from_class(g, c, 2)
        assert m.form_kind == "quadratic"

    def test_wrong_characteristic_rejected(self):
        g = GroupSpec("Sp", 4, 3)
        c = validate_class(g, unipotent(partition=(2, 2)))
        with pytest.raises(Uninstantiable):
            matrix_from_class(g, c, 5)


class TestCentralizers:
    def test_transvection_in_sp4(self):
        g = GroupSpec("Sp", 4, 3)
        c = validate_class(g, unipotent(partition=(2, 1, 1)))
        m = matrix_from_class(g, c, 3)
        assert centralizer_lie_dim(g, m) == 10 - 4

    def test_so7_regular_unipotent(self):
        g = GroupSpec("SO", 7, 7)
        c = validate_class(g, unipotent(partition=(7,), order=7))
        m = matrix_from_class(g, c, 7)
        assert centralizer_lie_dim(g, m) == 3


class TestGroupOrders:
    def test_order_polynomials(self):
        assert group_order("SL", 2, 5) == 120
        assert group_order("Sp", 4, 3) == 51840
        assert group_order("SO", 5, 3) == 51840  # B2 and C2 share an order
        # D3: q^6 (q^3 - 1)(q^2 - 1)(q^4 - 1)
        assert group_order("SO", 6, 3) == 3**6 * 26 * 8 * 80

    def test_projective_orders(self):
        assert projective_order("SL", 2, 5) == 60
        assert projective_order("SL", 2, 9) == 360
        assert projective_order("Sp", 4, 3) == 25920

    def test_closure_matches_polynomial(self):
        gens = standard_generators("SL", 2, 5)
        size, truncated = group_closure(gens, cap=10**4)
        assert (size, truncated) == (120, False)

    def test_closure_cap(self):
        gens = standard_generators("SL", 2, 7)
        size, truncated = group_closure(gens, cap=10)
        assert truncated and size >= 10


class TestInvariantSubspaceCount:
    def test_identity_line_count(self):
        F = finfield._field(3)
        m = GFMatrix(3, finfield._identity(F, 3))
        assert invariant_subspace_count(m, 1, "any") == (3**3 - 1) // 2

    def test_regular_unipotent_unique_line(self):
        F = finfield._field(3)
        m = GFMatrix(3, finfield._jordan_block(F, 3, F.one))
        assert invariant_subspace_count(m, 1, "any") == 1

    def test_singular_lines_for_so5_element(self):
        m = unipotent_matrix((2, 2, 1), 3, "symmetric")
        count = invariant_subspace_count(m, 1, "totally_singular")
        assert count >= 1
