"""Value-group arithmetic, ordering and scalar division."""
import pytest

from valcert.errors import InputError, VariantMismatchError
from valcert.group import INF, GroupElement, gv_add, gv_cmp, gv_solve_scalar

Z = GroupElement.of_int
Q = GroupElement.of_fraction
L = GroupElement.of_lex


class TestAdd:
    def test_int_add(self):
        # [TRIVIAL] (2) + (3) = (5)
        assert gv_add(Z(2), Z(3)) == Z(5)

    def test_lex_componentwise(self):
        # [TRIVIAL] (1,0) + (0,5) = (1,5)
        assert gv_add(L(1, 0), L(0, 5)) == L(1, 5)

    def test_infinity_absorbs(self):
        # [TRIVIAL] Infinity + (7) = Infinity
        assert gv_add(INF, Z(7)).is_infinity
        assert gv_add(Z(7), INF).is_infinity

    def test_variant_mismatch(self):
        with pytest.raises(VariantMismatchError):
            gv_add(Z(1), L(1, 0))
        with pytest.raises(VariantMismatchError):
            gv_add(L(1, 0), L(1, 0, 0))


class TestCmp:
    def test_lex_order(self):
        # [TRIVIAL] (1,9) < (2,0) lexicographically
        assert gv_cmp(L(1, 9), L(2, 0)) < 0

    def test_equal(self):
        assert gv_cmp(Z(3), Z(3)) == 0

    def test_finite_below_infinity(self):
        assert gv_cmp(Z(5), INF) < 0
        assert Z(5) < INF

    def test_total_order_ops(self):
        assert Z(1) < Z(2) <= Z(2) < INF
        assert Q("1/2") < Q("2/3")


class TestSolveScalar:
    def test_exact_division(self):
        # [TRIVIAL] 2x = 6 -> x = 3
        assert gv_solve_scalar(2, Z(6)) == Z(3)

    def test_indivisible_in_Z(self):
        # [TRIVIAL] 2x = 5 has no solution in Z
        assert gv_solve_scalar(2, Z(5)) is None

    def test_lex_componentwise(self):
        # [TRIVIAL] 3x = (3,6) -> (1,2)
        assert gv_solve_scalar(3, L(3, 6)) == L(1, 2)

    def test_rationals_always_solvable(self):
        assert gv_solve_scalar(2, Q(5)) == Q("5/2")

    def test_zero_scalar_rejected(self):
        with pytest.raises(InputError):
            gv_solve_scalar(0, Z(1))


class TestJson:
    @pytest.mark.parametrize("x", [Z(-3), Q("7/2"), L(1, -2, 3), INF])
    def test_roundtrip(self, x):
        assert GroupElement.from_json(x.to_json()) == x

    def test_scale(self):
        assert Z(3).scale(2) == Z(6)
        assert L(1, 2).scale(3) == L(3, 6)
        assert INF.scale(5).is_infinity
