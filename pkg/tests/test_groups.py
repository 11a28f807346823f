from fractions import Fraction

import pytest

from sievelab.groups import (
    GroupSpec,
    charpoly_class_density,
    class_table,
    closure,
    gl2_elements,
    group_order,
    jordan_check,
    jordan_check_elements,
    mat_det,
    mat_inv,
    mat_mul,
    pm1_lifting_check,
    property1_check,
    similitude_factor,
    sl2_elements,
    sp4_elements,
    symplectic_J,
    transvection,
)


class TestOrders:
    def test_formulas(self):
        assert group_order(GroupSpec(1, 5, "sp")) == 120
        assert group_order(GroupSpec(1, 3, "gsp")) == 48
        assert group_order(GroupSpec(2, 3, "sp")) == 51840
        assert group_order(GroupSpec(2, 3, "gsp")) == 103680
        assert group_order(GroupSpec(1, 3, "gsp", pm1_quotient=True)) == 24

    def test_brute_enumeration_matches(self):
        for l in (3, 5, 7):
            assert len(gl2_elements(l)) == group_order(GroupSpec(1, l, "gsp"))
            assert len(sl2_elements(l)) == group_order(GroupSpec(1, l, "sp"))

    def test_l2_unsupported(self):
        with pytest.raises(ValueError):
            GroupSpec(1, 2, "gsp")


class TestMatrixOps:
    def test_inverse(self):
        m = ((1, 2), (3, 4))
        assert mat_mul(m, mat_inv(m, 5), 5) == ((1, 0), (0, 1))

    def test_det_4x4(self):
        J = tuple(tuple(v % 7 for v in row) for row in symplectic_J(2))
        assert mat_det(J, 7) == 1

    def test_transvections_are_symplectic(self):
        for v in ((1, 0, 0, 0), (1, 1, 0, 1)):
            T = transvection(v, 5, 2)
            assert similitude_factor(T, 5, 2) == 1


class TestSp4:
    def test_closure_reaches_full_group(self):
        elems = sp4_elements(3)
        assert len(elems) == 51840
        # every element preserves the form with multiplier 1
        import random

        rng = random.Random(7)
        for m in rng.sample(sorted(elems), 25):
            assert similitude_factor(m, 3, 2) == 1


class TestClassTable:
    def test_gl2_class_counts(self):
        for l in (3, 5, 7):
            ct = class_table(GroupSpec(1, l, "gsp"), "brute")
            assert len(ct.entries) == l * l - 1
            assert ct.total == group_order(GroupSpec(1, l, "gsp"))

    def test_sl2_trace_zero(self):
        ct = class_table(GroupSpec(1, 3, "sp"), "charpoly")
        tr0 = sum(v for (tr, _), v in ct.entries.items() if tr == 0)
        assert tr0 == 6

    def test_cap_enforced(self):
        with pytest.raises(ValueError, match="infeasible"):
            class_table(GroupSpec(1, 101, "gsp"), "brute")

    def test_charpoly_totals(self):
        ct = class_table(GroupSpec(2, 3, "gsp"), "charpoly")
        assert ct.total == 103680


class TestDensities:
    def test_sl2_trace_zero_density(self):
        d = charpoly_class_density(GroupSpec(1, 3, "gsp"), 1)
        assert d[0] == Fraction(1, 4)

    def test_trace_two_includes_identity(self):
        d = charpoly_class_density(GroupSpec(1, 3, "gsp"), 1)
        # enumeration oracle over det=1 coset
        count = sum(
            1
            for m in sl2_elements(3)
            if (m[0][0] + m[1][1]) % 3 == 2
        )
        assert d[2] == Fraction(count, 24)

    def test_sums_to_one(self):
        for delta in (1, 2):
            d = charpoly_class_density(GroupSpec(1, 3, "gsp"), delta)
            assert sum(d.values()) == 1
        d = charpoly_class_density(GroupSpec(2, 3, "gsp"), 2)
        assert sum(d.values()) == 1

    def test_nonunit_delta_rejected(self):
        with pytest.raises(ValueError):
            charpoly_class_density(GroupSpec(1, 5, "gsp"), 0)


class TestLemmas:
    def test_property1_g1(self):
        rep = property1_check(1, [3, 5, 7, 11, 13])
        assert rep.passes
        assert rep.beta1 == 4 and rep.beta2 == 2
        assert rep.c1 <= 2 and rep.c2 <= 2

    def test_jordan_on_small_groups(self):
        assert jordan_check(GroupSpec(1, 3, "gsp"))
        assert jordan_check(GroupSpec(1, 3, "sp"))

    def test_jordan_cyclic_c6(self):
        c6 = list(range(6))
        assert jordan_check_elements(c6, lambda a, b: (a + b) % 6, lambda a: (-a) % 6)

    def test_pm1_lifting(self):
        assert pm1_lifting_check(1, 3)
        assert pm1_lifting_check(2, 3)

    def test_pm1_sl2_image_is_proper(self):
        from sievelab.groups import pm1_rep

        image = {pm1_rep(m, 3) for m in sl2_elements(3)}
        full = {pm1_rep(m, 3) for m in gl2_elements(3)}
        assert len(image) < len(full)
