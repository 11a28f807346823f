import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sievelab.heights import (
    DEFAULT_CHART,
    AffinePoint,
    canonicalize,
    count_projective,
    enumerate_affine,
    enumerate_projective,
    height,
    height_affine,
    schanuel_check,
    SCHANUEL_C1,
)
from sievelab.polynomials import Poly


class TestCanonicalize:
    def test_primitive_sign_normalized(self):
        p = canonicalize((-2, 4))
        assert p.coords == (1, -2)

    def test_gcd_removed(self):
        assert canonicalize((6, 9)).coords == (2, 3)

    def test_leading_zero_skipped(self):
        assert canonicalize((0, -3)).coords == (0, 1)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            canonicalize((0, 0))

    @given(
        st.lists(st.integers(-50, 50), min_size=2, max_size=4).filter(lambda v: any(v)),
        st.integers(1, 9),
    )
    def test_scale_invariance(self, coords, k):
        assert canonicalize(coords) == canonicalize([k * c for c in coords])
        assert canonicalize(coords) == canonicalize([-k * c for c in coords])


class TestHeight:
    def test_height_of_fraction(self):
        assert height(canonicalize((3, 2))) == 3
        assert height_affine(AffinePoint((Fraction(2, 3),))) == 3

    def test_integer_height(self):
        assert height_affine(AffinePoint((Fraction(7),))) == 7

    def test_chart_roundtrip(self):
        t = AffinePoint((Fraction(3, 4), Fraction(-1, 2)))
        assert DEFAULT_CHART.from_projective(DEFAULT_CHART.to_projective(t)) == t

    def test_chart_undefined_at_infinity(self):
        p = canonicalize((0, 1))
        with pytest.raises(ValueError, match="chart undefined"):
            DEFAULT_CHART.from_projective(p)


class TestEnumeration:
    def test_small_counts(self):
        # P^1(Q): x=1 gives {0, inf, 1, -1}; x=2 adds {2, -2, 1/2, -1/2}
        assert count_projective(1, 1) == 4
        assert count_projective(1, 2) == 8
        assert count_projective(1, 10) == 128

    def test_lex_order_and_uniqueness(self):
        pts = enumerate_projective(1, 5)
        assert len(set(pts)) == len(pts)
        coords = [p.coords for p in pts]
        assert coords == sorted(coords)

    def test_heights_bounded(self):
        assert all(height(p) <= 7 for p in enumerate_projective(1, 7))

    def test_affine_counts(self):
        # r=1, x=1: {0, 1, -1}
        assert len(enumerate_affine(1, 1)) == 3
        assert len(enumerate_affine(2, 1)) == 9

    def test_affine_bad_locus(self):
        t = Poly.var(1, 0)
        pts = enumerate_affine(1, 2, bad_locus=t * (1 - t))
        vals = {p.coords[0] for p in pts}
        assert Fraction(0) not in vals and Fraction(1) not in vals
        assert len(pts) == 5  # -1, 2, -2, 1/2, -1/2

    def test_zero_bad_locus_rejected(self):
        with pytest.raises(ValueError):
            enumerate_affine(1, 2, bad_locus=Poly.const(1, 0))


class TestSchanuel:
    def test_x_500_within_5_percent(self):
        rep = schanuel_check(1, 500)
        assert rep.count == 304464
        main = SCHANUEL_C1 * 500**2
        assert abs(rep.count / main - 1) <= 0.05

    def test_deviation_normalization(self):
        rep = schanuel_check(1, 100)
        main = SCHANUEL_C1 * 100**2
        assert abs(rep.count - main) <= 10 * 100 * math.log(100)
