import pytest
from hypothesis import given, settings, strategies as st

from artinlab.errors import InputError, VerificationFailure
from artinlab.koszul import build_koszul, homology_profile
from artinlab.series import (
    ONE,
    ONE_PLUS_T,
    PowerSeriesZ,
    RationalSeries,
    codepth3_denominator,
    default_divisibility_window,
    denominator_divisibility_check,
    deformation_divide,
    dress_kramer,
    dress_kramer_module,
    golod_series,
    levin_socle_series,
    poly_mul,
    poly_pow,
    predict,
    quotient_power_prediction,
    series_from_betti,
    stretched_artinian_prediction,
    theorem_I_denominator,
    theorem_II_prediction,
)


class TestExpand:
    def test_geometric(self):
        assert RationalSeries((1,), (1, -1)).expand(4).coefficients == (1, 1, 1, 1, 1)

    def test_one_minus_t_squared(self):
        assert RationalSeries((1,), (1, -2, 1)).expand(4).coefficients == (1, 2, 3, 4, 5)

    def test_fibonacci_like(self):
        # c_{i+1} = 3 c_i - c_{i-1}
        assert RationalSeries((1,), (1, -3, 1)).expand(6).coefficients == (
            1, 3, 8, 21, 55, 144, 377,
        )

    def test_non_unit_constant_rejected(self):
        with pytest.raises(InputError):
            RationalSeries((1,), (2, 1)).expand(3)

    def test_negative_unit_constant(self):
        assert RationalSeries((1,), (-1, 1)).expand(3).coefficients == (-1, -1, -1, -1)


rationals = st.builds(
    lambda num, den: RationalSeries(tuple(num), tuple([1] + den)),
    st.lists(st.integers(-4, 4), min_size=1, max_size=4),
    st.lists(st.integers(-4, 4), max_size=4),
)


@given(rationals, rationals, st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_expand_is_multiplicative(a, b, degree):
    lhs = a.mul(b).expand(degree).coefficients
    rhs = a.expand(degree).mul(b.expand(degree)).coefficients
    assert lhs == rhs


class TestGolodSeries:
    def test_fat_point_collapses(self):
        g = golod_series(2, (1, 3, 2))
        assert g.equals(RationalSeries((1,), (1, -2)))
        assert g.expand(5).coefficients == (1, 2, 4, 8, 16, 32)

    def test_hypersurface(self):
        assert golod_series(1, (1, 1)).equals(RationalSeries((1,), (1, -1)))

    def test_numerator_shape(self):
        g = golod_series(3, (1, 5, 5, 1))
        assert g.numerator == poly_pow(ONE_PLUS_T, 3)
        assert g.denominator == (1, 0, -5, -5, -1)


class TestTheoremIDenominator:
    def test_quadrics_profile(self):
        d = theorem_I_denominator(3, (1, 5, 5, 1))
        assert d.denominator == (1, 0, -5, -5, 0, 1)
        assert d.numerator == poly_pow(ONE_PLUS_T, 3)

    def test_n2_hand_expansion(self):
        d = theorem_I_denominator(2, (1, 2, 1))
        assert d.denominator == (1, 0, -2, 0, 1)  # (1 - t^2)^2

    def test_non_gorenstein_rejected(self):
        with pytest.raises(InputError):
            theorem_I_denominator(3, (1, 3, 4, 2))

    def test_n1_rejected(self):
        with pytest.raises(InputError):
            theorem_I_denominator(1, (1, 1))

    @pytest.mark.parametrize("r", [2, 3, 5, 7])
    def test_coincides_with_codepth3(self, r):
        # P^Q_R = 1 + r t + r t^2 + t^3 forces the identity
        assert theorem_I_denominator(3, (1, r, r, 1)).equals(codepth3_denominator(3, r))


class TestCodepth3:
    def test_r5(self):
        assert codepth3_denominator(3, 5).denominator == (1, 0, -5, -5, 0, 1)

    def test_n4_rejected(self):
        with pytest.raises(InputError):
            codepth3_denominator(4, 5)


class TestTheoremII:
    def test_n2(self):
        s, md = theorem_II_prediction(2)
        assert s.denominator == (1, -2, 1)
        assert s.expand(3).coefficients == (1, 2, 3, 4)
        assert md == poly_mul(poly_pow(ONE_PLUS_T, 2), (1, -2, 1))

    def test_n3(self):
        s, _ = theorem_II_prediction(3)
        assert s.expand(3).coefficients == (1, 3, 8, 21)

    def test_n1(self):
        s, md = theorem_II_prediction(1)
        assert s.denominator == (1, -1)
        assert md == (1, -1)

    def test_n0_rejected(self):
        with pytest.raises(InputError):
            theorem_II_prediction(0)


class TestStretched:
    def test_golod_case(self):
        s, md = stretched_artinian_prediction(2, 2)
        assert s.equals(RationalSeries((1,), (1, -2)))
        assert md == (1, -2)

    def test_gorenstein_case(self):
        s, md = stretched_artinian_prediction(3, 1)
        assert s.denominator == (1, -3, 1)
        assert md == poly_mul(poly_pow(ONE_PLUS_T, 3), (1, -3, 1))

    def test_type_exceeds_edim(self):
        with pytest.raises(InputError):
            stretched_artinian_prediction(2, 3)


class TestDressKramer:
    def test_two_lines(self):
        dk = dress_kramer(RationalSeries((1,), (1, -1)), RationalSeries((1,), (1, -1)))
        assert dk.equals(RationalSeries((1,), (1, -2)))

    def test_identity_element(self):
        p = RationalSeries((1,), (1, -1))
        assert dress_kramer(p, ONE).equals(p)

    def test_mixed(self):
        dk = dress_kramer(RationalSeries((1,), (1, -1)), RationalSeries((1,), (1, -2)))
        assert dk.equals(RationalSeries((1,), (1, -3)))

    @given(rationals, rationals)
    @settings(max_examples=40, deadline=None)
    def test_commutative(self, a, b):
        ca = RationalSeries((1,) + a.numerator[1:], a.denominator)
        cb = RationalSeries((1,) + b.numerator[1:], b.denominator)
        if ca.constant_term != 1 or cb.constant_term != 1:
            return
        assert dress_kramer(ca, cb).equals(dress_kramer(cb, ca))

    def test_associative(self):
        xs = [
            RationalSeries((1,), (1, -1)),
            RationalSeries((1,), (1, -2)),
            RationalSeries((1, 1), (1, -1, -1)),
        ]
        a, b, c = xs
        assert dress_kramer(dress_kramer(a, b), c).equals(dress_kramer(a, dress_kramer(b, c)))

    def test_module_version(self):
        ps_m = RationalSeries((1, 1), (1, -1))
        ps_k = RationalSeries((1,), (1, -1))
        pr_k = RationalSeries((1,), (1, -2))
        out = dress_kramer_module(ps_m, ps_k, pr_k)
        # P^R_M = P^S_M * P^R_k / P^S_k = (1+t)/(1-2t)
        assert out.equals(RationalSeries((1, 1), (1, -2)))

    def test_zero_constant_rejected(self):
        with pytest.raises(InputError):
            dress_kramer(RationalSeries((0, 1), (1,)), ONE)


class TestLevin:
    def test_n2(self):
        out = levin_socle_series(RationalSeries((1,), (1, -2, 1)))
        assert out.equals(RationalSeries((1,), (1, -2)))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_matches_quotient_power(self, n):
        s, _ = theorem_II_prediction(n)
        assert levin_socle_series(s).equals(quotient_power_prediction(n))

    def test_one_fixed(self):
        assert levin_socle_series(ONE).equals(RationalSeries((1,), (1, 0, -1)))
        # formally 1/(1 - t^2) after the reciprocal; as a rational function
        # P/(1 - t^2 P) with P = 1 is 1/(1 - t^2)


class TestDeformationDivide:
    def test_cancellation(self):
        p = RationalSeries(poly_mul((1, 1), (1, 1)), (1, -2))
        assert deformation_divide(p).equals(RationalSeries((1, 1), (1, -2)))

    def test_formal_quotient(self):
        p = RationalSeries((1,), (1, -1))
        assert deformation_divide(p).equals(RationalSeries((1,), (1, 0, -1)))


class TestDivisibilityCheck:
    def test_exact_inverse(self):
        ph = RationalSeries((1,), (1, -2, 1)).expand(10)
        assert denominator_divisibility_check((1, -2, 1), ph, 8) == 0

    def test_absent(self):
        ph = RationalSeries((1,), (1, -2)).expand(10)
        assert denominator_divisibility_check((1, -1), ph, 8) is None

    def test_window_cap(self):
        ph = PowerSeriesZ((1, 1, 1, 0, 0, 0, 0))
        # product with (1,) is nonzero through degree 2
        assert denominator_divisibility_check((1,), ph, 1) is None
        assert denominator_divisibility_check((1,), ph, 2) == 2

    def test_truncation_too_short(self):
        with pytest.raises(InputError):
            denominator_divisibility_check((1, 0, 0, -1), PowerSeriesZ((1, 1)), 3)

    def test_default_window(self):
        assert default_divisibility_window((1, 0, -5, -5, 0, 1), 3, 3) == 11


class TestPredict:
    def test_almost_stretched(self, ring_almost_stretched):
        prof = homology_profile(build_koszul(ring_almost_stretched))
        cls = ring_almost_stretched.classify(prof)
        preds = predict(ring_almost_stretched, cls, prof)
        labels = {p.label for p in preds}
        assert "theorem-II(2)" in labels
        assert "theorem-I" in labels
        assert "codepth-3-ged3" in labels
        for p in preds:
            assert p.series.equals(RationalSeries((1,), (1, -3, 1)))

    def test_quadrics_cross_checked(self, ring_quadrics):
        prof = homology_profile(build_koszul(ring_quadrics))
        cls = ring_quadrics.classify(prof)
        preds = predict(ring_quadrics, cls, prof)
        labels = {p.label for p in preds}
        assert "codepth-3-ged3" in labels and "theorem-I" in labels

    def test_chain_ring(self):
        from artinlab.algebra import from_ideal
        from conftest import P

        R = from_ideal(P, ["x"], ["x^5"])
        preds = predict(R, R.classify())
        assert [p.label for p in preds][:1] == ["theorem-II(1)"]
        assert preds[0].series.equals(RationalSeries((1,), (1, -1)))

    def test_sally_golod_case(self, ring_sally):
        preds = predict(ring_sally, ring_sally.classify())
        assert [p.label for p in preds] == ["stretched-sbr4(d=0)"]
        assert preds[0].series.equals(RationalSeries((1,), (1, -2)))
        assert preds[0].module_denominator == (1, -2)

    def test_fat_point_no_predictions(self, ring_fat_point):
        prof = homology_profile(build_koszul(ring_fat_point))
        assert predict(ring_fat_point, ring_fat_point.classify(prof), prof) == []

    def test_fermat_cubic_only_codepth3(self, ring_fermat_cubic):
        prof = homology_profile(build_koszul(ring_fermat_cubic))
        cls = ring_fermat_cubic.classify(prof)
        preds = predict(ring_fermat_cubic, cls, prof)
        labels = [p.label for p in preds]
        assert labels == ["codepth-3-ged3"]

    def test_conflicting_predictions_raise(self, ring_almost_stretched):
        cls = ring_almost_stretched.classify()
        # corrupt profile: Gorenstein-looking but wrong H_1 feeds a codepth-3
        # denominator that contradicts Theorem II
        with pytest.raises(VerificationFailure):
            predict(ring_almost_stretched, cls, (1, 4, 4, 1))
