from fractions import Fraction

import pytest

from freeprod.bounds import (
    GROWTH_KINDS,
    Classification,
    GrowthClass,
    ManifoldDescriptor,
    MetricParams,
    Summand,
    as_fraction,
    classify_connected_sum,
    classify_three_manifold,
    exponential_lower_bound,
    polynomial_lower_bound,
)
from freeprod.growth import count_conjugacy_classes, growth_rate_estimate


class TestFractionCoercion:
    def test_forms(self):
        assert as_fraction("3/4") == Fraction(3, 4)
        assert as_fraction("0.25") == Fraction(1, 4)
        assert as_fraction(0.5) == Fraction(1, 2)
        assert as_fraction(7) == 7
        assert as_fraction(Fraction(2, 3)) == Fraction(2, 3)

    def test_rejections(self):
        with pytest.raises(ValueError):
            as_fraction("sqrt2")
        with pytest.raises(ValueError):
            as_fraction(True)
        with pytest.raises(ValueError):
            as_fraction(None)
        with pytest.raises(ValueError):
            as_fraction(0, positive=True)
        with pytest.raises(ValueError):
            as_fraction("-1/2", positive=True)


class TestMetricParams:
    def test_coerces_inputs(self):
        params = MetricParams(L="3/2", L1=0.5)
        assert params.L == Fraction(3, 2)
        assert params.L1 == Fraction(1, 2)

    def test_ordering_constraint(self):
        MetricParams(L=1, L1=1)
        with pytest.raises(ValueError):
            MetricParams(L=1, L1=2)
        with pytest.raises(ValueError):
            MetricParams(L=0, L1=0)
        with pytest.raises(ValueError):
            MetricParams(L=1, L1=-1)


class TestExponentialBound:
    def test_first_admissible_scale(self):
        bound = exponential_lower_bound(MetricParams(L=1, L1=1), 3)
        assert bound.applicable
        assert bound.r == 1
        assert bound.value == Fraction(2, 3)

    def test_below_threshold(self):
        bound = exponential_lower_bound(MetricParams(L=1, L1=1), "29/10")
        assert not bound.applicable
        assert bound.r == 0
        assert bound.value == 0

    def test_exact_value_at_t30(self):
        bound = exponential_lower_bound(MetricParams(L=1, L1=1), 30)
        assert bound.r == 10
        assert bound.value == Fraction(1024, 300)
        assert bound.value == Fraction(256, 75)

    def test_exact_value_general_params(self):
        bound = exponential_lower_bound(MetricParams(L=2, L1=1), 30)
        assert bound.r == 5
        assert bound.value == Fraction(2**5, 3 * 25 * 2)
        big = exponential_lower_bound(MetricParams(L=2, L1=1), 300)
        assert big.r == 50
        assert big.value == Fraction(2**50, 15000)

    def test_scales_linearly_in_l1(self):
        lo = exponential_lower_bound(MetricParams(L=4, L1=1), 100)
        hi = exponential_lower_bound(MetricParams(L=4, L1=3), 100)
        assert hi.value == 3 * lo.value
        assert hi.r == lo.r

    def test_eventually_monotone(self):
        params = MetricParams(L=1, L1=1)
        values = [exponential_lower_bound(params, t).value for t in range(9, 60, 3)]
        for prev, cur in zip(values, values[1:]):
            assert cur >= prev

    def test_rejects_bad_t(self):
        params = MetricParams(L=1, L1=1)
        with pytest.raises(ValueError):
            exponential_lower_bound(params, 0)
        with pytest.raises(ValueError):
            exponential_lower_bound(params, "-3")


class TestPolynomialBound:
    def test_exact_value(self):
        assert polynomial_lower_bound(2, 4, 3, 10) == 75
        assert polynomial_lower_bound(3, 1, "1/2", "2/3") == Fraction(1, 2) * Fraction(8, 27)

    def test_validation(self):
        with pytest.raises(ValueError):
            polynomial_lower_bound(0, 1, 1, 1)
        with pytest.raises(ValueError):
            polynomial_lower_bound(1, 0, 1, 1)
        with pytest.raises(ValueError):
            polynomial_lower_bound(1, 1, 0, 1)
        with pytest.raises(ValueError):
            polynomial_lower_bound(1, 1, 1, 0)
        with pytest.raises(ValueError):
            polynomial_lower_bound(True, 1, 1, 1)


class TestGrowthClass:
    def test_kinds_and_degree_rules(self):
        for kind in GROWTH_KINDS:
            if kind == "polynomial_at_least":
                GrowthClass(kind, degree=2)
                with pytest.raises(ValueError):
                    GrowthClass(kind)
            else:
                GrowthClass(kind)
                with pytest.raises(ValueError):
                    GrowthClass(kind, degree=2)
        with pytest.raises(ValueError):
            GrowthClass("quadratic")

    def test_descriptions(self):
        assert GrowthClass("exponential").description == "liminf log N(t) / t > 0"
        assert GrowthClass("prime_like").description == "liminf N(t) * log t / t > 0"
        assert GrowthClass("polynomial_at_least", degree=4).description == (
            "liminf N(t) / t^4 > 0"
        )
        assert "every r >= 1" in GrowthClass("all_polynomial").description
        for kind in GROWTH_KINDS:
            cls = GrowthClass(kind, degree=2 if kind == "polynomial_at_least" else None)
            assert cls.description


class TestSummandValidation:
    def test_valid_forms(self):
        Summand("trivial")
        Summand("trivial", order=1)
        Summand("z2", order=2)
        Summand("finite_other", order=60)
        Summand("solvable_infinite", b1=1)
        Summand("infinite_other", b1=7)

    def test_rejections(self):
        with pytest.raises(ValueError):
            Summand("cyclic")
        with pytest.raises(ValueError):
            Summand("finite_other")  # needs an order
        with pytest.raises(ValueError):
            Summand("finite_other", order=2)  # that class is z2
        with pytest.raises(ValueError):
            Summand("z2", order=3)
        with pytest.raises(ValueError):
            Summand("trivial", order=5)
        with pytest.raises(ValueError):
            Summand("infinite_other", order=8)
        with pytest.raises(ValueError):
            Summand("z2", b1=1)
        with pytest.raises(ValueError):
            Summand("infinite_other", b1=-1)

    def test_descriptor_validation(self):
        desc = ManifoldDescriptor(summands=[Summand("z2"), Summand("z2")])
        assert isinstance(desc.summands, tuple)
        with pytest.raises(ValueError):
            ManifoldDescriptor(summands=())
        with pytest.raises(ValueError):
            ManifoldDescriptor(summands=(Summand("z2"),), dimension=4)


def _orientable(*summands) -> ManifoldDescriptor:
    return ManifoldDescriptor(summands=summands, orientable=True)


class TestThreeManifoldClassifier:
    def test_two_z2_summands(self):
        result = classify_three_manifold(_orientable(Summand("z2"), Summand("z2")))
        assert result.growth == GrowthClass("prime_like")
        assert result.rule == "two-z2-summands-prime-like"

    def test_trivial_summands_are_ignored(self):
        result = classify_three_manifold(
            _orientable(Summand("z2"), Summand("trivial"), Summand("z2"))
        )
        assert result.rule == "two-z2-summands-prime-like"

    def test_three_z2_summands_exponential(self):
        result = classify_three_manifold(
            _orientable(Summand("z2"), Summand("z2"), Summand("z2"))
        )
        assert result.growth == GrowthClass("exponential")
        assert result.rule == "multiple-summands-exponential"

    def test_mixed_orders_exponential(self):
        result = classify_three_manifold(
            _orientable(Summand("z2"), Summand("finite_other", order=3))
        )
        assert result.growth == GrowthClass("exponential")
        result = classify_three_manifold(
            _orientable(Summand("finite_other", order=5), Summand("infinite_other"))
        )
        assert result.growth == GrowthClass("exponential")

    def test_prime_infinite_nonsolvable(self):
        result = classify_three_manifold(_orientable(Summand("infinite_other", b1=2)))
        assert result.growth == GrowthClass("all_polynomial")
        assert result.rule == "prime-infinite-nonsolvable-polynomial"

    def test_prime_infinite_solvable(self):
        result = classify_three_manifold(_orientable(Summand("solvable_infinite")))
        assert result.growth == GrowthClass("prime_like")
        assert result.rule == "prime-infinite-solvable-prime-like"

    @pytest.mark.parametrize(
        "summand",
        [Summand("trivial"), Summand("z2"), Summand("finite_other", order=120)],
    )
    def test_finite_groups_generic_only(self, summand):
        result = classify_three_manifold(_orientable(summand))
        assert result.growth == GrowthClass("generic_only")
        assert result.rule == "finite-fundamental-group-generic-only"

    def test_nonorientable_infinite_uses_double_cover(self):
        for summands in (
            (Summand("infinite_other"),),
            (Summand("z2"), Summand("z2")),
            (Summand("z2"), Summand("finite_other", order=7)),
            (Summand("solvable_infinite"),),
        ):
            result = classify_three_manifold(
                ManifoldDescriptor(summands=summands, orientable=False)
            )
            assert result.growth == GrowthClass("prime_like")
            assert result.rule == "nonorientable-double-cover-prime-like"

    def test_nonorientable_finite_generic_only(self):
        for summands in ((Summand("z2"),), (Summand("trivial"),)):
            result = classify_three_manifold(
                ManifoldDescriptor(summands=summands, orientable=False)
            )
            assert result.growth == GrowthClass("generic_only")


class TestConnectedSumClassifier:
    def test_two_z2_sides(self):
        result = classify_connected_sum("z2", 0, "z2")
        assert result.growth == GrowthClass("prime_like")
        assert result.rule == "two-z2-sides-prime-like"

    def test_nontrivial_sides_exponential(self):
        for args in (("z2", 0, "finite_other"), ("infinite_other", 3, "z2"),
                     ("finite_other", 0, "solvable_infinite")):
            result = classify_connected_sum(*args)
            assert result.growth == GrowthClass("exponential")
            assert result.rule == "nontrivial-sides-exponential"

    def test_positive_betti_prime_like(self):
        result = classify_connected_sum("infinite_other", 2, "trivial")
        assert result.growth == GrowthClass("prime_like")
        assert result.rule == "positive-first-betti-prime-like"

    def test_finite_side_against_simply_connected(self):
        for args in (("z2", 0, "trivial"), ("finite_other", 0, "trivial"),
                     ("trivial", 0, "z2"), ("trivial", 0, "finite_other")):
            result = classify_connected_sum(*args)
            assert result.growth == GrowthClass("infinitely_many")
            assert result.rule == "finite-pi1-simply-connected-side"

    def test_unresolved_configurations(self):
        result = classify_connected_sum("infinite_other", 0, "trivial")
        assert result.growth == GrowthClass("unknown")
        assert result.rule == "infinite-zero-betti-unresolved"
        result = classify_connected_sum("trivial", 0, "solvable_infinite")
        assert result.growth == GrowthClass("unknown")
        assert result.rule == "missing-betti-unresolved"

    def test_both_sides_simply_connected(self):
        result = classify_connected_sum("trivial", 0, "trivial")
        assert result.growth == GrowthClass("infinitely_many")
        assert result.rule == "simply-connected-sides-infinitely-many"

    def test_sphere_side(self):
        result = classify_connected_sum("infinite_other", 3, m2_is_sphere=True)
        assert result.growth == GrowthClass("polynomial_at_least", degree=3)
        assert result.rule == "sphere-summand-betti-polynomial"
        for args in (("infinite_other", 1), ("solvable_infinite", 0), ("z2", 0)):
            result = classify_connected_sum(*args, m2_is_sphere=True)
            assert result.growth == GrowthClass("unknown")
            assert result.rule == "sphere-summand-unresolved"

    def test_validation(self):
        with pytest.raises(ValueError):
            classify_connected_sum("cyclic")
        with pytest.raises(ValueError):
            classify_connected_sum("z2", 0, "lens")
        with pytest.raises(ValueError):
            classify_connected_sum("z2", -1)
        with pytest.raises(ValueError):
            classify_connected_sum("z2", 1)  # finite group, positive betti
        with pytest.raises(ValueError):
            classify_connected_sum("trivial", 0, m2_is_sphere=True)
        with pytest.raises(ValueError):
            classify_connected_sum("z2", 0, "z2", m2_is_sphere=True)

    def test_every_valid_input_is_classified(self):
        from freeprod.bounds import PI1_CLASSES

        seen_rules = set()
        for pi1_m1 in PI1_CLASSES:
            for b1 in (0, 1, 2):
                if b1 > 0 and pi1_m1 in ("trivial", "z2", "finite_other"):
                    continue
                for pi1_m2 in PI1_CLASSES:
                    result = classify_connected_sum(pi1_m1, b1, pi1_m2)
                    assert isinstance(result, Classification)
                    assert result.growth.kind in GROWTH_KINDS
                    assert result.rule and result.statement
                    seen_rules.add(result.rule)
        assert len(seen_rules) >= 6


class TestClassifierGrowthConsistency:
    # classifier verdicts should match the measured conjugacy growth of the
    # corresponding free products
    def test_exponential_verdict_matches_class_growth(self, z2z3):
        verdict = classify_three_manifold(
            _orientable(Summand("z2"), Summand("finite_other", order=3))
        )
        assert verdict.growth == GrowthClass("exponential")
        est = growth_rate_estimate(count_conjugacy_classes(z2z3, 12))
        assert est.lambda_classes > 1.1

    def test_prime_like_verdict_matches_linear_class_growth(self, z2z2):
        verdict = classify_three_manifold(_orientable(Summand("z2"), Summand("z2")))
        assert verdict.growth == GrowthClass("prime_like")
        est = growth_rate_estimate(count_conjugacy_classes(z2z2, 12))
        assert est.lambda_classes < 1.1
