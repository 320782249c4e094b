import random

import pytest

from freeprod.factors import FactorGroupError
from freeprod.normal_forms import IDENTITY, Letter
from freeprod.wordparse import parse_word

from oracles import ball_elements, classes_by_partition, conjugate_by_search, random_element


class TestMultiply:
    def test_seam_cancellation(self, z2z3):
        w = parse_word(z2z3, "a b")
        assert z2z3.multiply(w, parse_word(z2z3, "b^2 a")) == IDENTITY

    def test_seam_consolidation(self, z2z3):
        # b a b * b^2 a b: two full cancellations, then b * b consolidates
        g = parse_word(z2z3, "b a b")
        h = parse_word(z2z3, "b^2 a b")
        assert z2z3.multiply(g, h) == parse_word(z2z3, "b^2")

    def test_identity_is_two_sided(self, z2z3):
        g = parse_word(z2z3, "a b a b^2")
        assert z2z3.multiply(g, IDENTITY) == g
        assert z2z3.multiply(IDENTITY, g) == g

    def test_outputs_are_valid_normal_forms(self, z2z3):
        rng = random.Random(7)
        for _ in range(300):
            g = random_element(z2z3, rng, rng.randint(0, 8))
            h = random_element(z2z3, rng, rng.randint(0, 8))
            z2z3.validate(z2z3.multiply(g, h))

    @pytest.mark.parametrize("fixture_name,samples", [
        ("z2z3", 4000),
        ("zz", 3000),
        ("s3_z2", 3000),
    ])
    def test_associativity_random_triples(self, request, fixture_name, samples):
        product = request.getfixturevalue(fixture_name)
        rng = random.Random(hash(fixture_name) & 0xFFFF)
        for _ in range(samples):
            g = random_element(product, rng, rng.randint(0, 8))
            h = random_element(product, rng, rng.randint(0, 8))
            k = random_element(product, rng, rng.randint(0, 8))
            assert product.multiply(product.multiply(g, h), k) == product.multiply(
                g, product.multiply(h, k)
            )


class TestInvertAndPower:
    def test_invert_reverses_and_inverts(self, z2z3):
        g = parse_word(z2z3, "a b a b^2")
        assert z2z3.invert(g) == parse_word(z2z3, "b a b^2 a")
        assert z2z3.invert(IDENTITY) == IDENTITY

    def test_invert_roundtrip(self, zz):
        rng = random.Random(11)
        for _ in range(200):
            g = random_element(zz, rng, rng.randint(0, 10))
            assert zz.multiply(g, zz.invert(g)) == IDENTITY
            assert zz.invert(zz.invert(g)) == g

    def test_power(self, z2z3):
        t = parse_word(z2z3, "a b")
        assert z2z3.power(t, 0) == IDENTITY
        assert z2z3.power(t, 3) == parse_word(z2z3, "a b a b a b")
        assert z2z3.power(t, -2) == parse_word(z2z3, "b^2 a b^2 a")
        assert z2z3.power(t, -2) == z2z3.invert(z2z3.power(t, 2))

    def test_conjugate(self, z2z3):
        b = parse_word(z2z3, "b")
        a = parse_word(z2z3, "a")
        assert z2z3.conjugate(b, by=a) == parse_word(z2z3, "a b a")


class TestReduction:
    def test_is_cyclically_reduced(self, z2z3):
        assert z2z3.is_cyclically_reduced(parse_word(z2z3, "a b"))
        assert not z2z3.is_cyclically_reduced(parse_word(z2z3, "b a b^2"))
        assert z2z3.is_cyclically_reduced(parse_word(z2z3, "a"))
        assert z2z3.is_cyclically_reduced(IDENTITY)

    def test_is_weakly_reduced(self, z2z3):
        assert z2z3.is_weakly_reduced(parse_word(z2z3, "a b a b"))
        # first letter b equals the inverse of the last letter b^2
        assert not z2z3.is_weakly_reduced(parse_word(z2z3, "b a b^2"))
        assert z2z3.is_weakly_reduced(parse_word(z2z3, "b a b"))
        assert z2z3.is_weakly_reduced(parse_word(z2z3, "b"))

    def test_reduce_strips_inverse_pair(self, z2z3):
        red = z2z3.cyclically_reduce(parse_word(z2z3, "b a b^2"))
        assert red.result == parse_word(z2z3, "a")
        assert red.conjugator == parse_word(z2z3, "b")

    def test_reduce_consolidates(self, z2z3):
        red = z2z3.cyclically_reduce(parse_word(z2z3, "b a b"))
        assert red.result == parse_word(z2z3, "a b^2")
        assert red.conjugator == parse_word(z2z3, "b")

    def test_reduce_leaves_reduced_words(self, z2z3):
        g = parse_word(z2z3, "a b")
        red = z2z3.cyclically_reduce(g)
        assert red.result == g
        assert red.conjugator == IDENTITY

    def test_reduce_multi_step(self, z2z3):
        # a b a b^2 a: strip (a, a), then consolidate b * b^2? no - it cancels
        red = z2z3.cyclically_reduce(parse_word(z2z3, "a b a b^2 a"))
        assert red.result == parse_word(z2z3, "a")
        assert z2z3.conjugate(red.result, by=red.conjugator) == parse_word(
            z2z3, "a b a b^2 a"
        )

    @pytest.mark.parametrize("fixture_name,max_k", [("z2z3", 6), ("z2z2", 8)])
    def test_roundtrip_on_ball(self, request, fixture_name, max_k):
        product = request.getfixturevalue(fixture_name)
        for g in ball_elements(product, max_k):
            red = product.cyclically_reduce(g)
            assert product.is_cyclically_reduced(red.result)
            assert len(red.result) % 2 == 0 or len(red.result) <= 1
            assert product.conjugate(red.result, by=red.conjugator) == g

    def test_roundtrip_random(self, s3_z2, zz):
        rng = random.Random(23)
        for product in (s3_z2, zz):
            for _ in range(300):
                g = random_element(product, rng, rng.randint(0, 10))
                red = product.cyclically_reduce(g)
                assert product.is_cyclically_reduced(red.result)
                assert product.conjugate(red.result, by=red.conjugator) == g


class TestConjugacy:
    def test_rotations_are_conjugate(self, z2z3):
        assert z2z3.are_conjugate(parse_word(z2z3, "a b"), parse_word(z2z3, "b a"))
        assert z2z3.are_conjugate(
            parse_word(z2z3, "a b a b^2"), parse_word(z2z3, "a b^2 a b")
        )

    def test_non_conjugate_pair(self, z2z3):
        assert not z2z3.are_conjugate(parse_word(z2z3, "a b"), parse_word(z2z3, "a b^2"))

    def test_identical_words(self, z2z3):
        g = parse_word(z2z3, "a b a b")
        assert z2z3.are_conjugate(g, g)

    def test_single_letters_defer_to_factor(self, z2z3, s3_z2):
        # abelian factor: b and b^2 are not conjugate
        assert not z2z3.are_conjugate(parse_word(z2z3, "b"), parse_word(z2z3, "b^2"))
        # nonabelian factor: the transpositions u and v are conjugate in S3
        assert s3_z2.are_conjugate(parse_word(s3_z2, "u"), parse_word(s3_z2, "v"))
        assert not s3_z2.are_conjugate(parse_word(s3_z2, "s"), parse_word(s3_z2, "c"))

    def test_identity_only_conjugate_to_itself(self, z2z3):
        assert z2z3.are_conjugate(IDENTITY, IDENTITY)
        for g in ball_elements(z2z3, 3):
            if g != IDENTITY:
                assert not z2z3.are_conjugate(IDENTITY, g)
                assert not z2z3.are_conjugate(g, IDENTITY)

    def test_oracle_agreement(self, z2z3, z2z2):
        for product, pair_k, conj_k in ((z2z3, 4, 7), (z2z2, 4, 8)):
            elements = ball_elements(product, pair_k)
            conjugators = ball_elements(product, conj_k)
            for i, g in enumerate(elements):
                for h in elements[i:]:
                    fast = product.are_conjugate(g, h)
                    slow = conjugate_by_search(product, g, h, conjugators)
                    assert fast == slow, (product.format(g), product.format(h))

    def test_key_matches_are_conjugate(self, z2z3, s3_z2):
        for product, k in ((z2z3, 4), (s3_z2, 3)):
            elements = ball_elements(product, k)
            keys = {g: product.canonical_class_key(g) for g in elements}
            for i, g in enumerate(elements):
                for h in elements[i:]:
                    assert (keys[g] == keys[h]) == product.are_conjugate(g, h)

    def test_key_invariant_under_conjugation(self, z2z3):
        rng = random.Random(5)
        for _ in range(200):
            g = random_element(z2z3, rng, rng.randint(0, 6))
            c = random_element(z2z3, rng, rng.randint(0, 6))
            assert z2z3.canonical_class_key(g) == z2z3.canonical_class_key(
                z2z3.conjugate(g, by=c)
            )

    def test_partition_count_matches_key_count(self, z2z3):
        elements = ball_elements(z2z3, 5)
        by_key = len({z2z3.canonical_class_key(g) for g in elements})
        assert by_key == classes_by_partition(z2z3, elements)

    def test_canonical_key_prefers_low_factor(self, z2z3):
        key = z2z3.canonical_class_key(parse_word(z2z3, "b a"))
        assert key == parse_word(z2z3, "a b")

    def test_canonical_key_single_letter(self, s3_z2):
        key = s3_z2.canonical_class_key(parse_word(s3_z2, "v"))
        assert key == (Letter(1, 1),)  # class representative of the transpositions


class TestStructure:
    def test_word_length_additive(self, z2z3, zz):
        assert z2z3.word_length(parse_word(z2z3, "a b^2")) == 2
        assert z2z3.word_length(IDENTITY) == 0
        assert zz.word_length(parse_word(zz, "t^3 u^-2")) == 5

    def test_even_length_when_cyclically_reduced(self, z2z3):
        for g in ball_elements(z2z3, 6):
            if len(g) >= 2 and z2z3.is_cyclically_reduced(g):
                assert len(g) % 2 == 0

    def test_letter_constructor_validates(self, z2z3):
        with pytest.raises(FactorGroupError):
            z2z3.letter(1, 0)  # identity
        with pytest.raises(FactorGroupError):
            z2z3.letter(3, 1)
        with pytest.raises(FactorGroupError):
            z2z3.letter(2, 5)
        assert z2z3.letter(2, 2) == Letter(2, 2)

    def test_validate_rejects_malformed(self, z2z3):
        with pytest.raises(FactorGroupError):
            z2z3.validate((Letter(1, 1), Letter(1, 1)))
        with pytest.raises(FactorGroupError):
            z2z3.validate((Letter(2, 0),))
        with pytest.raises(FactorGroupError):
            z2z3.validate([Letter(1, 1)])
        with pytest.raises(FactorGroupError):
            z2z3.validate(((1, 1),))
        z2z3.validate(parse_word(z2z3, "a b a b^2"))

    def test_format(self, z2z3, s3_z2):
        assert z2z3.format(IDENTITY) == "1"
        assert z2z3.format(parse_word(z2z3, "a b^2 a b")) == "a b^2 a b"
        assert s3_z2.format(parse_word(s3_z2, "c w s")) == "c w s"

    def test_generator_letters(self, z2z3):
        assert z2z3.generator_letters() == (
            ("a", Letter(1, 1)),
            ("b", Letter(2, 1)),
        )
