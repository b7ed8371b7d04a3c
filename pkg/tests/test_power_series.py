import itertools
import random

import pytest

from vlab.errors import GroupError
from vlab.power_series import (SeriesParams, TruncatedSeries,
                               law_failure_witness, magnus_image,
                               p_adic_split)
from vlab.words import Word, parse_word


def random_series(rng, params, terms=4):
    data = {}
    for _ in range(terms):
        length = rng.randint(0, params.truncation - 1)
        mono = tuple(rng.randint(1, params.variables) for _ in range(length))
        data[mono] = rng.randint(1, params.p - 1)
    return TruncatedSeries(params, data)


class TestRingAxioms:
    @pytest.mark.parametrize("p,k,d", [(2, 2, 5), (3, 2, 4)])
    def test_associativity_and_distributivity(self, p, k, d):
        params = SeriesParams(p, k, d)
        rng = random.Random(100 * p + d)
        for _ in range(60):
            a = random_series(rng, params)
            b = random_series(rng, params)
            c = random_series(rng, params)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c

    def test_one_is_neutral(self):
        params = SeriesParams(2, 2, 5)
        rng = random.Random(1)
        one = TruncatedSeries.one(params)
        for _ in range(20):
            a = random_series(rng, params)
            assert a * one == a
            assert one * a == a

    def test_noncommutative(self):
        params = SeriesParams(2, 2, 3)
        y1 = TruncatedSeries.variable(params, 1)
        y2 = TruncatedSeries.variable(params, 2)
        assert y1 * y2 != y2 * y1

    def test_truncation_drops_high_degree(self):
        params = SeriesParams(2, 1, 3)
        y = TruncatedSeries.variable(params, 1)
        assert (y * y * y).terms == {}

    def test_parameter_mismatch(self):
        a = TruncatedSeries.one(SeriesParams(2, 2, 4))
        b = TruncatedSeries.one(SeriesParams(3, 2, 4))
        with pytest.raises(GroupError):
            a * b


class TestUnitInverse:
    def test_inverse_of_one_plus_y(self):
        params = SeriesParams(2, 1, 3)
        u = TruncatedSeries.one_plus_variable(params, 1)
        inv = u.unit_inverse()
        assert inv.terms == {(): 1, (1,): 1, (1, 1): 1}  # 1 + y + y^2
        assert (u * inv).is_one()

    def test_inverse_of_one(self):
        params = SeriesParams(3, 1, 4)
        one = TruncatedSeries.one(params)
        assert one.unit_inverse() == one

    def test_involutive_on_random_units(self):
        params = SeriesParams(3, 2, 4)
        rng = random.Random(2)
        for _ in range(40):
            u = TruncatedSeries.one(params) + \
                random_series(rng, params).augmentation_part()
            assert (u * u.unit_inverse()).is_one()
            assert u.unit_inverse().unit_inverse() == u

    def test_rejects_wrong_constant_term(self):
        params = SeriesParams(2, 1, 3)
        with pytest.raises(GroupError):
            TruncatedSeries.variable(params, 1).unit_inverse()

    def test_unit_group_exponent(self):
        # units with constant term 1 have exponent dividing p^ceil(log_p d)
        import math
        for p, k, d in ((2, 2, 5), (3, 1, 4)):
            params = SeriesParams(p, k, d)
            exponent = p ** math.ceil(math.log(d, p))
            rng = random.Random(p * d)
            for _ in range(25):
                u = TruncatedSeries.one(params) + \
                    random_series(rng, params).augmentation_part()
                assert (u ** exponent).is_one()


class TestMagnusImage:
    def test_single_variable(self):
        img = magnus_image(Word.variable(1), 5, 2)
        assert img.terms == {(): 1, (1,): 1}

    def test_square_mod_2(self):
        img = magnus_image(parse_word("x1^2"), 2, 3)
        assert img.terms == {(): 1, (1, 1): 1}

    def test_commutator_leading_monomial(self):
        img = magnus_image(parse_word("[x1,x2]"), 2, 5)
        assert img.coefficient((1, 2, 1, 2)) == 1

    def _short_words(self):
        letters = [(1, 1), (1, -1), (2, 1), (2, -1)]
        words = {Word.identity()}
        frontier = [Word.identity()]
        for _ in range(4):
            new = []
            for w in frontier:
                for letter in letters:
                    extended = w * Word.make([letter])
                    if extended.length() == w.length() + 1 \
                            and extended not in words:
                        words.add(extended)
                        new.append(extended)
            frontier = new
        return sorted(words, key=lambda w: (w.length(), str(w)))

    def test_freeness_spot_check(self):
        # distinct reduced words of length <= 4 on two variables separate at
        # d = 9, p = 2; below that, (1+y)^4 = 1 + y^4 exactly mod 2 makes
        # x^4 and x^-4 agree, so d = 9 is the sharp truncation here
        images = {}
        for w in self._short_words():
            img = magnus_image(w, 2, 9, variables=2)
            key = tuple(sorted(img.terms.items()))
            assert key not in images, (w, images[key])
            images[key] = w

    def test_freeness_boundary_at_low_truncation(self):
        # at d = 6 the only colliding pairs are x_i^4 vs x_i^-4
        images = {}
        collisions = set()
        for w in self._short_words():
            img = magnus_image(w, 2, 6, variables=2)
            key = tuple(sorted(img.terms.items()))
            if key in images:
                collisions.add(frozenset((str(images[key]), str(w))))
            else:
                images[key] = w
        assert collisions == {frozenset(("x1^4", "x1^-4")),
                              frozenset(("x2^4", "x2^-4"))}


class TestLawFailureWitness:
    def test_p_adic_split(self):
        assert p_adic_split(12, 2) == (3, 2)
        assert p_adic_split(-8, 2) == (-1, 3)
        assert p_adic_split(5, 3) == (5, 0)
        with pytest.raises(GroupError):
            p_adic_split(0, 2)

    # frozen from the degree rule plus direct expansion
    @pytest.mark.parametrize("text,p,d,monomial,coeff", [
        ("x1^2", 2, 3, (1, 1), 1),
        ("[x1,x2]", 2, 5, (1, 2, 1, 2), 1),
        ("x1", 3, 2, (1,), 1),
        ("x1^6", 2, 3, (1, 1), 1),       # 6 = 3*2: b=3, k=1
        ("x1^6", 3, 4, (1, 1, 1), 2),    # 6 = 2*3: b=2, k=1
    ])
    def test_examples(self, text, p, d, monomial, coeff):
        report = law_failure_witness(parse_word(text), p)
        assert report.truncation == d
        assert report.monomial == monomial
        assert report.predicted_coefficient == coeff
        assert report.extracted_coefficient == coeff
        assert not report.image_is_one
        assert report.consistent

    def test_empty_word_rejected(self):
        with pytest.raises(GroupError):
            law_failure_witness(Word.identity(), 2)

    def test_prediction_matches_extraction_on_random_words(self):
        rng = random.Random(77)
        letters = [(1, 1), (1, -1), (1, 2), (2, 1), (2, -1), (3, 1), (3, 2)]
        for _ in range(40):
            body = []
            for _ in range(rng.randint(1, 4)):
                body.append(letters[rng.randrange(len(letters))])
            word = Word.make(body)
            if word.is_identity():
                continue
            for p in (2, 3):
                report = law_failure_witness(word, p)
                assert report.consistent, (str(word), p)
