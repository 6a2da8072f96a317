"""Morphism algebra: fixed points, erasure removal, spectra, renamings."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdseq import catalog
from pdseq.morphisms import (
    ExactEigenvalue,
    Morphism,
    equivalent_up_to_renaming,
    find_small_period,
    fixed_point_prefix,
    morphic_word_prefix,
    multiplicatively_independent,
    pf_eigenvalue,
    remove_erasure,
    run_lengths,
    trim_to_prolongable,
)

GOLDEN = (1 + 5**0.5) / 2


class TestFixedPoints:
    def test_period_doubling_prefix(self):
        h = catalog.period_doubling_morphism()
        got = "".join(fixed_point_prefix(h, "0", 21))
        assert got == "010001010100010001000"

    def test_run_length_prefix(self):
        f = catalog.run_length_morphism()
        assert fixed_point_prefix(f, "1", 8) == tuple("12112221"[i] for i in range(8))

    def test_slow_growth_morphism(self):
        m = Morphism({"a": ("a", "b"), "b": ("b",)})
        assert fixed_point_prefix(m, "a", 4) == ("a", "b", "b", "b")

    def test_not_prolongable(self):
        m = Morphism({"a": ("b", "a"), "b": ("a",)})
        with pytest.raises(ValueError, match="prolongable"):
            fixed_point_prefix(m, "a", 4)

    def test_long_prefix_matches_formula(self):
        h = catalog.period_doubling_morphism()
        n = 1 << 18
        got = np.array([int(c) for c in fixed_point_prefix(h, "0", n)], dtype=np.int64)
        assert np.array_equal(got, catalog.period_doubling_prefix(n))

    @given(st.data())
    @settings(max_examples=30, deadline=None)
    def test_homomorphism_property(self, data):
        m = data.draw(
            st.sampled_from(
                [
                    catalog.period_doubling_morphism(),
                    catalog.thue_morse_morphism(),
                    catalog.run_length_morphism(),
                    catalog.golden_morphism(),
                ]
            )
        )
        letters = list(m.alphabet)
        word = tuple(data.draw(st.lists(st.sampled_from(letters), max_size=50)))
        cut = data.draw(st.integers(0, len(word)))
        assert m(word) == m(word[:cut]) + m(word[cut:])


class TestErasureRemoval:
    def test_empty_subalphabet_is_identity(self):
        f = catalog.fib_indicator_product_morphism()
        g = catalog.fib_indicator_erasing_coding()
        f2, g2 = remove_erasure(f, g, set())
        assert f2.rules == f.rules and g2.rules == g.rules

    def test_submorphism_violation(self):
        f = catalog.fib_indicator_product_morphism()
        g = catalog.fib_indicator_erasing_coding()
        with pytest.raises(ValueError, match="subalphabet"):
            remove_erasure(f, g, {"a1"})  # image of a1 contains a4

    def test_word_preserved(self):
        f = catalog.fib_indicator_product_morphism()
        g = catalog.fib_indicator_erasing_coding()
        fe, ge = remove_erasure(f, g, {"a1", "a4", "a7"})
        before = morphic_word_prefix(f, g, "z", 200)
        after = morphic_word_prefix(fe, ge, "z", 200)
        assert before == after

    def test_trim_requires_erased_seed(self):
        phi = catalog.golden_morphism()
        mu = catalog.golden_coding()
        with pytest.raises(ValueError, match="erased"):
            trim_to_prolongable(phi, mu, "a")

    def test_trim_preserves_word(self):
        f = catalog.fib_indicator_product_morphism()
        g = catalog.fib_indicator_erasing_coding()
        fe, ge = remove_erasure(f, g, {"a1", "a4", "a7"})
        fp, gp, seed = trim_to_prolongable(fe, ge, "z")
        assert seed == "a0"
        assert morphic_word_prefix(fp, gp, seed, 200) == morphic_word_prefix(fe, ge, "z", 200)


class TestSpectra:
    def test_golden_ratio(self):
        pf = pf_eigenvalue(catalog.golden_morphism().incidence_matrix())
        assert abs(pf.value - GOLDEN) < 1e-9
        assert pf.tag == ExactEigenvalue.quadratic(-1, -1)
        assert str(pf.tag) == "x^2 - x - 1"

    def test_uniform_morphisms_give_the_arity(self):
        assert pf_eigenvalue(catalog.period_doubling_morphism().incidence_matrix()).tag == ExactEigenvalue.integer(2)
        assert pf_eigenvalue(catalog.thue_morse_morphism().incidence_matrix()).tag == ExactEigenvalue.integer(2)
        assert pf_eigenvalue(catalog.generalized_tm_morphism(3).incidence_matrix()).tag == ExactEigenvalue.integer(3)
        assert pf_eigenvalue(catalog.generalized_tm_morphism(5).incidence_matrix()).tag == ExactEigenvalue.integer(5)

    def test_zero_matrix(self):
        pf = pf_eigenvalue(np.zeros((3, 3), dtype=np.int64))
        assert pf.value == 0.0 and pf.tag == ExactEigenvalue.integer(0)

    def test_run_length_morphism_spectrum(self):
        # (x - 1)(x - 4): the letters grow by a factor of four per step
        pf = pf_eigenvalue(catalog.run_length_morphism().incidence_matrix())
        assert pf.tag == ExactEigenvalue.integer(4)
        assert pf.value == 4.0

    def test_block_triangular_takes_component_max(self):
        m = np.array([[1, 5, 5], [0, 0, 2], [0, 1, 0]], dtype=np.int64)
        pf = pf_eigenvalue(m)  # components {0} and {1,2}; radii 1 and sqrt(2)
        assert abs(pf.value - 2**0.5) < 1e-9
        assert pf.tag == ExactEigenvalue.quadratic(-2, 0)


class TestMultiplicativeIndependence:
    def test_integer_pairs(self):
        assert not multiplicatively_independent(2, 8)
        assert not multiplicatively_independent(4, 8)
        assert multiplicatively_independent(2, 3)
        assert multiplicatively_independent(6, 12)
        assert not multiplicatively_independent(6, 36)

    def test_golden_vs_integers(self):
        tag = ExactEigenvalue.quadratic(-1, -1)
        for k in range(2, 11):
            assert multiplicatively_independent(k, tag)
            assert multiplicatively_independent(tag, k)

    def test_square_root_reduces_to_integer_case(self):
        sqrt2 = ExactEigenvalue.quadratic(-2, 0)
        assert not multiplicatively_independent(sqrt2, 2)
        assert multiplicatively_independent(sqrt2, 3)

    def test_same_field_quadratics(self):
        golden = ExactEigenvalue.quadratic(-1, -1)
        golden_sq = ExactEigenvalue.quadratic(1, -3)  # x^2-3x+1: larger root phi^2
        assert not multiplicatively_independent(golden, golden_sq)

    def test_different_fields_rejected(self):
        golden = ExactEigenvalue.quadratic(-1, -1)
        sqrt2 = ExactEigenvalue.quadratic(-2, 0)
        with pytest.raises(ValueError, match="field"):
            multiplicatively_independent(golden, sqrt2)


class TestWordUtilities:
    def test_thue_morse_run_lengths(self):
        t = catalog.sequence("t").prefix(64).tolist()
        assert run_lengths(t, 8) == (1, 2, 1, 1, 2, 2, 2, 1)

    def test_staircase(self):
        word = [0] * 1 + [1] * 2 + [0] * 3 + [1] * 4 + [0] * 5
        assert run_lengths(word, 4) == (1, 2, 3, 4)

    def test_unterminated_block(self):
        with pytest.raises(ValueError, match="blocks"):
            run_lengths([7, 7, 7, 7], 1)

    def test_small_period_detection(self):
        word = [0, 1] * 10_000
        assert find_small_period(word, 16, 16) == (0, 2)
        word = [9, 9, 9] + [0, 1, 2] * 10_000
        pre, per = find_small_period(word, 16, 16)
        assert per == 3 and pre <= 4

    def test_period_doubling_has_no_small_period(self):
        d = catalog.sequence("d").prefix(1 << 14).tolist()
        assert find_small_period(d, 1024, 1024) is None

    def test_run_length_word_has_no_small_period(self):
        p = catalog.sequence("p").prefix(1 << 14).tolist()
        assert find_small_period(p, 1024, 1024) is None


class TestRenaming:
    def test_identity_on_self(self):
        f = catalog.golden_morphism()
        g = catalog.golden_coding()
        bij = equivalent_up_to_renaming(f, g, "a", f, g, "a")
        assert bij == {letter: letter for letter in f.alphabet}

    def test_distinct_morphisms_fail(self):
        h = catalog.period_doubling_morphism()
        tau = catalog.thue_morse_morphism()
        ident = Morphism({"0": ("0",), "1": ("1",)})
        assert equivalent_up_to_renaming(h, ident, "0", tau, ident, "0") is None

    def test_pipeline_bijection(self):
        f = catalog.fib_indicator_product_morphism()
        g = catalog.fib_indicator_erasing_coding()
        fe, ge = remove_erasure(f, g, {"a1", "a4", "a7"})
        fp, gp, seed = trim_to_prolongable(fe, ge, "z")
        bij = equivalent_up_to_renaming(
            fp, gp, seed, catalog.golden_morphism(), catalog.golden_coding(), "a"
        )
        assert bij == {"a0": "a", "a2": "b", "a3": "c", "a5": "d", "a6": "e"}


class TestTextFormat:
    def test_round_trip(self):
        f = catalog.fib_indicator_product_morphism()
        text = f.to_text(seed="z")
        back, seed = Morphism.from_text(text)
        assert back == f and seed == "z"

    def test_erasing_rule(self):
        g = catalog.fib_indicator_erasing_coding()
        back, _ = Morphism.from_text(g.to_text())
        assert back == g

    def test_bad_rule_rejected(self):
        with pytest.raises(ValueError, match="unparseable"):
            Morphism.from_text("a = b c")
