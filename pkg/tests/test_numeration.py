"""Numeration systems: base-k, Zeckendorf greedy, genealogical rank/unrank."""

import pytest

from pdseq import catalog
from pdseq.numeration import Ans, BaseK, Zeckendorf, automatic_eval, fibonacci_weights


def genealogical_words(dfa, count):
    """Oracle: enumerate accepted words by brute force in genealogical order."""
    out = []
    length = 0
    while len(out) < count:
        for v in range(1 << length):
            word = tuple((v >> (length - 1 - i)) & 1 for i in range(length))
            if dfa.accepts(word):
                out.append(word)
                if len(out) == count:
                    return out
        length += 1
    return out


class TestBaseK:
    def test_examples(self):
        b2 = BaseK(2)
        assert b2.rep(13) == (1, 1, 0, 1)
        assert b2.rep(0) == ()
        assert b2.val((1, 0, 1)) == 5

    def test_round_trip(self):
        for k in (2, 3, 10):
            s = BaseK(k)
            assert all(s.val(s.rep(n)) == n for n in range(10_000))

    def test_leading_zero_rejected(self):
        with pytest.raises(ValueError, match="leading"):
            BaseK(2).val((0, 1))


class TestZeckendorf:
    def test_weights(self):
        assert fibonacci_weights(30) == [1, 2, 3, 5, 8, 13, 21]

    def test_examples(self):
        z = Zeckendorf()
        assert z.rep(0) == ()
        assert z.rep(1) == (1,)
        assert z.rep(4) == (1, 0, 1)

    def test_round_trip_and_shape(self):
        z = Zeckendorf()
        for n in range(10_000):
            w = z.rep(n)
            assert z.val(w) == n
            assert "11" not in "".join(map(str, w))

    def test_greedy_matches_enumeration_oracle(self):
        # the n-th valid word in genealogical order is the greedy rep of n
        z = Zeckendorf()
        words = genealogical_words(catalog.zeckendorf_language_dfa(), 200)
        assert [z.rep(n) for n in range(200)] == words

    def test_rejects_invalid_words(self):
        z = Zeckendorf()
        with pytest.raises(ValueError, match="adjacent"):
            z.val((1, 1))
        with pytest.raises(ValueError, match="start"):
            z.val((0, 1))


class TestAns:
    def test_agrees_with_zeckendorf(self):
        ans = Ans(catalog.zeckendorf_language_dfa())
        z = Zeckendorf()
        assert all(ans.rep(n) == z.rep(n) for n in range(5_000))

    def test_val_is_rank(self):
        ans = Ans(catalog.zeckendorf_language_dfa())
        assert ans.val((1, 0, 0, 0)) == 5
        assert all(ans.val(ans.rep(n)) == n for n in range(2_000))

    def test_genealogical_monotonicity(self):
        # val increases along the genealogical enumeration of the whole
        # language up to length 14
        for name in ("la", "lprime", "lf"):
            dfa = catalog.language(name)
            ans = Ans(dfa)
            words = []
            for length in range(15):
                for v in range(1 << length):
                    w = tuple((v >> (length - 1 - i)) & 1 for i in range(length))
                    if dfa.accepts(w):
                        words.append(w)
            assert [ans.val(w) for w in words] == list(range(len(words)))
            assert len(words) > 200

    def test_ones_positions_first_words(self):
        ans = Ans(catalog.ones_positions_language_dfa())
        got = ["".join(map(str, ans.rep(n))) for n in range(4)]
        assert got == ["1", "101", "111", "1101"]

    def test_rejected_word(self):
        ans = Ans(catalog.zeckendorf_language_dfa())
        with pytest.raises(ValueError, match="language"):
            ans.val((1, 1))

    def test_finite_language_rejected(self):
        from pdseq.automata import Dfa

        trans = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1}
        finite = Dfa(("a", "dead"), 0, (0, 1), trans, (True, False), "msd")
        with pytest.raises(ValueError, match="infinite"):
            Ans(finite)


class TestAutomaticEval:
    def test_fibonacci_indicator(self):
        z = Zeckendorf()
        m = catalog.fibonacci_indicator_dfao()
        got = [automatic_eval(z, m, n) for n in (4, 5, 6)]
        assert got == [0, 1, 0]
        assert automatic_eval(z, m, 0) == 0

    def test_base2_period_doubling(self):
        b2 = BaseK(2)
        m = catalog.period_doubling_dfao()
        want = catalog.sequence("d").prefix(21)
        assert [automatic_eval(b2, m, n) for n in range(21)] == [int(v) for v in want]
