"""The sequence registry: listings, cross-checks, and derived structure."""

import numpy as np
import pytest

from pdseq import catalog, morphisms

# frozen leading terms of the named sequences
D_PREFIX = [0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0]
U_PREFIX = [int(c) for c in "01000101000001000100000100000101000001000"]
O_PREFIX = [1, 5, 7, 9, 13, 17, 21, 23, 25, 29]
Z_PREFIX = [0, 2, 3, 4, 6, 8, 10, 11, 12, 14]
A_PREFIX = [1, 5, 7, 13, 17, 23, 29, 31, 37, 49, 55, 61]
B_PREFIX = [0, 2, 3, 4, 6, 8, 9, 10, 11, 12]


class TestListings:
    def test_d(self):
        assert catalog.sequence("d").prefix(21).tolist() == D_PREFIX

    def test_u(self):
        assert catalog.sequence("u").prefix(41).tolist() == U_PREFIX

    def test_positions(self):
        assert catalog.sequence("o").prefix(10).tolist() == O_PREFIX
        assert catalog.sequence("z").prefix(10).tolist() == Z_PREFIX
        assert catalog.sequence("a").prefix(12).tolist() == A_PREFIX
        assert catalog.sequence("b").prefix(10).tolist() == B_PREFIX

    def test_fibonacci_and_indicator(self):
        f = catalog.sequence("F")
        assert [f.term(n) for n in range(6)] == [1, 1, 2, 3, 5, 8]
        x = catalog.sequence("x")
        assert [x.term(n) for n in (1, 2, 3, 4, 5)] == [1, 1, 1, 0, 1]
        assert x.term(0) == 0

    def test_run_length_word(self):
        assert catalog.sequence("p").prefix(8).tolist() == [1, 2, 1, 1, 2, 2, 2, 1]

    def test_delta_is_shifted_indicator(self):
        delta = catalog.sequence("delta").prefix(12)
        x = catalog.sequence("x").prefix(14)
        assert delta.tolist() == x[2:14].tolist()

    def test_empty_prefix(self):
        assert len(catalog.sequence("d").prefix(0)) == 0

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown sequence"):
            catalog.sequence("nope")

    def test_inverse_agrees_with_pd_up_to_eight(self):
        d = catalog.sequence("d").prefix(10)
        u = catalog.sequence("u").prefix(10)
        assert d[:9].tolist() == u[:9].tolist()
        assert d[9] == 1 and u[9] == 0


class TestCrossChecks:
    @pytest.mark.parametrize(
        "name,horizon",
        [
            ("d", 1 << 18),
            ("t", 1 << 14),
            ("p", 20_000),
            ("u", 4096),
            ("z", 20_000),
            ("o", 20_000),
            ("a", 2_000),
            ("delta", 20_000),
            ("x", 20_000),
            ("tp2", 4096),
            ("tp3", 4096),
            ("tp5", 4096),
        ],
    )
    def test_registered_definitions_agree(self, name, horizon):
        report = catalog.cross_check(name, horizon)
        assert report.passed, str(report)

    def test_corrupted_definition_detected(self):
        def corrupted(n):
            data = catalog.period_doubling_prefix(n).copy()
            if n > 137:
                data[137] ^= 1
            return data

        report = catalog.cross_check("d", 1000, extra_definitions={"broken": corrupted})
        assert not report.passed
        [(label, index, expected, got)] = report.failures
        assert label == "broken" and index == 137
        assert expected != got

    def test_report_format(self):
        report = catalog.cross_check("d", 256)
        assert "pass" in str(report)


class TestComplementForms:
    def test_complement_is_fixed_point_of_swapped_morphism(self):
        n = 4096
        d = catalog.sequence("d").prefix(n)
        via_morphism = morphisms.fixed_point_prefix(catalog.complement_pd_morphism(), "1", n)
        assert [int(c) for c in via_morphism] == (1 - d).tolist()

    def test_exchange_morphism(self):
        e = catalog.exchange_morphism()
        d = catalog.sequence("d").prefix(64)
        swapped = e(tuple(str(int(v)) for v in d))
        assert [int(c) for c in swapped] == (1 - d).tolist()

    def test_odd_indicator_matches_full_sequence(self):
        n = 100_001
        u = catalog.sequence("u").prefix(n)
        v = catalog.inverse_pd_odd_indicator(n // 2)
        assert np.array_equal(v, u[1::2])
        assert not u[0::2].any()


class TestPositionsStructure:
    def test_ones_positions_are_odd(self):
        a = catalog.inverse_pd_ones_below(1 << 16)
        assert bool(np.all(a % 2 == 1))

    def test_expansions_are_exactly_the_language(self):
        # both directions: u(m) = 1 iff the binary expansion of m is accepted
        limit = 1 << 20
        u = catalog.sequence("u").prefix(limit)
        dfa = catalog.ones_positions_language_dfa()
        table = dfa.transition_table()
        acc = np.array([bool(o) for o in dfa.outputs])
        values = np.arange(1, limit, dtype=np.int64)
        accepted = np.zeros(limit, dtype=bool)
        bitlen = np.zeros(len(values), dtype=np.int64)
        v = values.copy()
        while v.any():
            bitlen[v > 0] += 1
            v >>= 1
        for length in range(1, 21):
            sel = bitlen == length
            if not sel.any():
                continue
            vv = values[sel]
            st = np.full(len(vv), dfa.initial, dtype=np.int64)
            for bpos in range(length - 1, -1, -1):
                st = table[st, (vv >> bpos) & 1]
            accepted[vv] = acc[st]
        assert bool(np.array_equal(accepted, u == 1))

    def test_zero_positions_complement(self):
        limit = 10_000
        u = catalog.sequence("u").prefix(limit)
        b = catalog.sequence("b").prefix(int((u == 0).sum()))
        assert np.array_equal(b, np.nonzero(u == 0)[0])


class TestSeriesCatalog:
    def test_gf_modulus_inference(self):
        assert catalog.generating_function("tp3", 16).p == 3
        assert catalog.generating_function("d", 16).p == 2

    def test_series_by_name(self):
        u = catalog.series_by_name("u", 128)
        assert u.coeffs[:41].tolist() == U_PREFIX
        up3 = catalog.series_by_name("up3", 128)
        assert up3.p == 3
        inv = catalog.series_by_name("inv:tp3", 128)
        assert inv == up3
        gf = catalog.series_by_name("gf:d", 64)
        assert gf == catalog.generating_function("d", 64)

    def test_bfile(self):
        lines = catalog.bfile_lines("a", 4, offset=0)
        assert lines == ["0 1", "1 5", "2 7", "3 13"]
        lines = catalog.bfile_lines("F", 3, offset=1)
        assert lines == ["1 1", "2 1", "3 2"]


class TestDerivedMorphism:
    def test_product_morphism_matches_hand_coded(self):
        from pdseq.automata import product

        prod = product(catalog.zeckendorf_language_dfa(), catalog.fibonacci_indicator_dfao())
        f, g, seed = catalog.morphism_of_product(prod)
        bij = morphisms.equivalent_up_to_renaming(
            f, g, seed, catalog.fib_indicator_product_morphism(), catalog.fib_indicator_erasing_coding(), "z"
        )
        assert bij is not None and bij[seed] == "z"

    def test_product_morphism_generates_indicator(self):
        from pdseq.automata import product

        prod = product(catalog.zeckendorf_language_dfa(), catalog.fibonacci_indicator_dfao())
        f, g, seed = catalog.morphism_of_product(prod)
        word = morphisms.morphic_word_prefix(f, g, seed, 5_000)
        got = np.array([int(c) for c in word], dtype=np.int64)
        assert np.array_equal(got, catalog.sequence("x").prefix(5_000))
