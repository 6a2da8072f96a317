"""Executable check suite for the period-doubling formal-inverse results.

Each check reproduces one published claim (or gathers the stated evidence
for it) at a pinned horizon and tolerance; everything is exact integer or
F_p arithmetic, so "pass" means equality, not approximation.  Checks are
registered in a fixed order and report deterministically; see CHECKS for
the id -> description map.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import automata, catalog, kernel, morphisms, numeration, series

__all__ = ["CheckResult", "CHECKS", "run_paper_checks", "check_ids"]


@dataclass
class CheckResult:
    check_id: str
    status: str  # pass | fail | skipped
    horizon: str
    elapsed: float
    detail: str | None = None

    def to_json_dict(self, include_elapsed=False):
        d = {
            "id": self.check_id,
            "status": self.status,
            "horizon": self.horizon,
            "detail": self.detail,
        }
        if include_elapsed:
            d["elapsed"] = round(self.elapsed, 3)
        return d


def _fail(parts):
    msgs = [m for ok, m in parts if not ok]
    return (not msgs, "; ".join(msgs) if msgs else None)


# -- individual checks -------------------------------------------------------

U_LISTING = tuple(int(c) for c in "01000101000001000100000100000101000001000")


def check_reversion(n=4096):
    d_series = catalog.generating_function("d", n)
    v = series.reversion(d_series)
    expected = catalog.sequence("u").prefix(n)
    parts = [
        (bool(np.array_equal(v.coeffs, expected)), "reversion differs from the recurrence sequence"),
        (tuple(int(c) for c in v.coeffs[:41]) == U_LISTING, "first 41 coefficients differ from the listing"),
    ]
    return _fail(parts) + (f"N={n}",)


def check_relations(n=1024):
    parts = []
    d_series = catalog.generating_function("d", n)
    parts.append(
        (series.relation_residual(catalog.pd_gf_relation(), d_series).is_zero(), "period-doubling relation residual nonzero")
    )
    u_series = series.reversion(d_series)
    parts.append(
        (series.relation_residual(catalog.inverse_pd_relation_cubic(), u_series).is_zero(), "cubic inverse relation residual nonzero")
    )
    parts.append(
        (series.relation_residual(catalog.inverse_pd_relation_quartic(), u_series).is_zero(), "quartic inverse relation residual nonzero")
    )
    for p in (2, 3, 5):
        t = catalog.generating_function(f"tp{p}", p**6)
        parts.append(
            (
                series.relation_residual(catalog.generalized_tm_relation(p), t).is_zero(),
                f"generalized Thue-Morse relation residual nonzero for p={p}",
            )
        )
    return _fail(parts) + (f"N={n}, N_p=p^6 for p in (2,3,5)",)


def check_ore_form(n=512):
    u_series = series.reversion(catalog.generating_function("d", n))
    rel = series.power_relation_search(u_series, max_frobenius_depth=2, max_coeff_degree=3)
    expected = (
        ((1,), ("frob", 0)),
        ((0, 0, 0, 1), ("frob", 1)),
        ((0, 0, 0, 1), ("frob", 2)),
        ((0, 1), ("pow", 0)),
    )
    parts = [
        (rel is not None, "no relation found"),
        (rel is not None and rel.terms == expected, f"unexpected relation {None if rel is None else rel.terms}"),
    ]
    return _fail(parts) + (f"N={n}, depth<=2, degree<=3",)


def check_kernel_dfao(horizon=512):
    analysis = kernel.compute_kernel(catalog.sequence("u").prefix, 2, horizon=horizon)
    parts = [
        (analysis.closed, "kernel did not close"),
        (analysis.class_count() == 5, f"{analysis.class_count()} classes instead of 5"),
    ]
    if analysis.closed:
        mini = automata.minimize(kernel.synthesize_dfao(analysis))
        parts.append((mini.num_states == 5, f"minimized automaton has {mini.num_states} states"))
        parts.append(
            (mini.same_up_to_renaming(catalog.inverse_pd_dfao()), "synthesized automaton is not the five-state figure")
        )
        limit = 1 << 20
        got = automata.evaluate_range(mini, limit)
        want = catalog.sequence("u").prefix(limit)
        parts.append((bool(np.array_equal(got, want)), "automaton disagrees with the sequence below 2^20"))
    return _fail(parts) + (f"H={horizon}, agreement to 2^20",)


# every instance of the kernel recurrence family: either s(an+b) = s(cn+e)
# or s(an+b) = 0
KERNEL_RELATIONS = (
    [(1, 0, 4, 3), (4, 3, 16, 15), (2, 1, 8, 7), (4, 1, 8, 5), (4, 1, 16, 1), (4, 1, 16, 7), (4, 1, 16, 13), (8, 1, 16, 5)],
    [(2, 0), (4, 0), (4, 2), (8, 0), (8, 2), (8, 4), (8, 6), (8, 3)]
    + [(16, r) for r in range(0, 16, 2)]
    + [(16, 3), (16, 9), (16, 11)],
)


def check_kernel_relations(n=100_000):
    u = catalog.sequence("u").prefix(16 * n + 16).astype(np.int64)
    idx = np.arange(n, dtype=np.int64)
    parts = []
    for am, ab, bm, bb in KERNEL_RELATIONS[0]:
        ok = bool(np.array_equal(u[am * idx + ab], u[bm * idx + bb]))
        parts.append((ok, f"u({am}n+{ab}) != u({bm}n+{bb})"))
    for am, ab in KERNEL_RELATIONS[1]:
        ok = not u[am * idx + ab].any()
        parts.append((ok, f"u({am}n+{ab}) != 0"))
    return _fail(parts) + (f"n<{n}, {len(KERNEL_RELATIONS[0]) + len(KERNEL_RELATIONS[1])} relations",)


def check_morphism_identities(n_max=7):
    h = catalog.period_doubling_morphism()
    f = catalog.doubled_run_length_morphism()
    g = catalog.doubled_run_length_coding()
    parts = []
    hw0, hw10 = ("0",), ("1", "0")
    fw2, fw4 = ("2",), ("4",)
    k = 0  # number of h-applications performed on hw0/hw10
    for n in range(1, n_max + 1):
        while k < 2 * n + 1:
            hw0, hw10 = h(hw0), h(hw10)
            k += 1
        fw2, fw4 = f(fw2), f(fw4)
        parts.append((hw0 == g(fw2), f"word identity fails for the 0-word at n={n}"))
        parts.append((hw10 == g(fw4), f"word identity fails for the 10-word at n={n}"))
    return _fail(parts) + (f"n=1..{n_max}",)


def check_run_length_identities(n=100_000):
    parts = []
    for name in ("z", "o"):
        report = catalog.cross_check(name, n)
        parts.append((report.passed, str(report)))
    return _fail(parts) + (f"{n} terms",)


def check_complexity(n_max=15):
    fib = catalog.fibonacci_numbers(count=2 * n_max + 2)
    lprime = catalog.blocks_language_dfa()
    la = catalog.ones_positions_language_dfa()
    parts = []
    for n in range(31):
        got = automata.count_length_n(lprime, n)
        parts.append((got == fib[n], f"blocks language count({n})={got} != F({n})={fib[n]}"))
    boundaries = {0: 0, 1: 1, 2: 0}
    for n, want in boundaries.items():
        got = automata.count_length_n(la, n)
        parts.append((got == want, f"count({n})={got} != {want}"))
    for n in range(2, n_max + 1):
        got = automata.count_length_n(la, 2 * n)
        want = fib[2 * n - 2] - 1
        parts.append((got == want, f"even count({2 * n})={got} != {want}"))
    for n in range(1, n_max + 1):
        got = automata.count_length_n(la, 2 * n + 1)
        want = fib[2 * n - 1] + 1
        parts.append((got == want, f"odd count({2 * n + 1})={got} != {want}"))
    return _fail(parts) + (f"lengths to {2 * n_max + 1}",)


def _accepts_many(dfa, values):
    """Vectorized acceptance of the binary expansions of positive ints."""
    values = np.asarray(values, dtype=np.int64)
    table = dfa.transition_table()
    out = np.zeros(len(values), dtype=bool)
    lengths = np.zeros(len(values), dtype=np.int64)
    v = values.copy()
    while v.any():
        lengths[v > 0] += 1
        v >>= 1
    for length in range(1, int(lengths.max(initial=0)) + 1):
        sel = lengths == length
        if not sel.any():
            continue
        vv = values[sel]
        st = np.full(len(vv), dfa.initial, dtype=np.int64)
        for b in range(length - 1, -1, -1):
            st = table[st, (vv >> b) & 1]
        acc = np.array([bool(o) for o in dfa.outputs])
        out[sel] = acc[st]
    return out


def check_mod3_structure(limit=1 << 27):
    parts = []
    fib = catalog.fibonacci_numbers(count=90)
    # summation identities on the Fibonacci numbers
    for n in range(1, 41):
        lhs = sum(fib[2 * ell] for ell in range(n))
        parts.append((lhs == fib[2 * n - 1], f"even-index sum fails at n={n}"))
    for n in range(2, 41):
        lhs = sum(fib[2 * ell + 1] for ell in range(n - 1))
        parts.append((lhs == fib[2 * (n - 1)] - 1, f"odd-index sum fails at n={n}"))

    # residue classification of the one-positions below 2^20
    a20 = catalog.inverse_pd_ones_below(1 << 20)
    mod3 = a20 % 3
    in_la1 = _accepts_many(catalog.odd_ones_language_dfa(), a20)
    in_la2 = _accepts_many(catalog.marked_block_language_dfa(), a20)
    bitlen = np.zeros(len(a20), dtype=np.int64)
    v = a20.copy()
    while v.any():
        bitlen[v > 0] += 1
        v >>= 1
    parts.append((bool(np.all(in_la1 ^ in_la2)), "positions not split between the two languages"))
    parts.append((bool(np.all((mod3 == 1) | (mod3 == 2))), "a position is divisible by 3"))
    want = np.where(in_la1 | ((bitlen & 1) == 0), 1, 2)
    mism = np.nonzero(mod3 != want)[0]
    parts.append(
        (len(mism) == 0, f"classification fails first at a({int(mism[0]) if len(mism) else -1})")
    )

    # run lengths of (a mod 3) follow the Fibonacci numbers
    a_big = catalog.inverse_pd_ones_below(limit)
    runs = catalog._run_lengths_of_array(a_big % 3)
    complete = runs[:-1]
    parts.append((len(complete) >= 25, f"only {len(complete)} complete runs below {limit}"))
    for i, r in enumerate(complete):
        if r != fib[i]:
            parts.append((False, f"run {i} has length {r} != F({i})={fib[i]}"))
            break
    vals = (a_big % 3)[np.concatenate([[0], np.cumsum(runs)[:-1]])]
    expected_vals = np.where(np.arange(len(runs)) % 2 == 0, 1, 2)
    parts.append((bool(np.array_equal(vals, expected_vals)), "run values do not alternate 1,2,1,2,..."))
    return _fail(parts) + (f"classification below 2^20, runs below 2^27 (covers 10^7), sums to n=40",)


def check_delta_fibonacci(n=100_000):
    delta = catalog.sequence("delta").prefix(n)
    x_members = catalog.sequence("x").prefix(n + 2)
    parts = [
        (bool(np.array_equal(delta, x_members[2:])), "delta differs from the shifted indicator"),
    ]
    zeck = numeration.Zeckendorf()
    dfao = catalog.fibonacci_indicator_dfao()
    x_automatic = np.array(
        [numeration.automatic_eval(zeck, dfao, i) for i in range(n + 2)], dtype=np.int64
    )
    parts.append(
        (bool(np.array_equal(x_automatic, x_members[: n + 2])), "automaton and membership definitions of x differ")
    )
    return _fail(parts) + (f"{n} terms",)


def check_morphic_pipeline(n=100_000):
    f = catalog.fib_indicator_product_morphism()
    g = catalog.fib_indicator_erasing_coding()
    f_eps, g_eps = morphisms.remove_erasure(f, g, {"a1", "a4", "a7"})
    expected_rules = {
        "z": ("z", "a0"),
        "a0": ("a2",),
        "a2": ("a3",),
        "a3": ("a3", "a6"),
        "a5": ("a5", "a6"),
        "a6": ("a5",),
    }
    parts = [(f_eps.rules == expected_rules, "erasure removal gave unexpected rules")]
    f_prime, g_prime, new_seed = morphisms.trim_to_prolongable(f_eps, g_eps, "z")
    parts.append((new_seed == "a0", f"new seed {new_seed} != a0"))
    parts.append((f_prime.rules["a0"] == ("a0", "a2"), "trimmed image of a0 is wrong"))
    bij = morphisms.equivalent_up_to_renaming(
        f_prime, g_prime, new_seed, catalog.golden_morphism(), catalog.golden_coding(), "a"
    )
    expected_bij = {"a0": "a", "a2": "b", "a3": "c", "a5": "d", "a6": "e"}
    parts.append((bij == expected_bij, f"renaming {bij} != {expected_bij}"))
    word = morphisms.morphic_word_prefix(catalog.golden_morphism(), catalog.golden_coding(), "a", n)
    got = np.array([int(c) for c in word], dtype=np.int64)
    parts.append(
        (bool(np.array_equal(got, catalog.sequence("x").prefix(n))), "golden presentation disagrees with the indicator")
    )
    return _fail(parts) + (f"{n} terms",)


def check_eigenvalues(_horizon=None):
    parts = []
    pf_golden = morphisms.pf_eigenvalue(catalog.golden_morphism().incidence_matrix())
    golden = (1 + 5**0.5) / 2
    parts.append((abs(pf_golden.value - golden) < 1e-9, f"golden eigenvalue off: {pf_golden.value}"))
    parts.append(
        (
            pf_golden.tag == morphisms.ExactEigenvalue.quadratic(-1, -1),
            f"golden tag {pf_golden.tag} != x^2 - x - 1",
        )
    )
    pf_rl = morphisms.pf_eigenvalue(catalog.run_length_morphism().incidence_matrix())
    parts.append(
        (
            pf_rl.tag == morphisms.ExactEigenvalue.integer(2),
            f"run-length morphism eigenvalue computed as {pf_rl.value} with tag {pf_rl.tag}, "
            "stated value is 2 (see notes: the incidence matrix has characteristic "
            "polynomial (x-1)(x-4), so the true value is 4)",
        )
    )
    for k in range(2, 11):
        parts.append(
            (morphisms.multiplicatively_independent(k, pf_golden.tag), f"{k} vs golden ratio not independent")
        )
    parts.append((not morphisms.multiplicatively_independent(2, 8), "2 and 8 reported independent"))
    return _fail(parts) + ("exact",)


def check_rank_profiles(horizon=512):
    parts = []
    details = []
    for name in ("a", "z", "o", "p"):
        seq = catalog.sequence(name).prefix
        prof = kernel.rank_profile(seq, 2, max_depth=8, horizon=horizon)
        prof2 = kernel.rank_profile(seq, 2, max_depth=8, horizon=2 * horizon)
        ranks, ranks2 = prof.ranks(), prof2.ranks()
        details.append(f"{name}: ranks@{horizon}={ranks} ranks@{2 * horizon}={ranks2}")
        increasing = all(ranks[i + 1] > ranks[i] for i in range(len(ranks) - 1))
        parts.append((increasing, f"{name}: rank not strictly increasing at H={horizon}: {ranks}"))
        parts.append((ranks == ranks2, f"{name}: ranks change when H doubles: {ranks} -> {ranks2}"))
    prof_u = kernel.rank_profile(catalog.sequence("u").prefix, 2, max_depth=8, horizon=horizon)
    counts = prof_u.class_counts()
    parts.append(
        (counts[-1] == 5 and prof_u.stabilized("class_count"), f"u classes {counts} do not stabilize at 5")
    )
    ok, msg = _fail(parts)
    if msg:
        msg = msg + " | " + " ".join(details)
    return ok, msg, f"H={horizon} and {2 * horizon}, depths 0..8"


def _trailing_ones_parity(values):
    values = np.asarray(values, dtype=np.int64)
    count = np.zeros(len(values), dtype=np.int64)
    v = values.copy()
    while True:
        odd = (v & 1) == 1
        if not odd.any():
            break
        count[odd] += 1
        v = v >> 1
        v[~odd] = 0
    return count % 2


def check_numeration(n=100_000):
    parts = []
    ans = numeration.Ans(catalog.zeckendorf_language_dfa())
    zeck = numeration.Zeckendorf()
    bad = next((i for i in range(n) if ans.rep(i) != zeck.rep(i)), None)
    parts.append((bad is None, f"unrank and greedy differ first at {bad}"))
    la = numeration.Ans(catalog.ones_positions_language_dfa())
    first = [la.rep(i) for i in range(4)]
    want = [(1,), (1, 0, 1), (1, 1, 1), (1, 1, 0, 1)]
    parts.append((first == want, f"first unranked words {first} != {want}"))
    d_vals = catalog.period_doubling_prefix(n)
    o_pos = np.nonzero(d_vals == 1)[0]
    z_pos = np.nonzero(d_vals == 0)[0]
    parts.append(
        (bool(np.all(_trailing_ones_parity(o_pos) == 1)), "an odd-position value ends in evenly many ones")
    )
    parts.append(
        (bool(np.all(_trailing_ones_parity(z_pos) == 0)), "a zero-position value ends in oddly many ones")
    )
    return _fail(parts) + (f"n<{n}",)


CHECKS = {
    "prop-4.2-reversion": ("series reversion matches the recurrence sequence and the listing", check_reversion),
    "lemma-4.1-eq1-relations": ("algebraic relation residuals vanish (D, U, generalized Thue-Morse)", check_relations),
    "prop-4.2-ore-form": ("the bounded-degree search recovers the quartic relation exactly", check_ore_form),
    "fig-2-kernel-dfao": ("the kernel closes with 5 classes and synthesizes the published automaton", check_kernel_dfao),
    "lemma-4.5": ("every kernel recurrence holds termwise", check_kernel_relations),
    "lemma-3.2": ("iterated-morphism word identities", check_morphism_identities),
    "prop-3.1-3.3-run-lengths": ("position gaps reproduce the run-length fixed points", check_run_length_identities),
    "lemma-5.3-prop-5.5-complexity": ("language complexity counts match the Fibonacci formulas", check_complexity),
    "lemma-5.4-5.6-prop-5.7-mod3": ("mod-3 classification and Fibonacci run structure", check_mod3_structure),
    "sec-5-delta-x": ("difference indicator equals the shifted Fibonacci indicator", check_delta_fibonacci),
    "prop-5.12-morphic-pipeline": ("erasure removal and trimming reach the golden presentation", check_morphic_pipeline),
    "prop-5.13-eigenvalues": ("spectral radii and multiplicative independence", check_eigenvalues),
    "non-regularity-rank-evidence": ("kernel rank growth evidence at two horizons", check_rank_profiles),
    "ans-numeration": ("abstract numeration agrees with greedy Zeckendorf; parity of trailing ones", check_numeration),
}


def check_ids():
    return list(CHECKS)


def run_paper_checks(selection=None, horizons=None):
    """Run the suite (or the selected ids) and return CheckResult records.

    horizons maps a check id to an override for its main horizon knob.
    Unknown ids raise ValueError before anything runs.
    """
    horizons = dict(horizons or {})
    if selection in (None, "all", ["all"]):
        selected = list(CHECKS)
    else:
        selected = list(selection)
        unknown = [s for s in selected if s not in CHECKS]
        if unknown:
            raise ValueError(f"unknown check ids: {unknown}; known: {list(CHECKS)}")
    for key in horizons:
        if key not in CHECKS:
            raise ValueError(f"horizon override for unknown check id {key!r}")
    results = []
    for check_id in CHECKS:
        if check_id not in selected:
            continue
        _, fn = CHECKS[check_id]
        start = time.perf_counter()
        try:
            if check_id in horizons:
                ok, detail, horizon = fn(horizons[check_id])
            else:
                ok, detail, horizon = fn()
            status = "pass" if ok else "fail"
        except Exception as exc:  # a crash is a failure with the reason recorded
            status, detail, horizon = "fail", f"exception: {exc!r}", "n/a"
        results.append(CheckResult(check_id, status, horizon, time.perf_counter() - start, detail))
    return results
