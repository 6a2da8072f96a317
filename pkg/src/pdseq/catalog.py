"""Named sequences with independent definitions, plus their automata,
morphisms, generating functions and algebraic relations.

Every sequence is registered under the short name used throughout the
package (d, t, p, u, o, z, a, b, delta, x, F, tp2, tp3, ...).  The primary
definition is the cheapest exact one; alternates are independent
constructions (morphic, automaton, series) that cross_check compares
termwise.  Position sequences (o, z, a, b) are filters over their base
sequences; nothing assumes a closed form for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import automata, numeration, series
from .automata import Dfa, Dfao
from .morphisms import Morphism, fixed_point_prefix, morphic_word_prefix

__all__ = [
    "NamedSequence",
    "sequence",
    "sequence_names",
    "cross_check",
    "CrossCheckReport",
    "bfile_lines",
]


# -- low-level vectorized builders -----------------------------------------


def period_doubling_prefix(n):
    """d(m) = (exponent of 2 in m+1) mod 2, for m < n."""
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    m = np.arange(1, n + 1, dtype=np.int64)
    low = m & -m
    # parity of the exponent: popcount of low-1 has as many ones as the exponent
    e = np.zeros(n, dtype=np.int64)
    x = low - 1
    while x.any():
        e ^= x & 1
        x >>= 1
    return e


def digit_sum_mod_prefix(n, p):
    """s_p(m) mod p for m < n (generalized Thue-Morse values)."""
    m = np.arange(n, dtype=np.int64)
    s = np.zeros(n, dtype=np.int64)
    while m.any():
        s += m % p
        m //= p
    return s % p


def inverse_pd_odd_indicator(n):
    """v with v[m] = u(2m+1): the odd-index part of the formal inverse.

    The even-index values of u vanish, so this halves the memory of every
    large-horizon scan.  Recurrences: v[0]=1, v[2m]=v[m-1], v[4m+1]=0,
    v[4m+3]=v[m]; filled by doubling so every step is a vectorized gather.
    """
    v = np.zeros(max(n, 1), dtype=np.uint8)
    v[0] = 1
    filled = 1
    while filled < n:
        hi = min(2 * filled, n)
        j = np.arange(filled, hi, dtype=np.int64)
        even = j[(j & 1) == 0]
        v[even] = v[(even >> 1) - 1]
        j3 = j[(j & 3) == 3]
        v[j3] = v[(j3 - 3) >> 2]
        filled = hi
    return v[:n]


def inverse_pd_prefix(n):
    """u(m) for m < n via the recurrences u(2m)=0, u(4m+1)=u(2m-1), u(4m+3)=u(m)."""
    u = np.zeros(n, dtype=np.int64)
    if n > 1:
        v = inverse_pd_odd_indicator((n + 1) // 2)
        u[1::2] = v[: len(u[1::2])]
    return u


def inverse_pd_ones_below(limit):
    """All positions m < limit with u(m) = 1 (they are odd)."""
    v = inverse_pd_odd_indicator(max((limit + 1) // 2, 1))
    return 2 * np.nonzero(v)[0].astype(np.int64) + 1


def thue_morse_prefix(n):
    return digit_sum_mod_prefix(n, 2)


def run_length_word_prefix(n):
    """Fixed point of 1->121, 2->12221 as ints (run lengths of Thue-Morse)."""
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    out = bytearray(b"\x01\x02\x01")
    images = {1: b"\x01\x02\x01", 2: b"\x01\x02\x02\x02\x01"}
    ptr = 1
    while len(out) < n:
        out.extend(images[out[ptr]])
        ptr += 1
    return np.frombuffer(bytes(out[:n]), dtype=np.uint8).astype(np.int64)


def fibonacci_numbers(limit=None, count=None):
    """The sequence 1, 1, 2, 3, 5, ... as Python ints."""
    fs = [1, 1]
    while (limit is not None and fs[-1] <= limit) or (count is not None and len(fs) < count):
        fs.append(fs[-1] + fs[-2])
    if limit is not None:
        while fs and fs[-1] > limit:
            fs.pop()
    if count is not None:
        fs = fs[:count]
    return fs


# -- morphisms of the catalog -----------------------------------------------


def period_doubling_morphism():
    return Morphism({"0": ("0", "1"), "1": ("0", "0")})


def complement_pd_morphism():
    return Morphism({"1": ("1", "0"), "0": ("1", "1")})


def exchange_morphism():
    return Morphism({"0": ("1",), "1": ("0",)})


def thue_morse_morphism():
    return Morphism({"0": ("0", "1"), "1": ("1", "0")})


def run_length_morphism():
    return Morphism({"1": ("1", "2", "1"), "2": ("1", "2", "2", "2", "1")})


def doubled_run_length_morphism():
    return Morphism({"2": ("2", "4", "2"), "4": ("2", "4", "4", "4", "2")})


def doubled_run_length_coding():
    return Morphism({"2": ("0", "1"), "4": ("0", "0", "0", "1")})


def generalized_tm_morphism(p):
    letters = [str(j) for j in range(p)]
    return Morphism({a: tuple(str((int(a) + i) % p) for i in range(p)) for a in letters})


def fib_indicator_product_morphism():
    """The morphism read off the product of the Zeckendorf-language DFA and
    the Fibonacci-indicator DFAO, with the bootstrap letter z."""
    rules = {
        "z": ("z", "a0"),
        "a0": ("a1", "a2"),
        "a1": ("a1", "a4"),
        "a2": ("a3", "a7"),
        "a3": ("a3", "a6"),
        "a4": ("a4", "a7"),
        "a5": ("a5", "a6"),
        "a6": ("a5", "a7"),
        "a7": ("a7", "a7"),
    }
    return Morphism(rules)


def fib_indicator_erasing_coding():
    return Morphism(
        {
            "z": (),
            "a0": ("0",),
            "a1": (),
            "a2": ("1",),
            "a3": ("1",),
            "a4": (),
            "a5": ("0",),
            "a6": ("0",),
            "a7": (),
        }
    )


def golden_morphism():
    return Morphism(
        {
            "a": ("a", "b"),
            "b": ("c",),
            "c": ("c", "e"),
            "d": ("d", "e"),
            "e": ("d",),
        }
    )


def golden_coding():
    return Morphism({"a": ("0",), "b": ("1",), "c": ("1",), "d": ("0",), "e": ("0",)})


def morphism_of_product(aut, seed="z"):
    """Morphism + erasing coding generating the S-automatic word of aut.

    aut must be the product of a language DFA and a DFAO over alphabet
    (0, 1), MSD reading, outputs (accept, letter).  Letter i stands for
    state i; the seed letter bootstraps the genealogical enumeration.  The
    coding erases states whose language component rejects and otherwise
    emits the DFAO output.
    """
    if aut.alphabet != (0, 1):
        raise ValueError("construction is stated for alphabet (0, 1)")
    letters = [f"s{i}" for i in range(aut.num_states)]
    rules = {seed: (seed, letters[aut.initial])}
    coding = {seed: ()}
    for i in range(aut.num_states):
        rules[letters[i]] = tuple(letters[aut.step(i, c)] for c in aut.alphabet)
        accept, out = aut.outputs[i]
        coding[letters[i]] = (str(out),) if accept else ()
    return Morphism(rules), Morphism(coding), seed


# -- automata of the catalog -------------------------------------------------


def period_doubling_dfao():
    """Two states generating d: the parity of the trailing block of ones.

    Reading most significant digit first, the second state means "the run
    of ones ending at the current digit has odd length"; a zero resets it.
    The machine does not generate d when fed LSD-first (d_2 would come out
    wrong), because the trailing-run parity must be the last thing tracked.
    """
    trans = {(0, 0): 0, (0, 1): 1, (1, 0): 0, (1, 1): 0}
    return Dfao(("even-run", "odd-run"), 0, (0, 1), trans, (0, 1), "msd")


def inverse_pd_dfao():
    """Five states, LSD-first, generating the formal-inverse coefficients."""
    trans = {
        (0, 0): 1, (0, 1): 2,
        (1, 0): 1, (1, 1): 1,
        (2, 0): 3, (2, 1): 0,
        (3, 0): 4, (3, 1): 3,
        (4, 0): 3, (4, 1): 1,
    }
    return Dfao(("start", "sink0", "one", "mid1", "alt1"), 0, (0, 1), trans, (0, 0, 1, 1, 1), "lsd")


def zeckendorf_language_dfa():
    """Acceptor of the valid Zeckendorf words (empty word included)."""
    trans = {
        (0, 0): 4, (0, 1): 1,
        (1, 0): 2, (1, 1): 4,
        (2, 0): 2, (2, 1): 3,
        (3, 0): 2, (3, 1): 4,
        (4, 0): 4, (4, 1): 4,
    }
    return Dfa(("A", "B", "C", "D", "E"), 0, (0, 1), trans, (True, True, True, True, False), "msd")


def fibonacci_indicator_dfao():
    """Three states over Zeckendorf reps: output 1 exactly on words 10*."""
    trans = {
        (0, 0): 0, (0, 1): 1,
        (1, 0): 1, (1, 1): 2,
        (2, 0): 2, (2, 1): 2,
    }
    return Dfao(("zero0", "one", "zero1"), 0, (0, 1), trans, (0, 1, 0), "msd")


def blocks_language_dfa():
    """Acceptor of {1,00}*."""
    trans = {
        (0, 0): 1, (0, 1): 0,
        (1, 0): 0, (1, 1): 2,
        (2, 0): 2, (2, 1): 2,
    }
    return Dfa(("even0", "half0", "dead"), 0, (0, 1), trans, (True, False, False), "msd")


def odd_ones_language_dfa():
    """Acceptor of {11}*1 (all-ones words of odd length)."""
    trans = {
        (0, 0): 3, (0, 1): 1,
        (1, 0): 3, (1, 1): 2,
        (2, 0): 3, (2, 1): 1,
        (3, 0): 3, (3, 1): 3,
    }
    return Dfa(("start", "odd", "even", "dead"), 0, (0, 1), trans, (False, True, False, False), "msd")


def marked_block_language_dfa():
    """Acceptor of 1{1,00}*0{11}*1 (determinized by hand)."""
    trans = {
        (0, 0): 5, (0, 1): 1,
        (1, 0): 2, (1, 1): 1,
        (2, 0): 1, (2, 1): 3,
        (3, 0): 5, (3, 1): 4,
        (4, 0): 5, (4, 1): 3,
        (5, 0): 5, (5, 1): 5,
    }
    return Dfa(("A", "B", "C", "D", "E", "dead"), 0, (0, 1), trans, (False, False, False, True, False, False), "msd")


def ones_positions_language_dfa():
    """Acceptor of the binary expansions of the positions of ones in u."""
    return automata.union(odd_ones_language_dfa(), marked_block_language_dfa())


LANGUAGES = {
    "lprime": blocks_language_dfa,
    "la": ones_positions_language_dfa,
    "la1": odd_ones_language_dfa,
    "la2": marked_block_language_dfa,
    "lf": zeckendorf_language_dfa,
}


def language(name):
    try:
        return LANGUAGES[name]()
    except KeyError:
        raise ValueError(f"unknown language {name!r}; known: {sorted(LANGUAGES)}") from None


# -- generating functions and relations --------------------------------------


def generating_function(name, precision, p=None):
    seq = sequence(name)
    if p is None:
        p = int(name[2:]) if name.startswith("tp") else 2
    return series.TruncatedSeries(p, seq.prefix(precision))


def pd_gf_relation():
    """X(1+X^2) D^2 + (1+X^2) D + X = 0 over F_2."""
    return series.PolyRelation(
        2,
        (
            ((0, 1, 0, 1), ("pow", 2)),
            ((1, 0, 1), ("pow", 1)),
            ((0, 1), ("pow", 0)),
        ),
    )


def inverse_pd_relation_cubic():
    """X^2 U^3 + X U^2 + (X^2+1) U + X = 0 over F_2."""
    return series.PolyRelation(
        2,
        (
            ((0, 0, 1), ("pow", 3)),
            ((0, 1), ("pow", 2)),
            ((1, 0, 1), ("pow", 1)),
            ((0, 1), ("pow", 0)),
        ),
    )


def inverse_pd_relation_quartic():
    """X^3 U^4 + X^3 U^2 + U + X = 0 over F_2."""
    return series.PolyRelation(
        2,
        (
            ((0, 0, 0, 1), ("pow", 4)),
            ((0, 0, 0, 1), ("pow", 2)),
            ((1,), ("pow", 1)),
            ((0, 1), ("pow", 0)),
        ),
    )


def _binomial_poly_mod(exponent, p):
    """(1 - X)^exponent reduced mod p, lowest degree first."""
    coeffs = [1]
    for _ in range(exponent):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = (nxt[i] + c) % p
            nxt[i + 1] = (nxt[i + 1] - c) % p
        coeffs = nxt
    return tuple(coeffs)


def generalized_tm_relation(p):
    """(1-X)^(p+1) T^p - (1-X)^2 T + X = 0 over F_p."""
    minus = p - 1
    neg_sq = tuple(minus * c % p for c in _binomial_poly_mod(2, p))
    return series.PolyRelation(
        p,
        (
            (_binomial_poly_mod(p + 1, p), ("pow", p)),
            (neg_sq, ("pow", 1)),
            ((0, 1), ("pow", 0)),
        ),
    )


def inverse_gtm_series(p, precision):
    """Formal inverse of the generalized Thue-Morse generating function."""
    t = series.TruncatedSeries(p, digit_sum_mod_prefix(precision, p))
    return series.reversion(t)


def series_by_name(name, precision, p=None):
    """Series for the CLI: gf:<seq>, inv:<seq>, or u / up{p} shorthands."""
    if name == "u":
        return series.reversion(series.TruncatedSeries(2, period_doubling_prefix(precision)))
    if name.startswith("up"):
        return inverse_gtm_series(int(name[2:]), precision)
    if name.startswith("inv:"):
        base = generating_function(name[4:], precision, p)
        return series.reversion(base)
    if name.startswith("gf:"):
        return generating_function(name[3:], precision, p)
    return generating_function(name, precision, p)


# -- the sequence registry ----------------------------------------------------


@dataclass
class NamedSequence:
    name: str
    description: str
    build: callable
    value_kind: str = "residue"
    alternates: dict = field(default_factory=dict)
    identities: dict = field(default_factory=dict)
    _cache: np.ndarray = field(default=None, repr=False)

    def prefix(self, n):
        if self._cache is None or len(self._cache) < n:
            data = np.asarray(self.build(max(n, 64)))
            data.setflags(write=False)
            self._cache = data
        return self._cache[:n]

    def term(self, n):
        return int(self.prefix(n + 1)[n])

    def stream(self):
        n = 0
        chunk = 1024
        while True:
            data = self.prefix(n + chunk)
            if len(data) < n + chunk:
                yield from (int(x) for x in data[n:])
                return
            yield from (int(x) for x in data[n : n + chunk])
            n += chunk
            chunk *= 2


def _positions(indicator_prefix, value):
    def build(count):
        size = max(4 * count, 64)
        while True:
            data = indicator_prefix(size)
            hits = np.nonzero(data == value)[0].astype(np.int64)
            if len(hits) >= count:
                return hits[:count]
            size *= 2

    return build


def _a_build(count):
    limit = 64
    while True:
        hits = inverse_pd_ones_below(limit)
        if len(hits) >= count:
            return hits[:count]
        limit *= 2


def _delta_build(count):
    a = sequence("a").prefix(count + 1).astype(np.int64)
    return ((np.diff(a) % 3) != 0).astype(np.int64)


def _x_build(count):
    out = np.zeros(count, dtype=np.int64)
    for f in fibonacci_numbers(limit=count - 1):
        out[f] = 1
    return out


def _x_via_zeckendorf(count):
    zeck = numeration.Zeckendorf()
    m = fibonacci_indicator_dfao()
    return np.array([numeration.automatic_eval(zeck, m, n) for n in range(count)], dtype=np.int64)


def _x_via_golden_morphism(count):
    word = morphic_word_prefix(golden_morphism(), golden_coding(), "a", count)
    return np.array([int(c) for c in word], dtype=np.int64)


def _fib_build(count):
    return np.array(fibonacci_numbers(count=count), dtype=object)


def _morphic_ints(morphism, seed, count):
    return np.array([int(c) for c in fixed_point_prefix(morphism, seed, count)], dtype=np.int64)


def _d_via_morphism(count):
    return _morphic_ints(period_doubling_morphism(), "0", count)


def _d_via_dfao(count):
    return np.asarray(automata.evaluate_range(period_doubling_dfao(), count), dtype=np.int64)


def _d_via_coded_runs(count):
    word = morphic_word_prefix(doubled_run_length_morphism(), doubled_run_length_coding(), "2", count)
    return np.array([int(c) for c in word], dtype=np.int64)


def _u_via_reversion(count):
    d_series = series.TruncatedSeries(2, period_doubling_prefix(count))
    return series.reversion(d_series).coeffs


def _u_via_dfao(count):
    return np.asarray(automata.evaluate_range(inverse_pd_dfao(), count), dtype=np.int64)


def _t_via_morphism(count):
    return _morphic_ints(thue_morse_morphism(), "0", count)


def _p_via_run_lengths(count):
    from .morphisms import run_lengths

    t = sequence("t")
    need = 4 * count + 16
    return np.array(run_lengths(iter(t.prefix(need).tolist()), count), dtype=np.int64)


def _p_via_doubled_morphism(count):
    return _morphic_ints(doubled_run_length_morphism(), "2", count) // 2


def _z_via_tm_alternations(count):
    t = sequence("t")
    need = max(4 * count, 64)
    while True:
        data = t.prefix(need)
        hits = np.nonzero(np.diff(data) != 0)[0].astype(np.int64)
        if len(hits) >= count:
            return hits[:count]
        need *= 2


def _a_via_ans(count):
    ans = numeration.Ans(ones_positions_language_dfa())
    vals = []
    for n in range(count):
        word = ans.rep(n)
        vals.append(int("".join(map(str, word)), 2))
    return np.array(vals, dtype=np.int64)


def _delta_via_x(count):
    return sequence("x").prefix(count + 2)[2:].copy()


# identity cross-checks tied to specific sequences


def _z_run_length_identity(n):
    """Gaps of z are the Thue-Morse run lengths, offset by one block.

    z marks the ends of the maximal blocks of t, so z[0]+1 is the first
    block length and z[k+1]-z[k] the length of block k+1.
    """
    z = sequence("z").prefix(n + 1).astype(np.int64)
    p = sequence("p").prefix(n + 1).astype(np.int64)
    if int(z[0]) + 1 != int(p[0]):
        return False, f"first block: z[0]+1={int(z[0])+1} != p[0]={int(p[0])}"
    gaps = np.diff(z)
    mismatch = np.nonzero(gaps != p[1 : n + 1])[0]
    if len(mismatch):
        i = int(mismatch[0])
        return False, f"gap {i}: z diff {int(gaps[i])} != p[{i + 1}]={int(p[i + 1])}"
    return True, None


def _o_run_length_identity(n):
    """Gaps of o are the shifted fixed point of 2->242, 4->24442."""
    o = sequence("o").prefix(n + 1).astype(np.int64)
    w = _morphic_ints(doubled_run_length_morphism(), "2", n + 2)
    gaps = np.diff(o)
    mismatch = np.nonzero(gaps != w[1 : n + 1])[0]
    if len(mismatch):
        i = int(mismatch[0])
        return False, f"gap {i}: o diff {int(gaps[i])} != word[{i + 1}]={int(w[i + 1])}"
    return True, None


def _d_complement_is_tm_difference(n):
    """1-d equals the first difference of Thue-Morse reduced mod 2."""
    d = sequence("d").prefix(n).astype(np.int64)
    t = sequence("t").prefix(n + 1).astype(np.int64)
    lhs = 1 - d
    rhs = np.diff(t) % 2
    mismatch = np.nonzero(lhs != rhs)[0]
    if len(mismatch):
        i = int(mismatch[0])
        return False, f"index {i}: 1-d={int(lhs[i])} != diff(t)%2={int(rhs[i])}"
    return True, None


def _a_mod3_run_identity(n):
    """Run lengths of (a mod 3) follow the Fibonacci numbers."""
    a = sequence("a").prefix(n).astype(np.int64)
    runs = _run_lengths_of_array(a % 3)
    fib = fibonacci_numbers(count=len(runs))
    complete = runs[:-1]  # last run may be cut by the horizon
    for i, r in enumerate(complete):
        if r != fib[i]:
            return False, f"run {i}: length {r} != F({i})={fib[i]}"
    return True, None


def _run_lengths_of_array(arr):
    if len(arr) == 0:
        return []
    boundaries = np.nonzero(np.diff(arr) != 0)[0]
    starts = np.concatenate([[0], boundaries + 1])
    ends = np.concatenate([boundaries + 1, [len(arr)]])
    return [int(e - s) for s, e in zip(starts, ends)]


_REGISTRY = {}


def _register(seq):
    _REGISTRY[seq.name] = seq
    return seq


def _build_registry():
    _register(
        NamedSequence(
            "d",
            "period-doubling sequence",
            period_doubling_prefix,
            alternates={
                "uniform-morphism": _d_via_morphism,
                "lsd-automaton": _d_via_dfao,
                "coded-run-length-morphism": _d_via_coded_runs,
            },
            identities={"tm-first-difference": _d_complement_is_tm_difference},
        )
    )
    _register(
        NamedSequence(
            "t",
            "Thue-Morse sequence",
            thue_morse_prefix,
            alternates={"uniform-morphism": _t_via_morphism},
        )
    )
    _register(
        NamedSequence(
            "p",
            "run lengths of Thue-Morse",
            run_length_word_prefix,
            alternates={
                "run-length-scan": _p_via_run_lengths,
                "doubled-alphabet-morphism": _p_via_doubled_morphism,
            },
        )
    )
    _register(
        NamedSequence(
            "u",
            "coefficients of the formal inverse of the period-doubling series",
            inverse_pd_prefix,
            alternates={
                "series-reversion": _u_via_reversion,
                "lsd-automaton": _u_via_dfao,
            },
        )
    )
    _register(
        NamedSequence(
            "z",
            "positions of zeros in the period-doubling sequence",
            _positions(period_doubling_prefix, 0),
            value_kind="integer",
            alternates={"tm-alternation-positions": _z_via_tm_alternations},
            identities={"run-length-gaps": _z_run_length_identity},
        )
    )
    _register(
        NamedSequence(
            "o",
            "positions of ones in the period-doubling sequence",
            _positions(period_doubling_prefix, 1),
            value_kind="integer",
            identities={"run-length-gaps": _o_run_length_identity},
        )
    )
    _register(
        NamedSequence(
            "a",
            "positions of ones in the formal-inverse coefficient sequence",
            _a_build,
            value_kind="integer",
            alternates={"genealogical-unrank": _a_via_ans},
            identities={"mod3-fibonacci-runs": _a_mod3_run_identity},
        )
    )
    _register(
        NamedSequence(
            "b",
            "positions of zeros in the formal-inverse coefficient sequence",
            _positions(inverse_pd_prefix, 0),
            value_kind="integer",
        )
    )
    _register(
        NamedSequence(
            "delta",
            "indicator of consecutive a-terms differing mod 3",
            _delta_build,
            alternates={"fibonacci-indicator-shift": _delta_via_x},
        )
    )
    _register(
        NamedSequence(
            "x",
            "characteristic sequence of the Fibonacci numbers 1,2,3,5,...",
            _x_build,
            alternates={
                "zeckendorf-automaton": _x_via_zeckendorf,
                "golden-morphism": _x_via_golden_morphism,
            },
        )
    )
    _register(
        NamedSequence(
            "F",
            "Fibonacci numbers with F(0)=F(1)=1",
            _fib_build,
            value_kind="integer",
        )
    )
    for p in (2, 3, 5, 7):
        _register(
            NamedSequence(
                f"tp{p}",
                f"base-{p} digit sum reduced mod {p}",
                (lambda pp: lambda n: digit_sum_mod_prefix(n, pp))(p),
                alternates={
                    "uniform-morphism": (
                        lambda pp: lambda n: _morphic_ints(generalized_tm_morphism(pp), "0", n)
                    )(p)
                },
            )
        )


_build_registry()


def sequence(name):
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown sequence {name!r}; known: {sorted(_REGISTRY)}") from None


def sequence_names():
    return sorted(_REGISTRY)


@dataclass
class CrossCheckReport:
    name: str
    horizon: int
    passed: bool
    failures: list  # (definition, index-or-None, expected, got) or (identity, detail)

    def __str__(self):
        if self.passed:
            return f"cross_check({self.name}, {self.horizon}): pass"
        lines = [f"cross_check({self.name}, {self.horizon}): FAIL"]
        for f in self.failures:
            lines.append(f"  {f}")
        return "\n".join(lines)


def cross_check(name, n, extra_definitions=None):
    """Compare every registered definition of the sequence termwise.

    extra_definitions maps label -> prefix function; the harness self-test
    injects a corrupted definition this way.
    """
    seq = sequence(name)
    reference = seq.prefix(n)
    failures = []
    definitions = dict(seq.alternates)
    if extra_definitions:
        definitions.update(extra_definitions)
    for label, build in definitions.items():
        got = np.asarray(build(n))[:n]
        if len(got) != n:
            failures.append((label, None, f"{n} terms", f"{len(got)} terms"))
            continue
        mismatch = np.nonzero(np.asarray(reference, dtype=np.int64) != np.asarray(got, dtype=np.int64))[0]
        if len(mismatch):
            i = int(mismatch[0])
            failures.append((label, i, int(reference[i]), int(got[i])))
    for label, identity in seq.identities.items():
        ok, detail = identity(n)
        if not ok:
            failures.append((label, detail))
    return CrossCheckReport(name, n, not failures, failures)


def bfile_lines(name, count, offset=0):
    """OEIS-style b-file lines: '<index> <value>' per term."""
    seq = sequence(name)
    values = seq.prefix(count)
    return [f"{offset + i} {int(v)}" for i, v in enumerate(values)]
