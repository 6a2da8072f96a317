"""Morphisms on finite alphabets: fixed points, codings and spectral data.

Letters are strings, words are tuples of letters.  Fixed points are produced
by a lazy work-queue expansion so that prefix generation is O(1) amortized
per letter and never materializes more than a bounded lookahead.  Spectral
radii of incidence matrices are computed from exact integer characteristic
polynomials with Sturm-sequence root isolation; no floating-point linear
algebra is involved, so the results can feed exact multiplicative
independence tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

__all__ = [
    "Morphism",
    "IncidenceMatrix",
    "fixed_point",
    "fixed_point_prefix",
    "morphic_word",
    "morphic_word_prefix",
    "remove_erasure",
    "trim_to_prolongable",
    "PerronFrobenius",
    "ExactEigenvalue",
    "pf_eigenvalue",
    "multiplicatively_independent",
    "run_lengths",
    "equivalent_up_to_renaming",
    "find_small_period",
]


class Morphism:
    """A map A* -> B* given by the images of single letters."""

    __slots__ = ("rules",)

    def __init__(self, rules):
        self.rules = {a: tuple(w) for a, w in rules.items()}

    @property
    def alphabet(self):
        return tuple(self.rules)

    @property
    def non_erasing(self):
        return all(len(w) > 0 for w in self.rules.values())

    def is_uniform(self, k):
        return all(len(w) == k for w in self.rules.values())

    @property
    def is_coding(self):
        return self.is_uniform(1)

    def __call__(self, word):
        out = []
        for a in word:
            try:
                out.extend(self.rules[a])
            except KeyError:
                raise ValueError(f"letter {a!r} outside the domain alphabet") from None
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.rules == other.rules

    def __repr__(self):
        body = ", ".join(f"{a}->{''.join(map(str, w))}" for a, w in self.rules.items())
        return f"Morphism({body})"

    def restricted(self, letters):
        letters = set(letters)
        missing = letters - set(self.rules)
        if missing:
            raise ValueError(f"letters {sorted(missing)} not in the domain")
        return Morphism({a: w for a, w in self.rules.items() if a in letters})

    def incidence_matrix(self):
        return IncidenceMatrix.of(self)

    def to_text(self, seed=None):
        lines = []
        if seed is not None:
            lines.append(f"seed {seed}")
        for a, w in self.rules.items():
            lines.append(f"{a} -> {' '.join(map(str, w))}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        """Parse the rule format; returns (morphism, seed_or_None)."""
        rules = {}
        seed = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("seed "):
                seed = line.split(None, 1)[1].strip()
                continue
            if "->" not in line:
                raise ValueError(f"unparseable rule: {raw!r}")
            lhs, rhs = line.split("->", 1)
            letter = lhs.strip()
            if not letter or len(letter.split()) != 1:
                raise ValueError(f"rule needs a single source letter: {raw!r}")
            rules[letter] = tuple(rhs.split())
        return cls(rules), seed


@dataclass(frozen=True)
class IncidenceMatrix:
    """Square count matrix: entry (a, b) is the number of a's in image(b)."""

    alphabet: tuple
    counts: tuple  # row-major tuple of tuples

    @classmethod
    def of(cls, morphism):
        letters = morphism.alphabet
        rows = []
        for a in letters:
            rows.append(tuple(morphism.rules[b].count(a) for b in letters))
        return cls(letters, tuple(rows))

    @classmethod
    def from_array(cls, array, alphabet=None):
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("incidence matrix must be square")
        if (arr < 0).any():
            raise ValueError("incidence entries must be nonnegative")
        letters = tuple(alphabet) if alphabet else tuple(str(i) for i in range(arr.shape[0]))
        return cls(letters, tuple(tuple(int(x) for x in row) for row in arr))

    @property
    def size(self):
        return len(self.alphabet)

    def as_array(self):
        return np.array(self.counts, dtype=np.int64)


# -- fixed points ---------------------------------------------------------


def _check_prolongable(m, seed):
    if not m.non_erasing:
        raise ValueError("fixed points need a non-erasing morphism")
    image = m.rules.get(seed)
    if image is None:
        raise ValueError(f"seed {seed!r} not in the alphabet")
    if len(image) < 2 or image[0] != seed:
        raise ValueError(f"morphism is not prolongable on {seed!r}")


def fixed_point(m, seed):
    """Lazy stream of the fixed point of m starting with seed.

    The fixed point w satisfies w = m(w); the buffer below is exactly
    m(w_0) m(w_1) ... and stays ahead of the read pointer because the
    morphism is non-erasing and the seed image has length >= 2.
    """
    _check_prolongable(m, seed)
    buffer = list(m.rules[seed])
    expand_at = 1
    emit_at = 0
    while True:
        if emit_at == len(buffer):
            buffer.extend(m.rules[buffer[expand_at]])
            expand_at += 1
        yield buffer[emit_at]
        emit_at += 1


def fixed_point_prefix(m, seed, n):
    """First n letters of the fixed point, as a tuple."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    return tuple(itertools.islice(fixed_point(m, seed), n))


def morphic_word(f, g, seed):
    """Stream of g(f^omega(seed)); g may erase letters."""
    for a in fixed_point(f, seed):
        yield from g.rules[a]


def morphic_word_prefix(f, g, seed, n):
    return tuple(itertools.islice(morphic_word(f, g, seed), n))


# -- erasure removal ------------------------------------------------------


def remove_erasure(f, g, erasable):
    """Push an erasing coding through the iterated morphism.

    erasable must be a set of letters that g erases and that f maps into
    words over erasable letters only (a submorphism).  Dropping those
    letters from every f-image and restricting both maps to the rest leaves
    the generated word unchanged.
    """
    erasable = set(erasable)
    for c in erasable:
        if c not in f.rules:
            raise ValueError(f"letter {c!r} not in the domain")
        if g.rules.get(c, None) != ():
            raise ValueError(f"letter {c!r} is not erased by the coding")
        if any(x not in erasable for x in f.rules[c]):
            raise ValueError(f"image of {c!r} leaves the erasable subalphabet")
    keep = [a for a in f.alphabet if a not in erasable]
    f_eps = Morphism({a: tuple(x for x in f.rules[a] if x not in erasable) for a in keep})
    g_eps = Morphism({a: g.rules[a] for a in keep})
    return f_eps, g_eps


def trim_to_prolongable(f, g, seed):
    """Drop a seed letter that the coding erases and that only bootstraps.

    Requires f(seed) = seed w for a single letter w that never occurs in
    other images (and the seed itself occurs nowhere else).  The returned
    morphism maps w to w f(w), which is prolongable on w and generates the
    original word with the erased seed removed.
    """
    image = f.rules.get(seed)
    if image is None:
        raise ValueError(f"seed {seed!r} not in the alphabet")
    if g.rules.get(seed, None) != ():
        raise ValueError("the seed must be erased by the coding")
    if len(image) < 2 or image[0] != seed:
        raise ValueError(f"morphism is not prolongable on {seed!r}")
    tail = image[1:]
    if len(tail) != 1:
        raise ValueError("construction inapplicable: seed image must be seed plus one letter")
    new_seed = tail[0]
    rest = [a for a in f.alphabet if a != seed]
    for a in rest:
        body = f.rules[a] if a != new_seed else f.rules[a]
        if seed in body:
            raise ValueError("construction inapplicable: seed occurs in another image")
        if new_seed in f.rules[a]:
            raise ValueError("construction inapplicable: new seed occurs in an image")
    rules = {a: f.rules[a] for a in rest}
    rules[new_seed] = (new_seed,) + f.rules[new_seed]
    f_prime = Morphism(rules)
    g_prime = Morphism({a: g.rules[a] for a in rest})
    return f_prime, g_prime, new_seed


# -- exact spectral radius -------------------------------------------------


@dataclass(frozen=True)
class ExactEigenvalue:
    """Exact description of an algebraic eigenvalue.

    kind is "integer" (value stored in n) or "quadratic" (monic minimal
    polynomial x^2 + b x + c stored as (c, b)).
    """

    kind: str
    data: tuple

    @classmethod
    def integer(cls, n):
        return cls("integer", (int(n),))

    @classmethod
    def quadratic(cls, c, b):
        return cls("quadratic", (int(c), int(b)))

    def minimal_polynomial(self):
        """Coefficients lowest degree first, monic."""
        if self.kind == "integer":
            return (-self.data[0], 1)
        c, b = self.data
        return (c, b, 1)

    def __str__(self):
        if self.kind == "integer":
            return str(self.data[0])
        c, b = self.data
        out = "x^2"
        if b:
            out += f" {'+' if b > 0 else '-'} {abs(b)}x" if abs(b) != 1 else f" {'+' if b > 0 else '-'} x"
        if c:
            out += f" {'+' if c > 0 else '-'} {abs(c)}"
        return out


@dataclass(frozen=True)
class PerronFrobenius:
    value: float
    tag: ExactEigenvalue | None


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_deriv(p):
    return _poly_trim([i * c for i, c in enumerate(p)][1:] or [Fraction(0)])


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        factor = Fraction(a[-1], 1) / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    return _poly_trim(q), _poly_trim(a or [Fraction(0)])


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sturm_chain(p):
    chain = [_poly_trim(list(p)), _poly_deriv(p)]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        _, r = _poly_divmod(chain[-2], chain[-1])
        r = [-c for c in r]
        if len(r) == 1 and r[0] == 0:
            break
        chain.append(r)
    return chain


def _sign_variations(chain, x):
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _squarefree(p):
    d = _poly_deriv(p)
    g = _poly_gcd(p, d)
    if len(g) == 1:
        return _poly_trim(list(p))
    q, _ = _poly_divmod(p, g)
    return q


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while not (len(b) == 1 and b[0] == 0):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a[-1] != 0:
        a = [c / a[-1] for c in a]
    return a


def largest_real_root(int_poly, width=Fraction(1, 10**14)):
    """Isolating interval (lo, hi] of the largest real root, exact endpoints.

    int_poly has integer coefficients, lowest degree first; it must have at
    least one real root.  Returns (lo, hi, sturm_chain, squarefree_poly).
    """
    p = _squarefree([Fraction(c) for c in int_poly])
    chain = _sturm_chain(p)
    lead = p[-1]
    bound = Fraction(1) + max(abs(c / lead) for c in p)
    lo, hi = -bound, bound
    if _sign_variations(chain, lo) - _sign_variations(chain, hi) == 0:
        raise ValueError("polynomial has no real root")
    # keep hi above every root, move lo up to just below the largest root
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _sign_variations(chain, mid) - _sign_variations(chain, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi, chain, p


def _char_poly(matrix):
    """det(xI - M) as integer coefficients, lowest degree first.

    Leverrier-Faddeev via Newton's identities on exact power sums; the
    elementary symmetric functions of an integer matrix are integers.
    """
    m = np.asarray(matrix, dtype=object)
    n = m.shape[0]
    power = np.eye(n, dtype=object)
    s = []
    for _ in range(n):
        power = power @ m
        s.append(Fraction(int(np.trace(power))))
    e = [Fraction(1)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * s[i - 1]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(n + 1)]  # x^(n-k) coefficient
    out = list(reversed(coeffs))
    assert all(c.denominator == 1 for c in out)
    return [int(c) for c in out]


def _sccs(adjacency):
    """Strongly connected components by mutual reachability (tiny graphs)."""
    n = len(adjacency)
    reach = [[bool(adjacency[i][j]) or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    seen = set()
    comps = []
    for i in range(n):
        if i in seen:
            continue
        comp = [j for j in range(n) if reach[i][j] and reach[j][i]]
        seen.update(comp)
        comps.append(comp)
    return comps


def _exact_tag(int_poly, lo, hi, chain):
    """Integer or monic-quadratic tag for the root isolated in (lo, hi]."""
    p = [Fraction(c) for c in int_poly]
    # integer candidates inside the interval
    k = int(hi) + 1
    while k >= int(lo) - 1:
        if lo < k <= hi and _poly_eval(p, Fraction(k)) == 0:
            return ExactEigenvalue.integer(k)
        k -= 1
    # monic quadratic divisors x^2 + b x + c with the isolated root inside
    bound = int(hi) + 1
    for b in range(-2 * bound - 2, 2 * bound + 3):
        for c in range(-bound * bound - bound - 2, bound * bound + bound + 3):
            disc = b * b - 4 * c
            if disc <= 0 or isqrt(disc) ** 2 == disc:
                continue  # want a quadratic irrational
            q = [Fraction(c), Fraction(b), Fraction(1)]
            _, rem = _poly_divmod(p, q)
            if not (len(rem) == 1 and rem[0] == 0):
                continue
            vlo, vhi = _poly_eval(q, lo), _poly_eval(q, hi)
            if vhi == 0 or (vlo < 0 < vhi) or (vhi < 0 < vlo):
                # q has a root in (lo, hi], which is the isolated root
                return ExactEigenvalue.quadratic(c, b)
    return None


def pf_eigenvalue(matrix):
    """Largest spectral radius over the strongly connected blocks.

    Accepts an IncidenceMatrix or a square nonnegative integer array.  The
    result carries a float accurate to 1e-9 and, when the dominant root is
    an integer or a quadratic irrational, an exact tag.
    """
    if isinstance(matrix, IncidenceMatrix):
        arr = matrix.as_array()
    else:
        arr = np.asarray(matrix, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("matrix must be square")
    if (arr < 0).any():
        raise ValueError("matrix must be nonnegative")
    n = arr.shape[0]
    if n == 0:
        return PerronFrobenius(0.0, ExactEigenvalue.integer(0))

    best = None  # (lo, hi, poly, chain)
    for comp in _sccs(arr.tolist()):
        sub = arr[np.ix_(comp, comp)]
        if not sub.any():
            lo, hi = Fraction(-1, 10**15), Fraction(0)
            poly = [0, 1]
            chain = None
        else:
            poly = _char_poly(sub)
            lo, hi, chain, _ = largest_real_root(poly)
        if best is None or hi > best[1]:
            best = (lo, hi, poly, chain)
    lo, hi, poly, chain = best
    if chain is None:
        return PerronFrobenius(0.0, ExactEigenvalue.integer(0))
    tag = _exact_tag(poly, lo, hi, chain)
    value = float((lo + hi) / 2)
    if tag is not None and tag.kind == "integer":
        value = float(tag.data[0])
    return PerronFrobenius(value, tag)


# -- multiplicative independence -------------------------------------------


def _prime_signature(n):
    sig = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            sig[d] = sig.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        sig[n] = sig.get(n, 0) + 1
    return sig


def _integers_dependent(a, b):
    if a == 1 or b == 1:
        return True
    sa, sb = _prime_signature(a), _prime_signature(b)
    if set(sa) != set(sb):
        return False
    items = sorted(sa)
    e = [sa[q] for q in items]
    f = [sb[q] for q in items]
    return all(e[i] * f[j] == e[j] * f[i] for i in range(len(e)) for j in range(len(e)))


class _QuadInt:
    """Exact arithmetic in Q(sqrt(D)): a + b sqrt(D) with Fraction parts."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a, self.b, self.d = Fraction(a), Fraction(b), d

    def __mul__(self, other):
        return _QuadInt(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def __eq__(self, other):
        return self.a == other.a and self.b == other.b and self.d == other.d

    def power(self, n):
        out = _QuadInt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def to_float(self):
        return float(self.a) + float(self.b) * self.d**0.5


def _quad_root(tag):
    """The larger root of x^2 + bx + c as a _QuadInt plus its field tag."""
    c, b = tag.data
    disc = b * b - 4 * c
    sf = disc
    # squarefree part of the discriminant identifies the field
    f = 2
    square = 1
    while f * f <= sf:
        while sf % (f * f) == 0:
            sf //= f * f
            square *= f
        f += 1
    # root = (-b + square*sqrt(sf)) / 2
    return _QuadInt(Fraction(-b, 2), Fraction(square, 2), sf), sf


def multiplicatively_independent(alpha, beta):
    """True when alpha^k = beta^l forces k = l = 0.

    Descriptors are exact: positive ints, or ExactEigenvalue tags.  Integer
    pairs reduce to prime-signature proportionality.  A quadratic irrational
    with nonzero trace has no rational power, so it is independent from
    every integer; a trace-zero quadratic sqrt(m) reduces to the integer
    case via its square.  Two quadratics are compared inside their common
    field (different fields raise ValueError), using the forced exponent
    ratio log(beta)/log(alpha) and exact verification of candidate powers.
    """
    return not _dependent(_normalize(alpha), _normalize(beta))


def _normalize(x):
    if isinstance(x, (int, np.integer)):
        if x < 1:
            raise ValueError("integer descriptors must be positive")
        return ExactEigenvalue.integer(int(x))
    if isinstance(x, ExactEigenvalue):
        return x
    raise ValueError(f"unsupported descriptor {x!r}")


def _dependent(x, y):
    if x.kind == "integer" and y.kind == "integer":
        return _integers_dependent(x.data[0], y.data[0])
    if x.kind == "integer":
        return _dependent(y, x)
    if y.kind == "integer":
        c, b = x.data
        n = y.data[0]
        if b != 0:
            # nonzero trace: conjugation would force the root to equal
            # its conjugate if any power were rational
            return n == 1
        m = -c  # root is sqrt(m)
        if m <= 1:
            return True
        return _integers_dependent(m, n) if n > 1 else True
    # quadratic vs quadratic
    ra, da = _quad_root(x)
    rb, db = _quad_root(y)
    if da != db:
        raise ValueError("quadratic descriptors from different fields are unsupported")
    fa, fb = ra.to_float(), rb.to_float()
    if fa <= 1 or fb <= 1:
        raise ValueError("descriptors must exceed 1")
    if x == y:
        return True
    # any dependency alpha^i = beta^j forces j/i = log alpha / log beta
    import math as _math

    t = _math.log(fa) / _math.log(fb)
    # scan continued-fraction convergents and verify candidates exactly
    frac = Fraction(t).limit_denominator(64)
    for cand in {frac, Fraction(round(t * 64), 64)}:
        i, j = cand.denominator, cand.numerator
        if j > 0 and 0 < i <= 64 and j <= 256 and ra.power(i) == rb.power(j):
            return True
    return False


# -- word utilities ---------------------------------------------------------


def run_lengths(stream, n):
    """Lengths of the first n maximal blocks of equal consecutive letters.

    The stream must extend past the n-th block so the block is known to be
    complete; otherwise a ValueError is raised.
    """
    if n <= 0:
        return ()
    out = []
    it = iter(stream)
    try:
        current = next(it)
    except StopIteration:
        raise ValueError("empty stream") from None
    count = 1
    for letter in it:
        if letter == current:
            count += 1
        else:
            out.append(count)
            if len(out) == n:
                return tuple(out)
            current = letter
            count = 1
    raise ValueError(f"stream ended with only {len(out)} complete blocks")


def find_small_period(prefix, max_period=2048, max_preperiod=2048):
    """Smallest (preperiod, period) visible in the prefix, or None.

    Bounded evidence only: the prefix must be at least 4*(max_period +
    max_preperiod) long so a reported absence is meaningful; absence means
    "no small period", never "aperiodic".
    """
    need = 4 * (max_period + max_preperiod)
    if len(prefix) < need:
        raise ValueError(f"prefix too short: need {need} letters")
    for period in range(1, max_period + 1):
        # largest preperiod needed: first index from which prefix is periodic
        ok_from = len(prefix) - period
        for i in range(len(prefix) - period - 1, -1, -1):
            if prefix[i] == prefix[i + period]:
                ok_from = i
            else:
                break
        if ok_from <= max_preperiod:
            return ok_from, period
    return None


def equivalent_up_to_renaming(f1, g1, seed1, f2, g2, seed2):
    """Letter bijection carrying (f1, g1, seed1) onto (f2, g2, seed2).

    The bijection acts on the domain alphabet only; coding outputs must
    match exactly.  Constraint propagation from the forced seed pairing
    settles every letter reachable from the seed; leftovers (if any) are
    brute-forced.  Returns the mapping dict or None.
    """
    a1, a2 = f1.alphabet, f2.alphabet
    if len(a1) != len(a2):
        return None

    def try_complete(mapping):
        # verify and extend a partial mapping by propagation
        pending = list(mapping.items())
        mapping = dict(mapping)
        used = set(mapping.values())
        while pending:
            x, y = pending.pop()
            if g1.rules.get(x, None) != g2.rules.get(y, None):
                return None
            w1, w2 = f1.rules[x], f2.rules[y]
            if len(w1) != len(w2):
                return None
            for u, v in zip(w1, w2):
                if u in mapping:
                    if mapping[u] != v:
                        return None
                elif v in used:
                    return None
                else:
                    mapping[u] = v
                    used.add(v)
                    pending.append((u, v))
        return mapping

    base = try_complete({seed1: seed2})
    if base is None:
        return None
    rest1 = [x for x in a1 if x not in base]
    rest2 = [y for y in a2 if y not in set(base.values())]
    for perm in itertools.permutations(rest2):
        candidate = dict(base)
        candidate.update(zip(rest1, perm))
        final = try_complete(candidate)
        if final is not None and len(final) == len(a1):
            return final
    return None
