"""Truncated formal power series over a prime field F_p.

Coefficients live in [0, p) and every series carries an explicit precision
horizon N: a series is its first N coefficients, index n holding the
coefficient of X^n.  All operations are exact; floating point only appears
inside FFT convolution whose intermediate values are provably below 2**52.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

__all__ = [
    "TruncatedSeries",
    "PolyRelation",
    "mul",
    "compose",
    "reversion",
    "relation_residual",
    "power_relation_search",
]

_FFT_THRESHOLD = 2048


def _is_prime(p):
    if p < 2:
        return False
    for q in range(2, int(math.isqrt(p)) + 1):
        if p % q == 0:
            return False
    return True


def _conv_mod(a, b, p, out_len):
    """Exact convolution of two reduced-mod-p int arrays, truncated to out_len."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return np.zeros(out_len, dtype=np.int64)
    if la + lb <= _FFT_THRESHOLD:
        c = np.convolve(a, b)
    else:
        # Exactness: every convolution value is at most min(la, lb)*(p-1)^2,
        # far below 2**52, so rounding the FFT result recovers the integer.
        bound = min(la, lb) * (p - 1) ** 2
        if bound >= (1 << 52):
            c = np.convolve(a, b)
        else:
            c = np.rint(fftconvolve(a.astype(np.float64), b.astype(np.float64)))
            c = c.astype(np.int64)
    c = c[:out_len] % p
    if len(c) < out_len:
        c = np.concatenate([c, np.zeros(out_len - len(c), dtype=np.int64)])
    return c


class TruncatedSeries:
    """A power series over F_p known up to X^(N-1)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        c = np.asarray(coeffs, dtype=np.int64) % p
        if c.ndim != 1 or len(c) < 1:
            raise ValueError("a series needs at least one coefficient")
        c.setflags(write=False)
        self.p = p
        self.coeffs = c

    @property
    def precision(self):
        return len(self.coeffs)

    @classmethod
    def zero(cls, p, precision):
        return cls(p, np.zeros(precision, dtype=np.int64))

    @classmethod
    def one(cls, p, precision):
        c = np.zeros(precision, dtype=np.int64)
        c[0] = 1
        return cls(p, c)

    @classmethod
    def identity(cls, p, precision):
        """The series X."""
        c = np.zeros(precision, dtype=np.int64)
        if precision > 1:
            c[1] = 1
        return cls(p, c)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.p == other.p
            and self.precision == other.precision
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.p, self.coeffs.tobytes()))

    def __repr__(self):
        head = ",".join(str(int(c)) for c in self.coeffs[:12])
        tail = ",..." if self.precision > 12 else ""
        return f"TruncatedSeries(p={self.p}, N={self.precision}, [{head}{tail}])"

    def _check_same_field(self, other):
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} != {other.p}")

    def truncate(self, precision):
        if precision > self.precision:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.p, self.coeffs[:precision])

    def is_zero(self):
        return not self.coeffs.any()

    def agrees_with(self, other):
        """Equality of coefficients up to the smaller precision."""
        self._check_same_field(other)
        n = min(self.precision, other.precision)
        return bool(np.array_equal(self.coeffs[:n], other.coeffs[:n]))

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.p, (self.coeffs[:n] + other.coeffs[:n]) % self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.p, (self.coeffs[:n] - other.coeffs[:n]) % self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.p, (self.coeffs * (other % self.p)) % self.p)
        return mul(self, other)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_same_field(other)
            return other
        if isinstance(other, int):
            c = np.zeros(self.precision, dtype=np.int64)
            c[0] = other % self.p
            return TruncatedSeries(self.p, c)
        raise TypeError(f"cannot combine series with {type(other)!r}")

    def frobenius(self, i=1):
        """The series with X replaced by X^(p^i), truncated to this precision."""
        q = self.p**i
        n = self.precision
        c = np.zeros(n, dtype=np.int64)
        src = self.coeffs[: (n - 1) // q + 1]
        c[: len(src) * q : q] = src
        return TruncatedSeries(self.p, c)

    def derivative(self):
        n = self.precision
        c = np.zeros(n, dtype=np.int64)
        if n > 1:
            k = np.arange(1, n, dtype=np.int64)
            c[:-1] = (k % self.p) * self.coeffs[1:] % self.p
        return TruncatedSeries(self.p, c)

    def pow(self, e):
        """Plain power by binary exponentiation, same precision."""
        if e < 0:
            raise ValueError("negative exponent")
        result = TruncatedSeries.one(self.p, self.precision)
        base = self
        while e:
            if e & 1:
                result = mul(result, base)
            base_needed = e >> 1
            if base_needed:
                base = mul(base, base)
            e >>= 1
        return result

    def inverse(self):
        """Multiplicative inverse 1/self; requires an invertible constant term."""
        p, n = self.p, self.precision
        c0 = int(self.coeffs[0])
        if c0 % p == 0:
            raise ValueError("constant term not invertible")
        r = np.array([pow(c0, p - 2, p)], dtype=np.int64)
        while len(r) < n:
            m2 = min(2 * len(r), n)
            s = self.coeffs[:m2]
            sr = _conv_mod(s, r, p, m2)
            # r <- r*(2 - s*r) doubles the number of correct coefficients
            e = (-sr) % p
            e[0] = (e[0] + 2) % p
            r = _conv_mod(r, e, p, m2)
        return TruncatedSeries(p, r)

    def to_json(self):
        return json.dumps({"p": self.p, "coeffs": [int(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(data["p"], data["coeffs"])


def mul(a, b):
    """Product of two series; result precision is the smaller of the two."""
    a._check_same_field(b)
    n = min(a.precision, b.precision)
    return TruncatedSeries(a.p, _conv_mod(a.coeffs[:n], b.coeffs[:n], a.p, n))


def compose(a, b):
    """a(b(X)) truncated to the smaller precision; b must have no constant term.

    Implemented blockwise (Brent-Kung): split a into sqrt(N)-sized blocks,
    evaluate each block at b with one matrix product, then combine the blocks
    with a Horner recursion in b^sqrt(N).
    """
    a._check_same_field(b)
    if int(b.coeffs[0]) != 0:
        raise ValueError("composition needs a series with zero constant term")
    p = a.p
    n = min(a.precision, b.precision)
    ac = a.coeffs[:n]
    bc = b.coeffs[:n]
    if n == 1:
        return TruncatedSeries(p, ac[:1])

    m = max(1, math.isqrt(n - 1) + 1)  # block size, m*m >= n
    nblocks = (n + m - 1) // m

    # powers b^0 .. b^m
    bpow = np.zeros((m + 1, n), dtype=np.int64)
    bpow[0, 0] = 1
    for j in range(1, m + 1):
        bpow[j] = _conv_mod(bpow[j - 1], bc, p, n)

    # evaluate every block A_i(b) = sum_j a[i*m+j] b^j in one float matmul;
    # dot products are sums of m terms < p^2, exact in float64
    coeff = np.zeros((nblocks, m), dtype=np.float64)
    for i in range(nblocks):
        blk = ac[i * m : (i + 1) * m]
        coeff[i, : len(blk)] = blk
    blocks = coeff @ bpow[:m].astype(np.float64)
    blocks = np.rint(blocks).astype(np.int64) % p

    bm = bpow[m]
    out = blocks[nblocks - 1]
    for i in range(nblocks - 2, -1, -1):
        out = _conv_mod(out, bm, p, n)
        out = (out + blocks[i]) % p
    return TruncatedSeries(p, out)


def reversion(a):
    """Compositional inverse: the series V with a(V(X)) = X = V(a(X)).

    Newton iteration; each step doubles the number of correct coefficients.
    The update V <- V - (a(V) - X)/a'(V) is valid in characteristic p because
    the error term of the Hasse-Taylor expansion is divisible by the square
    of the current error.  a'(V) is recovered from the chain rule as
    (a(V))'/V', which saves a second composition per step.
    """
    p, n = a.p, a.precision
    if int(a.coeffs[0]) != 0:
        raise ValueError("reversion needs a zero constant term")
    a1 = int(a.coeffs[1]) if n > 1 else 0
    if a1 % p == 0:
        raise ValueError("reversion needs an invertible linear term")
    if n == 1:
        return TruncatedSeries.zero(p, 1)

    v = np.zeros(2, dtype=np.int64)
    v[1] = pow(a1, p - 2, p)
    while len(v) < n:
        m = len(v)
        m2 = min(2 * m, n)
        vpad = np.zeros(m2, dtype=np.int64)
        vpad[:m] = v
        vs = TruncatedSeries(p, vpad)
        av = compose(TruncatedSeries(p, a.coeffs[:m2]), vs)
        e = av.coeffs.copy()
        e[1] = (e[1] - 1) % p
        if not e[m:].any() and not e[:m].any():
            v = vpad
            continue
        if e[:m].any():
            raise AssertionError("Newton invariant broken: low-order residual")
        # a'(V) mod X^m = (1 + e')/V'
        num = av.derivative().truncate(m)
        den = vs.derivative().truncate(m)
        aprime_v = mul(num, den.inverse())
        h = _conv_mod(e, aprime_v.inverse().coeffs, p, m2)
        v = (vpad - h) % p
    return TruncatedSeries(p, v)


@dataclass(frozen=True)
class PolyRelation:
    """A polynomial relation sum_i c_i(X) * a^(pattern_i) = 0 over F_p.

    Each term is a pair (coeffs, pattern): coeffs is the coefficient
    polynomial lowest degree first, and pattern is either ("pow", e) for the
    plain power a(X)^e or ("frob", i) for the substituted series a(X^(p^i)).
    The pattern ("pow", 0) contributes c(X) itself, which is how
    inhomogeneous terms such as a bare X are expressed.
    """

    p: int
    terms: tuple

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        cleaned = []
        seen = set()
        for coeffs, pattern in self.terms:
            kind, e = pattern
            if kind not in ("pow", "frob") or e < 0:
                raise ValueError(f"bad exponent pattern {pattern!r}")
            if pattern in seen:
                raise ValueError(f"duplicate exponent pattern {pattern!r}")
            seen.add(pattern)
            cleaned.append((tuple(int(c) % self.p for c in coeffs), (kind, int(e))))
        if not any(any(c) for c, _ in cleaned):
            raise ValueError("a relation needs at least one nonzero coefficient")
        object.__setattr__(self, "terms", tuple(cleaned))

    def to_json(self):
        return json.dumps(
            {
                "p": self.p,
                "terms": [
                    {"pattern": list(pat), "coeffs": list(coeffs)}
                    for coeffs, pat in self.terms
                ],
            }
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        terms = tuple(
            (tuple(t["coeffs"]), tuple(t["pattern"])) for t in data["terms"]
        )
        return cls(data["p"], terms)

    def scaled(self, c):
        """The relation with every coefficient polynomial multiplied by c."""
        c %= self.p
        if c == 0:
            raise ValueError("scaling by zero")
        return PolyRelation(
            self.p,
            tuple((tuple(x * c % self.p for x in coeffs), pat) for coeffs, pat in self.terms),
        )


def _apply_pattern(a, pattern):
    kind, e = pattern
    if kind == "pow":
        return a.pow(e)
    return a.frobenius(e)


def relation_residual(rel, a):
    """Left-hand side of the relation evaluated at a, as a truncated series."""
    if rel.p != a.p:
        raise ValueError(f"modulus mismatch: {rel.p} != {a.p}")
    n = a.precision
    total = np.zeros(n, dtype=np.int64)
    for coeffs, pattern in rel.terms:
        poly = np.asarray(coeffs, dtype=np.int64)
        if not poly.any():
            continue
        term = _apply_pattern(a, pattern)
        total = (total + _conv_mod(poly, term.coeffs, a.p, n)) % a.p
    return TruncatedSeries(a.p, total)


def _rref_mod_p(mat, p):
    """Row-reduce mat over F_p in place; returns the list of pivot columns."""
    rows, cols = mat.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hit = np.nonzero(mat[r:, c])[0]
        if len(hit) == 0:
            continue
        i = r + int(hit[0])
        if i != r:
            mat[[r, i]] = mat[[i, r]]
        inv = pow(int(mat[r, c]), p - 2, p)
        mat[r] = mat[r] * inv % p
        other = np.nonzero(mat[:, c])[0]
        other = other[other != r]
        if len(other):
            mat[other] = (mat[other] - np.outer(mat[other, c], mat[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def _nullspace_mod_p(mat, p):
    """Basis of the right nullspace of mat over F_p, one vector per row."""
    m = mat.copy() % p
    pivots = _rref_mod_p(m, p)
    cols = mat.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-m[r, fc]) % p
        basis.append(v)
    return basis


def power_relation_search(a, max_frobenius_depth, max_coeff_degree):
    """Search for c_0(X) a + c_1(X) a(X^p) + ... + h(X) = 0 with bounded degrees.

    Sets up the Hermite-Pade style linear system on the unknown coefficient
    polynomials (degree <= max_coeff_degree) of a(X^(p^i)) for
    i <= max_frobenius_depth plus one inhomogeneous polynomial block, solves
    it on the first half of the known coefficients and re-verifies every
    candidate on the full precision before returning it.  Returns None when
    no relation survives; raises when the precision cannot support the
    number of unknowns without risking a spurious nullspace.
    """
    p, n = a.p, a.precision
    depth = int(max_frobenius_depth)
    deg = int(max_coeff_degree)
    if depth < 0 or deg < 0:
        raise ValueError("bounds must be nonnegative")
    nseries = (depth + 1) * (deg + 1)
    ncols = nseries + (deg + 1)
    if n < 4 * ncols:
        raise ValueError(
            f"precision {n} too small for {ncols} unknowns; "
            f"need at least {4 * ncols} to guard against spurious relations"
        )
    n_find = n // 2

    columns = np.zeros((ncols, n), dtype=np.int64)
    patterns = []
    col = 0
    for i in range(depth + 1):
        fr = a.frobenius(i).coeffs
        for j in range(deg + 1):
            columns[col, j:] = fr[: n - j]
            patterns.append(("frob", i, j))
            col += 1
    for j in range(deg + 1):
        columns[col, j] = 1
        patterns.append(("pow", 0, j))
        col += 1

    system = columns[:, :n_find].T % p
    basis = _nullspace_mod_p(system, p)
    if not basis:
        return None

    # verification at full precision: keep only nullspace combinations that
    # also annihilate the second half of the coefficients
    full = columns.T % p
    reduced = (full @ np.column_stack(basis)) % p
    basis2 = _nullspace_mod_p(reduced, p)
    if not basis2:
        return None
    survivors = [(np.column_stack(basis) @ v2) % p for v2 in basis2]

    def selection_key(v):
        # prefer the structurally smallest relation: fewest nonzero
        # coefficients, then lowest combined coefficient degree
        support = int(np.count_nonzero(v))
        degrees = {}
        for value, (kind, i, j) in zip(v, patterns):
            if int(value) % p:
                degrees[(kind, i)] = max(degrees.get((kind, i), 0), j)
        return (support, sum(degrees.values()), [int(x) for x in v])

    survivors.sort(key=selection_key)
    for v in survivors:
        rel = _vector_to_relation(v, patterns, p, depth, deg)
        if rel is None:
            continue
        if relation_residual(rel, a).is_zero():
            return rel
    return None


def _vector_to_relation(v, patterns, p, depth, deg):
    by_pattern = {}
    for value, (kind, i, j) in zip(v, patterns):
        value = int(value) % p
        if value == 0:
            continue
        key = (kind, i)
        by_pattern.setdefault(key, [0] * (deg + 1))[j] = value
    if not by_pattern:
        return None
    terms = []
    for (kind, i), coeffs in sorted(by_pattern.items()):
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        terms.append((tuple(coeffs), (kind, i)))
    rel = PolyRelation(p, tuple(terms))
    # normalize: first nonzero coefficient of the first term scaled to 1
    lead = next(c for c in rel.terms[0][0] if c)
    if lead != 1:
        rel = rel.scaled(pow(lead, p - 2, p))
    return rel
