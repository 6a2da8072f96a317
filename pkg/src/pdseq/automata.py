"""Deterministic finite automata with output (DFAOs) and acceptors (DFAs).

Automata are immutable after construction.  States are indexed 0..n-1 with
optional labels; the input alphabet is an ordered tuple of letters (digits
are plain ints).  A DFAO carries one output letter per state; a DFA is the
special case of boolean outputs.  Every automaton declares whether input
words are fed least-significant-digit first or most-significant first, so a
convention mismatch is a type-level error instead of a silent bug.
"""

from __future__ import annotations

import json

import numpy as np

__all__ = ["Dfao", "Dfa", "eval_word", "evaluate", "product", "minimize", "count_length_n"]

LSD_FIRST = "lsd"
MSD_FIRST = "msd"


class Dfao:
    """Deterministic finite automaton with an output letter on each state."""

    __slots__ = ("labels", "initial", "alphabet", "transitions", "outputs", "read_order", "_letter_index", "_table")

    def __init__(self, labels, initial, alphabet, transitions, outputs, read_order):
        labels = tuple(labels)
        alphabet = tuple(alphabet)
        n = len(labels)
        if not 0 <= initial < n:
            raise ValueError("initial state out of range")
        if read_order not in (LSD_FIRST, MSD_FIRST):
            raise ValueError(f"read_order must be {LSD_FIRST!r} or {MSD_FIRST!r}")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet letters must be distinct")
        trans = {}
        for (s, c), t in transitions.items():
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"transition ({s},{c!r})->{t} out of range")
            if c not in alphabet:
                raise ValueError(f"transition letter {c!r} not in alphabet")
            trans[(s, c)] = t
        for s in range(n):
            for c in alphabet:
                if (s, c) not in trans:
                    raise ValueError(f"transition missing for state {s} on {c!r}")
        outputs = tuple(outputs)
        if len(outputs) != n:
            raise ValueError("one output letter per state required")
        self.labels = labels
        self.initial = initial
        self.alphabet = alphabet
        self.transitions = trans
        self.outputs = outputs
        self.read_order = read_order
        self._letter_index = {c: i for i, c in enumerate(alphabet)}
        table = np.empty((n, len(alphabet)), dtype=np.int64)
        for (s, c), t in trans.items():
            table[s, self._letter_index[c]] = t
        table.setflags(write=False)
        self._table = table

    @property
    def num_states(self):
        return len(self.labels)

    def step(self, state, letter):
        try:
            j = self._letter_index[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} outside the input alphabet") from None
        return int(self._table[state, j])

    def final_state(self, word):
        s = self.initial
        for c in word:
            s = self.step(s, c)
        return s

    def output(self, word):
        """Output letter after feeding word in the automaton's own order."""
        return self.outputs[self.final_state(word)]

    def transition_table(self):
        """Dense (state, letter index) -> state array; read-only view."""
        return self._table

    # -- serialization --------------------------------------------------

    def to_json(self):
        return json.dumps(
            {
                "states": list(self.labels),
                "initial": self.initial,
                "alphabet": list(self.alphabet),
                "transitions": [[s, c, t] for (s, c), t in sorted(self.transitions.items(), key=lambda kv: (kv[0][0], str(kv[0][1])))],
                "outputs": list(self.outputs),
                "read_order": self.read_order,
            }
        )

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        trans = {(s, _freeze(c)): t for s, c, t in d["transitions"]}
        return cls(
            [_freeze(x) for x in d["states"]],
            d["initial"],
            [_freeze(c) for c in d["alphabet"]],
            trans,
            [_freeze(x) for x in d["outputs"]],
            d["read_order"],
        )

    def to_dot(self, name="dfao"):
        """GraphViz source; parallel edges are merged into one labelled edge."""
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
        for i, lab in enumerate(self.labels):
            lines.append(f'  q{i} [shape=circle, label="{lab}/{self.outputs[i]}"];')
        lines.append(f"  __start -> q{self.initial};")
        merged = {}
        for (s, c), t in self.transitions.items():
            merged.setdefault((s, t), []).append(c)
        for (s, t), letters in sorted(merged.items()):
            lab = ",".join(str(c) for c in sorted(letters, key=str))
            lines.append(f'  q{s} -> q{t} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines)

    # -- canonical form --------------------------------------------------

    def canonical(self):
        """Isomorphic copy with states renumbered in BFS order from the start.

        Two automata are identical up to state renaming exactly when their
        canonical forms compare equal.  Unreachable states are dropped.
        """
        order = [self.initial]
        seen = {self.initial}
        i = 0
        while i < len(order):
            s = order[i]
            i += 1
            for c in self.alphabet:
                t = self.step(s, c)
                if t not in seen:
                    seen.add(t)
                    order.append(t)
        renum = {old: new for new, old in enumerate(order)}
        trans = {}
        for old in order:
            for c in self.alphabet:
                trans[(renum[old], c)] = renum[self.step(old, c)]
        return type(self)(
            [self.labels[old] for old in order],
            0,
            self.alphabet,
            trans,
            [self.outputs[old] for old in order],
            self.read_order,
        )

    def same_up_to_renaming(self, other):
        """True when the automata differ only by state names/numbering."""
        if (self.alphabet, self.read_order) != (other.alphabet, other.read_order):
            return False
        a, b = self.canonical(), other.canonical()
        return (
            a.num_states == b.num_states
            and a.outputs == b.outputs
            and all(a.transitions[k] == b.transitions[k] for k in a.transitions)
        )

    def relabelled(self, labels=None):
        """Copy with fresh labels (default q0..qn-1)."""
        if labels is None:
            labels = [f"q{i}" for i in range(self.num_states)]
        return type(self)(labels, self.initial, self.alphabet, self.transitions, self.outputs, self.read_order)


class Dfa(Dfao):
    """Acceptor: outputs are booleans (True on accepting states)."""

    def __init__(self, labels, initial, alphabet, transitions, accepting, read_order):
        outputs = tuple(bool(x) for x in accepting)
        super().__init__(labels, initial, alphabet, transitions, outputs, read_order)

    @classmethod
    def from_accepting_set(cls, labels, initial, alphabet, transitions, accepting_states, read_order):
        acc = [i in accepting_states for i in range(len(tuple(labels)))]
        return cls(labels, initial, alphabet, transitions, acc, read_order)

    def accepts(self, word):
        return bool(self.output(word))


def _freeze(x):
    return tuple(x) if isinstance(x, list) else x


def eval_word(m, word):
    """Feed word to m exactly as given (caller handles digit order)."""
    return m.output(word)


def evaluate(m, n, numeration):
    """Value of the automatic sequence generated by m at index n.

    The numeration system supplies the representation of n most-significant
    digit first; it is reversed here when the automaton reads LSD-first.
    """
    word = numeration.rep(n)
    if m.read_order == LSD_FIRST:
        word = tuple(reversed(word))
    return m.output(word)


def evaluate_range(m, count, numeration=None):
    """Outputs of m at indices 0..count-1, vectorized for base-2 input.

    With no numeration system the indices are read in binary (an LSD-first
    automaton consumes bits upward from the least significant one).
    """
    if numeration is not None:
        return [evaluate(m, n, numeration) for n in range(count)]
    if m.alphabet != (0, 1):
        raise ValueError("vectorized evaluation needs alphabet (0, 1)")
    table = m.transition_table()
    out = np.empty(count, dtype=np.int64)
    out[0] = m.initial
    maxbits = max(1, int(count - 1).bit_length())
    ns = np.arange(count, dtype=np.int64)
    lengths = np.zeros(count, dtype=np.int64)
    for b in range(maxbits):
        lengths[ns >= (1 << b)] = b + 1
    states = np.full(count, m.initial, dtype=np.int64)
    if m.read_order == LSD_FIRST:
        for b in range(maxbits):
            active = lengths > b
            bits = (ns[active] >> b) & 1
            states[active] = table[states[active], bits]
    else:
        # group by representation length so leading zeros are never fed
        for length in range(1, maxbits + 1):
            sel = lengths == length
            if not sel.any():
                continue
            st = np.full(int(sel.sum()), m.initial, dtype=np.int64)
            nn = ns[sel]
            for b in range(length - 1, -1, -1):
                st = table[st, (nn >> b) & 1]
            states[sel] = st
    outputs = np.array([_as_int(o) for o in m.outputs], dtype=np.int64)
    return outputs[states]


def _as_int(o):
    if isinstance(o, (bool, int, np.integer)):
        return int(o)
    raise ValueError("vectorized evaluation needs integer outputs")


def product(a, b):
    """Reachable product automaton; outputs are (output_a, output_b) pairs."""
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch in product")
    if a.read_order != b.read_order:
        raise ValueError("read-order mismatch in product")
    start = (a.initial, b.initial)
    order = [start]
    index = {start: 0}
    trans = {}
    i = 0
    while i < len(order):
        sa, sb = order[i]
        for c in a.alphabet:
            t = (a.step(sa, c), b.step(sb, c))
            if t not in index:
                index[t] = len(order)
                order.append(t)
            trans[(i, c)] = index[t]
        i += 1
    labels = [f"({a.labels[sa]},{b.labels[sb]})" for sa, sb in order]
    outputs = [(a.outputs[sa], b.outputs[sb]) for sa, sb in order]
    return Dfao(labels, 0, a.alphabet, trans, outputs, a.read_order)


def map_outputs(m, fn, as_dfa=False):
    """Copy of m with each state output replaced by fn(output)."""
    outs = [fn(o) for o in m.outputs]
    cls = Dfa if as_dfa else Dfao
    return cls(m.labels, m.initial, m.alphabet, m.transitions, outs, m.read_order)


def union(a, b):
    """DFA accepting the union of two languages over the same alphabet."""
    prod = product(a, b)
    return map_outputs(prod, lambda pair: bool(pair[0]) or bool(pair[1]), as_dfa=True)


def minimize(m):
    """Moore minimization: merge states with equal behaviour.

    Partition refinement seeded by output letters; unreachable states are
    dropped first and the result is renumbered canonically (BFS order), so
    minimizing two behaviour-equal automata yields identical tables.
    """
    m = m.canonical()
    n = m.num_states
    # block id per state, seeded by outputs
    outs = {}
    block = [0] * n
    for s in range(n):
        block[s] = outs.setdefault(m.outputs[s], len(outs))
    while True:
        signatures = {}
        new_block = [0] * n
        for s in range(n):
            sig = (block[s],) + tuple(block[m.step(s, c)] for c in m.alphabet)
            new_block[s] = signatures.setdefault(sig, len(signatures))
        if len(signatures) == len(set(block)):
            block = new_block
            break
        block = new_block
    nblocks = len(set(block))
    rep = {}
    for s in range(n):
        rep.setdefault(block[s], s)
    trans = {}
    outputs = [None] * nblocks
    labels = [None] * nblocks
    for b, s in rep.items():
        outputs[b] = m.outputs[s]
        labels[b] = m.labels[s]
        for c in m.alphabet:
            trans[(b, c)] = block[m.step(s, c)]
    reduced = type(m)._rebuild(labels, block[m.initial], m.alphabet, trans, outputs, m.read_order)
    return reduced.canonical()


def _rebuild_dfao(labels, initial, alphabet, trans, outputs, read_order):
    return Dfao(labels, initial, alphabet, trans, outputs, read_order)


def _rebuild_dfa(labels, initial, alphabet, trans, outputs, read_order):
    return Dfa(labels, initial, alphabet, trans, outputs, read_order)


Dfao._rebuild = staticmethod(_rebuild_dfao)
Dfa._rebuild = staticmethod(_rebuild_dfa)


def count_length_n(d, n):
    """Number of accepted words of length exactly n (exact big integers).

    Dynamic programming on state-occupancy vectors, equivalently the n-th
    power of the transition count matrix applied to the start vector.
    """
    counts = [0] * d.num_states
    counts[d.initial] = 1
    for _ in range(n):
        nxt = [0] * d.num_states
        for s, c in enumerate(counts):
            if c:
                for letter in d.alphabet:
                    nxt[d.step(s, letter)] += c
        counts = nxt
    return sum(c for s, c in enumerate(counts) if d.outputs[s])


def count_up_to(d, n):
    """Number of accepted words of length at most n."""
    counts = [0] * d.num_states
    counts[d.initial] = 1
    total = counts_accepted = sum(c for s, c in enumerate(counts) if d.outputs[s])
    for _ in range(n):
        nxt = [0] * d.num_states
        for s, c in enumerate(counts):
            if c:
                for letter in d.alphabet:
                    nxt[d.step(s, letter)] += c
        counts = nxt
        total += sum(c for s, c in enumerate(counts) if d.outputs[s])
    return total
