"""PBW machinery for the universal enveloping algebra of a graded Lie algebra.

Elements are dicts mapping words (tuples of generator ids) to exact
scalars (plain ints while integral, Fractions otherwise).
A BasisOrder fixes which PBW normal form is meant: letters are ranked by
segment (negative / zero / positive degree), then by (degree, id) inside a
segment.  Rewriting ab -> ba + [a, b] is applied through a memoized
single-letter insertion, so repeated products over the same algebra share
work.

The Verma-module action at the bottom of the file deliberately does not go
through BasisOrder: it straightens words with its own recursion and applies
the module relations at the right boundary, which keeps it an independent
route for cross-checking pairing computations.
"""

from __future__ import annotations

import itertools
from math import comb

from .scalars import ONE_POLY, Polynomial

# -- letter orders -----------------------------------------------------------


class BasisOrder:
    """Total order on generators: by segment, then degree, then id."""

    def __init__(self, algebra, segments):
        self.algebra = algebra
        self.segments = tuple(segments)
        rank = {}
        for g in algebra.generators:
            seg = "neg" if g.degree < 0 else ("zero" if g.degree == 0 else "pos")
            rank[g.id] = (self.segments.index(seg), g.degree, g.id)
        self._rank = rank
        self._cache = {}

    def key(self, gid):
        return self._rank[gid]

    def is_sorted(self, word):
        return all(self._rank[word[i]] <= self._rank[word[i + 1]] for i in range(len(word) - 1))

    def sort_word(self, word):
        return tuple(sorted(word, key=self._rank.__getitem__))

    def insert(self, word, g):
        """Normal form of word * g, for word already sorted: dict word -> scalar."""
        key = (word, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not word or self._rank[word[-1]] <= self._rank[g]:
            out = {word + (g,): 1}
        else:
            head, last = word[:-1], word[-1]
            out = {}
            # (head last) g = (head g) last + head [last, g]
            for w1, c1 in self.insert(head, g).items():
                for w2, c2 in self.insert(w1, last).items():
                    out[w2] = out.get(w2, 0) + c1 * c2
            for h, k in self.algebra.bracket(last, g):
                for w1, c1 in self.insert(head, h).items():
                    out[w1] = out.get(w1, 0) + k * c1
            out = {w: c for w, c in out.items() if c}
        self._cache[key] = out
        return out

    def nf_word(self, word):
        """PBW normal form of a single word."""
        state = {(): 1}
        for g in word:
            nxt = {}
            for w, c in state.items():
                for w1, c1 in self.insert(w, g).items():
                    nxt[w1] = nxt.get(w1, 0) + c * c1
            state = {w: c for w, c in nxt.items() if c}
        return state


def _order(algebra, name, segments):
    key = ("order", name)
    if key not in algebra._cache:
        algebra._cache[key] = BasisOrder(algebra, segments)
    return algebra._cache[key]


def phi_order(algebra):
    """Negative letters, then zero, then positive: the order behind phi."""
    return _order(algebra, "phi", ("neg", "zero", "pos"))


def pi_order(algebra):
    """Negative, positive, zero: the order behind pi."""
    return _order(algebra, "pi", ("neg", "pos", "zero"))


def mirror_order(algebra):
    """Positive, zero, negative: normal form adapted to the mirrored module."""
    return _order(algebra, "mirror", ("pos", "zero", "neg"))


# -- elements ----------------------------------------------------------------


def as_element(x):
    """Coerce a word, (word, coeff) iterable, or dict into an element dict."""
    if isinstance(x, dict):
        return x
    if isinstance(x, tuple) and all(isinstance(g, int) for g in x):
        return {x: 1}
    return dict(x)


def normal_form(order, x):
    """Rewrite an element (or single word) into PBW normal form for `order`."""
    out = {}
    for word, c in as_element(x).items():
        for w1, c1 in order.nf_word(word).items():
            out[w1] = out.get(w1, 0) + c * c1
    return {w: c for w, c in out.items() if c}


def normal_form_random(order, word, rng):
    """Normal form of one word, resolving inversions in rng-chosen order.

    Exists so tests can watch every rewrite schedule land on the same answer.
    """
    terms = {tuple(word): 1}
    while True:
        pending = sorted(w for w in terms if not order.is_sorted(w))
        if not pending:
            return {w: c for w, c in terms.items() if c}
        w = pending[rng.randrange(len(pending))]
        c = terms.pop(w)
        if not c:
            continue
        spots = [i for i in range(len(w) - 1) if order.key(w[i]) > order.key(w[i + 1])]
        i = spots[rng.randrange(len(spots))]
        swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
        terms[swapped] = terms.get(swapped, 0) + c
        for h, k in order.algebra.bracket(w[i], w[i + 1]):
            wb = w[:i] + (h,) + w[i + 2 :]
            terms[wb] = terms.get(wb, 0) + c * k


def _word_product(order, w1, w2):
    """Normal form of the product of two words, memoized per order."""
    cache = order._cache.setdefault("wprod", {})
    got = cache.get((w1, w2))
    if got is None:
        state = dict(order.nf_word(w1))
        for g in w2:
            nxt = {}
            for w, c in state.items():
                for w3, c3 in order.insert(w, g).items():
                    nxt[w3] = nxt.get(w3, 0) + c * c3
            state = nxt
        got = cache[(w1, w2)] = {w: c for w, c in state.items() if c}
    return got


def multiply(order, u, v):
    """Product in the enveloping algebra, returned in normal form."""
    u, v = as_element(u), as_element(v)
    out = {}
    for w1, c1 in u.items():
        for w2, c2 in v.items():
            k = c1 * c2
            for w, c in _word_product(order, w1, w2).items():
                out[w] = out.get(w, 0) + c * k
    return {w: c for w, c in out.items() if c}


def antipode(order, x):
    """S(g1...gk) = (-1)^k gk...g1, brought back to normal form."""
    out = {}
    for word, c in as_element(x).items():
        sign = -c if len(word) % 2 else c
        for w1, c1 in order.nf_word(tuple(reversed(word))).items():
            out[w1] = out.get(w1, 0) + sign * c1
    return {w: c for w, c in out.items() if c}


def mono_splits(word):
    """Two-slot coproduct splits of one word: (left, right, multiplicity).

    Runs of equal adjacent letters split independently with binomial
    multiplicities; slots keep the word's own letter order, so splits of a
    sorted word stay sorted.
    """
    runs = [(g, len(list(grp))) for g, grp in itertools.groupby(word)]
    out = []
    for picks in itertools.product(*(range(c + 1) for _, c in runs)):
        left, right, mult = [], [], 1
        for (g, c), k in zip(runs, picks):
            left += [g] * k
            right += [g] * (c - k)
            mult *= comb(c, k)
        out.append((tuple(left), tuple(right), mult))
    return out


def coproduct(x):
    """Coproduct into two tensor slots: dict (word, word) -> scalar.

    Input words are assumed sorted; splits of a sorted word stay sorted, so no
    renormalization happens here.
    """
    out = {}
    for word, c in as_element(x).items():
        for left, right, mult in mono_splits(word):
            key = (left, right)
            out[key] = out.get(key, 0) + c * mult
    return {k: c for k, c in out.items() if c}


def counit(x):
    return sum(c for w, c in as_element(x).items() if not w)


def word_name(algebra, word):
    """Human-readable form of a word, runs collapsed into powers."""
    if not word:
        return "1"
    parts = []
    for g, grp in itertools.groupby(word):
        k = len(list(grp))
        nm = algebra.gen_name(g)
        parts.append(nm if k == 1 else f"{nm}^{k}")
    return " ".join(parts)


def tensor_mul2(order, s, t):
    """Slotwise product of two 2-slot tensors."""
    out = {}
    for (a1, a2), c in s.items():
        for (b1, b2), d in t.items():
            left = multiply(order, {a1: 1}, {b1: 1})
            right = multiply(order, {a2: 1}, {b2: 1})
            for w1, c1 in left.items():
                for w2, c2 in right.items():
                    key = (w1, w2)
                    out[key] = out.get(key, 0) + c * d * c1 * c2
    return {k: c for k, c in out.items() if c}


# -- projections and the character -------------------------------------------


def mono_degree(algebra, word):
    return sum(algebra.degree(g) for g in word)


def phi(algebra, x):
    """Project onto the zero-degree enveloping subalgebra along the two-sided
    ideal spanned by words with a leading negative or trailing positive letter."""
    nf = normal_form(phi_order(algebra), x)
    return {w: c for w, c in nf.items() if all(algebra.degree(g) == 0 for g in w)}


def pi(algebra, x):
    """Project onto products (negative letters)(positive letters), killing every
    normal word that contains a zero-degree letter."""
    nf = normal_form(pi_order(algebra), x)
    return {w: c for w, c in nf.items() if all(algebra.degree(g) != 0 for g in w)}


def char_eval(algebra, x):
    """Evaluate a zero-degree element under the scaled character: each letter g
    becomes λ·χ(g).  Returns a Polynomial in λ."""
    acc = {}
    for word, c in as_element(x).items():
        val = c
        for g in word:
            if algebra.degree(g) != 0:
                raise ValueError(f"char_eval: letter {algebra.gen_name(g)} has nonzero degree")
            val *= algebra.chi(g)
        if val:
            acc[len(word)] = acc.get(len(word), 0) + val
    if not acc:
        return Polynomial()
    coeffs = [0] * (max(acc) + 1)
    for k, v in acc.items():
        coeffs[k] = v
    return Polynomial(coeffs)


# -- Verma module action ------------------------------------------------------
#
# side=+1: the highest-weight module with basis U(n₋)·v, where positive letters
# kill v and a zero letter h acts by λ·χ(h).  side=-1: the mirror, with basis
# U(n₊)·v, negative letters killing v and h acting by -λ·χ(h).  Module words
# are kept sorted ascending by (degree, id).


def _modkey(algebra, g):
    d = algebra.degree(g)
    return (d, g)


def _act1(algebra, g, word, side):
    """g · (word · v) as a tuple of (module word, Polynomial in λ) pairs."""
    cache = algebra._cache.setdefault(("act", side), {})
    key = (g, word)
    hit = cache.get(key)
    if hit is not None:
        return hit
    dg = algebra.degree(g)
    inserts = dg < 0 if side > 0 else dg > 0
    if not word:
        if inserts:
            out = (((g,), ONE_POLY),)
        elif dg == 0:
            cval = algebra.chi(g) if side > 0 else -algebra.chi(g)
            out = (((), Polynomial((0, cval))),) if cval else ()
        else:
            out = ()
    elif inserts and _modkey(algebra, g) <= _modkey(algebra, word[0]):
        out = (((g,) + word, ONE_POLY),)
    else:
        w0, rest = word[0], word[1:]
        acc = {}
        # g w0 (rest·v) = w0 (g · rest·v) + [g, w0] (rest·v)
        for w1, p1 in _act1(algebra, g, rest, side):
            for w2, p2 in _act1(algebra, w0, w1, side):
                acc[w2] = acc.get(w2, Polynomial()) + p1 * p2
        for h, k in algebra.bracket(g, w0):
            for w1, p1 in _act1(algebra, h, rest, side):
                acc[w1] = acc.get(w1, Polynomial()) + p1.scale(k)
        out = tuple((w, p) for w, p in sorted(acc.items()) if p)
    cache[key] = out
    return out


def verma_act(algebra, u, m, side=1):
    """Act with u (word or element) on the module vector given by m.

    m maps module words to scalar or Polynomial coefficients; the result maps
    module words to Polynomials in λ.
    """
    if isinstance(m, tuple):
        m = {m: 1}
    base = {}
    for w, c in m.items():
        base[w] = c if isinstance(c, Polynomial) else Polynomial((c,))
    out = {}
    for uword, ucoeff in as_element(u).items():
        part = base
        for g in reversed(uword):
            nxt = {}
            for w, p in part.items():
                for w1, p1 in _act1(algebra, g, w, side):
                    nxt[w1] = nxt.get(w1, Polynomial()) + p * p1
            part = {w: p for w, p in nxt.items() if p}
        for w, p in part.items():
            out[w] = out.get(w, Polynomial()) + p.scale(ucoeff)
    return {w: p for w, p in out.items() if p}
