"""Exact arithmetic in the free dialgebra.

A dialgebra carries two associative products, written ``>-`` (right) and
``-<`` (left) in ASCII.  The free dialgebra on an alphabet X has a linear
basis of *normal diwords*: nonempty words over X with one distinguished
position, the *center*.  We write a diword as ``[u]_m`` where u is the word
and m the 1-based center position.  The products act on basis elements by

    [u]_m >- [v]_n  =  [uv]_{|u|+n}      (center taken from the right factor)
    [u]_m -< [v]_n  =  [uv]_m            (center taken from the left factor)

and extend bilinearly.  Note the left center is irrelevant to ``>-`` and the
right center irrelevant to ``-<``; that is what makes the five dialgebra
identities hold (associativity of each product plus the three mixed ones,
e.g. ``a -< (b >- c) = a -< (b -< c)``).

>>> a = Alphabet(["x", "y"])          # x is the GREATEST symbol
>>> u = NormalDiword(("x", "y"), 1)
>>> v = NormalDiword(("y",), 1)
>>> dw_right(u, v)
[x y y @ 3]
>>> dw_left(u, v)
[x y y @ 1]

Polynomials are finite rational combinations of diwords, compared via a
monomial-center order: words first (deg-lex by default), then centers, a
larger center winning.  ``leading_data`` extracts the leading diword, its
coefficient, the underlying associative word, and the "strong" flag (the
leading word strictly dominates the word of the tail's leading term), which
downstream rewriting uses to decide which centers a rule may act on.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

__all__ = [
    "Alphabet",
    "Word",
    "NormalDiword",
    "DiPolynomial",
    "WordOrder",
    "DegLexOrder",
    "LeadingData",
    "dw_right",
    "dw_left",
    "product_right",
    "product_left",
    "compare",
    "compare_words",
    "leading_data",
    "monic",
    "validate_word_order",
    "random_diword",
    "random_polynomial",
]

# A word is just a nonempty tuple of symbol names.  Contexts (possibly empty
# tuples) reuse the same representation; only NormalDiword enforces nonempty.
Word = tuple


class Alphabet:
    """An ordered finite alphabet.  The FIRST listed symbol is the greatest."""

    __slots__ = ("symbols", "rank")

    def __init__(self, symbols):
        symbols = list(symbols)
        if not symbols:
            raise ValueError("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise ValueError("duplicate symbols in alphabet: %r" % (symbols,))
        for s in symbols:
            if not isinstance(s, str) or not s:
                raise ValueError("symbols must be nonempty strings, got %r" % (s,))
        self.symbols = tuple(symbols)
        self.rank = {s: i for i, s in enumerate(symbols)}  # rank 0 = greatest

    def __contains__(self, sym):
        return sym in self.rank

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __repr__(self):
        return "Alphabet(%r)" % (list(self.symbols),)

    def check_word(self, word):
        for c in word:
            if c not in self.rank:
                raise ValueError("symbol %r not in alphabet %r" % (c, list(self.symbols)))


@dataclass(frozen=True, slots=True)
class NormalDiword:
    """A word with a marked center position: the basis element [u]_m."""

    word: tuple
    center: int

    def __post_init__(self):
        if not isinstance(self.word, tuple) or len(self.word) == 0:
            raise ValueError("diword needs a nonempty tuple word, got %r" % (self.word,))
        if not 1 <= self.center <= len(self.word):
            raise ValueError(
                "center %r out of range for word of length %d" % (self.center, len(self.word))
            )

    def __len__(self):
        return len(self.word)

    def __repr__(self):
        return "[%s @ %d]" % (" ".join(self.word), self.center)


class WordOrder:
    """Comparison contract on words.  Subclasses implement compare().

    compare(u, v) returns a negative number if u < v, zero iff u == v and a
    positive number if u > v.  The order must be total and monomial
    (u > v implies wu > wv and uw > vw); validate_word_order() spot-checks
    both on random samples and should be run on any user-supplied order.
    """

    def compare(self, u, v):
        raise NotImplementedError

    def greater(self, u, v):
        return self.compare(u, v) > 0

    def max_word(self, words):
        words = list(words)
        best = words[0]
        for w in words[1:]:
            if self.compare(w, best) > 0:
                best = w
        return best


class DegLexOrder(WordOrder):
    """Length first, then lexicographic with the alphabet's base order."""

    __slots__ = ("alphabet",)

    def __init__(self, alphabet):
        self.alphabet = alphabet

    def sort_key(self, u):
        # Ascending key: bigger key = bigger word.  rank 0 is the greatest
        # symbol, so negate ranks for the lexicographic part.
        rank = self.alphabet.rank
        return (len(u), tuple(-rank[c] for c in u))

    def compare(self, u, v):
        if len(u) != len(v):
            return len(u) - len(v)
        rank = self.alphabet.rank
        for a, b in zip(u, v):
            if a != b:
                return rank[b] - rank[a]
        return 0

    def __repr__(self):
        return "DegLexOrder(%r)" % (self.alphabet,)


def compare_words(u, v, order):
    return order.compare(u, v)


def compare(a, b, order):
    """Compare two diwords: word first, then center (larger center greater)."""
    c = order.compare(a.word, b.word)
    if c != 0:
        return c
    return a.center - b.center


def diword_sort_key(order):
    """Key function for sorting diwords ascending under the center order."""
    def key(d):
        return (order.sort_key(d.word), d.center)
    return key


def dw_right(a, b):
    """[u]_m >- [v]_n = [uv]_{|u|+n}"""
    return NormalDiword(a.word + b.word, len(a.word) + b.center)


def dw_left(a, b):
    """[u]_m -< [v]_n = [uv]_m"""
    return NormalDiword(a.word + b.word, a.center)


class DiPolynomial:
    """A finite rational linear combination of normal diwords.

    Immutable once built: all arithmetic returns fresh objects, so values may
    be shared freely between threads.  Zero is the empty combination.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for dw, c in items:
            c = Fraction(c)
            if c:
                prev = data.get(dw)
                if prev is None:
                    data[dw] = c
                else:
                    s = prev + c
                    if s:
                        data[dw] = s
                    else:
                        del data[dw]
        object.__setattr__(self, "terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("DiPolynomial is immutable")

    @staticmethod
    def zero():
        return DiPolynomial()

    @staticmethod
    def monomial(dw, coeff=1):
        return DiPolynomial([(dw, coeff)])

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, DiPolynomial):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        data = dict(self.terms)
        for dw, c in other.terms.items():
            s = data.get(dw, 0) + c
            if s:
                data[dw] = s
            else:
                data.pop(dw, None)
        return DiPolynomial(data)

    def __sub__(self, other):
        data = dict(self.terms)
        for dw, c in other.terms.items():
            s = data.get(dw, 0) - c
            if s:
                data[dw] = s
            else:
                data.pop(dw, None)
        return DiPolynomial(data)

    def __neg__(self):
        return DiPolynomial({dw: -c for dw, c in self.terms.items()})

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return DiPolynomial()
        return DiPolynomial({dw: c * scalar for dw, c in self.terms.items()})

    __rmul__ = __mul__

    def coeff(self, dw):
        return self.terms.get(dw, Fraction(0))

    def support(self):
        return self.terms.keys()

    def terms_sorted(self, order, reverse=True):
        """Terms in canonical iteration order: strictly decreasing by default."""
        key = diword_sort_key(order)
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=reverse)

    def map_terms(self, fn):
        """Apply fn(diword) -> diword to every term, summing collisions."""
        return DiPolynomial([(fn(dw), c) for dw, c in self.terms.items()])

    def __repr__(self):
        if not self.terms:
            return "DiPolynomial(0)"
        # Debug repr only; canonical order-aware printing lives in fileio.
        parts = sorted(self.terms.items(), key=lambda kv: (len(kv[0].word), kv[0].word, kv[0].center))
        return "DiPolynomial(%s)" % ", ".join("%s: %s" % (dw, c) for dw, c in parts)


def product_right(p, q):
    """Bilinear extension of [u]_m >- [v]_n = [uv]_{|u|+n}."""
    acc = []
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            acc.append((dw_right(a, b), ca * cb))
    return DiPolynomial(acc)


def product_left(p, q):
    """Bilinear extension of [u]_m -< [v]_n = [uv]_m."""
    acc = []
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            acc.append((dw_left(a, b), ca * cb))
    return DiPolynomial(acc)


@dataclass(frozen=True, slots=True)
class LeadingData:
    leading: NormalDiword      # greatest diword of the support
    coeff: Fraction            # its coefficient
    assoc_word: tuple          # the word under the leading diword
    strong: bool               # leading word strictly beats the tail's word


def leading_data(f, order):
    """Leading term analysis of a nonzero polynomial.

    strong means: the leading associative word is strictly greater (in the
    word order) than the word of the tail's leading term.  A polynomial with
    empty tail (a monomial) counts as strong.
    """
    if not f.terms:
        raise ValueError("zero polynomial has no leading data")
    lead = None
    for dw in f.terms:
        if lead is None or compare(dw, lead, order) > 0:
            lead = dw
    tail_lead = None
    for dw in f.terms:
        if dw == lead:
            continue
        if tail_lead is None or compare(dw, tail_lead, order) > 0:
            tail_lead = dw
    if tail_lead is None:
        strong = True
    else:
        strong = order.compare(lead.word, tail_lead.word) > 0
    return LeadingData(lead, f.terms[lead], lead.word, strong)


def monic(f, order=None, *, data=None):
    """Scale f so its leading coefficient is 1.  Rejects zero."""
    if data is None:
        if order is None:
            raise ValueError("monic needs either an order or precomputed leading data")
        data = leading_data(f, order)
    if data.coeff == 1:
        return f
    inv = Fraction(1) / data.coeff
    return f * inv


def validate_word_order(order, alphabet, samples=300, max_len=5, seed=2024):
    """Spot-check totality and the monomial law on random word samples.

    Raises ValueError on the first violation.  This is the acceptance test a
    user-supplied order must pass before the rewriting machinery accepts it.
    """
    rng = random.Random(seed)
    syms = alphabet.symbols

    def rand_word():
        n = rng.randint(1, max_len)
        return tuple(rng.choice(syms) for _ in range(n))

    for _ in range(samples):
        u, v, w = rand_word(), rand_word(), rand_word()
        cu, cv = order.compare(u, v), order.compare(v, u)
        if (cu > 0) != (cv < 0) or (cu == 0) != (u == v):
            raise ValueError("order is not total/antisymmetric on %r vs %r" % (u, v))
        if cu > 0:
            if not order.compare(u + w, v + w) > 0:
                raise ValueError("monomial law fails on the right: %r > %r but not %r > %r"
                                 % (u, v, u + w, v + w))
            if not order.compare(w + u, w + v) > 0:
                raise ValueError("monomial law fails on the left: %r > %r but not %r > %r"
                                 % (u, v, w + u, w + v))
    return True


# ---------------------------------------------------------------------------
# Random sampling helpers (property tests and the axiom suite use these).

def random_diword(rng, alphabet, max_len=4):
    n = rng.randint(1, max_len)
    word = tuple(rng.choice(alphabet.symbols) for _ in range(n))
    return NormalDiword(word, rng.randint(1, n))


def random_polynomial(rng, alphabet, max_terms=3, max_len=4):
    k = rng.randint(0, max_terms)
    terms = []
    for _ in range(k):
        num = rng.randint(-4, 4)
        den = rng.randint(1, 4)
        terms.append((random_diword(rng, alphabet, max_len), Fraction(num, den)))
    return DiPolynomial(terms)
