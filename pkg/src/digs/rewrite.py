"""Rewriting modulo a set of monic dialgebra rules.

A rule s acts on a diword [a·w·b]_m (w the word under s's leading diword) by
replacing the embedded leading term with the rest of s.  Which centers m a
rule may act on depends on whether the rule is strong:

    strong s:      m in {1..|a|}  or  m = |a| + center(s)  or  m > |a·w|
    otherwise:     m = |a| + center(s)  only

``p_set`` materializes that admissible set, ``instantiate`` substitutes s
into a context at an admissible center, and ``normal_form`` repeatedly
rewrites the greatest reducible term until everything left is irreducible.
Irreducible diwords are the canonical normal forms; ``enumerate_irr`` lists
them up to a length bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from digs.diword import (
    Alphabet,
    DiPolynomial,
    NormalDiword,
    WordOrder,
    compare,
    diword_sort_key,
    leading_data,
    monic,
)

__all__ = [
    "RewriteRule",
    "RuleSet",
    "Occurrence",
    "p_set",
    "instantiate",
    "find_occurrence",
    "normal_form",
    "enumerate_irr",
    "is_irreducible",
]

MAX_REWRITE_STEPS = 200_000  # safety valve; reduction should terminate long before


@dataclass(frozen=True, slots=True)
class RewriteRule:
    poly: DiPolynomial
    lead: object  # LeadingData
    id: int

    @property
    def assoc_word(self):
        return self.lead.assoc_word

    @property
    def center(self):
        return self.lead.leading.center

    @property
    def strong(self):
        return self.lead.strong

    def __repr__(self):
        return "RewriteRule#%d(%s)" % (self.id, self.poly)


class RuleSet:
    """An ordered, immutable collection of monic rewrite rules."""

    __slots__ = ("alphabet", "order", "rules", "_by_word", "_word_lengths")

    def __init__(self, alphabet, order, polys):
        self.alphabet = alphabet
        self.order = order
        rules = []
        for i, p in enumerate(polys):
            if isinstance(p, RewriteRule):
                p = p.poly
            if not p:
                raise ValueError("rule %d is the zero polynomial" % i)
            for dw in p.support():
                alphabet.check_word(dw.word)
            ld = leading_data(p, order)
            p = monic(p, data=ld)
            if ld.coeff != 1:
                ld = leading_data(p, order)
            rules.append(RewriteRule(p, ld, i))
        self.rules = tuple(rules)
        by_word = {}
        for r in rules:
            by_word.setdefault(r.assoc_word, []).append(r)
        self._by_word = by_word
        self._word_lengths = sorted({len(w) for w in by_word})

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __getitem__(self, i):
        return self.rules[i]

    def polys(self):
        return [r.poly for r in self.rules]

    def with_rule(self, poly):
        """A new RuleSet with poly appended (monicized)."""
        return RuleSet(self.alphabet, self.order, self.polys() + [poly])

    def __repr__(self):
        return "RuleSet(%d rules over %r)" % (len(self.rules), list(self.alphabet.symbols))


@dataclass(frozen=True, slots=True)
class Occurrence:
    """A rule embedded in a context: word a·s̃·b matched at center m."""

    rule_id: int
    left: tuple
    right: tuple
    center: int


def p_set(rule, a, b):
    """Admissible center positions for rule embedded between contexts a and b."""
    k = len(a) + rule.center
    if not rule.strong:
        return frozenset((k,))
    n_inner = len(a) + len(rule.assoc_word)
    total = n_inner + len(b)
    return frozenset(itertools.chain(range(1, len(a) + 1), (k,), range(n_inner + 1, total + 1)))


def _admissible(rule, a_len, m, total):
    # same predicate as p_set membership, without building the set
    if m == a_len + rule.center:
        return True
    if not rule.strong:
        return False
    return m <= a_len or (a_len + len(rule.assoc_word) < m <= total)


def instantiate(rule, a, b, m):
    """Substitute the rule into context (a, _, b) at admissible center m.

    Every term [v]_n of the rule maps to the word a·v·b; the center of the
    image term is m when m lands inside a, |a|+n when m sits on the rule
    (the embedded copy behaves like the rule itself there), and tracks the
    distance from the right end when m lands inside b.
    """
    a, b = tuple(a), tuple(b)
    w = rule.assoc_word
    total = len(a) + len(w) + len(b)
    if not _admissible(rule, len(a), m, total):
        raise ValueError(
            "center %d not admissible for rule %d in context (|a|=%d, |b|=%d)"
            % (m, rule.id, len(a), len(b))
        )
    terms = []
    if m <= len(a):
        for dw, c in rule.poly.terms.items():
            terms.append((NormalDiword(a + dw.word + b, m), c))
    elif m == len(a) + rule.center:
        for dw, c in rule.poly.terms.items():
            terms.append((NormalDiword(a + dw.word + b, len(a) + dw.center), c))
    else:
        shift = m - len(w)  # center keeps its distance from the right end
        for dw, c in rule.poly.terms.items():
            terms.append((NormalDiword(a + dw.word + b, shift + len(dw.word)), c))
    return DiPolynomial(terms)


def find_occurrence(t, ruleset):
    """The first rule occurrence whose instantiation has leading diword t.

    Scans left to right (smallest left context first) and breaks ties by
    rule id, so reduction is deterministic even for non-confluent rule sets.
    Returns None when t is irreducible.
    """
    word, m, n = t.word, t.center, len(t.word)
    for start in range(n):
        candidates = []
        for length in ruleset._word_lengths:
            if start + length > n:
                break
            hit = ruleset._by_word.get(word[start:start + length])
            if hit:
                candidates.extend(hit)
        if len(candidates) > 1:
            candidates.sort(key=lambda r: r.id)
        for rule in candidates:
            if _admissible(rule, start, m, n):
                return Occurrence(rule.id, word[:start], word[start + len(rule.assoc_word):], m)
    return None


def is_irreducible(t, ruleset):
    return find_occurrence(t, ruleset) is None


def normal_form(f, ruleset):
    """Reduce f modulo the rule set.

    Returns (nf, trace) where trace is a list of (coefficient, Occurrence)
    steps such that f = nf + sum of coeff * instantiate(occurrence), and nf
    has no reducible term.  The greatest reducible term is rewritten first,
    so every traced instantiation has leading diword <= the leading diword
    of f at the time it was taken.
    """
    order = ruleset.order
    work = f
    trace = []
    steps = 0
    while True:
        target = None
        occ = None
        for dw, _ in work.terms_sorted(order):
            occ = find_occurrence(dw, ruleset)
            if occ is not None:
                target = dw
                break
        if occ is None:
            return work, trace
        c = work.terms[target]
        rule = ruleset[occ.rule_id]
        inst = instantiate(rule, occ.left, occ.right, occ.center)
        work = work - inst * c
        trace.append((c, occ))
        steps += 1
        if steps > MAX_REWRITE_STEPS:
            raise RuntimeError("reduction did not terminate within %d steps" % MAX_REWRITE_STEPS)
        assert target not in work.terms


def enumerate_irr(ruleset, max_len):
    """All irreducible diwords of word length <= max_len, smallest first."""
    if max_len < 1:
        return []
    out = []
    syms = ruleset.alphabet.symbols
    for n in range(1, max_len + 1):
        for word in itertools.product(syms, repeat=n):
            for m in range(1, n + 1):
                t = NormalDiword(word, m)
                if find_occurrence(t, ruleset) is None:
                    out.append(t)
    out.sort(key=diword_sort_key(ruleset.order))
    return out
