import itertools
import random
from fractions import Fraction

import pytest

from corpus import F, F3, G, H, ORD1, ORD3, P, Q, X1, X3, fghp, ghp, poly, ruleset, xw
from digs.diword import (
    DiPolynomial,
    NormalDiword,
    compare,
    dw_left,
    dw_right,
    leading_data,
    product_left,
    product_right,
    random_polynomial,
)
from digs.rewrite import (
    Occurrence,
    RuleSet,
    enumerate_irr,
    find_occurrence,
    instantiate,
    is_irreducible,
    normal_form,
    p_set,
)


def rule_of(rs, poly_):
    for r in rs:
        if r.poly == poly_:
            return r
    raise AssertionError("rule not found")


def test_ruleset_construction():
    rs = fghp()
    assert [r.id for r in rs] == [0, 1, 2, 3]
    assert all(r.lead.coeff == 1 for r in rs)
    assert [r.strong for r in rs] == [True, False, False, False]
    with pytest.raises(ValueError):
        ruleset(DiPolynomial.zero())
    # non-monic input gets scaled
    rs2 = ruleset(2 * F)
    assert rs2[0].poly == F


def test_p_set_examples():
    rs = fghp()
    g, h = rule_of(rs, G), rule_of(rs, H)
    assert p_set(g, ("x",), ()) == {4}
    assert p_set(h, (), ("x",)) == {3}
    mono = RuleSet(X3, ORD3, [poly((NormalDiword(("x1", "x2"), 2), 1))])
    assert p_set(mono[0], ("x3",), ("x3",)) == {1, 3, 4}
    f = rule_of(rs, F)
    assert p_set(f, (), ()) == {4}
    assert p_set(f, ("x",), ()) == {1, 5}
    assert p_set(f, (), ("x",)) == {4, 5}


def test_instantiate_matches_products():
    rs = fghp()
    g = rule_of(rs, G)
    x = DiPolynomial.monomial(xw(1, 1))
    got = instantiate(g, ("x",), (), 4)
    assert got == product_right(x, G)
    assert got == poly((xw(4, 4), 1), (xw(4, 3), Fraction(-1, 2)), (xw(4, 2), Fraction(-1, 2)))

    f = rule_of(rs, F)
    assert instantiate(f, (), (), 4) == F

    # strong rule extended on the right at the end center equals the product
    assert instantiate(f, (), ("x",), 5) == product_right(F, x)

    with pytest.raises(ValueError):
        instantiate(g, ("x",), (), 3)  # only center 4 is admissible there


def test_instantiate_product_cross_check_random():
    rng = random.Random(42)
    cases = 0
    while cases < 150:
        p = random_polynomial(rng, X3, max_terms=3, max_len=3)
        if not p:
            continue
        rs = RuleSet(X3, ORD3, [p])
        s = rs[0]
        a = tuple(rng.choice(X3.symbols) for _ in range(rng.randint(0, 2)))
        b = tuple(rng.choice(X3.symbols) for _ in range(rng.randint(0, 2)))
        sp = s.poly
        pa = DiPolynomial.monomial(NormalDiword(a, 1)) if a else None
        pb1 = DiPolynomial.monomial(NormalDiword(b, 1)) if b else None
        for m in sorted(p_set(s, a, b)):
            inst = instantiate(s, a, b, m)
            assert leading_data(inst, ORD3).leading == NormalDiword(a + s.assoc_word + b, m)
            if m <= len(a):
                want = DiPolynomial.monomial(NormalDiword(a, m))
                want = product_left(want, sp)
                if pb1 is not None:
                    want = product_left(want, pb1)
            elif m == len(a) + s.center:
                want = product_right(pa, sp) if pa is not None else sp
                if pb1 is not None:
                    want = product_left(want, pb1)
            else:
                k = m - len(a) - len(s.assoc_word)
                want = product_right(sp, DiPolynomial.monomial(NormalDiword(b, k)))
                if pa is not None:
                    want = product_right(pa, want)
            assert inst == want, (s, a, b, m)
            cases += 1


def test_find_occurrence_examples():
    assert find_occurrence(xw(5, 1), ghp()) is None
    occ = find_occurrence(xw(5, 1), fghp())
    assert occ == Occurrence(0, ("x",), (), 1)
    rs = ruleset(G)
    assert find_occurrence(xw(3, 3), rs) == Occurrence(0, (), (), 3)
    assert find_occurrence(xw(3, 1), rs) is None
    assert is_irreducible(xw(2, 2), rs)


def test_find_occurrence_tie_breaks():
    # same start position: the smaller rule id wins
    rs = ghp()  # ids g=0 h=1 p=2
    occ = find_occurrence(xw(5, 3), rs)
    assert occ == Occurrence(0, (), ("x", "x"), 3)
    # smaller |a| wins before rule id
    occ2 = find_occurrence(xw(5, 4), rs)
    assert occ2 == Occurrence(0, ("x",), ("x",), 4)


def test_normal_form_paper_reduction():
    rs = ruleset(G)
    nf, trace = normal_form(DiPolynomial.monomial(xw(4, 4)), rs)
    assert nf == poly((xw(4, 2), Fraction(3, 4)), (xw(4, 1), Fraction(1, 4)))
    assert nf == Fraction(3, 4) * P
    assert trace == [
        (Fraction(1), Occurrence(0, ("x",), (), 4)),
        (Fraction(1, 2), Occurrence(0, (), ("x",), 3)),
    ]


def test_normal_form_irreducible_and_reconstruction():
    rs = fghp()
    t = DiPolynomial.monomial(xw(5, 1))
    # [x^5]_1 reduces to zero via the strong monomial rule
    nf, trace = normal_form(t, rs)
    assert nf.is_zero() and len(trace) == 1

    rng = random.Random(5)
    for _ in range(120):
        fpoly = random_polynomial(rng, X1, max_terms=4, max_len=6)
        nf, trace = normal_form(fpoly, rs)
        # reconstruction is exact
        acc = nf
        for c, occ in trace:
            acc = acc + c * instantiate(rs[occ.rule_id], occ.left, occ.right, occ.center)
        assert acc == fpoly
        # idempotence
        nf2, trace2 = normal_form(nf, rs)
        assert nf2 == nf and trace2 == []
        # every nf term is irreducible, every traced leading bounded by the input's
        for dw in nf.support():
            assert find_occurrence(dw, rs) is None
        if fpoly:
            top = leading_data(fpoly, ORD1).leading
            for _, occ in trace:
                lead = NormalDiword(
                    occ.left + rs[occ.rule_id].assoc_word + occ.right, occ.center
                )
                assert compare(lead, top, ORD1) <= 0


def test_enumerate_irr_empty_ruleset():
    rs = RuleSet(X3, ORD3, [])
    irr = enumerate_irr(rs, 3)
    assert len(irr) == 3 + 9 * 2 + 27 * 3
    assert len(set(irr)) == len(irr)


def test_enumerate_irr_single_strong_rule():
    # rule [x1 x2]_2: a diword is irreducible iff every x1x2 factor starts
    # exactly at the center position
    rs = RuleSet(X3, ORD3, [poly((NormalDiword(("x1", "x2"), 2), 1))])
    irr = set(enumerate_irr(rs, 5))
    for n in range(1, 6):
        for word in itertools.product(X3.symbols, repeat=n):
            for m in range(1, n + 1):
                occurs = [
                    i + 1
                    for i in range(n - 1)
                    if word[i] == "x1" and word[i + 1] == "x2"
                ]
                expect_irr = all(pos == m for pos in occurs)
                assert (NormalDiword(word, m) in irr) == expect_irr, (word, m)


def test_enumerate_irr_sorted_ascending():
    rs = ruleset(G)
    irr = enumerate_irr(rs, 4)
    for a, b in zip(irr, irr[1:]):
        assert compare(a, b, ORD1) < 0
    # g kills [x^n]_m for n >= 3 except centers below the embedded copy
    assert xw(3, 3) not in irr and xw(3, 2) in irr and xw(3, 1) in irr
