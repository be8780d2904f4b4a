"""Basis checking, completion, and reduction.

check_gs runs the whole composition inventory of a rule set and reports
whether everything reduces to zero.  complete() is the classical completion
loop on top of it: keep adjoining normalized nontrivial compositions until
the check passes or the fuel runs out.  reduce_basis() minimizes a passing
basis — and then re-checks, because dropping rules whose leading monomials
are reducible can break closure under multiplication (the left-multiplied
instances they absorbed may have no other reduction), so every candidate is
verified and, if needed, re-completed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from digs.compositions import (
    ClosedUpToBound,
    Composition,
    CompositionKind,
    Nontrivial,
    composition_remainder,
    inclusion_compositions,
    intersection_compositions,
    left_multiplication_compositions,
    right_multiplication_closure,
)
from digs.diword import DiPolynomial, NormalDiword, diword_sort_key, monic, product_right
from digs.rewrite import RuleSet, find_occurrence, normal_form

__all__ = [
    "GS",
    "GSUpToBound",
    "NotGS",
    "CheckReport",
    "CompletionStatus",
    "LogEntry",
    "CompletionResult",
    "ReduceReport",
    "check_gs",
    "complete",
    "reduce_basis",
    "DEFAULT_FUEL",
    "DEFAULT_RM_DEPTH",
]

DEFAULT_FUEL = 512
DEFAULT_RM_DEPTH = 8


# --- verdicts --------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class GS:
    """Every composition reduced to zero; right closures all exact."""


@dataclass(frozen=True, slots=True)
class GSUpToBound:
    """No nontrivial composition found, but at least one right-multiplication
    closure was only explored to the given tail depth."""

    bound: int


@dataclass(frozen=True, slots=True)
class NotGS:
    """At least one composition has a nonzero remainder (see witnesses)."""


@dataclass(frozen=True, slots=True)
class CheckReport:
    verdict: object
    # (composition, nonzero normal form of its value), in detection order
    witnesses: tuple
    statistics: dict

    def ok(self):
        return not isinstance(self.verdict, NotGS)


def check_gs(ruleset, rm_depth=DEFAULT_RM_DEPTH):
    """Run every composition of the rule set and reduce it.

    Detection order is fixed: left multiplications first (rules by id,
    letters in alphabet order), then the right-multiplication closure of
    each non-strong rule, then inclusions and intersections over all
    ordered rule pairs.  Witnesses keep that order, so the first witness of
    a failing set is reproducible.
    """
    witnesses = []
    stats = Counter()
    bound_hit = 0

    for rule in ruleset:
        for comp in left_multiplication_compositions(rule, ruleset.alphabet):
            stats[comp.kind.value] += 1
            rem = composition_remainder(comp, ruleset)
            if not rem.is_zero():
                witnesses.append((comp, rem))

    for rule in ruleset:
        if rule.strong:
            continue
        stats["right-multiplication"] += 1
        verdict = right_multiplication_closure(rule, ruleset, rm_depth)
        if isinstance(verdict, Nontrivial):
            word = rule.assoc_word + verdict.word
            comp = Composition(
                CompositionKind.RIGHT_MULTIPLICATION,
                NormalDiword(word, len(word)),
                product_right(
                    rule.poly,
                    DiPolynomial.monomial(NormalDiword(verdict.word, len(verdict.word))),
                ),
                rule.id,
            )
            witnesses.append((comp, verdict.remainder))
        elif isinstance(verdict, ClosedUpToBound):
            bound_hit = max(bound_hit, verdict.bound)

    for f in ruleset:
        for g in ruleset:
            comps = inclusion_compositions(f, g, ruleset.alphabet)
            comps += intersection_compositions(f, g, ruleset.alphabet)
            for comp in comps:
                stats[comp.kind.value] += 1
                rem = composition_remainder(comp, ruleset)
                if not rem.is_zero():
                    witnesses.append((comp, rem))

    if witnesses:
        verdict = NotGS()
    elif bound_hit:
        verdict = GSUpToBound(bound_hit)
    else:
        verdict = GS()
    return CheckReport(verdict, tuple(witnesses), dict(stats))


# --- completion ------------------------------------------------------------

class CompletionStatus(Enum):
    COMPLETE = "complete"
    FUEL_EXHAUSTED = "fuel-exhausted"


@dataclass(frozen=True, slots=True)
class LogEntry:
    composition: Composition
    remainder: DiPolynomial
    added: DiPolynomial


@dataclass(frozen=True, slots=True)
class CompletionResult:
    basis: RuleSet
    status: CompletionStatus
    log: tuple
    report: CheckReport

    def ok(self):
        return self.status is CompletionStatus.COMPLETE


_REMAINDER_KINDS = frozenset({
    CompositionKind.LEFT_MULTIPLICATION,
    CompositionKind.RIGHT_MULTIPLICATION,
})


def complete(ruleset, fuel=DEFAULT_FUEL, rm_depth=DEFAULT_RM_DEPTH):
    """Adjoin normalized nontrivial compositions until none remain.

    Each round reruns the full check and resolves the witness with the
    smallest ambiguity (first-detected on ties).  For the difference-shaped
    kinds the composition value itself is normalized and added — this keeps
    the run aligned with resolving the smallest ambiguity first, even when
    the value's own reduction would telescope further — while for the
    multiplication kinds the reduced remainder is added (their raw value is
    just a multiple of an instance).  Fuel counts added rules.
    """
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    basis = ruleset
    log = []
    key = diword_sort_key(ruleset.order)
    while True:
        report = check_gs(basis, rm_depth)
        if not report.witnesses:
            return CompletionResult(basis, CompletionStatus.COMPLETE, tuple(log), report)
        if len(log) >= fuel:
            return CompletionResult(
                basis, CompletionStatus.FUEL_EXHAUSTED, tuple(log), report
            )
        comp, rem = min(report.witnesses, key=lambda wr: key(wr[0].ambiguity))
        if comp.kind in _REMAINDER_KINDS:
            added = monic(rem, basis.order)
        else:
            added = monic(comp.value, basis.order)
        basis = basis.with_rule(added)
        log.append(LogEntry(comp, rem, added))


# --- reduction -------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class ReduceReport:
    status: CompletionStatus
    report: CheckReport          # check of the returned basis
    iterations: int              # minimize-verify rounds
    first_candidate: tuple       # polynomials of the first minimized candidate
    added: tuple                 # rules adjoined by re-completion runs


def _minimize(polys, alphabet, order):
    """One pass of the constructive reduction: dedupe leading monomials,
    keep only rules whose leading is irreducible modulo the smaller-leading
    kept rules, then tail-reduce everything to a mutual fixpoint."""
    rs = RuleSet(alphabet, order, polys)
    key = diword_sort_key(order)
    seen = set()
    rules = []
    for r in rs:
        if r.lead.leading in seen:
            continue
        seen.add(r.lead.leading)
        rules.append(r)
    rules.sort(key=lambda r: key(r.lead.leading))

    kept = []
    for r in rules:
        if kept:
            sub = RuleSet(alphabet, order, kept)
            if find_occurrence(r.lead.leading, sub) is not None:
                continue
        kept.append(r.poly)

    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = RuleSet(alphabet, order, kept[:i] + kept[i + 1:])
            nf, _ = normal_form(kept[i], others)
            # the leading monomial survives: it is irreducible by the others
            assert not nf.is_zero()
            nf = monic(nf, order)
            if nf != kept[i]:
                kept[i] = nf
                changed = True
    kept.sort(key=lambda p: key(max(p.terms, key=key)))
    return kept


def reduce_basis(ruleset, fuel=DEFAULT_FUEL, rm_depth=DEFAULT_RM_DEPTH):
    """Minimal basis of the same ideal: one rule per necessary leading
    monomial, all supports irreducible modulo the other rules, sorted by
    increasing leading monomial.

    Requires the input to already pass check_gs; raises ValueError
    otherwise.  Minimizing can break the multiplication closures, so each
    candidate is re-verified and, when the check fails, re-completed and
    minimized again under the same fuel.
    """
    report = check_gs(ruleset, rm_depth)
    if isinstance(report.verdict, NotGS):
        raise ValueError(
            "reduce_basis needs a set already closed under composition; "
            "first witness: %s" % (report.witnesses[0][0].describe(),)
        )
    alphabet, order = ruleset.alphabet, ruleset.order
    polys = list(ruleset.polys())
    first_candidate = None
    added = []
    iterations = 0
    while True:
        iterations += 1
        polys = _minimize(polys, alphabet, order)
        if first_candidate is None:
            first_candidate = tuple(polys)
        cand = RuleSet(alphabet, order, polys)
        rep = check_gs(cand, rm_depth)
        if not isinstance(rep.verdict, NotGS):
            _assert_reduced(cand)
            return cand, ReduceReport(
                CompletionStatus.COMPLETE, rep, iterations,
                first_candidate, tuple(added),
            )
        budget = fuel - len(added)
        if budget < 1:
            return cand, ReduceReport(
                CompletionStatus.FUEL_EXHAUSTED, rep, iterations,
                first_candidate, tuple(added),
            )
        result = complete(cand, budget, rm_depth)
        added.extend(e.added for e in result.log)
        polys = list(result.basis.polys())
        if result.status is CompletionStatus.FUEL_EXHAUSTED:
            return result.basis, ReduceReport(
                CompletionStatus.FUEL_EXHAUSTED, result.report, iterations,
                first_candidate, tuple(added),
            )


def _assert_reduced(ruleset):
    polys = list(ruleset.polys())
    for i, p in enumerate(polys):
        others = RuleSet(ruleset.alphabet, ruleset.order, polys[:i] + polys[i + 1:])
        for dw in p.terms:
            assert find_occurrence(dw, others) is None, (
                "support diword %s of rule %d is reducible" % (dw, i)
            )
