import random

import pytest

from corpus import CORPUS
from aspcomp.completion import arithmetic_completed_definition, completed_definition, ncomp
from aspcomp.grounding import IntWindow, ground
from aspcomp.modelcheck import (
    AtomOutsideUniverseError, FreeVariableError, Interpretation, eval_all, eval_formula,
    herbrand_base, lift, verify_correspondence,
)
from aspcomp.parser import parse_formula, parse_program
from aspcomp.solver import stable_models
from aspcomp.syntax import Num, PredicateSymbol, Sym


def test_lift_builds_the_expected_universe():
    interp = lift({("p", (Num(1),))}, IntWindow(-1, 1), [Sym("a")])
    assert interp.int_universe == (Num(-1), Num(0), Num(1))
    assert interp.general_universe == (Num(-1), Num(0), Num(1), Sym("a"))


def test_lift_rejects_atoms_outside_the_universe():
    with pytest.raises(AtomOutsideUniverseError):
        lift({("p", (Num(5),))}, IntWindow(-1, 1))
    with pytest.raises(AtomOutsideUniverseError):
        lift({("p", (Sym("b"),))}, IntWindow(-1, 1), [Sym("a")])


def test_eval_requires_sentences():
    interp = lift(set(), IntWindow(-1, 1))
    with pytest.raises(FreeVariableError):
        eval_formula(interp, parse_formula("p(V)"))


def test_eval_quantifier_sorts():
    interp = lift({("p", (Sym("a"),))}, IntWindow(-1, 1), [Sym("a")])
    # An integer variable never ranges over the symbolic constant.
    assert not eval_formula(interp, parse_formula("exists I (p(I))")).value
    assert eval_formula(interp, parse_formula("exists V (p(V))")).value


def test_eval_flags_boundary_arithmetic():
    interp = lift(set(), IntWindow(-2, 2))
    r = eval_formula(interp, parse_formula("forall I (I + I <= 4)"))
    assert r.value and r.boundary
    r2 = eval_formula(interp, parse_formula("forall I (I <= 2)"))
    assert r2.value and not r2.boundary


def test_stable_models_satisfy_their_completion():
    text = "even(2*X) :- X = -3..3.\n{foo(X)} :- even(X).\n:- not foo(0)."
    p = parse_program(text)
    w = IntWindow(-7, 7)
    sentences = ncomp(p)
    for m in stable_models(ground(p, w)):
        assert eval_all(lift(m, w), sentences).value


def test_one_sorted_weakening_admits_symbolic_even():
    # The two-sorted completed definition pins even to numerals; its
    # arithmetic variant quantifies integers only and tolerates even(a).
    p = parse_program("even(2*X) :- X = -10..10.")
    sym = PredicateSymbol("even", 1)
    two_sorted = completed_definition(p, sym).sentence
    one_sorted = arithmetic_completed_definition(p, sym)
    atoms = {("even", (Num(2 * k),)) for k in range(-10, 11)} | {("even", (Sym("a"),))}
    interp = lift(atoms, IntWindow(-25, 25), [Sym("a")])
    assert not eval_formula(interp, two_sorted).value
    assert eval_formula(interp, one_sorted).value
    # Without the stray atom both hold.
    good = lift(atoms - {("even", (Sym("a"),))}, IntWindow(-25, 25), [Sym("a")])
    assert eval_formula(good, two_sorted).value
    assert eval_formula(good, one_sorted).value


def test_herbrand_base_size():
    p = parse_program("p(X,Y) :- q(X), q(Y).\nq(0).")
    base = herbrand_base(p, IntWindow(0, 1))
    assert len(base) == 4 + 2  # p over pairs, q over singletons


def test_verify_tight_program_full_enumeration():
    p = parse_program("{p(X)} :- X = 0..1.\nq(X) :- p(X), not r(X).")
    report = verify_correspondence(p, IntWindow(0, 1))
    assert report.ok
    assert report.backward_status == "ok"
    assert report.stable_model_count == 4


def test_verify_samples_beyond_the_cap():
    p = parse_program("even(2*X) :- X = -3..3.\n{foo(X)} :- even(X).\n:- not foo(0).")
    report = verify_correspondence(p, IntWindow(-7, 7), enum_cap=1 << 10, samples=50)
    assert report.ok
    assert report.backward_status == "sampled_ok"


def test_verify_non_tight_skips_backward_direction():
    p = parse_program("p :- p.")
    report = verify_correspondence(p, IntWindow(-1, 1))
    assert report.backward_status == "not_applicable"
    assert report.forward_ok
    # The classical witness: {p} satisfies the completion but is not stable.
    interp = Interpretation(IntWindow(-1, 1), (), frozenset({("p", ())}))
    assert eval_all(interp, ncomp(p)).value


def test_report_text_is_stable():
    p = parse_program("p(1).")
    r1 = verify_correspondence(p, IntWindow(0, 2))
    r2 = verify_correspondence(p, IntWindow(0, 2))
    assert r1.to_text() == r2.to_text()


def test_corpus_forward_direction_never_fails():
    for name, text, w in CORPUS:
        p = parse_program(text, name)
        report = verify_correspondence(p, w, enum_cap=1 << 14, samples=40)
        assert report.forward_ok, name
        assert report.backward_status in ("ok", "sampled_ok", "not_applicable"), name
