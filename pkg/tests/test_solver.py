import pytest

from corpus import CORPUS
from aspcomp.grounding import IntWindow, ground
from aspcomp.parser import parse_program
from aspcomp.solver import (
    MethodInapplicableError, SearchSpaceError, format_atom, format_model, is_stable,
    stable_models,
)
from aspcomp.syntax import Num, Sym


def _ground(text, lo, hi):
    return ground(parse_program(text), IntWindow(lo, hi))


def test_fact_program_has_one_model():
    g = _ground("p(1). p(2).", 0, 3)
    assert stable_models(g) == [frozenset({("p", (Num(1),)), ("p", (Num(2),))})]


def test_choice_rule_generates_subsets():
    g = _ground("{p(X)} :- X = 0..1.", 0, 1)
    assert len(stable_models(g, "brute")) == 4


def test_constraint_prunes_models():
    g = _ground("{p(X)} :- X = 0..1.\n:- p(0), p(1).", 0, 1)
    assert len(stable_models(g, "brute")) == 3


def test_negation_as_failure():
    g = _ground("p :- not q.\nq :- not p.", -1, 1)
    models = stable_models(g, "brute")
    assert models == sorted(
        [frozenset({("p", ())}), frozenset({("q", ())})],
        key=lambda m: sorted(m),
    )


def test_unsupported_atom_is_not_stable():
    g = _ground("p :- p.", -1, 1)
    assert stable_models(g) == [frozenset()]
    assert not is_stable(g, {("p", ())})


def test_is_stable_checks_constraints():
    g = _ground("p(1).\n:- p(1).", 0, 2)
    assert not is_stable(g, {("p", (Num(1),))})
    assert stable_models(g) == []


def test_reduct_treats_choice_heads_as_self_supporting():
    g = _ground("{p}.\nq :- p.", -1, 1)
    models = stable_models(g, "brute")
    assert frozenset() in models
    assert frozenset({("p", ()), ("q", ())}) in models
    assert len(models) == 2


def test_methods_agree_on_the_corpus():
    from aspcomp.solver import _atom_graph_acyclic, _stratification

    for name, text, w in CORPUS:
        g = ground(parse_program(text, name), w)
        brute = stable_models(g, "brute")
        assert stable_models(g, "auto") == brute, name
        if _atom_graph_acyclic(g):
            assert stable_models(g, "completion") == brute, name
        if _stratification(g) is not None:
            assert stable_models(g, "stratified") == brute, name


def test_completion_method_rejects_positive_cycles():
    # The cycle needs outside support, otherwise grounding drops it entirely.
    g = _ground("q.\np :- q.\nq :- p.", -1, 1)
    with pytest.raises(MethodInapplicableError):
        stable_models(g, "completion")


def test_stratified_rejects_choice_rules():
    g = _ground("{p}.", -1, 1)
    with pytest.raises(MethodInapplicableError) as e:
        stable_models(g, "stratified")
    assert "choice" in str(e.value)


def test_stratified_rejects_negative_cycles():
    g = _ground("p :- not q.\nq :- not p.", -1, 1)
    with pytest.raises(MethodInapplicableError):
        stable_models(g, "stratified")


def test_stratified_handles_layered_negation():
    g = _ground("a(X) :- X = 0..1.\nb(X) :- a(X), not c(X).\nc(0).", 0, 1)
    models = stable_models(g, "stratified")
    assert models == stable_models(g, "brute")
    assert models[0] >= {("b", (Num(1),)), ("c", (Num(0),))}


def test_brute_respects_the_search_cap():
    g = _ground("{p(X)} :- X = 0..3.", 0, 3)
    with pytest.raises(SearchSpaceError):
        stable_models(g, "brute", brute_cap=4)


def test_unknown_method():
    g = _ground("p.", -1, 1)
    with pytest.raises(ValueError):
        stable_models(g, "magic")


def test_model_formatting_orders_atoms():
    atoms = {("q", (Sym("a"),)), ("p", (Num(2),)), ("p", (Num(-1),)), ("p", (Sym("a"),))}
    assert format_model(atoms) == "p(-1) p(2) p(a) q(a)"
    assert format_atom(("r", ())) == "r"
