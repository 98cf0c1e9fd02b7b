import pytest

from aspcomp.formulas import Cmp, Exists, FVar, NameGen, Sort, alpha_equal
from aspcomp.parser import parse_formula, parse_program
from aspcomp.syntax import Bin, Num, PredicateSymbol, Sym, Var
from aspcomp.valcomp import VariableCaptureError, comp, tau_b, val

EVEN = "even(2*X) :- X = -10..10."


def test_val_of_simple_terms_is_an_equality():
    z = FVar("Z", Sort.GENERAL)
    assert val(Num(3), z) == Cmp(z, "=", Num(3))
    assert val(Sym("a"), z) == Cmp(z, "=", Sym("a"))
    assert val(Var("X"), z) == Cmp(z, "=", FVar("X", Sort.GENERAL))


def test_val_of_arithmetic_introduces_integer_witnesses():
    z = FVar("Z", Sort.GENERAL)
    f = val(Bin("+", Num(1), Num(2)), z, NameGen())
    expected = parse_formula("exists I J (gen:Z = I + J & I = 1 & J = 2)")
    assert alpha_equal(f, expected)


def test_val_of_interval():
    z = FVar("Z", Sort.GENERAL)
    f = val((Num(-10), Num(10)), z, NameGen())
    expected = parse_formula(
        "exists I J K (I = -10 & J = 10 & I <= K & K <= J & gen:Z = K)"
    )
    assert alpha_equal(f, expected)


def test_val_refuses_capture():
    z = FVar("X", Sort.GENERAL)
    with pytest.raises(VariableCaptureError):
        val(Var("X"), z)


def test_tau_b_atom_and_negated_atom():
    p = parse_program("h :- q(X + 1), not r(2).")
    pos, neg = p.rules[0].body
    f = tau_b(pos, NameGen())
    expected = parse_formula("exists Z (exists I J (Z = I + J & I = X & J = 1) & q(Z))")
    assert alpha_equal(f, expected)
    g = tau_b(neg, NameGen())
    assert alpha_equal(g, parse_formula("exists Z (Z = 2 & ~r(Z))"))


def test_tau_b_comparison():
    p = parse_program("h :- X < 3.")
    f = tau_b(p.rules[0].body[0], NameGen())
    expected = parse_formula("exists Z1 Z2 (Z1 = X & Z2 = 3 & Z1 < Z2)")
    assert alpha_equal(f, expected)


def test_comp_of_the_one_rule_program_matches_published_form():
    p = parse_program(EVEN)
    sentences = comp(p)
    assert len(sentences) == 1
    expected = parse_formula(
        "forall V (even(V) <-> exists X ("
        "exists Z1 Z2 (Z1 = X"
        " & exists I J K (I = -10 & J = 10 & I <= K & K <= J & Z2 = K)"
        " & Z1 = Z2)"
        " & exists I J (V = I*J & I = 2 & J = X)))"
    )
    assert alpha_equal(sentences[0], expected)


def test_comp_quantifies_every_rule_variable():
    # The disjunct prefix includes variables that occur only in the head.
    p = parse_program("p(X,Y) :- q(X).")
    cd = comp(p)[0]
    body = cd.body.body  # under the two head quantifiers
    disjunct = body.right
    prefix = []
    while isinstance(disjunct, Exists):
        prefix.append(disjunct.var.name)
        disjunct = disjunct.body
    assert prefix[:2] == ["X", "Y"]


def test_comp_constraint():
    p = parse_program("p(1).\n:- p(2).")
    sentences = comp(p)
    assert len(sentences) == 2
    assert alpha_equal(
        sentences[1], parse_formula("~(exists Z (Z = 2 & p(Z)))")
    )


def test_comp_sentence_count_on_worked_example():
    p = parse_program(EVEN + "\n{foo(X)} :- even(X).\n:- not foo(0).")
    assert len(comp(p)) == 3
