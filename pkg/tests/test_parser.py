import pytest
from hypothesis import given, strategies as st

from corpus import CORPUS
from aspcomp.formulas import Sort
from aspcomp.parser import NonRegularError, ParseError, parse_formula, parse_formulas, parse_program
from aspcomp.printer import print_formula, print_program, print_rule
from aspcomp.syntax import Bin, CmpLit, Interval, NegLit, Num, PosLit, Rel, Rule, RuleAtom, Sym, Var


def test_rule_round_trip_golden():
    text = "even(2*X) :- X = -10..10."
    p = parse_program(text)
    assert print_program(p) == text
    r = p.rules[0]
    assert r.head == RuleAtom("even", (Bin("*", Num(2), Var("X")),))
    assert r.body == (CmpLit(Interval(Var("X"), Num(-10), Num(10))),)


def test_choice_and_constraint():
    p = parse_program("{foo(X)} :- even(X).\n:- not foo(0).")
    assert p.rules[0].choice
    assert p.rules[1].head is None
    assert p.rules[1].body == (NegLit(RuleAtom("foo", (Num(0),))),)


def test_facts_and_zero_arity():
    p = parse_program("p. q(a). r(1,2).")
    assert p.rules[0].head == RuleAtom("p", ())
    assert p.rules[1].head == RuleAtom("q", (Sym("a"),))
    assert len(p.rules) == 3


def test_comparison_chain_expands():
    p = parse_program("b(X,Y) :- 1 < X < Y.")
    assert p.rules[0].body == (
        CmpLit(Rel(Num(1), "<", Var("X"))),
        CmpLit(Rel(Var("X"), "<", Var("Y"))),
    )


def test_parse_error_has_span():
    with pytest.raises(ParseError) as e:
        parse_program("p(X) :- q(X)", "f.lp")
    assert "f.lp" in str(e.value)


@pytest.mark.parametrize(
    "text",
    [
        "p(1..8,1..8).",  # interval inside an atom argument
        "p(X) :- X = 4/2.",  # division
        "p :- not not q.",  # nested negation
        "p(1;2).",  # pooling
        "p(X) :- q(X) : r(X).",  # conditional literal
        "2 {p(X)} 3 :- q(X).",  # cardinality bounds
    ],
)
def test_non_regular_constructs_are_flagged(text):
    with pytest.raises(NonRegularError):
        parse_program(text)


def test_symbolic_constant_under_arithmetic_is_rejected():
    with pytest.raises(ParseError):
        parse_program("p(a + 1).")


def test_corpus_round_trips():
    for name, text, _ in CORPUS:
        p = parse_program(text, name)
        assert parse_program(print_program(p), name) == p


def test_formula_parsing_sorts():
    f = parse_formula("forall V (even(V) <-> exists I (-10 <= I & I <= 10 & V = 2*I))")
    outer = f.var
    assert outer.sort is Sort.GENERAL
    assert f.body.right.var.sort is Sort.INTEGER


def test_formula_sort_prefixes():
    f = parse_formula("forall int:A (p(int:A))")
    assert f.var.sort is Sort.INTEGER
    with pytest.raises(ParseError):
        parse_formula("forall A (p(A))")  # initial A needs an explicit sort


def test_formula_comparison_chain():
    f = parse_formula("1 < M < N")
    from aspcomp.formulas import And, Cmp

    assert isinstance(f, And)
    assert f.left.rel == "<" and f.right.rel == "<"


def test_formula_not_keyword_and_tilde_agree():
    assert parse_formula("not p") == parse_formula("~p")


def test_parse_formulas_statements():
    fs = parse_formulas("p <-> true.\nq <-> false.")
    assert len(fs) == 2


def test_unsorted_arithmetic_rejected():
    from aspcomp.formulas import SortError

    with pytest.raises(SortError):
        parse_formula("forall V (p(V + 1))")


# Random rule ASTs must survive print -> parse unchanged.

var_names = st.sampled_from(["X", "Y", "Z1"])
num_terms = st.integers(-20, 20).map(Num)
plain_terms = st.one_of(num_terms, var_names.map(Var), st.sampled_from(["a", "b"]).map(Sym))
arith_terms = st.one_of(num_terms, var_names.map(Var))


@st.composite
def terms(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        return draw(plain_terms)
    op = draw(st.sampled_from(["+", "-", "*"]))
    # Arithmetic subterms never contain symbolic constants.
    left = draw(st.one_of(arith_terms, arith_binaries(depth - 1)))
    right = draw(st.one_of(arith_terms, arith_binaries(depth - 1)))
    return Bin(op, left, right)


@st.composite
def arith_binaries(draw, depth):
    if depth == 0:
        return draw(arith_terms)
    op = draw(st.sampled_from(["+", "-", "*"]))
    return Bin(op, draw(arith_terms), draw(arith_terms))


@st.composite
def literals(draw):
    kind = draw(st.integers(0, 3))
    if kind == 0:
        return PosLit(RuleAtom("q", tuple(draw(st.lists(terms(), max_size=2)))))
    if kind == 1:
        return NegLit(RuleAtom("r", tuple(draw(st.lists(terms(), max_size=2)))))
    if kind == 2:
        rel = draw(st.sampled_from(["=", "!=", "<", ">", "<=", ">="]))
        return CmpLit(Rel(draw(terms()), rel, draw(terms())))
    return CmpLit(Interval(draw(terms()), draw(arith_terms), draw(arith_terms)))


@st.composite
def rules(draw):
    headless = draw(st.booleans())
    body = tuple(draw(st.lists(literals(), max_size=3)))
    if headless and body:
        return Rule(None, body, False)
    head = RuleAtom("p", tuple(draw(st.lists(terms(), max_size=2))))
    return Rule(head, body, draw(st.booleans()))


@given(rules())
def test_printed_rules_reparse_to_the_same_ast(r):
    text = print_rule(r)
    p = parse_program(text)
    assert p.rules == (r,)
