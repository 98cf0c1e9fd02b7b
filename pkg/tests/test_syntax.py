import pytest
from hypothesis import given, strategies as st

from aspcomp.syntax import (
    Bin, CmpLit, Interval, NegLit, Num, Ordering, PosLit, PredicateSymbol, Program, Rel, Rule,
    RuleAtom, Sym, Var, compare_precomputed, precomputed_key, predicate_symbols,
    program_constants, program_numerals, rule_variables, term_variables,
)

names = st.text(alphabet="abcdefgh", min_size=1, max_size=4)
precomputed = st.one_of(st.integers(-50, 50).map(Num), names.map(Sym))


@given(st.integers(-100, 100), st.integers(-100, 100))
def test_numeral_order_mirrors_integers(a, b):
    expected = Ordering.LESS if a < b else Ordering.GREATER if a > b else Ordering.EQUAL
    assert compare_precomputed(Num(a), Num(b)) is expected


@given(st.integers(-100, 100), names)
def test_numerals_precede_symbolic_constants(n, s):
    assert compare_precomputed(Num(n), Sym(s)) is Ordering.LESS
    assert compare_precomputed(Sym(s), Num(n)) is Ordering.GREATER


@given(names, names)
def test_symbolic_order_is_lexicographic(a, b):
    got = compare_precomputed(Sym(a), Sym(b))
    expected = Ordering.LESS if a < b else Ordering.GREATER if a > b else Ordering.EQUAL
    assert got is expected


@given(precomputed, precomputed, precomputed)
def test_precomputed_key_is_a_total_order(a, b, c):
    ka, kb, kc = precomputed_key(a), precomputed_key(b), precomputed_key(c)
    assert (ka == kb) == (a == b)
    if ka <= kb and kb <= kc:
        assert ka <= kc


def test_term_variables():
    t = Bin("+", Var("X"), Bin("*", Num(2), Var("Y")))
    assert term_variables(t) == {"X", "Y"}
    assert term_variables(Num(3)) == set()
    assert term_variables(Sym("a")) == set()


def test_rule_variables_order_head_first():
    r = Rule(
        RuleAtom("p", (Var("Z"),)),
        (
            PosLit(RuleAtom("q", (Var("A"), Var("Z")))),
            CmpLit(Rel(Var("B"), "<", Var("A"))),
        ),
        choice=False,
    )
    assert rule_variables(r) == ["Z", "A", "B"]


def test_choice_constraint_is_rejected():
    with pytest.raises(ValueError):
        Rule(None, (), choice=True)


def test_predicate_symbols_by_first_occurrence():
    p = Program(
        (
            Rule(RuleAtom("b", (Num(1),)), (PosLit(RuleAtom("a", ())),), False),
            Rule(RuleAtom("a", ()), (), False),
        )
    )
    assert predicate_symbols(p) == [PredicateSymbol("b", 1), PredicateSymbol("a", 0)]


def test_program_constants_and_numerals():
    p = Program(
        (
            Rule(
                RuleAtom("p", (Sym("a"),)),
                (CmpLit(Interval(Var("X"), Num(-2), Num(5))),),
                False,
            ),
        )
    )
    assert program_constants(p) == {Sym("a")}
    assert program_numerals(p) == {-2, 5}
