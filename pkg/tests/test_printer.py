from aspcomp.parser import parse_formula, parse_program
from aspcomp.printer import print_formula, print_program


def test_rule_style_matches_solver_input_conventions():
    text = "even(2*X) :- X = -10..10."
    assert print_program(parse_program(text)) == text
    text2 = "{foo(X)} :- even(X).\n:- not foo(0)."
    assert print_program(parse_program(text2)) == text2


def test_term_precedence_parenthesization():
    p = parse_program("p((1 + 2)*X, 1 + 2*X).")
    assert print_program(p) == "p((1 + 2)*X,1 + 2*X)."


def test_unicode_formula_golden():
    f = parse_formula("forall V (even(V) <-> exists I (-10 <= I & I <= 10 & V = 2*I))")
    assert print_formula(f, "unicode") == "∀V(even(V) ↔ ∃I(-10 ≤ I ∧ I ≤ 10 ∧ V = 2*I))"


def test_ascii_formula_round_trips():
    texts = [
        "forall V (even(V) <-> exists I (-10 <= I & I <= 10 & V = 2*I))",
        "forall V (foo(V) -> even(V))",
        "p | q & ~r",
        "p -> q -> r",
        "(p <-> q) <-> r",
        "exists U W (p(U,W) & U != W)",
    ]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(print_formula(f, "ascii")) == f


def test_unicode_output_reparses():
    f = parse_formula("forall V (even(V) <-> exists I (-10 <= I & I <= 10 & V = 2*I))")
    assert parse_formula(print_formula(f, "unicode")) == f


def test_quantifier_runs_collapse():
    f = parse_formula("forall U W (p(U,W))")
    assert print_formula(f, "unicode") == "∀U W(p(U,W))"


def test_sort_prefix_emitted_when_name_contradicts_convention():
    f = parse_formula("forall int:A (q(int:A))")
    text = print_formula(f, "ascii")
    assert "int:A" in text
    assert parse_formula(text) == f


def test_tptp_output():
    f = parse_formula("forall V (even(V) <-> exists I (-10 <= I & I <= 10 & V = 2*I))")
    s = print_formula(f, "tptp", tptp_name="even_def")
    assert s.startswith("fof(even_def, axiom, ! [V] : ")
    assert "is_int(I)" in s and "times(2,I)" in s and s.endswith(").")
