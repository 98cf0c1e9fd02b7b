import pytest

from corpus import CORPUS
from aspcomp.grounding import IntWindow, SafetyError, check_safety, default_window, eval_term, ground
from aspcomp.parser import parse_program
from aspcomp.syntax import Num, Sym, Var


from aspcomp.syntax import precomputed_key


def _heads(g, pred):
    return sorted(
        (a[1] for a in g.head_atoms if a[0] == pred),
        key=lambda args: tuple(precomputed_key(x) for x in args),
    )


def test_interval_enumeration_within_window():
    p = parse_program("even(2*X) :- X = -10..10.")
    g = ground(p, IntWindow(-1000, 1000))
    assert _heads(g, "even") == [(Num(2 * k),) for k in range(-10, 11)]
    assert g.warnings == ()


def test_window_clips_interval_and_warns_about_escaping_heads():
    p = parse_program("even(2*X) :- X = -3..3.")
    g = ground(p, IntWindow(-3, 3))
    # X ranges over the window; computed heads may leave it.
    assert _heads(g, "even") == [(Num(2 * k),) for k in range(-3, 4)]
    assert any("window_too_small" in w for w in g.warnings)


def test_default_window_spans_numerals_with_slack():
    p = parse_program("p(X) :- X = -4..7.")
    w = default_window(p)
    assert (w.lo, w.hi) == (-5, 8)


def test_empty_window_is_rejected():
    with pytest.raises(ValueError):
        IntWindow(3, 2)


def test_eval_term_discards_symbolic_arithmetic():
    from aspcomp.grounding import _ILL

    assert eval_term(Num(3), {}) == Num(3)
    from aspcomp.syntax import Bin

    assert eval_term(Bin("+", Num(1), Num(2)), {}) == Num(3)
    assert eval_term(Bin("+", Sym("a"), Num(2)), {}) is _ILL
    assert eval_term(Var("X"), {}) is None


def test_ill_formed_substitutions_are_dropped():
    # a + 1 is never evaluated; the symbolic binding is discarded silently.
    p = parse_program("c(a). c(1).\np(X + 1) :- c(X).")
    g = ground(p, IntWindow(0, 3))
    assert _heads(g, "p") == [(Num(2),)]


def test_comparison_filters():
    p = parse_program("p(X) :- X = 0..3, X < 3, X != 1.")
    g = ground(p, IntWindow(0, 3))
    assert _heads(g, "p") == [(Num(0),), (Num(2),)]


def test_symbolic_constants_order_in_comparisons():
    # Numerals precede symbolic constants, symbolic constants are lexicographic.
    p = parse_program("c(1). c(a). c(b).\nsmall(X) :- c(X), X < b.")
    g = ground(p, IntWindow(0, 2))
    assert _heads(g, "small") == [(Num(1),), (Sym("a"),)]


def test_equality_binds_variables():
    p = parse_program("p(Y) :- X = 1..2, Y = X + X.")
    g = ground(p, IntWindow(0, 5))
    assert _heads(g, "p") == [(Num(2),), (Num(4),)]


def test_unsafe_rule_detection():
    p = parse_program("p(X) :- not q(X).")
    with pytest.raises(SafetyError) as e:
        ground(p, IntWindow(0, 1))
    assert e.value.variable == "X"


def test_head_only_variable_is_unsafe():
    p = parse_program("p(X,Y) :- q(X).")
    with pytest.raises(SafetyError):
        ground(p, IntWindow(0, 1))


def test_strict_safety_rejects_bare_comparisons():
    r = parse_program("p(X) :- X < 2.").rules[0]
    check_safety(r, strict=False)
    with pytest.raises(SafetyError):
        check_safety(r, strict=True)


def test_bare_comparisons_enumerate_the_window():
    p = parse_program("p(X) :- X < 2, X > 0.")
    g = ground(p, IntWindow(-5, 5))
    assert _heads(g, "p") == [(Num(1),)]


def test_interval_bounds_from_other_atoms():
    p = parse_program("b(2).\np(X) :- b(Y), X = 0..Y.")
    g = ground(p, IntWindow(0, 3))
    assert _heads(g, "p") == [(Num(0),), (Num(1),), (Num(2),)]


def test_negative_literal_against_underivable_atom_is_dropped():
    p = parse_program("p(1).\nq(X) :- p(X), not r(X).")
    g = ground(p, IntWindow(0, 2))
    rules = [r for r in g.rules if r.head == ("q", (Num(1),))]
    assert rules and rules[0].neg == ()


def test_ground_rules_are_deduplicated():
    p = parse_program("p(1) :- q(X).\nq(1). q(2).")
    g = ground(p, IntWindow(0, 3))
    bodies = [r for r in g.rules if r.head == ("p", (Num(1),))]
    assert len(bodies) == len(set(bodies)) == 2


def test_positive_recursion_reaches_a_fixpoint():
    p = parse_program("p(0).\np(X + 1) :- p(X), X < 3.")
    g = ground(p, IntWindow(0, 10))
    assert _heads(g, "p") == [(Num(k),) for k in range(0, 4)]


def test_extra_constants_extend_the_universe():
    p = parse_program("p(X) :- X <= 0, X >= 0.")
    g = ground(p, IntWindow(0, 0), extra_constants=(Sym("a"),))
    # a is incomparable only through arithmetic; <= and >= reach it.
    assert ("p", (Num(0),)) in g.head_atoms


def test_b0_extent_matches_double_loop_oracle():
    p = parse_program("b0(XM,XN) :- 1 < XM, XM < XN, XM + XN <= 100.")
    g = ground(p, IntWindow(2, 100))
    oracle = {(m, n) for m in range(2, 100) for n in range(m + 1, 101) if m + n <= 100}
    got = {(a[1][0].value, a[1][1].value) for a in g.head_atoms}
    assert got == oracle
    assert len(got) == 2352


def test_corpus_grounds_without_errors():
    for name, text, w in CORPUS:
        g = ground(parse_program(text, name), w)
        assert isinstance(g.rules, tuple)
