"""Parsers for clingo-style regular programs and for first-order axiom files.

Program files: `%` line comments, rules terminated by `.`.
Axiom files: `%` line comments, one sentence per `.`-terminated statement,
with `forall`/`exists`, `<->`, `->`, `&`, `|`, `~` and chained comparisons.
Unicode connectives are accepted as synonyms of their ASCII spellings.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas as fm
from . import syntax as sx
from .formulas import And, Atom, Bot, Cmp, Exists, FBin, Forall, FVar, Iff, Implies, Not, Or, Sort, Top
from .syntax import Bin, CmpLit, Interval, NegLit, Num, PosLit, Program, Rel, Rule, RuleAtom, Sym, Var


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


class ParseError(Exception):
    def __init__(self, span: SourceSpan, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


class NonRegularError(ParseError):
    """A recognized clingo construct that is outside the regular fragment."""


# Unicode synonyms normalized during tokenization.
_UNICODE_SYNONYMS = {
    "∧": "&",
    "∨": "|",
    "¬": "~",
    "→": "->",
    "↔": "<->",
    "≤": "<=",
    "≥": ">=",
    "≠": "!=",
    "×": "*",
    "−": "-",
    "∀": "forall",
    "∃": "exists",
    "⊤": "true",
    "⊥": "false",
}

_TWO_CHAR = (":-", "..", "<->", "->", "<=", ">=", "!=")
_ONE_CHAR = ".,;{}()+-*/=<>:~&|"

_KEYWORDS = ("not", "forall", "exists", "true", "false")


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'ident', 'var', 'op', 'kw', 'eof'
    text: str
    span: SourceSpan


def tokenize(text: str, filename: str = "<string>") -> list:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        span = SourceSpan(filename, line, col)
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c in _UNICODE_SYNONYMS:
            norm = _UNICODE_SYNONYMS[c]
            if norm in _KEYWORDS:
                tokens.append(Token("kw", norm, span))
            else:
                tokens.append(Token("op", norm, span))
            i += 1
            col += 1
            continue
        two = text[i : i + 3]
        if two.startswith("<->"):
            tokens.append(Token("op", "<->", span))
            i += 3
            col += 3
            continue
        two = text[i : i + 2]
        if two in _TWO_CHAR:
            tokens.append(Token("op", two, span))
            i += 2
            col += 2
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], span))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in _KEYWORDS:
                tokens.append(Token("kw", word, span))
            elif word[0].isupper():
                tokens.append(Token("var", word, span))
            else:
                tokens.append(Token("ident", word, span))
            col += j - i
            i = j
            continue
        if c in _ONE_CHAR:
            tokens.append(Token("op", c, span))
            i += 1
            col += 1
            continue
        raise ParseError(span, f"unexpected character {c!r}")
    tokens.append(Token("eof", "", SourceSpan(filename, line, col)))
    return tokens


_RELS = ("=", "!=", "<", ">", "<=", ">=")


class _TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead=0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        t = self.peek()
        if t.kind != "eof":
            self.pos += 1
        return t

    def at_op(self, *texts) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text in texts

    def at_kw(self, *texts) -> bool:
        t = self.peek()
        return t.kind == "kw" and t.text in texts

    def expect_op(self, text) -> Token:
        t = self.peek()
        if t.kind != "op" or t.text != text:
            raise ParseError(t.span, f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def error(self, message) -> ParseError:
        return ParseError(self.peek().span, message)


# ---------------------------------------------------------------------------
# Rule-level terms and programs


def _parse_rule_term(ts: _TokenStream, top=True):
    """An ArgTerm: symbolic constant (top level only) or regular term."""
    t = _parse_rule_additive(ts)
    return t


def _parse_rule_additive(ts: _TokenStream):
    left = _parse_rule_multiplicative(ts)
    while ts.at_op("+", "-"):
        op = ts.next().text
        span = ts.peek().span
        right = _parse_rule_multiplicative(ts)
        _reject_symbolic_in_arith(left, span)
        _reject_symbolic_in_arith(right, span)
        left = Bin(op, left, right)
    return left


def _parse_rule_multiplicative(ts: _TokenStream):
    left = _parse_rule_primary(ts)
    while ts.at_op("*", "/"):
        op_tok = ts.next()
        if op_tok.text == "/":
            raise NonRegularError(op_tok.span, "integer division is not regular")
        right = _parse_rule_primary(ts)
        _reject_symbolic_in_arith(left, op_tok.span)
        _reject_symbolic_in_arith(right, op_tok.span)
        left = Bin("*", left, right)
    return left


def _reject_symbolic_in_arith(t, span):
    if isinstance(t, Sym):
        raise ParseError(span, f"symbolic constant {t.name!r} under an arithmetic operation")


def _parse_rule_primary(ts: _TokenStream):
    t = ts.peek()
    if t.kind == "int":
        ts.next()
        return Num(int(t.text))
    if t.kind == "op" and t.text == "-":
        ts.next()
        lit = ts.peek()
        if lit.kind != "int":
            raise ParseError(lit.span, "unary minus is allowed on integer literals only")
        ts.next()
        return Num(-int(lit.text))
    if t.kind == "var":
        ts.next()
        return Var(t.text)
    if t.kind == "ident":
        ts.next()
        if ts.at_op("("):
            raise ParseError(ts.peek().span, f"atom {t.text!r} not allowed inside a term")
        return Sym(t.text)
    if t.kind == "op" and t.text == "(":
        ts.next()
        inner = _parse_rule_additive(ts)
        ts.expect_op(")")
        return inner
    raise ParseError(t.span, f"expected a term, found {t.text or 'end of input'!r}")


def _parse_rule_atom(ts: _TokenStream) -> RuleAtom:
    t = ts.peek()
    if t.kind != "ident":
        raise ParseError(t.span, f"expected a predicate name, found {t.text or 'end of input'!r}")
    ts.next()
    args = []
    if ts.at_op("("):
        ts.next()
        while True:
            args.append(_parse_atom_arg(ts))
            if ts.at_op(";"):
                raise NonRegularError(ts.peek().span, "pooling is not regular")
            if ts.at_op(","):
                ts.next()
                continue
            break
        ts.expect_op(")")
    return RuleAtom(t.text, tuple(args))


def _parse_atom_arg(ts: _TokenStream):
    arg = _parse_rule_term(ts)
    if ts.at_op(".."):
        raise NonRegularError(ts.peek().span, "interval in an atom argument is not regular")
    if ts.at_op(";"):
        raise NonRegularError(ts.peek().span, "pooling is not regular")
    return arg


def _parse_body_literal(ts: _TokenStream) -> list:
    """One body element; chained comparisons expand to several literals."""
    if ts.at_kw("not"):
        ts.next()
        if ts.at_kw("not"):
            raise NonRegularError(ts.peek().span, "double negation is not regular")
        return [NegLit(_parse_rule_atom(ts))]
    t = ts.peek()
    if t.kind == "ident" and ts.peek(1).kind == "op" and ts.peek(1).text == "(":
        atom = _parse_rule_atom(ts)
        if ts.at_op(*_RELS):
            raise ParseError(ts.peek().span, "an atom cannot be a comparison operand")
        if ts.at_op(":"):
            raise NonRegularError(ts.peek().span, "conditional literals are not regular")
        return [PosLit(atom)]
    # Could still be a 0-ary atom or a comparison starting with any term.
    lhs = _parse_rule_term(ts)
    if not ts.at_op(*_RELS):
        if isinstance(lhs, Sym):
            return [PosLit(RuleAtom(lhs.name, ()))]
        raise ParseError(ts.peek().span, "expected a comparison operator")
    lits = []
    while ts.at_op(*_RELS):
        rel = ts.next().text
        rhs = _parse_rule_term(ts)
        if rel == "=" and ts.at_op(".."):
            ts.next()
            high = _parse_rule_term(ts)
            # The bounds must be numeric; a symbolic left side is legal and
            # makes the comparison false for every value of the interval.
            for side in (rhs, high):
                if isinstance(side, Sym):
                    raise ParseError(
                        ts.peek().span, "interval comparisons admit regular terms only"
                    )
            lits.append(CmpLit(Interval(lhs, rhs, high)))
            return lits
        lits.append(CmpLit(Rel(lhs, rel, rhs)))
        lhs = rhs
    return lits


def parse_program(text: str, filename: str = "<string>") -> Program:
    """Parse an ASCII regular program; rejects non-regular clingo constructs."""
    ts = _TokenStream(tokenize(text, filename))
    rules = []
    while ts.peek().kind != "eof":
        rules.append(_parse_rule(ts))
    return Program(tuple(rules))


def _parse_rule(ts: _TokenStream) -> Rule:
    head = None
    choice = False
    body = []
    if ts.peek().kind == "int" and ts.peek(1).kind == "op" and ts.peek(1).text == "{":
        raise NonRegularError(ts.peek().span, "cardinality bounds are not regular")
    if ts.at_op("{"):
        ts.next()
        head = _parse_rule_atom(ts)
        if ts.at_op(";", ","):
            raise NonRegularError(ts.peek().span, "cardinality bounds and multi-atom choices are not regular")
        ts.expect_op("}")
        choice = True
        if ts.peek().kind == "int":
            raise NonRegularError(ts.peek().span, "cardinality bounds are not regular")
    elif not ts.at_op(":-"):
        head = _parse_rule_atom(ts)
        if ts.at_op(*_RELS, ".."):
            raise ParseError(ts.peek().span, "a comparison cannot be a rule head")
    if ts.at_op(":-"):
        ts.next()
        if not ts.at_op("."):
            while True:
                body.extend(_parse_body_literal(ts))
                if ts.at_op(","):
                    ts.next()
                    continue
                if ts.at_op(";"):
                    raise NonRegularError(ts.peek().span, "pooling is not regular")
                break
    ts.expect_op(".")
    return Rule(head, tuple(body), choice)


# ---------------------------------------------------------------------------
# Two-sorted formulas

_INT_INITIALS = "IJKLMN"
_GEN_INITIALS = "UVWXYZ"


def _variable_sort(name: str, span: SourceSpan) -> Sort:
    initial = name[0]
    if initial in _INT_INITIALS:
        return Sort.INTEGER
    if initial in _GEN_INITIALS:
        return Sort.GENERAL
    raise ParseError(
        span,
        f"cannot infer the sort of variable {name!r} (initial not in I-N or U-Z); "
        "use an explicit int: or gen: prefix",
    )


def _parse_sorted_var(ts: _TokenStream) -> FVar:
    t = ts.peek()
    if t.kind == "ident" and t.text in ("int", "gen") and ts.peek(1).text == ":":
        ts.next()
        ts.next()
        v = ts.peek()
        if v.kind != "var":
            raise ParseError(v.span, "expected a variable after sort prefix")
        ts.next()
        return FVar(v.text, Sort.INTEGER if t.text == "int" else Sort.GENERAL)
    if t.kind == "var":
        ts.next()
        return FVar(t.text, _variable_sort(t.text, t.span))
    raise ParseError(t.span, f"expected a variable, found {t.text or 'end of input'!r}")


def _parse_fterm(ts: _TokenStream):
    left = _parse_fterm_mult(ts)
    while ts.at_op("+", "-"):
        op = ts.next().text
        left = FBin(op, left, _parse_fterm_mult(ts))
    return left


def _parse_fterm_mult(ts: _TokenStream):
    left = _parse_fterm_primary(ts)
    while ts.at_op("*"):
        ts.next()
        left = FBin("*", left, _parse_fterm_primary(ts))
    return left


def _parse_fterm_primary(ts: _TokenStream):
    t = ts.peek()
    if t.kind == "int":
        ts.next()
        return Num(int(t.text))
    if t.kind == "op" and t.text == "-":
        ts.next()
        lit = ts.peek()
        if lit.kind != "int":
            raise ParseError(lit.span, "unary minus is allowed on integer literals only")
        ts.next()
        return Num(-int(lit.text))
    if (t.kind == "var") or (t.kind == "ident" and t.text in ("int", "gen") and ts.peek(1).text == ":"):
        return _parse_sorted_var(ts)
    if t.kind == "ident":
        ts.next()
        if ts.at_op("("):
            raise ParseError(ts.peek().span, "atom not allowed inside a term")
        return Sym(t.text)
    if t.kind == "op" and t.text == "(":
        ts.next()
        inner = _parse_fterm(ts)
        ts.expect_op(")")
        return inner
    raise ParseError(t.span, f"expected a term, found {t.text or 'end of input'!r}")


def _parse_formula(ts: _TokenStream):
    left = _parse_implies(ts)
    while ts.at_op("<->"):
        ts.next()
        left = Iff(left, _parse_implies(ts))
    return left


def _parse_implies(ts: _TokenStream):
    left = _parse_or(ts)
    if ts.at_op("->"):
        ts.next()
        return Implies(left, _parse_implies(ts))
    return left


def _parse_or(ts: _TokenStream):
    left = _parse_and(ts)
    while ts.at_op("|"):
        ts.next()
        left = Or(left, _parse_and(ts))
    return left


def _parse_and(ts: _TokenStream):
    left = _parse_unary(ts)
    while ts.at_op("&"):
        ts.next()
        left = And(left, _parse_unary(ts))
    return left


def _parse_unary(ts: _TokenStream):
    if ts.at_op("~") or ts.at_kw("not"):
        ts.next()
        return Not(_parse_unary(ts))
    if ts.at_kw("forall", "exists"):
        kw = ts.next().text
        vars_ = [_parse_sorted_var(ts)]
        while not ts.at_op("("):
            vars_.append(_parse_sorted_var(ts))
        ts.expect_op("(")
        body = _parse_formula(ts)
        ts.expect_op(")")
        return fm.forall(vars_, body) if kw == "forall" else fm.exists(vars_, body)
    return _parse_atomic(ts)


def _parse_atomic(ts: _TokenStream):
    if ts.at_kw("true"):
        ts.next()
        return Top()
    if ts.at_kw("false"):
        ts.next()
        return Bot()
    # Try a comparison first; fall back to grouping or an atom.
    mark = ts.pos
    try:
        lhs = _parse_fterm(ts)
        if ts.at_op(*_RELS):
            parts = []
            while ts.at_op(*_RELS):
                rel = ts.next().text
                rhs = _parse_fterm(ts)
                parts.append(Cmp(lhs, rel, rhs))
                lhs = rhs
            return fm.conj(parts)
        if isinstance(lhs, Sym):
            return Atom(lhs.name, ())
        raise ts.error("expected a comparison operator")
    except ParseError:
        ts.pos = mark
    t = ts.peek()
    if t.kind == "op" and t.text == "(":
        ts.next()
        inner = _parse_formula(ts)
        ts.expect_op(")")
        return inner
    if t.kind == "ident":
        ts.next()
        args = []
        if ts.at_op("("):
            ts.next()
            while True:
                args.append(_parse_fterm(ts))
                if ts.at_op(","):
                    ts.next()
                    continue
                break
            ts.expect_op(")")
        return Atom(t.text, tuple(args))
    raise ParseError(t.span, f"expected a formula, found {t.text or 'end of input'!r}")


def parse_formula(text: str, filename: str = "<string>"):
    """Parse one two-sorted formula and verify well-sortedness."""
    ts = _TokenStream(tokenize(text, filename))
    f = _parse_formula(ts)
    t = ts.peek()
    if t.kind != "eof":
        raise ParseError(t.span, f"unexpected trailing input {t.text!r}")
    fm.check_sorts(f)
    return f


def parse_formulas(text: str, filename: str = "<string>") -> list:
    """Parse a `.`-separated list of sentences (axiom file format)."""
    ts = _TokenStream(tokenize(text, filename))
    out = []
    while ts.peek().kind != "eof":
        f = _parse_formula(ts)
        ts.expect_op(".")
        fm.check_sorts(f)
        out.append(f)
    return out
