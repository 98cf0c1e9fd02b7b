"""Pretty-printers for programs and formulas (unicode, ascii, tptp styles)."""

from __future__ import annotations

from .formulas import And, Atom, Bot, Cmp, Exists, FBin, Forall, FVar, Iff, Implies, Not, Or, Sort, Top
from .syntax import Bin, CmpLit, Interval, NegLit, Num, PosLit, Program, Rel, Rule, RuleAtom, Sym, Var

# ---------------------------------------------------------------------------
# Rule-level printing (clingo-style ASCII)

_TERM_PREC = {"+": 1, "-": 1, "*": 2}


def print_rule_term(t) -> str:
    return _rule_term(t, 0)


def _rule_term(t, parent_prec) -> str:
    if isinstance(t, (Num, Sym, Var)):
        return str(t)
    if isinstance(t, Bin):
        prec = _TERM_PREC[t.op]
        op = t.op if t.op == "*" else f" {t.op} "
        s = f"{_rule_term(t.left, prec)}{op}{_rule_term(t.right, prec + 1)}"
        if prec < parent_prec:
            s = f"({s})"
        return s
    raise TypeError(f"not a rule term: {t!r}")


def print_rule_atom(a: RuleAtom) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({','.join(_rule_term(x, 0) for x in a.args)})"


def _print_body_literal(lit) -> str:
    if isinstance(lit, PosLit):
        return print_rule_atom(lit.atom)
    if isinstance(lit, NegLit):
        return f"not {print_rule_atom(lit.atom)}"
    c = lit.comparison
    if isinstance(c, Rel):
        return f"{_rule_term(c.lhs, 0)} {c.rel} {_rule_term(c.rhs, 0)}"
    return f"{_rule_term(c.lhs, 0)} = {_rule_term(c.low, 2)}..{_rule_term(c.high, 2)}"


def print_rule(r: Rule) -> str:
    if r.head is None:
        head = ""
    elif r.choice:
        head = "{" + print_rule_atom(r.head) + "}"
    else:
        head = print_rule_atom(r.head)
    if not r.body:
        return f"{head}." if head else ":- ."
    body = ", ".join(_print_body_literal(lit) for lit in r.body)
    if head:
        return f"{head} :- {body}."
    return f":- {body}."


def print_program(p: Program) -> str:
    return "\n".join(print_rule(r) for r in p.rules)


# ---------------------------------------------------------------------------
# Formula printing

_STYLES = {
    "unicode": {
        "top": "⊤", "bot": "⊥", "not": "¬", "and": " ∧ ", "or": " ∨ ",
        "implies": " → ", "iff": " ↔ ", "forall": "∀", "exists": "∃",
        "le": "≤", "ge": "≥", "ne": "≠",
    },
    "ascii": {
        "top": "true", "bot": "false", "not": "~", "and": " & ", "or": " | ",
        "implies": " -> ", "iff": " <-> ", "forall": "forall ", "exists": "exists ",
        "le": "<=", "ge": ">=", "ne": "!=",
    },
}

_INT_INITIALS = "IJKLMN"
_GEN_INITIALS = "UVWXYZ"


def _var_name(v: FVar, style: str) -> str:
    if style == "tptp":
        return v.name
    initial = v.name[0]
    conventional = (
        (v.sort is Sort.INTEGER and initial in _INT_INITIALS)
        or (v.sort is Sort.GENERAL and initial in _GEN_INITIALS)
    )
    if conventional:
        return v.name
    prefix = "int:" if v.sort is Sort.INTEGER else "gen:"
    return prefix + v.name


def _fterm(t, parent_prec, style) -> str:
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Sym):
        return t.name
    if isinstance(t, FVar):
        return _var_name(t, style)
    if isinstance(t, FBin):
        prec = _TERM_PREC[t.op]
        op = t.op if t.op == "*" else f" {t.op} "
        s = f"{_fterm(t.left, prec, style)}{op}{_fterm(t.right, prec + 1, style)}"
        if prec < parent_prec:
            s = f"({s})"
        return s
    raise TypeError(f"not a formula term: {t!r}")


def _rel_text(rel, tokens) -> str:
    return {"<=": tokens["le"], ">=": tokens["ge"], "!=": tokens["ne"]}.get(rel, rel)


# Connective precedence: iff < implies < or < and < not.
_PREC = {"iff": 1, "implies": 2, "or": 3, "and": 4, "not": 5}


def print_formula(f, style: str = "unicode", tptp_name: str = "f") -> str:
    """Render a formula; styles are unicode, ascii, and tptp."""
    if style == "tptp":
        return _print_tptp(f, tptp_name)
    if style not in _STYLES:
        raise ValueError(f"unknown style {style!r}")
    tokens = _STYLES[style]

    def quant_group(f):
        # Collapse a run of like quantifiers into one prefix.
        kind = type(f)
        names = []
        while isinstance(f, kind):
            names.append(_var_name(f.var, style))
            f = f.body
        return names, f

    def go(f, parent_prec):
        if isinstance(f, Top):
            return tokens["top"]
        if isinstance(f, Bot):
            return tokens["bot"]
        if isinstance(f, Atom):
            if not f.args:
                return f.pred
            return f"{f.pred}({','.join(_fterm(a, 0, style) for a in f.args)})"
        if isinstance(f, Cmp):
            return f"{_fterm(f.lhs, 0, style)} {_rel_text(f.rel, tokens)} {_fterm(f.rhs, 0, style)}"
        if isinstance(f, Not):
            return tokens["not"] + go(f.arg, _PREC["not"])
        if isinstance(f, (Forall, Exists)):
            names, body = quant_group(f)
            q = tokens["forall"] if isinstance(f, Forall) else tokens["exists"]
            sep = " " if style == "ascii" else " "
            return f"{q}{sep.join(names)}" + ("(" if style == "unicode" else " (") + go(body, 0) + ")"
        for cls, key in ((And, "and"), (Or, "or"), (Implies, "implies"), (Iff, "iff")):
            if isinstance(f, cls):
                prec = _PREC[key]
                if key == "implies":
                    # Right-associative.
                    s = go(f.left, prec + 1) + tokens[key] + go(f.right, prec)
                else:
                    s = go(f.left, prec) + tokens[key] + go(f.right, prec + 1)
                if prec < parent_prec:
                    s = f"({s})"
                return s
        raise TypeError(f"not a formula: {f!r}")

    return go(f, 0)


# ---------------------------------------------------------------------------
# TPTP-like output: sorts erased to is_int guards, comparisons and
# arithmetic rendered as ordinary predicates and functions.

_TPTP_REL = {"<": "less", ">": "greater", "<=": "leq", ">=": "geq"}
_TPTP_FUN = {"+": "plus", "-": "minus", "*": "times"}


def _tptp_term(t) -> str:
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Sym):
        return t.name
    if isinstance(t, FVar):
        return t.name
    if isinstance(t, FBin):
        return f"{_TPTP_FUN[t.op]}({_tptp_term(t.left)},{_tptp_term(t.right)})"
    raise TypeError(f"not a formula term: {t!r}")


def _tptp_formula(f) -> str:
    if isinstance(f, Top):
        return "$true"
    if isinstance(f, Bot):
        return "$false"
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({','.join(_tptp_term(a) for a in f.args)})"
    if isinstance(f, Cmp):
        if f.rel == "=":
            return f"{_tptp_term(f.lhs)} = {_tptp_term(f.rhs)}"
        if f.rel == "!=":
            return f"{_tptp_term(f.lhs)} != {_tptp_term(f.rhs)}"
        return f"{_TPTP_REL[f.rel]}({_tptp_term(f.lhs)},{_tptp_term(f.rhs)})"
    if isinstance(f, Not):
        return f"~({_tptp_formula(f.arg)})"
    if isinstance(f, And):
        return f"({_tptp_formula(f.left)} & {_tptp_formula(f.right)})"
    if isinstance(f, Or):
        return f"({_tptp_formula(f.left)} | {_tptp_formula(f.right)})"
    if isinstance(f, Implies):
        return f"({_tptp_formula(f.left)} => {_tptp_formula(f.right)})"
    if isinstance(f, Iff):
        return f"({_tptp_formula(f.left)} <=> {_tptp_formula(f.right)})"
    if isinstance(f, Forall):
        body = _tptp_formula(f.body)
        if f.var.sort is Sort.INTEGER:
            body = f"(is_int({f.var.name}) => {body})"
        return f"! [{f.var.name}] : {body}"
    if isinstance(f, Exists):
        body = _tptp_formula(f.body)
        if f.var.sort is Sort.INTEGER:
            body = f"(is_int({f.var.name}) & {body})"
        return f"? [{f.var.name}] : {body}"
    raise TypeError(f"not a formula: {f!r}")


def _print_tptp(f, name: str) -> str:
    return f"fof({name}, axiom, {_tptp_formula(f)})."
