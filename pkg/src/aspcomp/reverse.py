"""Turning a chain of explicit first-order definitions back into rules.

Each axiom must have the shape

    forall ... (p(V1,...,Vk) <-> RHS)

with distinct variable arguments, where RHS uses only comparisons,
arithmetic, and predicates defined strictly earlier in the chain.  The
transformation replaces the equivalence by a left arrow, drops the
top-level existential quantifiers of the RHS, renames every variable V
to the general variable XV, and writes negation as "not".
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas as fm
from .formulas import And, Atom, Cmp, Exists, FBin, Forall, FVar, Iff, Not, Sort
from .syntax import (
    Bin, CmpLit, Interval, NegLit, Num, PosLit, PredicateSymbol, Program, Rel, Rule, RuleAtom,
    Sym, Var,
)
from .grounding import SafetyError, check_safety


class NotADefinitionError(Exception):
    def __init__(self, reason: str, formula=None):
        super().__init__(reason)
        self.reason = reason
        self.formula = formula


class UnsupportedShapeError(Exception):
    pass


@dataclass(frozen=True)
class DefinitionAxiom:
    predicate: PredicateSymbol
    head_vars: tuple  # FVar, pairwise distinct
    rhs: object  # formula over head_vars


def _atoms_of(f):
    if isinstance(f, Atom):
        yield PredicateSymbol(f.pred, len(f.args))
    elif isinstance(f, Not):
        yield from _atoms_of(f.arg)
    elif hasattr(f, "left"):
        yield from _atoms_of(f.left)
        yield from _atoms_of(f.right)
    elif hasattr(f, "body"):
        yield from _atoms_of(f.body)


def parse_axiom_chain(sentences) -> list:
    """Validate a list of sentences as a chain of explicit definitions."""
    defined = []
    axioms = []
    for s in sentences:
        body = s
        while isinstance(body, Forall):
            body = body.body
        if not isinstance(body, Iff) or not isinstance(body.left, Atom):
            raise NotADefinitionError(
                "axiom is not an equivalence with an atomic left-hand side", s
            )
        head = body.left
        args = head.args
        if not all(isinstance(a, FVar) for a in args):
            raise NotADefinitionError(
                f"arguments of {head.pred} are not all variables", s
            )
        if len({a.name for a in args}) != len(args):
            raise NotADefinitionError(
                f"repeated argument variable in {head.pred}", s
            )
        sym = PredicateSymbol(head.pred, len(args))
        if sym in defined:
            raise NotADefinitionError(f"{sym} is defined twice", s)
        for used in _atoms_of(body.right):
            if used == sym:
                raise NotADefinitionError(f"{sym} occurs in its own definition", s)
            if used not in defined:
                raise NotADefinitionError(
                    f"{used} is used before (or without) being defined", s
                )
        free = fm.free_variables(body.right)
        if not free <= set(args):
            extra = ", ".join(sorted(v.name for v in free - set(args)))
            raise NotADefinitionError(
                f"right-hand side of {sym} has stray free variables: {extra}", s
            )
        defined.append(sym)
        axioms.append(DefinitionAxiom(sym, tuple(args), body.right))
    return axioms


def _rename(name: str) -> str:
    return "X" + name


def _rule_term(t, renaming):
    if isinstance(t, (Num, Sym)):
        return t
    if isinstance(t, FVar):
        return Var(renaming[t.name])
    if isinstance(t, FBin):
        return Bin(t.op, _rule_term(t.left, renaming), _rule_term(t.right, renaming))
    raise TypeError(f"not a term: {t!r}")


def reverse_rule(axiom: DefinitionAxiom) -> Rule:
    """One rule: equivalence to arrow, existentials dropped, variables renamed."""
    rhs = axiom.rhs
    quantified = []
    while isinstance(rhs, Exists):
        quantified.append(rhs.var)
        rhs = rhs.body
    names = {v.name for v in axiom.head_vars} | {v.name for v in quantified}
    renaming = {}
    for n in sorted(names):
        new = _rename(n)
        if new in names:
            raise UnsupportedShapeError(
                f"renaming {n} to {new} collides with an axiom variable"
            )
        renaming[n] = new
    body = []
    for part in fm.conjuncts(rhs):
        if isinstance(part, Atom):
            body.append(
                PosLit(RuleAtom(part.pred, tuple(_rule_term(a, renaming) for a in part.args)))
            )
        elif isinstance(part, Not) and isinstance(part.arg, Atom):
            a = part.arg
            body.append(
                NegLit(RuleAtom(a.pred, tuple(_rule_term(x, renaming) for x in a.args)))
            )
        elif isinstance(part, Cmp):
            body.append(
                CmpLit(Rel(_rule_term(part.lhs, renaming), part.rel, _rule_term(part.rhs, renaming)))
            )
        else:
            raise UnsupportedShapeError(
                f"body part is not a literal or comparison: {part!r}"
            )
    head = RuleAtom(
        axiom.predicate.name, tuple(Var(renaming[v.name]) for v in axiom.head_vars)
    )
    return Rule(head, tuple(body), choice=False)


def reverse_completion(sentences, intervals: bool = False) -> Program:
    axioms = parse_axiom_chain(sentences)
    rules = []
    for ax in axioms:
        r = reverse_rule(ax)
        if intervals:
            r = rewrite_intervals(r)
        rules.append(r)
    return Program(tuple(rules))


def strictly_unsafe(p: Program) -> list:
    """Rules rejected by the strict safety condition, with a witness variable."""
    out = []
    for r in p.rules:
        try:
            check_safety(r, strict=True)
        except SafetyError as e:
            out.append((r, e.variable))
    return out


def _plus_one(t):
    if isinstance(t, Num):
        return Num(t.value + 1)
    return Bin("+", t, Num(1))


def _minus_one(t):
    if isinstance(t, Num):
        return Num(t.value - 1)
    return Bin("-", t, Num(1))


def rewrite_intervals(r: Rule) -> Rule:
    """Merge a lower and an upper bound on a variable into an interval.

    1 < XM and XM < XN become XM = 2..XN-1, the rewriting suggested for
    grounders whose safety condition does not cover bare comparisons.
    """
    body = list(r.body)
    changed = True
    while changed:
        changed = False
        lowers = {}  # variable name -> (index, inclusive lower bound term)
        uppers = {}
        for i, lit in enumerate(body):
            if not isinstance(lit, CmpLit) or not isinstance(lit.comparison, Rel):
                continue
            c = lit.comparison
            pairs = [(c.lhs, c.rel, c.rhs)]
            for lhs, rel, rhs in pairs:
                if isinstance(lhs, Var) and rel in ("<", "<="):
                    uppers.setdefault(lhs.name, (i, rhs if rel == "<=" else _minus_one(rhs)))
                if isinstance(rhs, Var) and rel in ("<", "<="):
                    lowers.setdefault(rhs.name, (i, lhs if rel == "<=" else _plus_one(lhs)))
                if isinstance(lhs, Var) and rel in (">", ">="):
                    lowers.setdefault(lhs.name, (i, rhs if rel == ">=" else _plus_one(rhs)))
                if isinstance(rhs, Var) and rel in (">", ">="):
                    uppers.setdefault(rhs.name, (i, lhs if rel == ">=" else _minus_one(lhs)))
        for name in sorted(set(lowers) & set(uppers)):
            i, low = lowers[name]
            j, high = uppers[name]
            if i == j:
                continue
            interval = CmpLit(Interval(Var(name), low, high))
            body = [lit for k, lit in enumerate(body) if k not in (i, j)]
            body.insert(min(i, j), interval)
            changed = True
            break
    return Rule(r.head, tuple(body), r.choice)
