"""Rule-level syntax: precomputed terms, regular terms, atoms, comparisons, rules.

Precomputed terms (numerals and symbolic constants) form the ground
vocabulary.  They carry a total order in which numeral order mirrors
integer order and all numerals precede all symbolic constants; symbolic
constants are ordered lexicographically by name.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, order=True)
class Num:
    """A numeral: the object constant naming an integer."""

    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, order=True)
class Sym:
    """A symbolic constant."""

    name: str

    def __str__(self):
        return self.name


PrecomputedTerm = Union[Num, Sym]


def precomputed_key(t: PrecomputedTerm):
    """Sort key realizing the total order on precomputed terms."""
    if isinstance(t, Num):
        return (0, t.value, "")
    return (1, 0, t.name)


def compare_precomputed(a: PrecomputedTerm, b: PrecomputedTerm) -> Ordering:
    ka, kb = precomputed_key(a), precomputed_key(b)
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class Var:
    """A (general) program variable."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Bin:
    """Arithmetic term t1 op t2 with op in {+, -, *}."""

    op: str
    left: "RegularTerm"
    right: "RegularTerm"

    def __str__(self):
        from .printer import print_rule_term

        return print_rule_term(self)


RegularTerm = Union[Num, Var, Bin]
# Argument positions of atoms and comparison operands admit symbolic
# constants in addition to regular terms.
ArgTerm = Union[Sym, RegularTerm]

COMPARISON_RELS = ("=", "!=", "<", ">", "<=", ">=")


@dataclass(frozen=True)
class RuleAtom:
    """A regular atom p(t1, ..., tn)."""

    pred: str
    args: tuple = ()

    def __str__(self):
        from .printer import print_rule_atom

        return print_rule_atom(self)


@dataclass(frozen=True)
class Rel:
    """Relational comparison t1 rel t2."""

    lhs: ArgTerm
    rel: str
    rhs: ArgTerm


@dataclass(frozen=True)
class Interval:
    """Interval comparison t1 = t2..t3 (regular terms only)."""

    lhs: RegularTerm
    low: RegularTerm
    high: RegularTerm


Comparison = Union[Rel, Interval]


@dataclass(frozen=True)
class PosLit:
    atom: RuleAtom


@dataclass(frozen=True)
class NegLit:
    atom: RuleAtom


@dataclass(frozen=True)
class CmpLit:
    comparison: Comparison


BodyLiteral = Union[PosLit, NegLit, CmpLit]


@dataclass(frozen=True)
class Rule:
    """Basic rule (head atom), choice rule (head in braces), or constraint."""

    head: Optional[RuleAtom]
    body: tuple = ()
    choice: bool = False

    def __post_init__(self):
        if self.head is None and self.choice:
            raise ValueError("constraint cannot be a choice rule")

    def __str__(self):
        from .printer import print_rule

        return print_rule(self)


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    def __str__(self):
        from .printer import print_program

        return print_program(self)


@dataclass(frozen=True, order=True)
class PredicateSymbol:
    name: str
    arity: int

    def __str__(self):
        return f"{self.name}/{self.arity}"


def term_variables(t: ArgTerm) -> set:
    """Names of variables occurring in a term."""
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Bin):
        return term_variables(t.left) | term_variables(t.right)
    return set()


def literal_variables(lit: BodyLiteral) -> set:
    if isinstance(lit, (PosLit, NegLit)):
        out = set()
        for a in lit.atom.args:
            out |= term_variables(a)
        return out
    c = lit.comparison
    if isinstance(c, Rel):
        return term_variables(c.lhs) | term_variables(c.rhs)
    return term_variables(c.lhs) | term_variables(c.low) | term_variables(c.high)


def rule_variables(r: Rule) -> list:
    """Variable names of a rule, in order of first occurrence (head first)."""
    seen = []

    def add(names):
        for n in names:
            if n not in seen:
                seen.append(n)

    def term_order(t):
        if isinstance(t, Var):
            add([t.name])
        elif isinstance(t, Bin):
            term_order(t.left)
            term_order(t.right)

    if r.head is not None:
        for a in r.head.args:
            term_order(a)
    for lit in r.body:
        if isinstance(lit, (PosLit, NegLit)):
            for a in lit.atom.args:
                term_order(a)
        else:
            c = lit.comparison
            if isinstance(c, Rel):
                term_order(c.lhs)
                term_order(c.rhs)
            else:
                term_order(c.lhs)
                term_order(c.low)
                term_order(c.high)
    return seen


def rule_atoms(r: Rule) -> list:
    """All regular atoms of a rule (head and body)."""
    out = []
    if r.head is not None:
        out.append(r.head)
    for lit in r.body:
        if isinstance(lit, (PosLit, NegLit)):
            out.append(lit.atom)
    return out


def predicate_symbols(p: Program) -> list:
    """Predicate symbols occurring in a program, by first occurrence."""
    seen = []
    for r in p.rules:
        for a in rule_atoms(r):
            ps = PredicateSymbol(a.pred, len(a.args))
            if ps not in seen:
                seen.append(ps)
    return seen


def program_constants(p: Program) -> set:
    """Symbolic constants occurring as atom/comparison arguments."""
    out = set()

    def scan_term(t):
        if isinstance(t, Sym):
            out.add(t)
        elif isinstance(t, Bin):
            scan_term(t.left)
            scan_term(t.right)

    for r in p.rules:
        for a in rule_atoms(r):
            for t in a.args:
                scan_term(t)
        for lit in r.body:
            if isinstance(lit, CmpLit):
                c = lit.comparison
                if isinstance(c, Rel):
                    scan_term(c.lhs)
                    scan_term(c.rhs)
    return out


def program_numerals(p: Program) -> set:
    """Integer values of numerals occurring anywhere in a program."""
    out = set()

    def scan_term(t):
        if isinstance(t, Num):
            out.add(t.value)
        elif isinstance(t, Bin):
            scan_term(t.left)
            scan_term(t.right)

    for r in p.rules:
        for a in rule_atoms(r):
            for t in a.args:
                scan_term(t)
        for lit in r.body:
            if isinstance(lit, CmpLit):
                c = lit.comparison
                if isinstance(c, Rel):
                    scan_term(c.lhs)
                    scan_term(c.rhs)
                else:
                    scan_term(c.lhs)
                    scan_term(c.low)
                    scan_term(c.high)
    return out
