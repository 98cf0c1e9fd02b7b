"""Two-sorted first-order formulas: sort general with subsort integer.

Terms are numerals, symbolic constants, sorted variables, and arithmetic
applications; atomic formulas are predicate applications and comparisons.
Arithmetic demands integer-sorted operands; predicate and comparison
arguments are general-sorted, with integer terms admitted via the subsort.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

from .syntax import Num, Sym


class Sort(enum.Enum):
    GENERAL = "general"
    INTEGER = "integer"


@dataclass(frozen=True)
class FVar:
    name: str
    sort: Sort

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class FBin:
    op: str
    left: "FTerm"
    right: "FTerm"


FTerm = Union[Num, Sym, FVar, FBin]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Cmp:
    lhs: FTerm
    rel: str
    rhs: FTerm


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: FVar
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: FVar
    body: "Formula"


Formula = Union[Atom, Cmp, Top, Bot, Not, And, Or, Implies, Iff, Forall, Exists]


def conj(parts: Iterable["Formula"]) -> "Formula":
    """Left-folded conjunction; empty conjunction is top."""
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable["Formula"]) -> "Formula":
    """Left-folded disjunction; empty disjunction is bottom."""
    parts = list(parts)
    if not parts:
        return Bot()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def conjuncts(f: "Formula") -> list:
    """Flatten a left-folded conjunction back into its parts."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def forall(vars_: Iterable[FVar], body: "Formula") -> "Formula":
    out = body
    for v in reversed(list(vars_)):
        out = Forall(v, out)
    return out


def exists(vars_: Iterable[FVar], body: "Formula") -> "Formula":
    out = body
    for v in reversed(list(vars_)):
        out = Exists(v, out)
    return out


class SortError(Exception):
    """Raised by check_sorts at the first ill-sorted node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


def term_sort(t: FTerm) -> Sort:
    """Sort of a term; raises SortError inside ill-sorted arithmetic."""
    if isinstance(t, Num):
        return Sort.INTEGER
    if isinstance(t, Sym):
        return Sort.GENERAL
    if isinstance(t, FVar):
        return t.sort
    if isinstance(t, FBin):
        for side in (t.left, t.right):
            if term_sort(side) is not Sort.INTEGER:
                raise SortError(
                    f"non-integer operand {side!r} under arithmetic {t.op!r}",
                    node=t,
                )
        return Sort.INTEGER
    raise TypeError(f"not a term: {t!r}")


def check_sorts(f: "Formula") -> None:
    """Verify well-sortedness; raises SortError at the first bad node.

    Also rejects rebinding of a variable name along one quantifier path.
    """

    def go(f, bound):
        if isinstance(f, Atom):
            for a in f.args:
                term_sort(a)
        elif isinstance(f, Cmp):
            term_sort(f.lhs)
            term_sort(f.rhs)
        elif isinstance(f, (Top, Bot)):
            pass
        elif isinstance(f, Not):
            go(f.arg, bound)
        elif isinstance(f, (And, Or, Implies, Iff)):
            go(f.left, bound)
            go(f.right, bound)
        elif isinstance(f, (Forall, Exists)):
            if f.var.name in bound:
                raise SortError(
                    f"variable {f.var.name} bound twice on one quantifier path",
                    node=f,
                )
            go(f.body, bound | {f.var.name})
        else:
            raise TypeError(f"not a formula: {f!r}")

    go(f, frozenset())


def well_sorted(f: "Formula") -> bool:
    try:
        check_sorts(f)
        return True
    except SortError:
        return False


def term_free_variables(t: FTerm) -> set:
    if isinstance(t, FVar):
        return {t}
    if isinstance(t, FBin):
        return term_free_variables(t.left) | term_free_variables(t.right)
    return set()


def free_variables(f: "Formula") -> set:
    """The free sorted variables of a formula."""
    if isinstance(f, Atom):
        out = set()
        for a in f.args:
            out |= term_free_variables(a)
        return out
    if isinstance(f, Cmp):
        return term_free_variables(f.lhs) | term_free_variables(f.rhs)
    if isinstance(f, (Top, Bot)):
        return set()
    if isinstance(f, Not):
        return free_variables(f.arg)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, (Forall, Exists)):
        return {v for v in free_variables(f.body) if v.name != f.var.name}
    raise TypeError(f"not a formula: {f!r}")


def free_variables_ordered(f: "Formula") -> list:
    """Free variables in order of first (leftmost) occurrence."""
    out = []

    def add_term(t, bound):
        if isinstance(t, FVar):
            if t.name not in bound and t not in out:
                out.append(t)
        elif isinstance(t, FBin):
            add_term(t.left, bound)
            add_term(t.right, bound)

    def go(f, bound):
        if isinstance(f, Atom):
            for a in f.args:
                add_term(a, bound)
        elif isinstance(f, Cmp):
            add_term(f.lhs, bound)
            add_term(f.rhs, bound)
        elif isinstance(f, Not):
            go(f.arg, bound)
        elif isinstance(f, (And, Or, Implies, Iff)):
            go(f.left, bound)
            go(f.right, bound)
        elif isinstance(f, (Forall, Exists)):
            go(f.body, bound | {f.var.name})

    go(f, frozenset())
    return out


def universal_closure(f: "Formula") -> "Formula":
    return forall(free_variables_ordered(f), f)


def substitute_term(t: FTerm, mapping: dict) -> FTerm:
    if isinstance(t, FVar):
        return mapping.get(t.name, t)
    if isinstance(t, FBin):
        return FBin(t.op, substitute_term(t.left, mapping), substitute_term(t.right, mapping))
    return t


def substitute(f: "Formula", mapping: dict) -> "Formula":
    """Capture-avoiding substitution of terms for free variables by name."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(substitute_term(a, mapping) for a in f.args))
    if isinstance(f, Cmp):
        return Cmp(substitute_term(f.lhs, mapping), f.rel, substitute_term(f.rhs, mapping))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(substitute(f.arg, mapping))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, (Forall, Exists)):
        mapping = {k: v for k, v in mapping.items() if k != f.var.name}
        if not mapping:
            return f
        clashing = set()
        for t in mapping.values():
            clashing |= {v.name for v in term_free_variables(t)}
        var = f.var
        body = f.body
        if var.name in clashing:
            taken = clashing | {v.name for v in free_variables(body)} | set(mapping)
            fresh = _fresh_name(var.name, taken)
            var = FVar(fresh, f.var.sort)
            body = substitute(body, {f.var.name: var})
        return type(f)(var, substitute(body, mapping))
    raise TypeError(f"not a formula: {f!r}")


def _fresh_name(base: str, taken: set) -> str:
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


class NameGen:
    """Deterministic fresh-name source, one counter per prefix."""

    def __init__(self, avoid: Iterable[str] = ()):
        self.avoid = set(avoid)
        self.counters = {}

    def fresh(self, prefix: str, sort: Sort) -> FVar:
        n = self.counters.get(prefix, 0)
        while True:
            n += 1
            name = f"{prefix}{n}"
            if name not in self.avoid:
                break
        self.counters[prefix] = n
        self.avoid.add(name)
        return FVar(name, sort)


_SYMMETRIC_RELS = {"=", "!="}


def alpha_equal(f: "Formula", g: "Formula", symmetric_eq: bool = True) -> bool:
    """Structural equality up to renaming of bound variables.

    Equality and disequality comparisons are compared up to operand swap
    unless symmetric_eq is disabled.
    """

    def term_eq(s, t, env):
        # env maps bound names of f to bound names of g (and g to f).
        fwd, bwd = env
        if isinstance(s, FVar) and isinstance(t, FVar):
            if s.sort is not t.sort:
                return False
            if s.name in fwd or t.name in bwd:
                return fwd.get(s.name) == t.name and bwd.get(t.name) == s.name
            return s.name == t.name
        if isinstance(s, FBin) and isinstance(t, FBin):
            return s.op == t.op and term_eq(s.left, t.left, env) and term_eq(s.right, t.right, env)
        return type(s) is type(t) and s == t

    def go(f, g, env):
        if type(f) is not type(g):
            return False
        if isinstance(f, Atom):
            return (
                f.pred == g.pred
                and len(f.args) == len(g.args)
                and all(term_eq(a, b, env) for a, b in zip(f.args, g.args))
            )
        if isinstance(f, Cmp):
            if f.rel != g.rel:
                return False
            if term_eq(f.lhs, g.lhs, env) and term_eq(f.rhs, g.rhs, env):
                return True
            if symmetric_eq and f.rel in _SYMMETRIC_RELS:
                return term_eq(f.lhs, g.rhs, env) and term_eq(f.rhs, g.lhs, env)
            return False
        if isinstance(f, (Top, Bot)):
            return True
        if isinstance(f, Not):
            return go(f.arg, g.arg, env)
        if isinstance(f, (And, Or, Implies, Iff)):
            return go(f.left, g.left, env) and go(f.right, g.right, env)
        if isinstance(f, (Forall, Exists)):
            if f.var.sort is not g.var.sort:
                return False
            fwd, bwd = env
            fwd = dict(fwd)
            bwd = dict(bwd)
            fwd[f.var.name] = g.var.name
            bwd[g.var.name] = f.var.name
            return go(f.body, g.body, (fwd, bwd))
        raise TypeError(f"not a formula: {f!r}")

    return go(f, g, ({}, {}))
