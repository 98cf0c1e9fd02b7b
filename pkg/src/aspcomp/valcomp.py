"""Value-formula based completion (the older, more verbose construction).

val formulas describe the value of a (possibly arithmetic or interval)
term via fresh variables; the body translation turns every body element
into an existentially quantified formula over fresh general variables.
"""

from __future__ import annotations

from . import formulas as fm
from .formulas import And, Atom, Cmp, Exists, FBin, FVar, Iff, NameGen, Not, Sort
from .syntax import (
    Bin, CmpLit, Interval, NegLit, Num, PosLit, PredicateSymbol, Program, Rel, Rule, Sym, Var,
    predicate_symbols, rule_variables, term_variables,
)
from .completion import UnknownPredicateError, _definition_rules, _program_variable_names


class VariableCaptureError(Exception):
    pass


def _as_fterm(t):
    """Rule terms embed into formula terms with variables kept general."""
    if isinstance(t, (Num, Sym)):
        return t
    if isinstance(t, Var):
        return FVar(t.name, Sort.GENERAL)
    if isinstance(t, Bin):
        return FBin(t.op, _as_fterm(t.left), _as_fterm(t.right))
    raise TypeError(f"not a rule term: {t!r}")


def val(t, z: FVar, gen: NameGen = None):
    """The formula expressing "z is a value of t".

    t is an atom/comparison argument (symbolic constant or regular term)
    or an (low, high) pair standing for the interval term low..high.
    """
    gen = gen or NameGen()
    if isinstance(t, tuple):
        low, high = t
        _check_capture((low, high), z)
        i = gen.fresh("I", Sort.INTEGER)
        j = gen.fresh("J", Sort.INTEGER)
        k = gen.fresh("K", Sort.INTEGER)
        return fm.exists(
            [i, j, k],
            fm.conj([val(low, i, gen), val(high, j, gen), Cmp(i, "<=", k), Cmp(k, "<=", j), Cmp(z, "=", k)]),
        )
    _check_capture(t, z)
    if isinstance(t, (Num, Sym, Var)):
        return Cmp(z, "=", _as_fterm(t))
    if isinstance(t, Bin):
        i = gen.fresh("I", Sort.INTEGER)
        j = gen.fresh("J", Sort.INTEGER)
        return fm.exists(
            [i, j],
            fm.conj([Cmp(z, "=", FBin(t.op, i, j)), val(t.left, i, gen), val(t.right, j, gen)]),
        )
    raise TypeError(f"not a term: {t!r}")


def _check_capture(t, z: FVar):
    names = set()
    if isinstance(t, tuple):
        for part in t:
            names |= term_variables(part)
    else:
        names = term_variables(t)
    if z.name in names:
        raise VariableCaptureError(f"target variable {z.name} occurs in {t!r}")


def val_tuple(ts, zs, gen: NameGen):
    return fm.conj(val(t, z, gen) for t, z in zip(ts, zs))


def tau_b(lit, gen: NameGen = None):
    """Translate one body element into a formula."""
    gen = gen or NameGen()
    if isinstance(lit, (PosLit, NegLit)):
        atom = lit.atom
        zs = [gen.fresh("Z", Sort.GENERAL) for _ in atom.args]
        inner = Atom(atom.pred, tuple(zs))
        if isinstance(lit, NegLit):
            inner = Not(inner)
        parts = [val(t, z, gen) for t, z in zip(atom.args, zs)] + [inner]
        return fm.exists(zs, fm.conj(parts))
    c = lit.comparison
    if isinstance(c, Rel):
        z1 = gen.fresh("Z", Sort.GENERAL)
        z2 = gen.fresh("Z", Sort.GENERAL)
        return fm.exists(
            [z1, z2], fm.conj([val(c.lhs, z1, gen), val(c.rhs, z2, gen), Cmp(z1, c.rel, z2)])
        )
    z1 = gen.fresh("Z", Sort.GENERAL)
    z2 = gen.fresh("Z", Sort.GENERAL)
    return fm.exists(
        [z1, z2],
        fm.conj([val(c.lhs, z1, gen), val((c.low, c.high), z2, gen), Cmp(z1, "=", z2)]),
    )


def tau_body(r: Rule, gen: NameGen):
    return fm.conj(tau_b(lit, gen) for lit in r.body)


def comp_completed_definition(p: Program, sym: PredicateSymbol):
    """forall V (p(V) <-> disjunction of existentially closed rule translations).

    Each disjunct quantifies all variables of its rule, including ones
    occurring only in the head.
    """
    gen = NameGen(avoid=_program_variable_names(p))
    head_vars = tuple(gen.fresh("V", Sort.GENERAL) for _ in range(sym.arity))
    disjuncts = []
    for r in _definition_rules(p, sym):
        parts = [tau_body(r, gen)] if r.body else []
        parts += [val(t, v, gen) for t, v in zip(r.head.args, head_vars)]
        if r.choice:
            parts.append(Atom(sym.name, head_vars))
        prefix = [FVar(name, Sort.GENERAL) for name in rule_variables(r)]
        disjuncts.append(fm.exists(prefix, fm.conj(parts)))
    return fm.forall(head_vars, Iff(Atom(sym.name, head_vars), fm.disj(disjuncts)))


def comp_constraint_sentence(r: Rule, gen: NameGen = None):
    if r.head is not None:
        raise ValueError("not a constraint")
    gen = gen or NameGen(avoid=set(rule_variables(r)))
    return fm.universal_closure(Not(tau_body(r, gen)))


def comp(p: Program) -> list:
    """Completed definitions plus negated constraint bodies, val-style."""
    out = [comp_completed_definition(p, sym) for sym in predicate_symbols(p)]
    gen = NameGen(avoid=_program_variable_names(p))
    for r in p.rules:
        if r.head is None:
            out.append(comp_constraint_sentence(r, gen))
    return out
