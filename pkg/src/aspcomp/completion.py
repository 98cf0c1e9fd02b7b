"""Natural completion of regular programs.

Critical-variable analysis, renaming of critical variables to integer
variables, completed definitions (one sentence per predicate symbol),
arithmetic completed definitions, constraint translation, and a
conservative classical simplifier.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas as fm
from .formulas import (
    And, Atom, Bot, Cmp, Exists, FBin, Forall, FVar, Iff, Implies, NameGen, Not, Or, Sort, Top,
)
from .syntax import (
    Bin, CmpLit, Interval, NegLit, Num, PosLit, PredicateSymbol, Program, Rel, Rule, Sym, Var,
    predicate_symbols, rule_variables, term_variables,
)


class UnknownPredicateError(Exception):
    pass


class RenamingDomainError(Exception):
    pass


def critical_variables(r: Rule) -> set:
    """Variables with an occurrence under +, -, * or inside an interval."""
    out = set()

    def scan_term(t, under_arith):
        if isinstance(t, Var):
            if under_arith:
                out.add(t.name)
        elif isinstance(t, Bin):
            scan_term(t.left, True)
            scan_term(t.right, True)

    def scan_arg(t):
        scan_term(t, False)

    if r.head is not None:
        for a in r.head.args:
            scan_arg(a)
    for lit in r.body:
        if isinstance(lit, (PosLit, NegLit)):
            for a in lit.atom.args:
                scan_arg(a)
        else:
            c = lit.comparison
            if isinstance(c, Rel):
                scan_arg(c.lhs)
                scan_arg(c.rhs)
            else:
                out |= term_variables(c.lhs)
                out |= term_variables(c.low)
                out |= term_variables(c.high)
    return out


@dataclass(frozen=True)
class Renaming:
    """The per-rule map from critical variables to fresh integer variables."""

    rule: Rule
    mapping: dict  # variable name -> integer variable name

    def term_var(self, name: str) -> FVar:
        if name in self.mapping:
            return FVar(self.mapping[name], Sort.INTEGER)
        return FVar(name, Sort.GENERAL)


def make_renaming(r: Rule, gen: NameGen) -> Renaming:
    mapping = {}
    for name in sorted(critical_variables(r)):
        mapping[name] = gen.fresh("I", Sort.INTEGER).name
    return Renaming(r, mapping)


def _translate_term(t, ren: Renaming):
    if isinstance(t, Num):
        return t
    if isinstance(t, Sym):
        return t
    if isinstance(t, Var):
        return ren.term_var(t.name)
    if isinstance(t, Bin):
        return FBin(t.op, _translate_term(t.left, ren), _translate_term(t.right, ren))
    raise TypeError(f"not a rule term: {t!r}")


def _translate_literal(lit, ren: Renaming):
    if isinstance(lit, PosLit):
        return Atom(lit.atom.pred, tuple(_translate_term(a, ren) for a in lit.atom.args))
    if isinstance(lit, NegLit):
        return Not(Atom(lit.atom.pred, tuple(_translate_term(a, ren) for a in lit.atom.args)))
    c = lit.comparison
    if isinstance(c, Rel):
        return Cmp(_translate_term(c.lhs, ren), c.rel, _translate_term(c.rhs, ren))
    # t1 = t2..t3 becomes f(t2) <= f(t1) <= f(t3).
    mid = _translate_term(c.lhs, ren)
    return And(
        Cmp(_translate_term(c.low, ren), "<=", mid),
        Cmp(mid, "<=", _translate_term(c.high, ren)),
    )


def apply_renaming(r: Rule, ren: Renaming):
    """Translate a rule under a renaming: (head argument terms, body formula)."""
    if set(ren.mapping) != critical_variables(r):
        raise RenamingDomainError(
            f"renaming domain {sorted(ren.mapping)} does not match critical variables "
            f"{sorted(critical_variables(r))}"
        )
    head_args = (
        tuple(_translate_term(a, ren) for a in r.head.args) if r.head is not None else ()
    )
    body = fm.conj(_translate_literal(lit, ren) for lit in r.body)
    return head_args, body


@dataclass(frozen=True)
class CompletedDefinition:
    predicate: PredicateSymbol
    sentence: object  # Formula of shape forall V (p(V) <-> disjunction)
    disjuncts: tuple  # (rule, F_R formula, existential prefix variables)


def _definition_rules(p: Program, sym: PredicateSymbol) -> list:
    if sym not in predicate_symbols(p):
        raise UnknownPredicateError(f"{sym} does not occur in the program")
    return [
        r
        for r in p.rules
        if r.head is not None and r.head.pred == sym.name and len(r.head.args) == sym.arity
    ]


def completed_definition(p: Program, sym: PredicateSymbol) -> CompletedDefinition:
    """The sentence forall V (p(V) <-> disjunction over defining rules)."""
    gen = NameGen(avoid=_program_variable_names(p))
    head_vars = tuple(gen.fresh("V", Sort.GENERAL) for _ in range(sym.arity))
    disjuncts = []
    for r in _definition_rules(p, sym):
        ren = make_renaming(r, gen)
        head_args, body = apply_renaming(r, ren)
        parts = [body] if r.body else []
        parts += [Cmp(v, "=", t) for v, t in zip(head_vars, head_args)]
        if r.choice:
            parts.append(Atom(sym.name, head_vars))
        f_r = fm.conj(parts)
        prefix = [
            v for v in fm.free_variables_ordered(f_r) if v not in head_vars
        ]
        disjuncts.append((r, f_r, tuple(prefix)))
    body = fm.disj(fm.exists(prefix, f_r) for _, f_r, prefix in disjuncts)
    sentence = fm.forall(head_vars, Iff(Atom(sym.name, head_vars), body))
    return CompletedDefinition(sym, sentence, tuple(disjuncts))


def _program_variable_names(p: Program) -> set:
    names = set()
    for r in p.rules:
        names |= set(rule_variables(r))
    return names


def arithmetic_completed_definition(p: Program, sym: PredicateSymbol):
    """Completed definition with outer general variables made integer."""
    sentence = completed_definition(p, sym).sentence
    outer = []
    body = sentence
    while isinstance(body, Forall):
        outer.append(body.var)
        body = body.body
    gen = NameGen(avoid={v.name for v in fm.free_variables(body)} | _program_variable_names(p))
    fresh = [gen.fresh("N", Sort.INTEGER) for _ in outer]
    body = fm.substitute(body, {old.name: new for old, new in zip(outer, fresh)})
    return fm.forall(fresh, body)


def constraint_sentence(r: Rule, gen: NameGen = None):
    """Universal closure of the negated, renamed body of a constraint."""
    if r.head is not None:
        raise ValueError("not a constraint")
    gen = gen or NameGen(avoid=set(rule_variables(r)))
    ren = make_renaming(r, gen)
    _, body = apply_renaming(r, ren)
    return fm.universal_closure(Not(body))


def ncomp(p: Program) -> list:
    """The natural completion: completed definitions plus constraint sentences."""
    out = [completed_definition(p, sym).sentence for sym in predicate_symbols(p)]
    gen = NameGen(avoid=_program_variable_names(p))
    for r in p.rules:
        if r.head is None:
            out.append(constraint_sentence(r, gen))
    return out


# ---------------------------------------------------------------------------
# Conservative simplifier.  Licensed rewrites only: double negation,
# existential witness elimination, conjunction/disjunction unit laws, and
# absorption of p(V) <-> (G & p(V)) into an implication.


def _sort_compatible(var: FVar, term) -> bool:
    if var.sort is Sort.GENERAL:
        return True
    try:
        return fm.term_sort(term) is Sort.INTEGER
    except fm.SortError:
        return False


def _eliminate_witness(f: Exists):
    """Rewrite exists X (... & X = t & ...) to the conjunction with X := t."""
    parts = fm.conjuncts(f.body)
    for i, part in enumerate(parts):
        if not isinstance(part, Cmp) or part.rel != "=":
            continue
        for var_side, term_side in ((part.lhs, part.rhs), (part.rhs, part.lhs)):
            if (
                isinstance(var_side, FVar)
                and var_side.name == f.var.name
                and f.var.name not in {v.name for v in fm.term_free_variables(term_side)}
                and _sort_compatible(f.var, term_side)
            ):
                rest = parts[:i] + parts[i + 1 :]
                if not rest:
                    return Top()
                sub = {f.var.name: term_side}
                return fm.conj(fm.substitute(g, sub) for g in rest)
    return None


def _simplify_once(f):
    if isinstance(f, Not):
        arg = _simplify_once(f.arg)
        if isinstance(arg, Not):
            return arg.arg
        return Not(arg)
    if isinstance(f, And):
        left, right = _simplify_once(f.left), _simplify_once(f.right)
        if isinstance(left, Top):
            return right
        if isinstance(right, Top):
            return left
        if isinstance(left, Bot) or isinstance(right, Bot):
            return Bot()
        return And(left, right)
    if isinstance(f, Or):
        left, right = _simplify_once(f.left), _simplify_once(f.right)
        if isinstance(left, Bot):
            return right
        if isinstance(right, Bot):
            return left
        if isinstance(left, Top) or isinstance(right, Top):
            return Top()
        return Or(left, right)
    if isinstance(f, (Implies, Iff)):
        left, right = _simplify_once(f.left), _simplify_once(f.right)
        if isinstance(f, Iff) and isinstance(left, Atom):
            parts = fm.conjuncts(right)
            if left in parts:
                rest = [g for g in parts if g != left]
                return Implies(left, fm.conj(rest))
        return type(f)(left, right)
    if isinstance(f, Exists):
        body = _simplify_once(f.body)
        g = Exists(f.var, body)
        out = _eliminate_witness(g)
        return out if out is not None else g
    if isinstance(f, Forall):
        return Forall(f.var, _simplify_once(f.body))
    return f


def simplify(f, max_rounds: int = 20):
    """Classically equivalent simplification; fixpoint of the licensed rewrites."""
    for _ in range(max_rounds):
        g = _simplify_once(f)
        if g == f:
            return g
        f = g
    return f
