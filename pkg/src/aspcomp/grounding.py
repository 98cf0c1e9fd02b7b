"""Bottom-up grounding of regular programs over a bounded integer window.

Substitutions are used only when well-formed: every arithmetic operation
and interval bound must receive numeral operands, otherwise the
substitution is discarded.  Comparisons are evaluated away during
instantiation.  Variables are bound by positive body atoms, by equalities
with ground terms, by intervals, or (for variables that occur in some
comparison) by enumeration over the window; joins on equalities between
a bound term and the variables of the next atom are hash-indexed, which
keeps the multi-million-candidate instantiations tractable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    Bin, CmpLit, Interval, NegLit, Num, PosLit, PredicateSymbol, Program, Rel, Rule, Sym, Var,
    precomputed_key, program_constants, rule_variables, term_variables,
)


@dataclass(frozen=True)
class IntWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def __contains__(self, value: int) -> bool:
        return self.lo <= value <= self.hi


def default_window(p: Program, slack: int = 1) -> IntWindow:
    """Window spanning the program's numerals with a little slack."""
    from .syntax import program_numerals

    values = program_numerals(p)
    if not values:
        return IntWindow(-slack, slack)
    return IntWindow(min(values) - slack, max(values) + slack)


class SafetyError(Exception):
    """A rule variable that no binding mechanism can instantiate."""

    def __init__(self, rule: Rule, variable: str):
        super().__init__(f"unsafe rule, variable {variable} cannot be bound: {rule}")
        self.rule = rule
        self.variable = variable


@dataclass(frozen=True)
class GroundRule:
    head: object  # (pred, args) or None
    choice: bool
    pos: tuple
    neg: tuple


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple
    head_atoms: frozenset
    warnings: tuple = ()

    def atoms(self) -> frozenset:
        out = set(self.head_atoms)
        for r in self.rules:
            out.update(r.pos)
            out.update(r.neg)
        return frozenset(out)


_ILL = object()  # marker: arithmetic applied to a symbolic constant


def eval_term(t, env):
    """Value of a rule term under env, or None (unbound) or _ILL."""
    if isinstance(t, (Num, Sym)):
        return t
    if isinstance(t, Var):
        return env.get(t.name)
    # Binary arithmetic: both operands must be numerals.
    left = eval_term(t.left, env)
    if left is None:
        return None
    right = eval_term(t.right, env)
    if right is None:
        return None
    if left is _ILL or right is _ILL or not isinstance(left, Num) or not isinstance(right, Num):
        return _ILL
    if t.op == "+":
        return Num(left.value + right.value)
    if t.op == "-":
        return Num(left.value - right.value)
    return Num(left.value * right.value)


def rel_holds(lhs, rel: str, rhs) -> bool:
    if rel == "=":
        return lhs == rhs
    if rel == "!=":
        return lhs != rhs
    ka, kb = precomputed_key(lhs), precomputed_key(rhs)
    if rel == "<":
        return ka < kb
    if rel == ">":
        return ka > kb
    if rel == "<=":
        return ka <= kb
    return ka >= kb


def check_safety(r: Rule, strict: bool = False):
    """Raise SafetyError unless every rule variable is bindable.

    Binders: plain-variable arguments of positive body atoms, equalities
    with an otherwise-ground term, interval comparisons with bindable
    bounds, and (relaxed mode only) occurrence in any body comparison,
    which admits enumeration over the integer window.
    """
    all_vars = rule_variables(r)
    bound = set()
    if not strict:
        for lit in r.body:
            if isinstance(lit, CmpLit):
                c = lit.comparison
                if isinstance(c, Rel):
                    bound |= term_variables(c.lhs) | term_variables(c.rhs)
                else:
                    bound |= term_variables(c.lhs) | term_variables(c.low) | term_variables(c.high)
    changed = True
    while changed:
        changed = False
        for lit in r.body:
            if isinstance(lit, PosLit):
                for a in lit.atom.args:
                    if isinstance(a, Var) and a.name not in bound:
                        bound.add(a.name)
                        changed = True
            elif isinstance(lit, CmpLit):
                c = lit.comparison
                if isinstance(c, Rel) and c.rel == "=":
                    for var_side, other in ((c.lhs, c.rhs), (c.rhs, c.lhs)):
                        if (
                            isinstance(var_side, Var)
                            and var_side.name not in bound
                            and term_variables(other) <= bound
                        ):
                            bound.add(var_side.name)
                            changed = True
                elif isinstance(c, Interval):
                    if (
                        isinstance(c.lhs, Var)
                        and c.lhs.name not in bound
                        and term_variables(c.low) | term_variables(c.high) <= bound
                    ):
                        bound.add(c.lhs.name)
                        changed = True
    for name in all_vars:
        if name not in bound:
            raise SafetyError(r, name)


def _flip(rel: str) -> str:
    return {"<": ">", ">": "<", "<=": ">=", ">=": "<="}.get(rel, rel)


def _isolate(term, rel, value, var):
    """Solve `term rel value` for var (single occurrence); None if not isolatable."""
    if isinstance(term, Var) and term.name == var:
        return rel, value
    if not isinstance(term, Bin):
        return None
    in_left = var in term_variables(term.left)
    other = term.right if in_left else term.left
    ov = eval_term(other, {})
    if not isinstance(ov, Num):
        return None
    inner = term.left if in_left else term.right
    if term.op == "+":
        return _isolate(inner, rel, value - ov.value, var)
    if term.op == "-":
        if in_left:
            return _isolate(inner, rel, value + ov.value, var)
        return _isolate(inner, _flip(rel), ov.value - value, var)
    # Multiplication: only equalities with exact division.
    if rel == "=" and ov.value != 0 and value % ov.value == 0:
        return _isolate(inner, "=", value // ov.value, var)
    return None


def _bounds_for(var, items, env, window: IntWindow):
    """Numeric enumeration bounds for a fallback variable."""
    lo, hi = window.lo, window.hi
    for kind, obj in items:
        if kind != "cmp" or not isinstance(obj, Rel):
            continue
        for term, rel in ((obj.lhs, obj.rel), (obj.rhs, _flip(obj.rel))):
            other = obj.rhs if term is obj.lhs else obj.lhs
            if var not in term_variables(term) or var in term_variables(other):
                continue
            names = term_variables(term) - {var}
            if not names <= set(env):
                continue
            value = eval_term(other, env)
            if not isinstance(value, Num):
                continue
            solved = _isolate(_substitute_bound(term, env), rel, value.value, var)
            if solved is None:
                continue
            srel, sval = solved
            if srel in ("<", "<="):
                hi = min(hi, sval - 1 if srel == "<" else sval)
            elif srel in (">", ">="):
                lo = max(lo, sval + 1 if srel == ">" else sval)
            elif srel == "=":
                lo, hi = max(lo, sval), min(hi, sval)
    return lo, hi


def _substitute_bound(term, env):
    if isinstance(term, Var) and term.name in env:
        value = env[term.name]
        return value if isinstance(value, (Num, Sym)) else term
    if isinstance(term, Bin):
        return Bin(term.op, _substitute_bound(term.left, env), _substitute_bound(term.right, env))
    return term


class _RuleEvaluator:
    """Enumerates the well-formed satisfying substitutions of a rule body."""

    def __init__(self, rule: Rule, extents, window: IntWindow, consts):
        self.rule = rule
        self.extents = extents  # (pred, arity) -> list of argument tuples
        self.window = window
        self.consts = consts
        self.index_cache = {}
        self.items = []
        for lit in rule.body:
            if isinstance(lit, PosLit):
                self.items.append(("atom", lit.atom))
            elif isinstance(lit, CmpLit):
                self.items.append(("cmp", lit.comparison))
        self.neg = [lit.atom for lit in rule.body if isinstance(lit, NegLit)]

    def solutions(self):
        yield from self._solve({}, list(self.items))

    def _solve(self, env, items):
        # Propagate: evaluate comparisons that became checkable, bind
        # variables through equalities.
        changed = True
        while changed:
            changed = False
            for i, (kind, obj) in enumerate(items):
                if kind != "cmp":
                    continue
                if isinstance(obj, Rel):
                    left = eval_term(obj.lhs, env)
                    right = eval_term(obj.rhs, env)
                    if left is _ILL or right is _ILL:
                        return
                    if left is not None and right is not None:
                        if not rel_holds(left, obj.rel, right):
                            return
                        del items[i]
                        changed = True
                        break
                    if obj.rel == "=":
                        if isinstance(obj.lhs, Var) and obj.lhs.name not in env and right is not None:
                            env = dict(env)
                            env[obj.lhs.name] = right
                            del items[i]
                            changed = True
                            break
                        if isinstance(obj.rhs, Var) and obj.rhs.name not in env and left is not None:
                            env = dict(env)
                            env[obj.rhs.name] = left
                            del items[i]
                            changed = True
                            break
                else:  # Interval
                    low = eval_term(obj.low, env)
                    high = eval_term(obj.high, env)
                    if low is _ILL or high is _ILL:
                        return
                    if low is None or high is None:
                        continue
                    lhs = eval_term(obj.lhs, env)
                    if lhs is _ILL:
                        return
                    if lhs is not None:
                        if not (
                            isinstance(low, Num)
                            and isinstance(high, Num)
                            and isinstance(lhs, Num)
                            and low.value <= lhs.value <= high.value
                        ):
                            return
                        del items[i]
                        changed = True
                        break
        # Enumerable interval: lhs is a plain unbound variable, bounds known.
        for i, (kind, obj) in enumerate(items):
            if kind == "cmp" and isinstance(obj, Interval) and isinstance(obj.lhs, Var):
                low = eval_term(obj.low, env)
                high = eval_term(obj.high, env)
                if isinstance(low, Num) and isinstance(high, Num) and obj.lhs.name not in env:
                    rest = items[:i] + items[i + 1 :]
                    lo = max(low.value, self.window.lo)
                    hi = min(high.value, self.window.hi)
                    for v in range(lo, hi + 1):
                        env2 = dict(env)
                        env2[obj.lhs.name] = Num(v)
                        yield from self._solve(env2, list(rest))
                    return
        # Join on the next positive atom.
        for i, (kind, obj) in enumerate(items):
            if kind == "atom":
                rest = items[:i] + items[i + 1 :]
                yield from self._join(env, obj, rest, i)
                return
        # Fallback: enumerate a window-bound comparison variable.
        for name in rule_variables(self.rule):
            if name in env:
                continue
            if any(
                kind == "cmp" and name in _comparison_variables(obj) for kind, obj in items
            ):
                lo, hi = _bounds_for(name, items, env, self.window)
                for v in range(lo, hi + 1):
                    env2 = dict(env)
                    env2[name] = Num(v)
                    yield from self._solve(env2, list(items))
                for c in self.consts:
                    env2 = dict(env)
                    env2[name] = c
                    yield from self._solve(env2, list(items))
                return
        if not items:
            yield env

    def _join(self, env, atom, rest, atom_pos):
        rows = self.extents.get((atom.pred, len(atom.args)), ())
        new_vars = {
            a.name for a in atom.args if isinstance(a, Var) and a.name not in env
        }
        bound_positions = []
        deferred_positions = []
        for pos, arg in enumerate(atom.args):
            if isinstance(arg, Var) and arg.name not in env:
                continue
            names = term_variables(arg)
            if names <= set(env):
                bound_positions.append(pos)
            else:
                deferred_positions.append(pos)
        # Equality comparisons usable as hash-join keys: one side ground
        # under env, the other mentioning only this atom's new variables.
        join_cmps = []
        for j, (kind, obj) in enumerate(rest):
            if kind != "cmp" or not isinstance(obj, Rel) or obj.rel != "=":
                continue
            for ground_side, row_side in ((obj.lhs, obj.rhs), (obj.rhs, obj.lhs)):
                gnames = term_variables(ground_side)
                rnames = term_variables(row_side)
                if gnames <= set(env) and rnames and rnames <= new_vars:
                    join_cmps.append((j, ground_side, row_side))
                    break
        key = (atom_pos, tuple(bound_positions), tuple(j for j, _, _ in join_cmps))
        index = self.index_cache.get(key)
        if index is None:
            index = {}
            for row in rows:
                row_env = {}
                ok = True
                for pos, arg in enumerate(atom.args):
                    if isinstance(arg, Var) and arg.name not in env:
                        if arg.name in row_env:
                            if row_env[arg.name] != row[pos]:
                                ok = False
                                break
                        else:
                            row_env[arg.name] = row[pos]
                if not ok:
                    continue
                key_vals = [row[pos] for pos in bound_positions]
                for _, _, row_side in join_cmps:
                    value = eval_term(row_side, row_env)
                    if value is _ILL:
                        ok = False
                        break
                    key_vals.append(value)
                if not ok:
                    continue
                index.setdefault(tuple(key_vals), []).append((row, row_env))
            self.index_cache[key] = index
        probe = []
        for pos in bound_positions:
            value = eval_term(atom.args[pos], env)
            if value is _ILL:
                return
            probe.append(value)
        for _, ground_side, _ in join_cmps:
            value = eval_term(ground_side, env)
            if value is _ILL:
                return
            probe.append(value)
        used = {j for j, _, _ in join_cmps}
        remaining = [item for j, item in enumerate(rest) if j not in used]
        for row, row_env in index.get(tuple(probe), ()):
            env2 = dict(env)
            env2.update(row_env)
            items2 = list(remaining)
            for pos in deferred_positions:
                items2.append(("cmp", Rel(atom.args[pos], "=", row[pos])))
            yield from self._solve(env2, items2)


def _comparison_variables(c):
    if isinstance(c, Rel):
        return term_variables(c.lhs) | term_variables(c.rhs)
    return term_variables(c.lhs) | term_variables(c.low) | term_variables(c.high)


def _scc_topo_order(vertices, successors):
    """Strongly connected components in dependency-first order (iterative Tarjan)."""
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    components = []
    counter = [0]

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = lowlink[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = lowlink[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(successors(succ))))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                components.append(frozenset(comp))
    # Tarjan finishes a component only after everything reachable from it,
    # so with head -> body edges the list comes out dependencies-first.
    return components


def ground(
    p: Program,
    window: IntWindow,
    extra_constants=(),
    strict_safety: bool = False,
) -> GroundProgram:
    """Instantiate a program over the window; see the module docstring."""
    for r in p.rules:
        check_safety(r, strict=strict_safety)
    consts = sorted(program_constants(p) | set(extra_constants), key=lambda s: s.name)

    # Possible-atom fixpoint, one predicate SCC at a time (negation ignored).
    preds = []
    for r in p.rules:
        for atom in ([r.head] if r.head else []):
            ps = PredicateSymbol(atom.pred, len(atom.args))
            if ps not in preds:
                preds.append(ps)
        for lit in r.body:
            if isinstance(lit, (PosLit, NegLit)):
                ps = PredicateSymbol(lit.atom.pred, len(lit.atom.args))
                if ps not in preds:
                    preds.append(ps)
    pos_edges = {ps: set() for ps in preds}
    for r in p.rules:
        if r.head is None:
            continue
        head = PredicateSymbol(r.head.pred, len(r.head.args))
        for lit in r.body:
            if isinstance(lit, PosLit):
                pos_edges[head].add(PredicateSymbol(lit.atom.pred, len(lit.atom.args)))
    components = _scc_topo_order(preds, lambda v: sorted(pos_edges.get(v, ())))

    extents = {}  # (pred, arity) -> list of arg tuples
    seen = {}  # (pred, arity) -> set of arg tuples
    warnings = []

    def add_atom(pred, args):
        key = (pred, len(args))
        bucket = seen.setdefault(key, set())
        if args in bucket:
            return False
        bucket.add(args)
        extents.setdefault(key, []).append(args)
        for a in args:
            if isinstance(a, Num) and a.value not in window:
                warnings.append(
                    f"window_too_small: derived atom {pred}{args} outside "
                    f"[{window.lo}, {window.hi}]"
                )
        return True

    rules_by_head = {}
    for r in p.rules:
        if r.head is not None:
            ps = PredicateSymbol(r.head.pred, len(r.head.args))
            rules_by_head.setdefault(ps, []).append(r)

    for comp_ in components:
        changed = True
        while changed:
            changed = False
            for ps in comp_:
                for r in rules_by_head.get(ps, ()):
                    ev = _RuleEvaluator(r, extents, window, consts)
                    for env in ev.solutions():
                        args = tuple(eval_term(a, env) for a in r.head.args)
                        if any(a is _ILL or a is None for a in args):
                            continue
                        if add_atom(r.head.pred, args):
                            changed = True

    # Final pass: emit ground rule instances against the settled extents.
    ground_rules = []
    rule_set = set()
    head_atoms = set()
    for r in p.rules:
        ev = _RuleEvaluator(r, extents, window, consts)
        for env in ev.solutions():
            if r.head is not None:
                args = tuple(eval_term(a, env) for a in r.head.args)
                if any(a is _ILL or a is None for a in args):
                    continue
                head = (r.head.pred, args)
            else:
                head = None
            pos = []
            for lit in r.body:
                if isinstance(lit, PosLit):
                    pos.append(
                        (lit.atom.pred, tuple(eval_term(a, env) for a in lit.atom.args))
                    )
            neg = []
            ill = False
            for atom in ev.neg:
                args = tuple(eval_term(a, env) for a in atom.args)
                if any(a is _ILL or a is None for a in args):
                    ill = True
                    break
                ground_atom = (atom.pred, args)
                key = (atom.pred, len(args))
                if args in seen.get(key, ()):  # otherwise the literal is trivially true
                    neg.append(ground_atom)
            if ill:
                continue
            gr = GroundRule(head, r.choice, tuple(pos), tuple(neg))
            if gr not in rule_set:
                rule_set.add(gr)
                ground_rules.append(gr)
                if head is not None:
                    head_atoms.add(head)
    # Deduplicate warning lines while keeping order.
    unique_warnings = list(dict.fromkeys(warnings))
    return GroundProgram(tuple(ground_rules), frozenset(head_atoms), tuple(unique_warnings))
