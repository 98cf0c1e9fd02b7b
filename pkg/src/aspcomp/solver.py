"""Stable models of ground programs at desk scale.

Three methods: brute-force subset search, a Clark-completion SAT
encoding (applicable when the atom-level positive dependency graph is
acyclic), and stratified bottom-up evaluation (applicable without choice
rules when no strongly connected component of the dependency graph
contains a negative edge).  All methods agree where applicable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .grounding import GroundProgram, GroundRule, _scc_topo_order
from .syntax import precomputed_key


class MethodInapplicableError(Exception):
    def __init__(self, method: str, reason: str):
        super().__init__(f"method {method} inapplicable: {reason}")
        self.method = method
        self.reason = reason


class SearchSpaceError(Exception):
    pass


def atom_sort_key(atom):
    pred, args = atom
    return (pred, len(args), tuple(precomputed_key(a) for a in args))


def format_atom(atom) -> str:
    from .printer import print_rule_term

    pred, args = atom
    if not args:
        return pred
    return f"{pred}({','.join(print_rule_term(a) for a in args)})"


def format_model(atoms) -> str:
    return " ".join(format_atom(a) for a in sorted(atoms, key=atom_sort_key))


def _least_model(definite):
    """Least model of definite rules given as (head, pos_body) pairs."""
    derived = set()
    pending = list(definite)
    changed = True
    while changed:
        changed = False
        remaining = []
        for head, pos in pending:
            if all(a in derived for a in pos):
                if head not in derived:
                    derived.add(head)
                    changed = True
            else:
                remaining.append((head, pos))
        pending = remaining
    return derived


def is_stable(g: GroundProgram, atoms) -> bool:
    """Does the atom set reproduce itself as the least model of the reduct?

    A choice rule {a} <- B contributes a <- B to the reduct only when a
    is in the candidate set.
    """
    s = frozenset(atoms)
    definite = []
    for r in g.rules:
        if any(a in s for a in r.neg):
            continue
        if r.head is None:
            if all(a in s for a in r.pos):
                return False
            continue
        if r.choice and r.head not in s:
            continue
        definite.append((r.head, r.pos))
    return _least_model(definite) == s


def stable_models(g: GroundProgram, method: str = "auto", brute_cap: int = 1 << 20):
    """All stable models, sorted, as a list of frozensets of ground atoms."""
    if method == "auto":
        if _stratification(g) is not None:
            method = "stratified"
        elif _atom_graph_acyclic(g):
            method = "completion"
        else:
            method = "brute"
    if method == "brute":
        models = _brute(g, brute_cap)
    elif method == "completion":
        models = _completion_models(g)
    elif method == "stratified":
        models = _stratified_models(g)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(models, key=lambda m: sorted(map(atom_sort_key, m)))


# ---------------------------------------------------------------------------
# Brute force

def _brute(g: GroundProgram, cap: int):
    candidates = sorted(g.head_atoms, key=atom_sort_key)
    if len(candidates) >= cap.bit_length():
        raise SearchSpaceError(
            f"{len(candidates)} candidate atoms exceed the subset cap {cap}"
        )
    models = []
    for k in range(len(candidates) + 1):
        for subset in itertools.combinations(candidates, k):
            if is_stable(g, subset):
                models.append(frozenset(subset))
    return models


# ---------------------------------------------------------------------------
# Completion method: propositional Clark completion fed to a tiny DPLL
# enumerator.  Sound for stable models only on positive-atom-acyclic
# ground programs (the propositional case of tightness).

def _atom_graph_acyclic(g: GroundProgram) -> bool:
    succ = {}
    for r in g.rules:
        if r.head is not None:
            succ.setdefault(r.head, set()).update(r.pos)
    comps = _scc_topo_order(list(succ), lambda v: succ.get(v, ()))
    for comp in comps:
        if len(comp) > 1:
            return False
        (v,) = comp
        if v in succ.get(v, ()):
            return False
    return True


def _completion_models(g: GroundProgram):
    if not _atom_graph_acyclic(g):
        raise MethodInapplicableError(
            "completion", "positive dependency cycle among ground atoms"
        )
    atoms = sorted(g.atoms() | g.head_atoms, key=atom_sort_key)
    var_of = {a: i + 1 for i, a in enumerate(atoms)}
    next_var = len(atoms) + 1
    clauses = []

    def body_literal(r: GroundRule):
        """A literal equivalent to the rule body, via an auxiliary variable."""
        nonlocal next_var
        lits = [var_of[a] for a in r.pos] + [-var_of[a] for a in r.neg]
        if r.choice:
            lits.append(var_of[r.head])
        if not lits:
            return None  # empty body, i.e. true
        if len(lits) == 1:
            return lits[0]
        aux = next_var
        next_var += 1
        for lit in lits:
            clauses.append([-aux, lit])
        clauses.append([aux] + [-lit for lit in lits])
        return aux

    by_head = {}
    for r in g.rules:
        if r.head is None:
            clauses.append([-var_of[a] for a in r.pos] + [var_of[a] for a in r.neg])
            continue
        by_head.setdefault(r.head, []).append(body_literal(r))
    for atom in atoms:
        bodies = by_head.get(atom)
        head = var_of[atom]
        if bodies is None:
            clauses.append([-head])
            continue
        if any(b is None for b in bodies):
            clauses.append([head])
            bodies = [b for b in bodies if b is not None]
        else:
            clauses.append([-head] + bodies)
        for b in bodies:
            clauses.append([head, -b])

    real = list(range(1, len(atoms) + 1))
    models = []
    for assignment in _dpll_all(clauses, next_var - 1, real):
        models.append(frozenset(a for a in atoms if assignment[var_of[a]]))
    return models


def _dpll_all(clauses, nvars, project):
    """All satisfying assignments, projected to the given variables."""
    models = []

    def propagate(assign):
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned = None
                satisfied = False
                count = 0
                for lit in clause:
                    value = assign.get(abs(lit))
                    if value is None:
                        unassigned = lit
                        count += 1
                    elif value == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    assign[abs(unassigned)] = unassigned > 0
                    changed = True
        return True

    def rec(assign):
        assign = dict(assign)
        if not propagate(assign):
            return
        for v in project:
            if v not in assign:
                for value in (False, True):
                    trial = dict(assign)
                    trial[v] = value
                    rec(trial)
                return
        # Remaining auxiliaries are forced by propagation; fill defaults.
        for v in range(1, nvars + 1):
            assign.setdefault(v, False)
        models.append(assign)

    rec({})
    return models


# ---------------------------------------------------------------------------
# Stratified evaluation

def _pred_edges(g: GroundProgram):
    preds = set()
    pos_edges = {}
    neg_edges = {}
    for r in g.rules:
        for a in [r.head] if r.head else []:
            preds.add(a[0])
        for a in r.pos:
            preds.add(a[0])
        for a in r.neg:
            preds.add(a[0])
        if r.head is None:
            continue
        head = r.head[0]
        pos_edges.setdefault(head, set()).update(a[0] for a in r.pos)
        neg_edges.setdefault(head, set()).update(a[0] for a in r.neg)
    return preds, pos_edges, neg_edges


def _stratification(g: GroundProgram):
    """SCCs of the predicate dependency graph in evaluation order, or None."""
    if any(r.choice for r in g.rules):
        return None
    preds, pos_edges, neg_edges = _pred_edges(g)
    succ = {
        p: sorted(pos_edges.get(p, set()) | neg_edges.get(p, set())) for p in preds
    }
    comps = _scc_topo_order(sorted(preds), lambda v: succ.get(v, ()))
    for comp in comps:
        for p in comp:
            if neg_edges.get(p, set()) & comp:
                return None
    return comps


def _stratified_models(g: GroundProgram):
    strata = _stratification(g)
    if strata is None:
        reason = (
            "program has choice rules"
            if any(r.choice for r in g.rules)
            else "negation inside a dependency cycle"
        )
        raise MethodInapplicableError("stratified", reason)
    derived = set()
    by_stratum = {}
    for i, comp in enumerate(strata):
        for p in comp:
            by_stratum[p] = i
    rules_of = {}
    for r in g.rules:
        if r.head is not None:
            rules_of.setdefault(by_stratum[r.head[0]], []).append(r)
    for i in range(len(strata)):
        pending = rules_of.get(i, [])
        changed = True
        while changed:
            changed = False
            remaining = []
            for r in pending:
                if any(a in derived for a in r.neg):
                    continue
                if all(a in derived for a in r.pos):
                    if r.head not in derived:
                        derived.add(r.head)
                        changed = True
                else:
                    remaining.append(r)
            pending = remaining
    for r in g.rules:
        if r.head is None:
            if all(a in derived for a in r.pos) and not any(a in derived for a in r.neg):
                return []
    return [frozenset(derived)]
