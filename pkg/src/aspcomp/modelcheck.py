"""Finite-universe evaluation of sentences, and correspondence reports.

An answer set lifts to an interpretation whose general universe is the
window numerals plus the declared symbolic constants; integer variables
range over the window numerals.  Arithmetic is evaluated without bounds,
so a quantifier can produce values outside the window; such evaluations
are flagged as boundary-dependent rather than silently trusted.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import formulas as fm
from .formulas import Atom, Bot, Cmp, Exists, FBin, Forall, FVar, Iff, Implies, Not, Or, And, Sort, Top
from .grounding import IntWindow, ground, rel_holds
from .syntax import Num, Program, Sym, precomputed_key
from .tightness import is_tight


class AtomOutsideUniverseError(Exception):
    pass


class FreeVariableError(Exception):
    pass


@dataclass(frozen=True)
class Interpretation:
    window: IntWindow
    constants: tuple  # Sym, sorted by name
    atoms: frozenset  # (pred, args) ground atoms

    @property
    def int_universe(self):
        return tuple(Num(v) for v in range(self.window.lo, self.window.hi + 1))

    @property
    def general_universe(self):
        return self.int_universe + self.constants


def lift(atoms, window: IntWindow, constants=()) -> Interpretation:
    """The interpretation determined by an atom set over the window."""
    consts = tuple(sorted(set(constants), key=lambda s: s.name))
    universe = set(Num(v) for v in range(window.lo, window.hi + 1)) | set(consts)
    for pred, args in atoms:
        for a in args:
            if a not in universe:
                raise AtomOutsideUniverseError(
                    f"argument {a} of {pred}{args} is outside the universe "
                    f"[{window.lo}, {window.hi}] + constants"
                )
    return Interpretation(window, consts, frozenset(atoms))


@dataclass(frozen=True)
class EvalResult:
    value: bool
    boundary: bool  # some arithmetic result fell outside the window

    def __bool__(self):
        return self.value


def eval_formula(interp: Interpretation, f) -> EvalResult:
    free = fm.free_variables(f)
    if free:
        names = ", ".join(sorted(v.name for v in free))
        raise FreeVariableError(f"formula has free variables: {names}")
    boundary = [False]

    def term(t, env):
        if isinstance(t, (Num, Sym)):
            return t
        if isinstance(t, FVar):
            return env[t.name]
        left = term(t.left, env)
        right = term(t.right, env)
        if t.op == "+":
            v = left.value + right.value
        elif t.op == "-":
            v = left.value - right.value
        else:
            v = left.value * right.value
        if v not in interp.window:
            boundary[0] = True
        return Num(v)

    int_dom = interp.int_universe
    gen_dom = interp.general_universe

    def go(f, env):
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Atom):
            return (f.pred, tuple(term(a, env) for a in f.args)) in interp.atoms
        if isinstance(f, Cmp):
            return rel_holds(term(f.lhs, env), f.rel, term(f.rhs, env))
        if isinstance(f, Not):
            return not go(f.arg, env)
        if isinstance(f, And):
            return go(f.left, env) and go(f.right, env)
        if isinstance(f, Or):
            return go(f.left, env) or go(f.right, env)
        if isinstance(f, Implies):
            return (not go(f.left, env)) or go(f.right, env)
        if isinstance(f, Iff):
            return go(f.left, env) == go(f.right, env)
        domain = int_dom if f.var.sort is Sort.INTEGER else gen_dom
        if isinstance(f, (Forall, Exists)):
            # Mutate and restore instead of copying env per iteration.
            name = f.var.name
            saved = env.get(name)
            had = name in env
            want = isinstance(f, Exists)
            result = not want
            for d in domain:
                env[name] = d
                if go(f.body, env) == want:
                    result = want
                    break
            if had:
                env[name] = saved
            else:
                env.pop(name, None)
            return result
        raise TypeError(f"not a formula: {f!r}")

    value = go(f, {})
    return EvalResult(value, boundary[0])


def eval_all(interp: Interpretation, sentences) -> EvalResult:
    boundary = False
    for s in sentences:
        r = eval_formula(interp, s)
        boundary = boundary or r.boundary
        if not r.value:
            return EvalResult(False, boundary)
    return EvalResult(True, boundary)


@dataclass
class CorrespondenceReport:
    window: IntWindow
    tightness: object  # True or a cycle of predicate symbols
    stable_model_count: int
    forward_ok: bool  # every stable model lifts to a model of the completion
    forward_failures: list
    backward_status: str  # ok | failed | sampled_ok | not_applicable | skipped
    backward_failures: list
    boundary: bool
    notes: list = field(default_factory=list)

    def to_text(self) -> str:
        from .solver import format_model

        lines = [f"window: [{self.window.lo}, {self.window.hi}]"]
        if self.tightness is True:
            lines.append("tight: yes")
        else:
            cycle = " -> ".join(str(v) for v in self.tightness)
            lines.append(f"tight: no ({cycle} -> ...)")
        lines.append(f"stable models: {self.stable_model_count}")
        lines.append(
            "every stable model satisfies the completion: "
            + ("yes" if self.forward_ok else "NO")
        )
        for m in self.forward_failures:
            lines.append(f"  counterexample model: {format_model(m)}")
        lines.append(f"completion models are stable ({self.backward_status})")
        for m in self.backward_failures:
            lines.append(f"  completion model that is not stable: {format_model(m)}")
        if self.boundary:
            lines.append("warning: arithmetic left the window during evaluation")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)

    @property
    def ok(self) -> bool:
        return self.forward_ok and self.backward_status in ("ok", "sampled_ok", "not_applicable")


def verify_correspondence(
    p: Program,
    window: IntWindow,
    constants=(),
    method: str = "auto",
    enum_cap: int = 1 << 20,
    samples: int = 200,
    rng: random.Random = None,
) -> CorrespondenceReport:
    """Check both directions of the stable-model / completion correspondence.

    Forward: the lift of every stable model satisfies the completion (holds
    for all programs).  Backward: every completion-satisfying subset of the
    possible atoms is stable; this direction is only claimed for tight
    programs and is checked by full subset enumeration up to enum_cap,
    falling back to random sampling beyond it.
    """
    from .completion import ncomp
    from .solver import stable_models

    g = ground(p, window, extra_constants=constants)
    sentences = ncomp(p)
    models = stable_models(g, method)
    tightness = is_tight(p)
    boundary = False
    notes = [w for w in g.warnings]

    forward_failures = []
    for m in models:
        try:
            interp = lift(m, window, set(constants) | {c for c in _program_syms(p)})
        except AtomOutsideUniverseError as e:
            forward_failures.append(m)
            notes.append(str(e))
            continue
        r = eval_all(interp, sentences)
        boundary = boundary or r.boundary
        if not r.value:
            forward_failures.append(m)

    consts = tuple(sorted(set(constants) | set(_program_syms(p)), key=lambda s: s.name))
    base = herbrand_base(p, window, consts)
    model_sets = {frozenset(m) for m in models}
    backward_failures = []

    def check(subset):
        nonlocal boundary
        interp = Interpretation(window, consts, frozenset(subset))
        r = eval_all(interp, sentences)
        boundary = boundary or r.boundary
        return r.value == (subset in model_sets)

    if tightness is not True:
        status = "not_applicable"
        notes.append(
            "program is not tight, completion models need not be stable; "
            "direction skipped"
        )
    elif 2 ** len(base) <= enum_cap:
        status = "ok"
        for bits in itertools.product((False, True), repeat=len(base)):
            subset = frozenset(a for a, b in zip(base, bits) if b)
            if not check(subset):
                status = "failed"
                backward_failures.append(subset)
                if len(backward_failures) >= 5:
                    break
    else:
        # Too many base atoms for exhaustion; probe near the stable models
        # (where the two sides could plausibly diverge) and around the
        # derivable atoms.
        rng = rng or random.Random(0)
        status = "sampled_ok"
        notes.append(
            f"2^{len(base)} base subsets exceed the enumeration cap; "
            f"checked {samples} random subsets"
        )
        heads = sorted(g.head_atoms, key=lambda a: (a[0], tuple(map(precomputed_key, a[1]))))
        for i in range(samples):
            if models and i % 2 == 0:
                subset = set(models[rng.randrange(len(models))])
                for _ in range(rng.randint(1, 3)):
                    a = base[rng.randrange(len(base))]
                    subset.symmetric_difference_update({a})
                subset = frozenset(subset)
            else:
                subset = frozenset(a for a in heads if rng.random() < 0.5)
            if not check(subset):
                status = "failed"
                backward_failures.append(subset)
                if len(backward_failures) >= 5:
                    break

    return CorrespondenceReport(
        window=window,
        tightness=tightness,
        stable_model_count=len(models),
        forward_ok=not forward_failures,
        forward_failures=forward_failures,
        backward_status=status,
        backward_failures=backward_failures,
        boundary=boundary,
        notes=notes,
    )


def _program_syms(p: Program):
    from .syntax import program_constants

    return program_constants(p)


def herbrand_base(p: Program, window: IntWindow, constants=()) -> list:
    """All atoms over the occurring predicates and the bounded universe."""
    from .syntax import predicate_symbols

    universe = tuple(Num(v) for v in range(window.lo, window.hi + 1)) + tuple(
        sorted(set(constants), key=lambda s: s.name)
    )
    base = []
    for sym in predicate_symbols(p):
        for args in itertools.product(universe, repeat=sym.arity):
            base.append((sym.name, args))
    return base
