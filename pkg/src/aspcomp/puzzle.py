"""The Sum and Product Puzzle, end to end.

Two integers M and N with 1 < M < N and M + N <= 100.  S knows the sum,
P knows the product.  S: "P does not know the numbers."  P: "Now I
know."  S: "Now I also know."  The axiom chain below defines the
candidate pairs surviving each statement; reverse completion turns the
chain into a program whose unique stable model carries the answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grounding import IntWindow, ground
from .parser import parse_formulas
from .reverse import reverse_completion
from .solver import stable_models
from .syntax import Program

AXIOM_TEXT = """\
forall M N (b0(M,N) <-> 1 < M < N & M + N <= 100).
forall I (puzzling0(I) <->
  exists J1 K1 J2 K2 (b0(J1,K1) & b0(J2,K2) & I = J1*K1 = J2*K2 & J1 != J2)).
forall I (possibly_easy(I) <->
  exists J K (b0(J,K) & I = J + K & not puzzling0(J*K))).
forall M N (b1(M,N) <-> b0(M,N) & not possibly_easy(M + N)).
forall I (puzzling1(I) <->
  exists J1 K1 J2 K2 (b1(J1,K1) & b1(J2,K2) & I = J1*K1 = J2*K2 & J1 != J2)).
forall M N (b2(M,N) <-> b1(M,N) & not puzzling1(M*N)).
forall I (puzzling2(I) <->
  exists J1 K1 J2 K2 (b2(J1,K1) & b2(J2,K2) & I = J1 + K1 = J2 + K2 & J1 != J2)).
forall M N (b3(M,N) <-> b2(M,N) & not puzzling2(M + N)).
"""

# Products reach 49 * 51 = 2499, sums stay under 100.
PUZZLE_WINDOW = IntWindow(2, 2500)


class PuzzleError(Exception):
    pass


@dataclass(frozen=True)
class PuzzleResult:
    program: Program
    model: frozenset
    answer: tuple  # (m, n)
    extents: dict  # predicate name -> sorted list of integer tuples


def puzzle_program(intervals: bool = False) -> Program:
    return reverse_completion(parse_formulas(AXIOM_TEXT), intervals=intervals)


def solve_puzzle(window: IntWindow = PUZZLE_WINDOW) -> PuzzleResult:
    p = puzzle_program()
    g = ground(p, window)
    models = stable_models(g, "stratified")
    if len(models) != 1:
        raise PuzzleError(f"expected a unique stable model, found {len(models)}")
    model = models[0]
    extents = {}
    for pred, args in model:
        extents.setdefault(pred, []).append(tuple(a.value for a in args))
    for rows in extents.values():
        rows.sort()
    b3 = extents.get("b3", [])
    if len(b3) != 1:
        raise PuzzleError(f"expected a single surviving pair, b3 extent is {b3}")
    return PuzzleResult(p, model, b3[0], extents)
