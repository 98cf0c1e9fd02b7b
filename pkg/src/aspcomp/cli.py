"""Command-line front end: complete, comp, tight, solve, verify, reverse, puzzle."""

from __future__ import annotations

import argparse
import json
import sys

from .completion import arithmetic_completed_definition, completed_definition, constraint_sentence, ncomp, simplify
from .formulas import NameGen, SortError
from .grounding import IntWindow, SafetyError, default_window, ground
from .modelcheck import verify_correspondence
from .parser import NonRegularError, ParseError, parse_formulas, parse_program
from .printer import print_formula, print_program
from .puzzle import PuzzleError, solve_puzzle
from .reverse import NotADefinitionError, UnsupportedShapeError, reverse_completion
from .solver import MethodInapplicableError, SearchSpaceError, format_model, stable_models
from .syntax import Sym, predicate_symbols
from .valcomp import comp


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _window(args, program=None) -> IntWindow:
    if args.int_window:
        text = args.int_window
        lo, sep, hi = text.partition("..")
        if not sep:
            raise ValueError(f"expected LO..HI, got {text!r}")
        return IntWindow(int(lo), int(hi))
    if program is not None:
        return default_window(program)
    return IntWindow(-1, 1)


def _consts(args):
    if not getattr(args, "consts", None):
        return ()
    return tuple(Sym(name.strip()) for name in args.consts.split(",") if name.strip())


def _style(args) -> str:
    if args.format:
        return args.format
    return "unicode" if sys.stdout.isatty() else "ascii"


def _print_sentences(sentences, style):
    for i, s in enumerate(sentences, start=1):
        print(print_formula(s, style, tptp_name=f"f{i}"))


def cmd_complete(args) -> int:
    p = parse_program(_read(args.file), args.file)
    if args.arithmetic:
        sentences = [arithmetic_completed_definition(p, sym) for sym in predicate_symbols(p)]
        gen = NameGen()
        sentences += [constraint_sentence(r) for r in p.rules if r.head is None]
    else:
        sentences = ncomp(p)
    if args.simplify:
        sentences = [simplify(s) for s in sentences]
    _print_sentences(sentences, _style(args))
    return 0


def cmd_comp(args) -> int:
    p = parse_program(_read(args.file), args.file)
    sentences = comp(p)
    if args.simplify:
        sentences = [simplify(s) for s in sentences]
    _print_sentences(sentences, _style(args))
    return 0


def cmd_tight(args) -> int:
    from .tightness import dependency_graph, is_tight, to_dot

    p = parse_program(_read(args.file), args.file)
    if args.dot:
        print(to_dot(dependency_graph(p)))
        return 0
    result = is_tight(p)
    if result is True:
        print("tight")
    else:
        print("not tight: " + " -> ".join(str(v) for v in result) + " -> ...")
    return 0


def cmd_solve(args) -> int:
    p = parse_program(_read(args.file), args.file)
    g = ground(p, _window(args, p), extra_constants=_consts(args))
    for w in g.warnings:
        print(w, file=sys.stderr)
    models = stable_models(g, args.method)
    for m in models:
        print(format_model(m))
    print(f"{len(models)} stable model(s)", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    p = parse_program(_read(args.file), args.file)
    report = verify_correspondence(
        p, _window(args, p), constants=_consts(args), method=args.method
    )
    if args.records:
        for record in _report_records(report):
            print(json.dumps(record, sort_keys=True))
    else:
        print(report.to_text())
    if args.plot_dir:
        from .figures import verify_figure

        path = verify_figure(report, args.plot_dir)
        print(f"figure: {path}", file=sys.stderr)
    return 0 if report.ok else 1


def _report_records(report):
    yield {
        "record": "summary",
        "window": [report.window.lo, report.window.hi],
        "tight": report.tightness is True,
        "stable_models": report.stable_model_count,
        "forward_ok": report.forward_ok,
        "backward_status": report.backward_status,
        "boundary": report.boundary,
    }
    if report.tightness is not True:
        yield {"record": "cycle", "predicates": [str(v) for v in report.tightness]}
    for m in report.forward_failures:
        yield {"record": "forward_failure", "model": format_model(m)}
    for m in report.backward_failures:
        yield {"record": "backward_failure", "model": format_model(m)}
    for note in report.notes:
        yield {"record": "note", "text": note}


def cmd_reverse(args) -> int:
    sentences = parse_formulas(_read(args.file), args.file)
    p = reverse_completion(sentences, intervals=args.intervals)
    text = print_program(p) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_puzzle(args) -> int:
    result = solve_puzzle()
    print(f"M={result.answer[0]}, N={result.answer[1]}")
    for pred in sorted(result.extents):
        print(f"{pred}: {len(result.extents[pred])}")
    if args.plot_dir:
        from .figures import puzzle_figures

        for path in puzzle_figures(result, args.plot_dir):
            print(f"figure: {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="aspcomp",
        description="Completion formulas, tightness, stable models, and reverse completion "
        "for regular answer-set programs.",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(sp, window=False, method=False, fmt=False, consts=False):
        if window:
            sp.add_argument("--int-window", metavar="LO..HI", help="integer window (default: program numerals plus slack)")
        if method:
            sp.add_argument("--method", choices=["auto", "brute", "completion", "stratified"], default="auto")
        if fmt:
            sp.add_argument("--format", choices=["unicode", "ascii", "tptp"], help="default: unicode on a terminal, ascii when piped")
        if consts:
            sp.add_argument("--consts", metavar="a,b,c", help="extra symbolic constants for the universe")

    sp = sub.add_parser("complete", help="print the natural completion of a program")
    sp.add_argument("file")
    sp.add_argument("--arithmetic", action="store_true", help="arithmetic completed definitions instead")
    sp.add_argument("--simplify", action="store_true")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("comp", help="print the value-formula based completion")
    sp.add_argument("file")
    sp.add_argument("--simplify", action="store_true")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_comp)

    sp = sub.add_parser("tight", help="check tightness of a program")
    sp.add_argument("file")
    sp.add_argument("--dot", action="store_true", help="print the dependency graph in DOT format")
    sp.set_defaults(func=cmd_tight)

    sp = sub.add_parser("solve", help="print the stable models, one per line")
    sp.add_argument("file")
    common(sp, window=True, method=True, consts=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check the stable-model / completion correspondence")
    sp.add_argument("file")
    sp.add_argument("--records", action="store_true", help="line-delimited JSON instead of text")
    sp.add_argument("--plot-dir", metavar="DIR", help="also render a summary figure")
    common(sp, window=True, method=True, consts=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reverse", help="turn a chain of explicit definitions into a program")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", metavar="FILE", help="write the program here (default stdout)")
    sp.add_argument("--intervals", action="store_true", help="merge variable bounds into interval comparisons")
    sp.set_defaults(func=cmd_reverse)

    sp = sub.add_parser("puzzle", help="solve the sum and product puzzle end to end")
    sp.add_argument("--plot-dir", metavar="DIR", help="also render extent figures")
    sp.set_defaults(func=cmd_puzzle)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, NonRegularError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (
        SortError,
        SafetyError,
        MethodInapplicableError,
        SearchSpaceError,
        NotADefinitionError,
        UnsupportedShapeError,
        PuzzleError,
        ValueError,
        OSError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
