import os

from aspcomp.figures import puzzle_figures, verify_figure
from aspcomp.grounding import IntWindow
from aspcomp.modelcheck import verify_correspondence
from aspcomp.parser import parse_program
from aspcomp.puzzle import PuzzleResult


def test_puzzle_figures_are_written(tmp_path):
    result = PuzzleResult(
        program=None,
        model=frozenset(),
        answer=(4, 13),
        extents={
            "b0": [(2, 3), (2, 4), (3, 5)],
            "b1": [(2, 3)],
            "b2": [(2, 3)],
            "b3": [(4, 13)],
            "puzzling0": [(6,)],
        },
    )
    paths = puzzle_figures(result, str(tmp_path / "figs"))
    assert [os.path.basename(p) for p in paths] == [
        "candidate_pairs.png", "extent_sizes.png",
    ]
    for p in paths:
        assert os.path.getsize(p) > 0


def test_verify_figure_is_written(tmp_path):
    p = parse_program("{p(X)} :- X = 0..1.")
    report = verify_correspondence(p, IntWindow(0, 1))
    path = verify_figure(report, str(tmp_path))
    assert os.path.basename(path) == "verify_summary.png"
    assert os.path.getsize(path) > 0
