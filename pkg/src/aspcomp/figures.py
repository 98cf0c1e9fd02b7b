"""Matplotlib figures for the report paths (puzzle and verify)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def puzzle_figures(result, outdir: str) -> list:
    """Scatter the surviving pairs after each statement, plus extent sizes."""
    os.makedirs(outdir, exist_ok=True)
    paths = []

    fig, axes = plt.subplots(2, 2, figsize=(9, 8), sharex=True, sharey=True)
    titles = {
        "b0": "before the conversation",
        "b1": "after S: P does not know",
        "b2": "after P: now I know",
        "b3": "after S: now I also know",
    }
    for ax, pred in zip(axes.flat, ("b0", "b1", "b2", "b3")):
        rows = result.extents.get(pred, [])
        if rows:
            ax.scatter([m for m, _ in rows], [n for _, n in rows], s=4)
        ax.set_title(f"{pred}: {titles[pred]} ({len(rows)} pairs)", fontsize=9)
        ax.set_xlabel("M")
        ax.set_ylabel("N")
    fig.suptitle(f"candidate pairs, answer M={result.answer[0]} N={result.answer[1]}")
    fig.tight_layout()
    path = os.path.join(outdir, "candidate_pairs.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(7, 4))
    preds = sorted(result.extents)
    sizes = [len(result.extents[p]) for p in preds]
    ax.bar(preds, sizes)
    ax.set_yscale("log")
    ax.set_ylabel("extent size (log)")
    for x, s in zip(preds, sizes):
        ax.text(x, s, str(s), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, "extent_sizes.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths.append(path)
    return paths


def verify_figure(report, outdir: str) -> str:
    """One-look summary of a correspondence report."""
    os.makedirs(outdir, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    labels = ["stable models", "forward failures", "backward failures"]
    values = [
        report.stable_model_count,
        len(report.forward_failures),
        len(report.backward_failures),
    ]
    colors = ["tab:blue", "tab:red" if values[1] else "tab:green",
              "tab:red" if values[2] else "tab:green"]
    ax.bar(labels, values, color=colors)
    for x, v in zip(labels, values):
        ax.text(x, v, str(v), ha="center", va="bottom")
    tight = "tight" if report.tightness is True else "not tight"
    ax.set_title(
        f"window [{report.window.lo}, {report.window.hi}], {tight}, "
        f"backward: {report.backward_status}"
    )
    fig.tight_layout()
    path = os.path.join(outdir, "verify_summary.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
