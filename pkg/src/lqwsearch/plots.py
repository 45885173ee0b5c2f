"""Publication-style figures from the runner's CSV outputs.

Consumes only the CSV contract (success.csv / distribution.csv columns);
it never touches simulation internals and never modifies its inputs.
Two figure kinds:

* success lines: per-experiment mean curve with a translucent mean+-std
  band and the dotted 1/N uniform baseline;
* heatmap grid: 2x2 panels of the time-averaged spatial distribution with
  one color scale shared across all panels.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SUCCESS_COLUMNS = ["step", "mean_success", "std_success", "uniform_baseline"]
DISTRIBUTION_COLUMNS = ["x", "y", "mean_time_averaged_probability"]


def _read_csv(path: Path | str, expected_columns: list[str]) -> dict[str, np.ndarray]:
    path = Path(path)
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if header != expected_columns:
            raise ValueError(
                f"{path}: expected columns {expected_columns}, found {header}"
            )
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    try:
        data = np.array(rows, dtype=float)
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric cell ({exc})") from None
    return {name: data[:, i] for i, name in enumerate(expected_columns)}


def load_success_csv(path: Path | str) -> dict[str, np.ndarray]:
    """Parse one success.csv; raises with the offending path on any defect."""
    return _read_csv(path, SUCCESS_COLUMNS)


def load_distribution_csv(path: Path | str) -> np.ndarray:
    """Parse one distribution.csv into a (side_y, side_x) probability grid."""
    cols = _read_csv(path, DISTRIBUTION_COLUMNS)
    xs = cols["x"].astype(int)
    ys = cols["y"].astype(int)
    side_x, side_y = xs.max() + 1, ys.max() + 1
    if len(xs) != side_x * side_y:
        raise ValueError(
            f"{path}: {len(xs)} rows do not tile a {side_x}x{side_y} grid"
        )
    grid = np.full((side_y, side_x), np.nan)
    grid[ys, xs] = cols["mean_time_averaged_probability"]
    if np.isnan(grid).any():
        raise ValueError(f"{path}: duplicate or missing (x, y) rows")
    return grid


def plot_success(
    series_inputs: list[tuple[Path | str, str]],
    out: Path | str,
    image_format: str | None = None,
) -> plt.Figure:
    """Mean-success curves with std bands and the uniform baseline."""
    if not series_inputs:
        raise ValueError("no input series given")
    loaded = [(label, load_success_csv(path)) for path, label in series_inputs]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for label, cols in loaded:
        steps = cols["step"]
        mean = cols["mean_success"]
        std = cols["std_success"]
        (line,) = ax.plot(steps, mean, label=label, linewidth=1.2)
        ax.fill_between(steps, mean - std, mean + std,
                        color=line.get_color(), alpha=0.25, linewidth=0)
    baseline = loaded[0][1]["uniform_baseline"][0]
    ax.axhline(baseline, color="black", linestyle=":", linewidth=1.0,
               label="uniform 1/N")
    ax.set_xlabel("step")
    ax.set_ylabel("success probability")
    ax.set_ylim(bottom=0)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, format=image_format, dpi=200)
    return fig


def plot_heatmap_grid(
    distribution_inputs: list[tuple[Path | str, str]],
    out: Path | str,
    image_format: str | None = None,
) -> plt.Figure:
    """2x2 heatmaps of the time-averaged distribution on one color scale."""
    if len(distribution_inputs) != 4:
        raise ValueError(
            f"heatmap grid needs exactly 4 inputs, got {len(distribution_inputs)}"
        )
    grids = [(label, load_distribution_csv(path)) for path, label in distribution_inputs]
    shape = grids[0][1].shape
    for label, grid in grids[1:]:
        if grid.shape != shape:
            raise ValueError(
                f"grid size mismatch: {grid.shape[::-1]} for {label!r} "
                f"vs {shape[::-1]} for {grids[0][0]!r}"
            )

    vmax = max(grid.max() for _, grid in grids)
    fig, axes = plt.subplots(2, 2, figsize=(7.2, 6.4), constrained_layout=True)
    image = None
    for ax, (label, grid) in zip(axes.ravel(), grids):
        image = ax.imshow(grid, origin="lower", vmin=0.0, vmax=vmax,
                          interpolation="nearest")
        ax.set_title(label, fontsize=10)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
    fig.colorbar(image, ax=axes, shrink=0.8, label="time-averaged probability")
    fig.savefig(out, format=image_format, dpi=200)
    return fig


def _pair_labels(paths: list[str], labels: list[str] | None) -> list[tuple[str, str]]:
    if labels is None:
        labels = [Path(p).parent.name or Path(p).stem for p in paths]
    if len(labels) != len(paths):
        raise ValueError(f"{len(paths)} inputs but {len(labels)} labels")
    return list(zip(paths, labels))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lqwsearch-plot",
        description="Render figures from lqwsearch CSV output.",
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind, help_text in (
        ("success", "success-probability lines with std bands"),
        ("heatmap", "2x2 grid of time-averaged distribution heatmaps"),
    ):
        cmd = sub.add_parser(kind, help=help_text)
        cmd.add_argument("--in", dest="inputs", nargs="+", required=True,
                         metavar="CSV", help="input CSV files")
        cmd.add_argument("--labels", nargs="+", default=None,
                         help="one label per input (default: parent dir names)")
        cmd.add_argument("--out", required=True, help="output image file")
        cmd.add_argument("--vector", action="store_true",
                         help="emit SVG instead of the default PNG")
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    image_format = "svg" if args.vector else None
    try:
        inputs = _pair_labels(args.inputs, args.labels)
        if args.kind == "success":
            fig = plot_success(inputs, args.out, image_format=image_format)
        else:
            fig = plot_heatmap_grid(inputs, args.out, image_format=image_format)
        plt.close(fig)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
