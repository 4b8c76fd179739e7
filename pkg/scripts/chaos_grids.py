#!/usr/bin/env python3
"""Discrepancy grids for the Chebyshev and logistic maps.

For each map a square parameter grid is evaluated and written as
long-format CSV (``param1,param2,qfcri``) for every requested alpha.  Pass
``--plot`` to also save heatmaps (needs matplotlib, not a package dependency).
"""

import argparse
from pathlib import Path

import numpy as np

from qfcri.chaos import PRESET_ACTUAL_AXIS, default_axis, discrepancy_grid


def save_heatmap(grid, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    ext = [grid.axis2[0], grid.axis2[-1], grid.axis1[0], grid.axis1[-1]]
    im = ax.imshow(grid.values, origin="lower", extent=ext, aspect="auto")
    ax.set_xlabel("param2")
    ax.set_ylabel("param1")
    ax.set_title(f"{grid.kind}, alpha={grid.alpha}")
    fig.colorbar(im, ax=ax)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="results/chaos")
    ap.add_argument("--size", type=int, default=50)
    ap.add_argument("--n", type=int, default=1000, help="orbit length")
    ap.add_argument("--alpha", type=float, nargs="+", default=[0.25, 0.5, 0.75])
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args(argv)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    for kind in ("chebyshev", "logistic"):
        ax = default_axis(kind, args.size)
        for a in args.alpha:
            g = discrepancy_grid(kind, ax, ax, a, n=args.n, actual_axis=PRESET_ACTUAL_AXIS[kind],
                                 threads=args.threads)
            stem = f"{kind}_a{a}"
            (out / f"{stem}.csv").write_text(g.to_csv())
            if args.plot:
                save_heatmap(g, out / f"{stem}.png")
            print(f"{stem}: max={np.nanmax(g.values):.4f} failures={len(g.failures)}")


if __name__ == "__main__":
    main()
