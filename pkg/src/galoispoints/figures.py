"""Matplotlib renderings saved next to the delimited report output.

Three figure kinds: a per-run check status chart, a scatter of the affine
rational points of the run's curve over its working field (special points
highlighted), and a pass/fail matrix for sweeps.  All rendering uses the
Agg backend and writes PNG files; nothing here affects verification.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STATUS_COLOR = {"pass": "#2e7d32", "fail": "#c62828",
                 "skip": "#9e9e9e", "external": "#1565c0"}


def render_check_chart(report, path: str):
    names = [c.name for c in report.checks][::-1]
    times = [max(c.millis, 0.01) for c in report.checks][::-1]
    colors = [_STATUS_COLOR.get(c.status, "#616161") for c in report.checks][::-1]
    fig, ax = plt.subplots(figsize=(8, 0.4 * len(names) + 1.2))
    ax.barh(range(len(names)), times, color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.set_xscale("log")
    ax.set_xlabel("runtime per check [ms]")
    cfg = report.config
    param = f"m={cfg['m']}" if "m" in cfg else f"r={cfg['r']}"
    ax.set_title(f"{report.selector}: q={cfg['q']}, {param} -> {report.verdict}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_curve_points(report, path: str):
    """Affine point cloud of the run's family curve over its working field."""
    from .constants import make_family_constants
    from .curves import make_curve

    cfg = report.config
    mode = "Gr" if report.selector == "thm2" else "Fm"
    family = {"thm1a": "Fm", "lemma1": "Fm", "prop1": "Fm",
              "thm1b": "Em", "thm2": "Gr"}[report.selector]
    cst = make_family_constants(cfg["p"], cfg["n"], cfg.get("m", cfg.get("r")),
                                mode, ext_cap=cfg.get("ext_cap") or 64)
    ctx = cst.ctx
    curve = make_curve(family, cfg["q"], cfg.get("m", cfg.get("r")), ctx)
    xs, ys = [], []
    for xv in ctx.elements():
        for yv in ctx.elements():
            if curve.affine.eval(xv, yv) == ctx.zero:
                xs.append(ctx.to_int(xv))
                ys.append(ctx.to_int(yv))
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.scatter(xs, ys, s=10, color="#37474f", label="curve points")
    special = []
    if family in ("Fm",):
        special = [(ctx.to_int(lam), 0) for lam in cst.lambda_set]
    elif family == "Em":
        special = [(ctx.to_int(z), 0) for z in cst.zeta_set]
    elif family == "Gr":
        special = [(ctx.to_int(a), 0) for a in cst.lambda_set]
    if special:
        ax.scatter([a for a, _ in special], [b for _, b in special],
                   s=42, facecolors="none", edgecolors="#c62828", linewidths=1.4,
                   label="distinguished points")
    ax.set_xlabel("x (canonical encoding)")
    ax.set_ylabel("y (canonical encoding)")
    ax.set_title(f"{family}: affine points over F_{ctx.p}^{ctx.k}")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_sweep_matrix(entries, path: str):
    """Verdict heatmap: one row per grid line."""
    if not entries:
        return
    labels = []
    colors = []
    cmap = {"pass": "#2e7d32", "fail": "#c62828", "rejected": "#9e9e9e"}
    for params, verdict, _ in entries:
        mr = params.get("m", params.get("r"))
        labels.append(f"p={params['p']} n={params['n']} mr={mr} {params['selector']}")
        colors.append(cmap.get(verdict, "#616161"))
    fig, ax = plt.subplots(figsize=(6, 0.4 * len(labels) + 1.0))
    ax.barh(range(len(labels)), [1] * len(labels), color=colors)
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.set_xticks([])
    ax.set_title("sweep verdicts")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_run_figures(report, directory: str) -> list:
    """All figures for one run; returns the file paths written."""
    os.makedirs(directory, exist_ok=True)
    tag = _tag(report)
    paths = []
    p1 = os.path.join(directory, f"checks_{tag}.png")
    render_check_chart(report, p1)
    paths.append(p1)
    try:
        p2 = os.path.join(directory, f"curve_{tag}.png")
        render_curve_points(report, p2)
        paths.append(p2)
    except Exception:   # point cloud is decorative; never block the report
        pass
    return paths


def _tag(report) -> str:
    cfg = report.config
    mr = cfg.get("m", cfg.get("r"))
    return f"{report.selector}_p{cfg['p']}n{cfg['n']}mr{mr}"
