"""Matplotlib figure rendering for the report paths.

Figures are rendered next to the delimited output as a convenience; the
CSV/JSON files remain the authoritative contract and the byte-stability
guarantee applies to them, not to the PNGs.  matplotlib is imported
lazily so library users without a plotting need never pay for it.
"""

from __future__ import annotations

import math
from pathlib import Path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def growth_figure(fit_table: dict, path: Path) -> None:
    """Log-log growth of max{|A+A|, |AA|} per family with fitted slopes."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for kind, data in sorted(fit_table.items()):
        pts = data["points"]
        if not pts:
            continue
        xs = [math.log2(n) for n, _ in pts]
        ys = [math.log2(v) for _, v in pts]
        ax.plot(xs, ys, marker="o", label=f"{kind} (slope {data['fitted_exponent']:.3f})")
    ax.set_xlabel("log2 |A|")
    ax.set_ylabel("log2 max(|A+A|, |AA|)")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def decomposition_figure(result, path: Path) -> None:
    """Per-step multiplicative energy of the remainder and step sizes."""
    plt = _pyplot()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.6, 4.0))
    steps = list(result.steps)
    js = [s.j for s in steps]
    if steps:
        ax1.semilogy(js, [max(s.energy_c_before, 1) for s in steps], marker="o")
        ax2.bar(js, [len(s.d_set) for s in steps])
    ax1.set_xlabel("step j")
    ax1.set_ylabel("mult energy of remainder")
    ax2.set_xlabel("step j")
    ax2.set_ylabel("|D_j|")
    sizes = f"|B| = {len(result.b_set)}, |C| = {len(result.c_set)}"
    fig.suptitle(f"low-energy decomposition ({sizes}, stop: {result.stop_reason})")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def slice_profile_figure(profile: dict, tau, path: Path, title: str = "") -> None:
    """Histogram of slice sizes with the selected dyadic band shaded."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    sizes = sorted(profile.values())
    ax.hist(sizes, bins=min(50, max(5, len(set(sizes)))), log=True)
    if tau is not None:
        lo, hi = float(tau), float(2 * tau)
        ax.axvspan(lo, hi, color="orange", alpha=0.3, label=f"band ({lo:g}, {hi:g}]")
        ax.legend(fontsize=8)
    ax.set_xlabel("|A ∩ λA|")
    ax.set_ylabel("count of λ")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def suite_margin_figure(reports: list, path: Path) -> None:
    """Pass/fail/report row counts per verified set."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.2, 4.0))
    labels = [f"|A|={rep.set_size}" for rep in reports]
    passes = [sum(1 for r in rep.rows if r.status == "pass") for rep in reports]
    fails = [sum(1 for r in rep.rows if r.status == "fail") for rep in reports]
    infos = [sum(1 for r in rep.rows if r.status == "report") for rep in reports]
    xs = range(len(reports))
    ax.bar(xs, passes, label="pass", color="tab:green")
    ax.bar(xs, fails, bottom=passes, label="fail", color="tab:red")
    ax.bar(
        xs,
        infos,
        bottom=[p + f for p, f in zip(passes, fails)],
        label="report",
        color="tab:gray",
    )
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=45, fontsize=7)
    ax.set_ylabel("suite rows")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
