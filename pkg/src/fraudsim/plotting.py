"""Matplotlib renderings for the CLI report and elbow paths (Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .session.footprint import METRIC_NAMES

# Metrics worth a bar each; full 17-bar charts are unreadable at report size.
_HIGHLIGHT_METRICS = [
    "age",
    "t_market_page",
    "n_untrusted_read",
    "n_fraud_bought",
    "n_trusted_read",
]


def save_elbow_figure(curve, chosen_k: int, path: str | Path) -> Path:
    ks = [k for k, _ in curve]
    inertias = [v for _, v in curve]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ks, inertias, marker="o", color="tab:purple")
    chosen_inertia = inertias[ks.index(chosen_k)]
    ax.scatter([chosen_k], [chosen_inertia], color="red", s=90, zorder=3,
               label=f"elbow at k={chosen_k}")
    ax.set_xlabel("number of clusters k")
    ax.set_ylabel("inertia (within-cluster sum of squares)")
    ax.set_title("Cluster count selection by the elbow method")
    ax.grid(alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def _group_means(report):
    means: dict[str, dict[str, float]] = {}
    for e in report.descriptive:
        if e.name.endswith("_mean") and e.group in ("Novice", "Experienced", "all"):
            means.setdefault(e.group, {})[e.name[:-5]] = e.value
    return means


def save_group_means_figure(report, path: str | Path) -> Path:
    means = _group_means(report)
    groups = [g for g in ("Novice", "Experienced", "all") if g in means]
    metrics = [m for m in _HIGHLIGHT_METRICS if m in METRIC_NAMES]
    x = np.arange(len(metrics))
    width = 0.8 / max(len(groups), 1)
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for i, g in enumerate(groups):
        vals = [means[g].get(m, 0.0) for m in metrics]
        ax.bar(x + i * width, vals, width, label=g)
    ax.set_xticks(x + width * (len(groups) - 1) / 2)
    ax.set_xticklabels(metrics, rotation=20, ha="right")
    ax.set_yscale("log")
    ax.set_ylabel("group mean (log scale)")
    ax.set_title("Key footprint metrics by investor group")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def save_trap_fraction_figure(report, path: str | Path) -> Path:
    fracs = {
        e.group: e.value
        for e in report.descriptive
        if e.name == "fraud_trap_fraction"
    }
    groups = sorted(fracs)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(groups, [fracs[g] for g in groups], color=["tab:red" if g == "Novice" else "tab:blue" for g in groups])
    ax.set_ylim(0, 1)
    ax.set_ylabel("fraction with at least one manipulated-stock buy")
    ax.set_title("Fraud-trap exposure by group")
    for i, g in enumerate(groups):
        ax.text(i, fracs[g] + 0.02, f"{fracs[g]:.0%}", ha="center")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def save_price_history_figure(scenario, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for stock in scenario.stocks:
        dollars = [c / 100.0 for c in stock.price_history]
        style = {"Real": "-", "Fraud": "--", "Fake": ":"}[stock.authenticity.value]
        ax.plot(dollars, style, label=f"{stock.ticker} ({stock.authenticity.value})")
    ax.set_xlabel("tick (week)")
    ax.set_ylabel("price (dollars)")
    ax.set_yscale("log")
    ax.set_title(f"Scenario '{scenario.name}' price histories (seed {scenario.seed})")
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)
