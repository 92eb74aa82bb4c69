"""Descriptive aggregates and Welch's t-test over footprint groups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from ..session.footprint import METRIC_NAMES, DigitalFootprint

DWELL_RATIO_METRICS = ("t_market_page", "t_fraud_stock_page", "t_news_page")


@dataclass(frozen=True)
class StatEntry:
    id: str
    name: str
    group: str
    value: float

    def to_dict(self) -> dict:
        return {"id": self.id, "name": self.name, "group": self.group, "value": self.value}


@dataclass(frozen=True)
class TestEntry:
    id: str
    test: str
    metric: str
    groups: tuple[str, str]
    statistic: float
    df: float
    p_value: float

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "test": self.test,
            "metric": self.metric,
            "groups": list(self.groups),
            "statistic": self.statistic,
            "df": self.df,
            "p_value": self.p_value,
        }


def _group_footprints(footprints: list[DigitalFootprint]) -> dict[str, list[DigitalFootprint]]:
    groups: dict[str, list[DigitalFootprint]] = {}
    for fp in footprints:
        groups.setdefault(fp.label or "all", []).append(fp)
    return groups


def descriptive_stats(footprints: list[DigitalFootprint], group_by: str = "label") -> list[StatEntry]:
    """Per-group mean/median/std for every metric, plus the fraud-trap fraction
    and between-group dwell-time ratios.

    Unlabeled footprints fall into a single 'all' group. Single-member groups
    report std 0 and are flagged with a degenerate marker entry.
    """
    if not footprints:
        raise ValueError("descriptive_stats needs at least one footprint")
    if group_by != "label":
        raise ValueError(f"unsupported grouping {group_by!r}")
    groups = _group_footprints(footprints)
    entries: list[StatEntry] = []
    for gname in sorted(groups):
        members = groups[gname]
        entries.append(StatEntry(f"desc:{gname}:n", "group_size", gname, float(len(members))))
        if len(members) == 1:
            entries.append(StatEntry(f"desc:{gname}:degenerate", "degenerate_group", gname, 1.0))
        for m in METRIC_NAMES:
            vals = np.array([float(getattr(fp, m)) for fp in members])
            entries.append(StatEntry(f"desc:{gname}:{m}:mean", f"{m}_mean", gname, float(vals.mean())))
            entries.append(
                StatEntry(f"desc:{gname}:{m}:median", f"{m}_median", gname, float(np.median(vals)))
            )
            std = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0
            entries.append(StatEntry(f"desc:{gname}:{m}:std", f"{m}_std", gname, std))
        trapped = np.mean([fp.n_fraud_bought >= 1 for fp in members])
        entries.append(
            StatEntry(
                f"desc:{gname}:fraud_trap_fraction",
                "fraud_trap_fraction",
                gname,
                float(trapped),
            )
        )
    if "Novice" in groups and "Experienced" in groups:
        for m in DWELL_RATIO_METRICS:
            nov = np.mean([getattr(fp, m) for fp in groups["Novice"]])
            exp = np.mean([getattr(fp, m) for fp in groups["Experienced"]])
            if nov > 0:
                entries.append(
                    StatEntry(
                        f"desc:ratio:{m}:experienced_over_novice",
                        f"{m}_ratio_experienced_over_novice",
                        "Experienced/Novice",
                        float(exp / nov),
                    )
                )
    return entries


def welch_t_test(group_a, group_b) -> tuple[float, float, float]:
    """Welch's unequal-variance t-test, two-sided.

    Returns (t, degrees of freedom, p). The p-value comes from the regularized
    incomplete beta function I_x(df/2, 1/2) with x = df / (df + t^2), which is
    the survival mass of the t distribution on both tails.
    """
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("welch_t_test needs at least 2 observations per group")
    va, vb = a.var(ddof=1), b.var(ddof=1)
    na, nb = len(a), len(b)
    if va == 0.0 and vb == 0.0:
        if a.mean() == b.mean():
            # Both constant and equal: the t = 0 branch.
            return 0.0, float(na + nb - 2), 1.0
        raise ValueError("zero variance in both groups with unequal means")
    se2 = va / na + vb / nb
    t = float((a.mean() - b.mean()) / np.sqrt(se2))
    df = float(se2**2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1)))
    if t == 0.0:
        return 0.0, df, 1.0
    p = float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return t, df, min(max(p, 0.0), 1.0)
