"""Regulator-facing insight reports.

A report is descriptive aggregates + inferential tests + templated narrative
sentences, each sentence bound to the id of the entry it cites. Output is a
JSON document, a plain-text rendering, a delimited stats table and a set of
figures (see write_report).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..session.footprint import METRIC_NAMES, DigitalFootprint
from .stats import StatEntry, TestEntry, descriptive_stats, welch_t_test

REPORT_SCHEMA = "insight-report/v1"


@dataclass(frozen=True)
class NarrativeEntry:
    text: str
    entry_id: str

    def to_dict(self) -> dict:
        return {"text": self.text, "entry_id": self.entry_id}


@dataclass
class InsightReport:
    cohort_id: str
    generated_at: str
    descriptive: list[StatEntry] = field(default_factory=list)
    inferential: list[TestEntry] = field(default_factory=list)
    narrative: list[NarrativeEntry] = field(default_factory=list)

    def entry_ids(self) -> set[str]:
        return {e.id for e in self.descriptive} | {t.id for t in self.inferential}

    def validate(self) -> None:
        known = self.entry_ids()
        dangling = [n.entry_id for n in self.narrative if n.entry_id not in known]
        if dangling:
            raise ValueError(f"narrative references unknown entries: {dangling}")

    def find(self, entry_id: str):
        for e in self.descriptive:
            if e.id == entry_id:
                return e
        for t in self.inferential:
            if t.id == entry_id:
                return t
        return None

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "cohort_id": self.cohort_id,
            "generated_at": self.generated_at,
            "descriptive": [e.to_dict() for e in self.descriptive],
            "inferential": [t.to_dict() for t in self.inferential],
            "narrative": [n.to_dict() for n in self.narrative],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [
            f"Insight report for cohort {self.cohort_id}",
            f"generated at {self.generated_at}",
            "",
            "Findings",
            "--------",
        ]
        for n in self.narrative:
            lines.append(f"  * {n.text}  [{n.entry_id}]")
        lines += ["", "Group means", "-----------"]
        groups = sorted({e.group for e in self.descriptive if e.name.endswith("_mean")})
        for g in groups:
            lines.append(f"  {g}:")
            for e in self.descriptive:
                if e.group == g and e.name.endswith("_mean"):
                    lines.append(f"    {e.name[:-5]:.<26} {e.value:.2f}")
        if self.inferential:
            lines += ["", "Welch tests (two-sided)", "-----------------------"]
            for t in self.inferential:
                lines.append(
                    f"  {t.metric:<22} t={t.statistic:+.3f}  df={t.df:.1f}  p={t.p_value:.4g}"
                )
        return "\n".join(lines) + "\n"


def _now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def build_report(
    footprints: list[DigitalFootprint],
    model=None,
    cohort_id: str = "cohort",
    generated_at: str | None = None,
    classifier_kind: str = "Perceptron",
) -> InsightReport:
    """Assemble the insight report for a labeled cohort.

    Unlabeled footprints are labeled with the model's predictions when a
    pipeline model is supplied; with a single group the inferential section is
    empty but the report is still valid.
    """
    if not footprints:
        raise ValueError("build_report needs at least one footprint")
    if model is not None and any(fp.label is None for fp in footprints):
        from ..personalize.pipeline import predict_type

        footprints = [fp for fp in footprints]
        for fp in footprints:
            if fp.label is None:
                predicted, _ = predict_type(model, fp, classifier_kind)
                fp.label = predicted.value

    descriptive = descriptive_stats(footprints)
    by_id = {e.id: e for e in descriptive}

    groups: dict[str, list[DigitalFootprint]] = {}
    for fp in footprints:
        groups.setdefault(fp.label or "all", []).append(fp)

    inferential: list[TestEntry] = []
    if "Novice" in groups and "Experienced" in groups:
        nov, exp = groups["Novice"], groups["Experienced"]
        if len(nov) >= 2 and len(exp) >= 2:
            for m in METRIC_NAMES:
                a = [float(getattr(fp, m)) for fp in nov]
                b = [float(getattr(fp, m)) for fp in exp]
                try:
                    t, df, p = welch_t_test(a, b)
                except ValueError:
                    continue  # degenerate metric (both groups constant)
                inferential.append(
                    TestEntry(
                        id=f"welch:{m}",
                        test="welch_t_two_sided",
                        metric=m,
                        groups=("Novice", "Experienced"),
                        statistic=t,
                        df=df,
                        p_value=p,
                    )
                )

    narrative: list[NarrativeEntry] = []
    trap = by_id.get("desc:Novice:fraud_trap_fraction")
    size = by_id.get("desc:Novice:n")
    if trap and size:
        count = round(trap.value * size.value)
        narrative.append(
            NarrativeEntry(
                text=(
                    f"{count} of {int(size.value)} novice investors ({trap.value * 100:.0f}%) "
                    "bought at least one manipulated stock."
                ),
                entry_id=trap.id,
            )
        )
    ratio = by_id.get("desc:ratio:t_market_page:experienced_over_novice")
    if ratio:
        narrative.append(
            NarrativeEntry(
                text=(
                    f"Experienced investors spent {ratio.value:.1f} times as long on the "
                    "market page as novice investors."
                ),
                entry_id=ratio.id,
            )
        )
    untrusted = next((t for t in inferential if t.metric == "n_untrusted_read"), None)
    if untrusted:
        nov_mean = by_id["desc:Novice:n_untrusted_read:mean"].value
        exp_mean = by_id["desc:Experienced:n_untrusted_read:mean"].value
        narrative.append(
            NarrativeEntry(
                text=(
                    f"Novice investors read {nov_mean:.1f} untrusted articles on average "
                    f"versus {exp_mean:.1f} for experienced investors "
                    f"(p = {untrusted.p_value:.2g})."
                ),
                entry_id=untrusted.id,
            )
        )
    if not narrative:
        # Single-group fallback: cite the overall trap fraction.
        g = sorted(groups)[0]
        trap_all = by_id.get(f"desc:{g}:fraud_trap_fraction")
        if trap_all:
            narrative.append(
                NarrativeEntry(
                    text=(
                        f"{trap_all.value * 100:.0f}% of tracked investors bought at least "
                        "one manipulated stock."
                    ),
                    entry_id=trap_all.id,
                )
            )

    report = InsightReport(
        cohort_id=cohort_id,
        generated_at=generated_at or _now_iso(),
        descriptive=descriptive,
        inferential=inferential,
        narrative=narrative,
    )
    report.validate()
    return report


def write_report(report: InsightReport, outdir: str | Path, figures: bool = True) -> list[Path]:
    """Write report.json, report.txt, descriptive.csv and the figures.

    Returns the list of written paths.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    json_path = outdir / "report.json"
    json_path.write_text(report.to_json() + "\n", encoding="utf-8")
    written.append(json_path)

    txt_path = outdir / "report.txt"
    txt_path.write_text(report.to_text(), encoding="utf-8")
    written.append(txt_path)

    csv_path = outdir / "descriptive.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "name", "group", "value"])
        for e in report.descriptive:
            w.writerow([e.id, e.name, e.group, repr(e.value)])
    written.append(csv_path)

    if figures:
        from ..plotting import save_group_means_figure, save_trap_fraction_figure

        fig_dir = outdir / "figures"
        fig_dir.mkdir(exist_ok=True)
        written.append(save_group_means_figure(report, fig_dir / "group_means.png"))
        written.append(save_trap_fraction_figure(report, fig_dir / "fraud_trap.png"))
    return written
