"""Calibrated synthetic cohorts of digital footprints.

Stands in for a human study population: every metric is drawn per archetype
from the distributions in a versioned YAML spec. Durations and age use a
floor-truncated normal; counts use Poisson draws clamped at the floor.
Two metrics are structural rather than drawn: n_articles_read is the sum of
its untrusted and trusted parts, and n_transactions is clamped up to the total
buy count, so every generated footprint satisfies the footprint invariants by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np
import yaml

from ..session.footprint import COUNT_METRICS, METRIC_NAMES, DigitalFootprint

NOVICE = "Novice"
EXPERIENCED = "Experienced"
GROUPS = (NOVICE, EXPERIENCED)

DERIVED_METRICS = ("n_articles_read",)


class CohortSpecError(ValueError):
    pass


@dataclass(frozen=True)
class MetricParams:
    mean: float
    spread: float
    floor: float


@dataclass
class CohortSpec:
    n_total: int = 33
    n_novice: int = 16
    n_experienced: int = 17
    seed: int = 42
    metrics: dict = field(default_factory=dict)  # metric -> {group -> MetricParams}

    def validate(self) -> None:
        if self.n_novice < 0 or self.n_experienced < 0:
            raise CohortSpecError("group sizes must be non-negative")
        if self.n_novice + self.n_experienced != self.n_total:
            raise CohortSpecError(
                f"n_novice + n_experienced = {self.n_novice + self.n_experienced} != n_total {self.n_total}"
            )
        for m in METRIC_NAMES:
            if m in DERIVED_METRICS:
                continue
            if m not in self.metrics:
                raise CohortSpecError(f"metric {m!r} missing from cohort spec")
            for g in GROUPS:
                p = self.metrics[m].get(g)
                if p is None:
                    raise CohortSpecError(f"metric {m!r} missing group {g!r}")
                if p.mean < 0 or p.spread < 0 or p.floor < 0:
                    raise CohortSpecError(f"metric {m!r}/{g}: negative parameter")

    @classmethod
    def from_dict(cls, doc: dict) -> "CohortSpec":
        if doc.get("version") != 1:
            raise CohortSpecError(f"unsupported cohort spec version: {doc.get('version')!r}")
        metrics = {}
        for m, groups in (doc.get("metrics") or {}).items():
            metrics[m] = {}
            for g, p in groups.items():
                key = g.capitalize()
                metrics[m][key] = MetricParams(
                    mean=float(p["mean"]),
                    spread=float(p.get("spread", 0.0)),
                    floor=float(p.get("floor", 0.0)),
                )
        spec = cls(
            n_total=int(doc.get("n_total", 33)),
            n_novice=int(doc.get("n_novice", 16)),
            n_experienced=int(doc.get("n_experienced", 17)),
            seed=int(doc.get("seed", 42)),
            metrics=metrics,
        )
        spec.validate()
        return spec


def load_cohort_spec(path: str) -> CohortSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return CohortSpec.from_dict(yaml.safe_load(fh))


def default_cohort_spec(seed: int | None = None) -> CohortSpec:
    text = resources.files("fraudsim.data").joinpath("cohort_default.yaml").read_text("utf-8")
    spec = CohortSpec.from_dict(yaml.safe_load(text))
    if seed is not None:
        spec.seed = seed
    return spec


def _draw(rng: np.random.Generator, metric: str, p: MetricParams) -> float | int:
    if metric in COUNT_METRICS:
        return int(max(p.floor, rng.poisson(p.mean)))
    return float(max(p.floor, rng.normal(p.mean, p.spread)))


def generate_cohort(spec: CohortSpec) -> list[DigitalFootprint]:
    """Draw the labeled cohort; deterministic under spec.seed."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    cohort: list[DigitalFootprint] = []
    labels = [NOVICE] * spec.n_novice + [EXPERIENCED] * spec.n_experienced
    for i, label in enumerate(labels):
        values: dict = {}
        for m in METRIC_NAMES:
            if m in DERIVED_METRICS:
                continue
            values[m] = _draw(rng, m, spec.metrics[m][label])
        values["n_articles_read"] = values["n_untrusted_read"] + values["n_trusted_read"]
        bought = values["n_fake_bought"] + values["n_fraud_bought"] + values["n_real_bought"]
        values["n_transactions"] = max(values["n_transactions"], bought)
        fp = DigitalFootprint(label=label, session_id=f"synth-{i:04d}", **values)
        fp.validate()
        cohort.append(fp)
    return cohort
