import math

import numpy as np
import pytest
from scipy import stats as scipy_stats

from fraudsim.analytics import (
    CohortSpec,
    CohortSpecError,
    build_report,
    default_cohort_spec,
    descriptive_stats,
    generate_cohort,
    welch_t_test,
    write_report,
)
from fraudsim.session import DigitalFootprint


class TestGenerateCohort:
    def test_default_composition(self, cohort):
        assert len(cohort) == 33
        assert sum(1 for fp in cohort if fp.label == "Novice") == 16
        assert sum(1 for fp in cohort if fp.label == "Experienced") == 17

    def test_market_dwell_calibration(self, cohort):
        nov = np.mean([fp.t_market_page for fp in cohort if fp.label == "Novice"])
        exp = np.mean([fp.t_market_page for fp in cohort if fp.label == "Experienced"])
        assert 1.5 <= exp / nov <= 2.5

    def test_empty_cohort(self):
        spec = default_cohort_spec()
        spec.n_total, spec.n_novice, spec.n_experienced = 0, 0, 0
        assert generate_cohort(spec) == []

    def test_determinism(self):
        a = generate_cohort(default_cohort_spec(seed=7))
        b = generate_cohort(default_cohort_spec(seed=7))
        assert [fp.to_dict() for fp in a] == [fp.to_dict() for fp in b]

    def test_footprint_invariants_hold(self, cohort):
        for fp in cohort:
            fp.validate()
            for name in ("n_fake_bought", "n_fraud_bought", "n_untrusted_read"):
                assert isinstance(getattr(fp, name), int)

    def test_mismatched_sizes_rejected(self):
        spec = default_cohort_spec()
        spec.n_novice = 10
        with pytest.raises(CohortSpecError):
            generate_cohort(spec)

    def test_missing_metric_rejected(self):
        spec = default_cohort_spec()
        spec.metrics.pop("age")
        with pytest.raises(CohortSpecError):
            generate_cohort(spec)


class TestDescriptiveStats:
    def test_novice_trap_fraction_calibrated(self, cohort):
        entries = {e.id: e for e in descriptive_stats(cohort)}
        assert entries["desc:Novice:fraud_trap_fraction"].value >= 0.7

    def test_single_user_flagged_degenerate(self):
        fp = DigitalFootprint(age=30, label="Novice")
        entries = descriptive_stats([fp])
        by_id = {e.id: e for e in entries}
        assert by_id["desc:Novice:degenerate"].value == 1.0
        assert by_id["desc:Novice:age:std"].value == 0.0

    def test_unlabeled_footprints_form_single_group(self):
        fps = [DigitalFootprint(age=a) for a in (20, 30, 40)]
        entries = descriptive_stats(fps)
        groups = {e.group for e in entries}
        assert groups == {"all"}

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            descriptive_stats([])


class TestWelchTTest:
    def test_identical_groups(self):
        t, df, p = welch_t_test([1, 2, 3], [1, 2, 3])
        assert t == 0.0
        assert p == 1.0

    def test_hand_computed_textbook_case(self):
        # means 2.5 / 12.5, each sample variance 5/3:
        # t = -10 / sqrt(5/6) = -sqrt(120); Welch-Satterthwaite df = 6 exactly.
        t, df, p = welch_t_test([1, 2, 3, 4], [11, 12, 13, 14])
        assert t == pytest.approx(-math.sqrt(120), abs=1e-12)
        assert df == pytest.approx(6.0, abs=1e-12)
        # independent oracle for the two-sided p: scipy's t distribution
        assert p == pytest.approx(2 * scipy_stats.t.sf(math.sqrt(120), 6), rel=1e-10)

    def test_both_constant_equal_is_p_one(self):
        t, _, p = welch_t_test([5.0, 5.0], [5.0, 5.0])
        assert (t, p) == (0.0, 1.0)

    def test_both_constant_unequal_rejected(self):
        with pytest.raises(ValueError):
            welch_t_test([5.0, 5.0], [7.0, 7.0])

    def test_undersized_group_rejected(self):
        with pytest.raises(ValueError):
            welch_t_test([1.0], [1.0, 2.0])

    def test_symmetry(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(0, 1, 12), rng.normal(1, 2, 9)
        t1, df1, p1 = welch_t_test(a, b)
        t2, df2, p2 = welch_t_test(b, a)
        assert t1 == pytest.approx(-t2, abs=1e-12)
        assert df1 == pytest.approx(df2, abs=1e-12)
        assert p1 == pytest.approx(p2, abs=1e-12)

    def test_p_decreases_with_separation(self):
        rng = np.random.default_rng(1)
        base = rng.normal(0, 1, 20)
        other = rng.normal(0, 1, 20)
        ps = [welch_t_test(base, other + shift)[2] for shift in (0.5, 1.0, 2.0, 4.0)]
        assert all(ps[i] > ps[i + 1] for i in range(len(ps) - 1))

    def test_p_always_in_unit_interval(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            a = rng.normal(rng.uniform(-5, 5), rng.uniform(0.1, 3), rng.integers(2, 30))
            b = rng.normal(rng.uniform(-5, 5), rng.uniform(0.1, 3), rng.integers(2, 30))
            _, _, p = welch_t_test(a, b)
            assert 0.0 <= p <= 1.0


class TestBuildReport:
    def test_narrative_carries_trap_fraction(self, cohort):
        report = build_report(cohort, cohort_id="c42", generated_at="2026-01-01T00:00:00Z")
        trap = report.find("desc:Novice:fraud_trap_fraction")
        assert trap.value >= 0.7
        texts = [n.text for n in report.narrative]
        assert any("bought at least one manipulated stock" in t for t in texts)
        assert any("times as long on the market page" in t for t in texts)

    def test_dwell_ratio_in_range(self, cohort):
        report = build_report(cohort, generated_at="x")
        ratio = report.find("desc:ratio:t_market_page:experienced_over_novice")
        assert 1.5 <= ratio.value <= 2.5

    def test_single_group_report_valid(self):
        fps = [DigitalFootprint(age=a, label="Novice", n_fraud_bought=1) for a in (20, 25, 30)]
        report = build_report(fps, generated_at="x")
        assert report.inferential == []
        report.validate()
        assert len(report.narrative) >= 1

    def test_narrative_references_resolve(self, cohort):
        report = build_report(cohort, generated_at="x")
        known = report.entry_ids()
        for n in report.narrative:
            assert n.entry_id in known

    def test_no_unresolved_template_tokens(self, cohort):
        report = build_report(cohort, generated_at="x")
        rendered = report.to_text() + report.to_json()
        assert "{" not in report.to_text().split("Findings")[1].split("Group means")[0]
        for n in report.narrative:
            assert "{" not in n.text and "}" not in n.text

    def test_byte_identical_with_fixed_timestamp(self, cohort):
        a = build_report(cohort, generated_at="2026-01-01T00:00:00Z").to_json()
        b = build_report(cohort, generated_at="2026-01-01T00:00:00Z").to_json()
        assert a == b

    def test_predicts_missing_labels_with_model(self, cohort, pipeline_model):
        unlabeled = [DigitalFootprint.from_dict({**fp.to_dict(), "label": None}) for fp in cohort]
        report = build_report(unlabeled, model=pipeline_model, generated_at="x")
        groups = {e.group for e in report.descriptive if e.name == "group_size"}
        assert groups == {"Novice", "Experienced"}

    def test_write_report_outputs(self, cohort, tmp_path):
        report = build_report(cohort, generated_at="2026-01-01T00:00:00Z")
        written = write_report(report, tmp_path / "out")
        names = {p.name for p in written}
        assert {"report.json", "report.txt", "descriptive.csv"} <= names
        assert any(p.suffix == ".png" for p in written)
        for p in written:
            assert p.exists() and p.stat().st_size > 0
