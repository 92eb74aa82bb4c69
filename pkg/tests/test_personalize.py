import numpy as np
import pytest

from fraudsim.mlcore import FeatureMatrix
from fraudsim.personalize import (
    EXPERIENCED_SUBTYPES,
    FeedbackBundle,
    GameDesignElement,
    InvestorType,
    PipelineConfig,
    PipelineError,
    PoolValidationError,
    build_training_table,
    default_knowledge_pool,
    feedback_loop,
    predict_type,
    select_resources,
    train_pipeline,
)
from fraudsim.personalize.types import ELEMENT_MOTIVATION, Motivation, all_type_keys, _parse_pool
from fraudsim.session import METRIC_NAMES, DigitalFootprint, EventKind, SessionEvent
from fraudsim.simkit.content import ScamTag


class TestInvestorType:
    def test_subtype_only_for_experienced(self):
        with pytest.raises(ValueError):
            InvestorType(value="Novice", experienced_subtype="Confident")

    def test_key_roundtrip(self):
        for key in all_type_keys():
            assert InvestorType.from_key(key).key() == key

    def test_unknown_subtype_rejected(self):
        with pytest.raises(ValueError):
            InvestorType(value="Experienced", experienced_subtype="Whale")


class TestGameDesignElements:
    def test_shared_elements_carry_both(self):
        shared = (
            GameDesignElement.QUESTS,
            GameDesignElement.CONTENT_UNLOCKING,
            GameDesignElement.PERFORMANCE_CONTINGENT_REWARDS,
        )
        for el in shared:
            assert ELEMENT_MOTIVATION[el] is Motivation.BOTH
        for el in GameDesignElement:
            assert el in ELEMENT_MOTIVATION

    def test_twelve_elements_total(self):
        assert len(GameDesignElement) == 12


class TestKnowledgePool:
    def test_default_pool_valid(self):
        pool = default_knowledge_pool()
        assert set(pool.entries) == set(all_type_keys())

    def test_novice_entry_contents(self):
        pool = default_knowledge_pool()
        entry = select_resources(pool, InvestorType(value="Novice"))
        assert entry.scams == (ScamTag.PENNY_STOCK_PUMP_AND_DUMP,)
        assert entry.difficulty == "Easy"

    def test_confident_gets_leaderboards(self):
        pool = default_knowledge_pool()
        entry = select_resources(
            pool, InvestorType(value="Experienced", experienced_subtype="Confident")
        )
        assert GameDesignElement.LEADERBOARDS in entry.elements

    def test_missing_type_rejected_at_load(self):
        doc = {"version": 1, "entries": {"Novice": {"elements": ["Points"], "scams": [], "difficulty": "Easy"}}}
        with pytest.raises(PoolValidationError):
            _parse_pool(doc)

    def test_unknown_element_rejected(self):
        doc = {
            "version": 1,
            "entries": {
                k: {"elements": ["Medals"], "scams": [], "difficulty": "Easy"}
                for k in all_type_keys()
            },
        }
        with pytest.raises(PoolValidationError):
            _parse_pool(doc)


class TestBuildTrainingTable:
    def test_cohort_shape(self, cohort):
        table = build_training_table(cohort)
        assert table.values.shape == (33, 17)
        assert table.col_names == METRIC_NAMES
        assert int((table.labels == 0).sum()) == 16  # Novice is class 0

    def test_empty_rejected(self):
        with pytest.raises(PipelineError):
            build_training_table([])

    def test_csv_roundtrip(self, cohort, tmp_path):
        table = build_training_table(cohort)
        path = tmp_path / "cohort.csv"
        table.write_csv(path)
        back = FeatureMatrix.read_csv(path)
        assert back.equals(table)

    def test_unknown_label_rejected(self):
        fp = DigitalFootprint(age=30, label="Whale")
        with pytest.raises(PipelineError):
            build_training_table([fp, fp])


class TestTrainPipeline:
    def test_selected_features_match_calibration(self, pipeline_model):
        expected = {"age", "t_market_page", "n_untrusted_read", "n_fraud_bought", "n_trusted_read"}
        assert len(set(pipeline_model.selected_features) & expected) >= 4

    def test_zero_classifiers_rejected(self, cohort_table):
        with pytest.raises(PipelineError):
            train_pipeline(cohort_table, PipelineConfig(classifiers=()), seed=0)

    def test_unlabeled_rejected(self, cohort_table):
        unlabeled = FeatureMatrix(cohort_table.values, list(cohort_table.col_names))
        with pytest.raises(PipelineError):
            train_pipeline(unlabeled, PipelineConfig(), seed=0)

    def test_deterministic_serialization(self, cohort_table, pipeline_model):
        again = train_pipeline(cohort_table, PipelineConfig(), seed=0)
        assert again.to_json() == pipeline_model.to_json()

    def test_json_roundtrip_preserves_predictions(self, pipeline_model, cohort):
        from fraudsim.personalize import PipelineModel

        clone = PipelineModel.from_json(pipeline_model.to_json())
        assert clone.to_json() == pipeline_model.to_json()
        for fp in cohort[:5]:
            a = predict_type(pipeline_model, fp)
            b = predict_type(clone, fp)
            assert a == b


class TestPredictType:
    def test_tree_memorizes_training_row(self, cohort, cohort_table):
        config = PipelineConfig(classifiers=("DecisionTree",), tree_max_depth=None)
        model = train_pipeline(cohort_table, config, seed=0)
        fp = cohort[0]
        predicted, confidence = predict_type(model, fp, "DecisionTree")
        assert predicted.value == fp.label
        assert confidence == 1.0

    def test_archetypal_novice_via_mlp(self, pipeline_model):
        fp = DigitalFootprint(
            age=22, t_market_page=500, n_untrusted_read=9, n_trusted_read=1,
            n_articles_read=10, n_fraud_bought=3, n_transactions=5,
        )
        predicted, confidence = predict_type(pipeline_model, fp, "Perceptron")
        assert predicted.value == "Novice"
        assert confidence > 0.5

    def test_archetypal_experienced_via_mlp(self, pipeline_model):
        fp = DigitalFootprint(
            age=45, t_market_page=1300, n_untrusted_read=1, n_trusted_read=9,
            n_articles_read=10, n_fraud_bought=0, n_transactions=7,
        )
        predicted, _ = predict_type(pipeline_model, fp, "Perceptron")
        assert predicted.value == "Experienced"

    def test_all_zero_footprint_total(self, pipeline_model):
        fp = DigitalFootprint()
        for kind in ("DecisionTree", "GradientBoostedTrees", "Perceptron"):
            predicted, confidence = predict_type(pipeline_model, fp, kind)
            assert predicted.value in ("Novice", "Experienced")
            assert 0.0 <= confidence <= 1.0

    def test_unknown_kind_rejected(self, pipeline_model):
        with pytest.raises(PipelineError):
            predict_type(pipeline_model, DigitalFootprint(), "SupportVectors")


def _novice_events(n):
    events = []
    t = 0.0
    for i in range(n // 2):
        events.append(SessionEvent("s", 0, t, EventKind.READ_ARTICLE_START,
                                   {"article_id": f"a{i}", "sentiment": "Positive", "source_trust": "Untrusted"}))
        t += 30
        events.append(SessionEvent("s", 0, t, EventKind.READ_ARTICLE_END,
                                   {"article_id": f"a{i}", "sentiment": "Positive", "source_trust": "Untrusted"}))
        t += 5
    return events[:n]


def _experienced_events(n):
    events = []
    t = 10_000.0
    i = 0
    while len(events) < n:
        events.append(SessionEvent("s", 0, t, EventKind.PAGE_ENTER, {"page": "market"}))
        t += 120
        events.append(SessionEvent("s", 0, t, EventKind.PAGE_LEAVE, {"page": "market"}))
        t += 5
        events.append(SessionEvent("s", 0, t, EventKind.READ_ARTICLE_START,
                                   {"article_id": f"b{i}", "sentiment": "Neutral", "source_trust": "Trusted"}))
        t += 40
        events.append(SessionEvent("s", 0, t, EventKind.READ_ARTICLE_END,
                                   {"article_id": f"b{i}", "sentiment": "Neutral", "source_trust": "Trusted"}))
        t += 5
        i += 1
    return events[:n]


class TestFeedbackLoop:
    def test_stable_log_emits_single_bundle(self, pipeline_model):
        pool = default_knowledge_pool()
        bundles = list(feedback_loop(pipeline_model, _novice_events(60), pool, user_age=22))
        assert len(bundles) == 1
        assert isinstance(bundles[0], FeedbackBundle)

    def test_empty_log_emits_initial_bundle(self, pipeline_model):
        pool = default_knowledge_pool()
        bundles = list(feedback_loop(pipeline_model, [], pool, user_age=30))
        assert len(bundles) == 1

    def test_crossing_log_emits_two_bundles(self, pipeline_model):
        pool = default_knowledge_pool()
        # Young user whose behavior drifts experienced: the initial bundle and
        # the novice-like phase agree, then the drift triggers exactly one more.
        events = _novice_events(50) + _experienced_events(150)
        bundles = list(
            feedback_loop(pipeline_model, events, pool, user_age=22, every=25)
        )
        types = [b.predicted_type.value for b in bundles]
        assert types == ["Novice", "Experienced"]

    def test_malformed_events_skipped_and_counted(self, pipeline_model):
        pool = default_knowledge_pool()
        health = {}
        events = [{"nonsense": True}, 42] + [e.to_record() for e in _novice_events(4)]
        bundles = list(
            feedback_loop(pipeline_model, events, pool, user_age=22, health=health)
        )
        assert health["malformed"] == 2
        assert len(bundles) >= 1

    def test_bundle_provenance(self, pipeline_model):
        pool = default_knowledge_pool()
        for events in ([], _novice_events(30), _experienced_events(60)):
            for bundle in feedback_loop(pipeline_model, events, pool, user_age=30):
                entry = pool.entries[bundle.predicted_type.key()]
                assert bundle.elements == entry.elements
                assert bundle.scams == entry.scams
                assert bundle.difficulty == entry.difficulty
