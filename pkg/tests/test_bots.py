import numpy as np
import pytest

from fraudsim.server import experienced_policy, novice_policy, run_bot_session
from fraudsim.server.bots import BotPolicy, policy_for
from fraudsim.session import fold_footprint


class TestPolicies:
    def test_action_probs_must_sum_to_one(self):
        with pytest.raises(ValueError):
            BotPolicy(
                archetype="NoviceBot", seed=0, age_low=20, age_high=25,
                market_dwell=(10, 2), stock_dwell=(10, 2),
                article_dwell=(10, 2), portfolio_dwell=(10, 2),
                action_probs={"read": 0.5, "stock": 0.3},
            )

    def test_policy_for_aliases(self):
        assert policy_for("novice", 1).archetype == "NoviceBot"
        assert policy_for("experienced", 1).archetype == "ExperiencedBot"
        with pytest.raises(ValueError):
            policy_for("whale", 1)


class TestBotRuns:
    def test_deterministic_event_log(self, scenario):
        a = run_bot_session(novice_policy(5), scenario)
        b = run_bot_session(novice_policy(5), scenario)
        assert [e.to_record() for e in a.events] == [e.to_record() for e in b.events]
        assert a.footprint.to_dict() == b.footprint.to_dict()

    def test_zero_action_policy_gives_empty_footprint(self, scenario):
        lazy = BotPolicy(
            archetype="NoviceBot", seed=3, age_low=30, age_high=30,
            market_dwell=(10, 2), stock_dwell=(10, 2),
            article_dwell=(10, 2), portfolio_dwell=(10, 2),
            action_probs={"idle": 1.0}, actions_per_tick=0,
        )
        result = run_bot_session(lazy, scenario)
        fp = result.footprint
        assert fp.age == 30
        for metric, value in fp.to_dict().items():
            if metric in ("age", "label", "session_id"):
                continue
            assert value == 0, metric

    def test_footprints_separable_by_archetype(self, scenario):
        nov = [run_bot_session(novice_policy(s), scenario).footprint for s in range(5)]
        exp = [run_bot_session(experienced_policy(s), scenario).footprint for s in range(5)]
        assert np.mean([f.t_market_page for f in exp]) > 1.6 * np.mean([f.t_market_page for f in nov])
        assert np.mean([f.n_untrusted_read for f in nov]) > np.mean([f.n_untrusted_read for f in exp])
        assert np.mean([f.n_trusted_read for f in exp]) > np.mean([f.n_trusted_read for f in nov])
        assert min(f.age for f in exp) > max(f.age for f in nov)

    def test_replay_matches_service_footprint(self, scenario):
        result = run_bot_session(experienced_policy(2), scenario)
        replayed = fold_footprint(result.events, user_age=result.age, session_id=result.session_id)
        assert replayed.to_dict() == result.footprint.to_dict()

    def test_bot_portfolio_accounting_sane(self, scenario):
        result = run_bot_session(novice_policy(7), scenario)
        view = result.service.portfolio_view(result.session_id)
        assert view["cash_cents"] >= 0
        assert view["xp"] >= 0
