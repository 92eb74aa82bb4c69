import pytest

from fraudsim.analytics import default_cohort_spec, generate_cohort
from fraudsim.personalize import PipelineConfig, build_training_table, train_pipeline
from fraudsim.simkit import default_scenario_config, generate_scenario


@pytest.fixture(scope="session")
def scenario():
    return generate_scenario(default_scenario_config(), seed=42)


@pytest.fixture(scope="session")
def cohort():
    return generate_cohort(default_cohort_spec())


@pytest.fixture(scope="session")
def cohort_table(cohort):
    return build_training_table(cohort)


@pytest.fixture(scope="session")
def pipeline_model(cohort_table):
    return train_pipeline(cohort_table, PipelineConfig(), seed=0)
