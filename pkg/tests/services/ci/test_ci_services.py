import numpy as np
import pytest

from constants.constraint_kind import ConstraintKind

from dtos.configurations.scm import ScmSamplerConfigurationDTO

from errors.bad_input_error import BadInputError
from errors.degenerate_input_error import DegenerateInputError
from errors.insufficient_sample_error import InsufficientSampleError

from models.scm import Dataset, Experiment

from services.ci.constraints import ConstraintService, constraint_queries
from services.ci.test import CITestService
from services.scm.sample import ScmSamplerService
from services.scm.setup import ExperimentSetupService
from services.scm.simulate import DataSimulationService

from utilities.random import RandomUtility

ci_service = CITestService()
constraint_service = ConstraintService()


def test_partial_correlation_examples(build_exact_datasets, chain_scm):
    assert ci_service.partial_correlation(np.eye(4), 0, 3, [1, 2]) == 0.0
    assert ci_service.partial_correlation(np.array([[1.0, 0.5], [0.5, 1.0]]), 0, 1) == pytest.approx(0.5)

    (chain,) = build_exact_datasets(chain_scm, [[]])
    assert ci_service.partial_correlation(chain.exact, 0, 2, [1]) == pytest.approx(0.0, abs=1e-12)
    assert abs(ci_service.partial_correlation(chain.exact, 0, 2)) > 0.1


def test_partial_correlation_rejects_singular_block():
    covariance = np.array([[1.0, 0.2, 1.0], [0.2, 1.0, 0.2], [1.0, 0.2, 1.0]])
    with pytest.raises(DegenerateInputError):
        ci_service.partial_correlation(covariance, 0, 1, [2])
    with pytest.raises(DegenerateInputError):
        ci_service.partial_correlation(np.zeros((2, 2)), 0, 1)


def test_ci_test_zero_correlation_is_independent():
    x = np.array([1, -1, 1, -1, 1, -1, 1, -1], dtype=float)
    y = np.array([1, 1, -1, -1, 1, 1, -1, -1], dtype=float)
    dataset = Dataset(experiment=Experiment.of(2), samples=np.column_stack([x, y]))
    p_value, independent = ci_service.ci_test(dataset, 0, 1, (), 0.05)
    assert p_value == pytest.approx(1.0)
    assert independent


def test_ci_test_duplicated_column_is_dependent():
    x = RandomUtility(0).generator(0).normal(size=50)
    dataset = Dataset(experiment=Experiment.of(2), samples=np.column_stack([x, x]))
    p_value, independent = ci_service.ci_test(dataset, 0, 1, (), 0.05)
    assert p_value == pytest.approx(0.0, abs=1e-12)
    assert not independent


def test_ci_test_duplicated_column_given_others_is_dependent():
    rng = RandomUtility(0).generator(1)
    x, z = rng.normal(size=200), rng.normal(size=200)
    dataset = Dataset(experiment=Experiment.of(3), samples=np.column_stack([x + z, x + z, z]))
    p_value, independent = ci_service.ci_test(dataset, 0, 1, [2], 0.05)
    assert p_value == 0.0
    assert not independent


def test_ci_test_vanishing_residual_is_degenerate():
    rng = RandomUtility(0).generator(2)
    x, z = rng.normal(size=200), rng.normal(size=200)
    # x0 is a copy of the conditioning variable
    dataset = Dataset(experiment=Experiment.of(3), samples=np.column_stack([z, x, z]))
    with pytest.raises(DegenerateInputError):
        ci_service.ci_test(dataset, 0, 1, [2], 0.05)


def test_ci_test_preconditions():
    with pytest.raises(InsufficientSampleError):
        ci_service.ci_test(Dataset(experiment=Experiment.of(3), samples=np.ones((4, 3))), 0, 1, [2], 0.05)
    with pytest.raises(BadInputError):
        ci_service.ci_test(Dataset(experiment=Experiment.of(2), exact=np.eye(2)), 0, 1, (), 0.05)


@pytest.mark.parametrize("p_value, expected", [(0.05, 0.0), (1.0, 2.9957), (1e-6, 10.8198)])
def test_constraint_weight(p_value, expected):
    assert ci_service.constraint_weight(p_value, 0.05) == pytest.approx(expected, abs=1e-4)


def test_constraint_weight_clamps_zero_p_value():
    assert np.isfinite(ci_service.constraint_weight(0.0, 0.05))


def test_constraint_queries_count():
    assert len(list(constraint_queries(5, 3))) == 80
    assert len(list(constraint_queries(5, 0))) == 10
    assert len(list(constraint_queries(5))) == 80


def test_enumerate_constraints(two_cycle_scm):
    assert len(constraint_service.enumerate_constraints([], 0.05)) == 0

    rng = RandomUtility(2).generator(0)
    simulation_service = DataSimulationService()
    scm = two_cycle_scm
    datasets = [simulation_service.sample_data(scm, Experiment.of(2, j), 500, rng) for j in ([], [0])]
    constraints = constraint_service.enumerate_constraints(datasets, 0.05)
    assert len(constraints) == 2
    assert all(constraint.weight >= 0 for constraint in constraints)
    assert constraints.alpha == 0.05
    assert [constraint.is_independence for constraint in constraints] == [False, False]


def test_enumerate_constraints_rejects_exact_data():
    with pytest.raises(BadInputError):
        constraint_service.enumerate_constraints([Dataset(experiment=Experiment.of(2), exact=np.eye(2))], 0.05)


def test_enumerate_constraints_skips_failed_tests():
    tiny = Dataset(experiment=Experiment.of(3), samples=RandomUtility(0).generator(0).normal(size=(4, 3)))
    # four samples only allow empty conditioning sets
    constraints = constraint_service.enumerate_constraints([tiny], 0.05)
    assert len(constraints) == 3
    assert all(not constraint.s for constraint in constraints)


def test_oracle_constraints(build_scm, chain_scm):
    edgeless = constraint_service.oracle_constraints(build_scm(5), [Experiment.of(5)], max_cond=3)
    assert len(edgeless) == 80
    assert all(constraint.is_independence and constraint.weight == 1.0 for constraint in edgeless)

    chain = {constraint.key: constraint for constraint in constraint_service.oracle_constraints(chain_scm, [Experiment.of(3)])}
    assert chain[(0, 0, 2, (1,))].kind == ConstraintKind.INDEPENDENT
    assert chain[(0, 0, 1, ())].kind == ConstraintKind.DEPENDENT


def test_covariance_constraints_match_oracle(random_scms, build_exact_datasets):
    setup = ExperimentSetupService().experiment_setup(23)
    dependent_gaps = []
    for scm in random_scms:
        datasets = build_exact_datasets(scm, [experiment.j for experiment in setup])
        oracle = constraint_service.oracle_constraints(scm, setup)
        for constraint in oracle:
            r = ci_service.partial_correlation(datasets[constraint.experiment_index].exact, constraint.i, constraint.j, constraint.s)
            if constraint.is_independence:
                assert abs(r) < 1e-9
            else:
                dependent_gaps.append(abs(r) > 1e-6)
    assert np.mean(dependent_gaps) >= 0.99


@pytest.mark.slow
def test_fisher_z_calibration():
    rng = RandomUtility(31).generator(0)
    rejections = 0
    trials = 1000
    for _ in range(trials):
        dataset = Dataset(experiment=Experiment.of(2), samples=rng.normal(size=(10000, 2)))
        rejections += not ci_service.ci_test(dataset, 0, 1, (), 0.05)[1]
    assert 0.025 <= rejections / trials <= 0.075


@pytest.mark.slow
def test_enumerated_verdicts_converge_to_oracle(random_scms):
    setup = ExperimentSetupService().experiment_setup(12)
    simulation_service = DataSimulationService()
    random_utility = RandomUtility(17)
    for scm_id, scm in enumerate(random_scms[:3]):
        rng = random_utility.cell_generator(scm_id, 12, 100000)
        datasets = [simulation_service.sample_data(scm, experiment, 100000, rng) for experiment in setup]
        found = {constraint.key: constraint.kind for constraint in constraint_service.enumerate_constraints(datasets, 0.05)}
        truth = {constraint.key: constraint.kind for constraint in constraint_service.oracle_constraints(scm, setup)}
        agreement = np.mean([found.get(key) == kind for key, kind in truth.items()])
        assert agreement >= 0.95


@pytest.mark.slow
def test_separation_implies_vanishing_partial_correlation_on_a_large_cohort(build_exact_datasets):
    random_utility = RandomUtility(seed=20240615)
    cohort = ScmSamplerService().sample_cohort(
        ScmSamplerConfigurationDTO(),
        [random_utility.scm_generator(scm_id) for scm_id in range(100)]
    )
    setup = ExperimentSetupService().experiment_setup(15)
    for scm in cohort:
        datasets = build_exact_datasets(scm, [experiment.j for experiment in setup])
        for constraint in constraint_service.oracle_constraints(scm, setup):
            if constraint.is_independence:
                exact = datasets[constraint.experiment_index].exact
                assert abs(ci_service.partial_correlation(exact, constraint.i, constraint.j, constraint.s)) < 1e-9
