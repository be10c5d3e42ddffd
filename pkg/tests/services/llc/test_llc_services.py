from dataclasses import replace

import numpy as np
import pytest

from constants.feature_type import FeatureType
from constants.setups import EXPERIMENTAL_SETUPS, PAIR_CONDITION_SETUPS
from constants.tolerance import Tolerance

from dtos.configurations.llc import LlcConfigurationDTO

from errors.bad_input_error import BadInputError
from errors.condition_error import ConditionError
from errors.convergence_error import ConvergenceError
from errors.degenerate_input_error import DegenerateInputError

from models.feature import Feature, truth_labels
from models.llc import column_index
from models.scm import Dataset, Experiment

from services.llc.discover import LlcDiscoveryService
from services.llc.effects import TotalEffectService
from services.llc.faithfulness import FaithfulnessService
from services.llc.noise import NoiseCovarianceService
from services.llc.system import LlcSystemService
from services.scm.model import LinearScmService
from services.scm.setup import ExperimentSetupService
from services.scm.simulate import DataSimulationService

from utilities.random import RandomUtility

effect_service = TotalEffectService()
system_service = LlcSystemService()
noise_service = NoiseCovarianceService()
faithfulness_service = FaithfulnessService()
discovery_service = LlcDiscoveryService()
setup_service = ExperimentSetupService()
scm_service = LinearScmService()


def setup_of(setup_id):
    return setup_service.experiment_setup(setup_id)


def sampled_datasets(scm, intervention_sets, m, seed):
    rng = RandomUtility(seed).generator(0)
    simulation_service = DataSimulationService()
    return [simulation_service.sample_data(scm, Experiment.of(scm.n, j), m, rng) for j in intervention_sets]


def test_total_effects(two_cycle_scm, build_exact_datasets):
    null, first, second = build_exact_datasets(two_cycle_scm, [[], [0], [1]])
    assert effect_service.estimate_total_effects(first).get(0, 1) == pytest.approx(0.5)
    assert effect_service.estimate_total_effects(second).get(1, 0) == pytest.approx(0.3)
    assert effect_service.estimate_total_effects(null).effects == {}


def test_total_effects_normalize_by_intervention_variance():
    covariance = np.array([[4.0, 2.0], [2.0, 2.0]])
    dataset = Dataset(experiment=Experiment.of(2, [0]), exact=covariance)
    assert effect_service.estimate_total_effects(dataset).get(0, 1) == pytest.approx(0.5)


def test_assemble_two_node_system(two_cycle_scm, build_exact_datasets):
    datasets = build_exact_datasets(two_cycle_scm, [[], [0], [1]])
    system = system_service.assemble_system([effect_service.estimate_total_effects(dataset) for dataset in datasets])
    assert system.t_matrix.shape == (2, 2)
    assert system.row_provenance == ((1, 0, 1), (2, 1, 0))
    b = np.linalg.solve(system.t_matrix, system.t_vector)
    assert b[column_index(1, 0, 2)] == pytest.approx(0.5, abs=1e-10)
    assert b[column_index(0, 1, 2)] == pytest.approx(0.3, abs=1e-10)


def test_single_unintervened_node_gives_identity_row(random_scms, build_exact_datasets):
    (dataset,) = build_exact_datasets(random_scms[0], [[0, 1, 2, 3]])
    system = system_service.assemble_system([effect_service.estimate_total_effects(dataset)])
    assert system.n_rows == 4
    for row, (_, i, u) in zip(system.t_matrix, system.row_provenance):
        assert row[column_index(u, i, 5)] == 1.0
        assert np.count_nonzero(row) == 1


def test_setup_row_count(random_scms, build_exact_datasets):
    datasets = build_exact_datasets(random_scms[0], EXPERIMENTAL_SETUPS[15])
    system = system_service.assemble_system([effect_service.estimate_total_effects(dataset) for dataset in datasets], setup_of(15))
    assert system.n_rows == 20


def test_assemble_system_rejects_misaligned_setup(two_cycle_scm, build_exact_datasets):
    datasets = build_exact_datasets(two_cycle_scm, [[], [0]])
    effects = [effect_service.estimate_total_effects(dataset) for dataset in datasets]
    with pytest.raises(BadInputError):
        system_service.assemble_system(effects, [Experiment.of(2), Experiment.of(2, [1])])
    with pytest.raises(BadInputError):
        system_service.assemble_system([])


def test_pair_condition():
    holds, missing = system_service.pair_condition(setup_of(0))
    assert not holds
    assert len(missing) == 20

    assert system_service.pair_condition(setup_of(15)) == (True, [])

    holds, missing = system_service.pair_condition(setup_of(11))
    assert not holds
    assert (1, 0) in missing


def test_covariance_condition():
    assert all(system_service.covariance_condition(setup_of(setup_id)) for setup_id in EXPERIMENTAL_SETUPS)
    assert not system_service.covariance_condition([Experiment.of(5, range(5))])
    assert system_service.covariance_condition([Experiment.of(5)])
    assert system_service.uncovered_pairs([Experiment.of(3, [0])]) == [(0, 1), (0, 2)]


def test_rank_matches_pair_condition(random_scms, build_exact_datasets):
    for scm in random_scms[:4]:
        for setup_id, intervention_sets in EXPERIMENTAL_SETUPS.items():
            datasets = build_exact_datasets(scm, intervention_sets)
            system = system_service.assemble_system([effect_service.estimate_total_effects(dataset) for dataset in datasets])
            assert system.has_full_column_rank() == (setup_id in PAIR_CONDITION_SETUPS)
            assert system_service.pair_condition(setup_of(setup_id))[0] == (setup_id in PAIR_CONDITION_SETUPS)


def test_exact_recovery(random_scms, build_exact_datasets, exact_llc_config):
    for scm in random_scms:
        for setup_id in PAIR_CONDITION_SETUPS:
            estimate = discovery_service.estimate(build_exact_datasets(scm, EXPERIMENTAL_SETUPS[setup_id]), exact_llc_config)
            assert estimate.full_rank
            assert np.abs(estimate.b_hat - scm.b).max() <= 1e-8
            assert np.abs(estimate.sigma_hat - scm.sigma_e).max() <= 1e-8


def test_noise_covariance_examples(two_cycle_scm, build_exact_datasets):
    null, first = build_exact_datasets(two_cycle_scm, [[], [0]])
    assert np.allclose(noise_service.estimate_noise_covariance(two_cycle_scm.b, [null]), two_cycle_scm.sigma_e, atol=1e-10)
    assert np.allclose(noise_service.estimate_noise_covariance(np.zeros((2, 2)), [null]), null.exact)
    assert np.allclose(
        noise_service.estimate_noise_covariance(np.zeros((2, 2)), [null, null]),
        noise_service.estimate_noise_covariance(np.zeros((2, 2)), [null])
    )
    zeroed = noise_service.estimate_noise_covariance(np.zeros((2, 2)), [null], zero_pairs=[(0, 1)])
    assert zeroed[0, 1] == zeroed[1, 0] == 0.0


def test_noise_covariance_needs_covariance_condition(two_cycle_scm, build_exact_datasets):
    (first,) = build_exact_datasets(two_cycle_scm, [[0]])
    with pytest.raises(ConditionError) as err:
        noise_service.estimate_noise_covariance(two_cycle_scm.b, [first])
    assert err.value.pair == (0, 0)


def test_faithfulness_chain(chain_scm, build_exact_datasets):
    constraints = faithfulness_service.faithfulness_constraints(build_exact_datasets(chain_scm, [[]]), 0.05)
    entries = dict(zip(constraints.zero_entries, constraints.provenance))
    assert set(entries) == {(0, 2), (2, 0)}
    assert all(tag[1] == 1 for tag in entries.values())
    assert constraints.sigma_zero_pairs == ((0, 2),)

    t_matrix, t_vector, _ = constraints.rows()
    assert t_matrix.shape == (2, 6)
    assert not t_vector.any()


def test_faithfulness_unreached_node(build_scm, build_exact_datasets):
    scm = build_scm(3, directed={(0, 1): 0.7})
    constraints = faithfulness_service.faithfulness_constraints(build_exact_datasets(scm, [[0]]), 0.05)
    assert (2, 1) in constraints.zero_entries
    assert (1, 0) not in constraints.zero_entries


def test_faithfulness_dense_dependence_emits_nothing():
    covariance = np.eye(4) + 0.5 * np.ones((4, 4))
    constraints = faithfulness_service.faithfulness_constraints([Dataset(experiment=Experiment.of(4), exact=covariance)], 0.05)
    assert constraints.zero_entries == ()
    assert constraints.sigma_zero_pairs == ()


def test_faithfulness_rows_are_sound(random_scms, build_exact_datasets):
    for scm in random_scms:
        for setup_id in (15, 23, 45):
            datasets = build_exact_datasets(scm, EXPERIMENTAL_SETUPS[setup_id])
            constraints = faithfulness_service.faithfulness_constraints(datasets, 0.05, setup_of(setup_id))
            for u, i in constraints.zero_entries:
                assert scm.b[u, i] == 0.0
            for i, j in constraints.sigma_zero_pairs:
                assert scm.sigma_e[i, j] == 0.0


def test_infinite_mode_support_matches_truth(random_scms, build_exact_datasets):
    for scm in random_scms[:6]:
        datasets = build_exact_datasets(scm, EXPERIMENTAL_SETUPS[45])
        table = discovery_service.llc_discover(datasets, setup_of(45), LlcConfigurationDTO())
        assert [score > 0 for score in table.scores] == truth_labels(scm_service.graph_of(scm))
        assert set(table.scores) <= {0.0, Tolerance.SCORE_CAP}


def test_bootstrap_is_deterministic(two_cycle_scm):
    datasets = sampled_datasets(two_cycle_scm, [[], [0], [1]], 300, seed=1)
    config = LlcConfigurationDTO(bootstrap_reps=10)
    first = discovery_service.llc_discover(datasets, None, config, RandomUtility(9).generator(1))
    second = discovery_service.llc_discover(datasets, None, config, RandomUtility(9).generator(1))
    assert first.scores == second.scores
    assert first.method == "llc_nf"


def test_bootstrap_scores_recover_two_cycle(two_cycle_scm):
    datasets = sampled_datasets(two_cycle_scm, [[], [0], [1]], 10000, seed=3)
    config = LlcConfigurationDTO(bootstrap_reps=100, penalty_lambda=1e-3)
    table = discovery_service.llc_discover(datasets, None, config, RandomUtility(3).generator(1))
    assert table.score(Feature(FeatureType.DIRECTED, 0, 1)) > config.z_threshold
    assert table.score(Feature(FeatureType.DIRECTED, 1, 0)) > config.z_threshold
    assert table.score(Feature(FeatureType.BIDIRECTED, 0, 1)) < config.z_threshold


def test_z_scores_of_constant_zero_estimates_are_zero():
    assert np.array_equal(discovery_service.z_scores(np.zeros((5, 3))), np.zeros(3))


def test_faithfulness_variant_is_named(two_cycle_scm):
    datasets = sampled_datasets(two_cycle_scm, [[], [0], [1]], 300, seed=4)
    table = discovery_service.llc_discover(datasets, None, LlcConfigurationDTO(bootstrap_reps=3, use_faithfulness=True))
    assert table.method == "llc_f"


@pytest.mark.parametrize("intervention_sets, overrides", [
    ([[0]], {}),
    ([[], [0]], {"penalty_lambda": -1.0}),
    ([[], [0]], {"bootstrap_reps": 1}),
])
def test_llc_discover_rejects_bad_input(two_cycle_scm, intervention_sets, overrides):
    datasets = sampled_datasets(two_cycle_scm, intervention_sets, 50, seed=0)
    with pytest.raises(BadInputError):
        discovery_service.llc_discover(datasets, None, replace(LlcConfigurationDTO(), **overrides))


def test_llc_discover_rejects_mixed_sizes(two_cycle_scm, build_exact_datasets):
    datasets = sampled_datasets(two_cycle_scm, [[]], 50, seed=0) + build_exact_datasets(two_cycle_scm, [[0]])
    with pytest.raises(BadInputError):
        discovery_service.llc_discover(datasets, None, LlcConfigurationDTO())


def test_solver_failure_names_the_resample(random_scms):
    datasets = sampled_datasets(random_scms[0], EXPERIMENTAL_SETUPS[15], 200, seed=6)
    config = LlcConfigurationDTO(bootstrap_reps=2, max_iter=1, penalty_lambda=1e-4)
    with pytest.raises(ConvergenceError) as err:
        discovery_service.llc_discover(datasets, None, config)
    assert err.value.resample_index == 0


def test_faithfulness_rows_on_observational_data(build_scm):
    # node 2 is isolated
    scm = build_scm(3, directed={(0, 1): 0.6})
    datasets = sampled_datasets(scm, [[]], 2000, seed=8)
    config = LlcConfigurationDTO(bootstrap_reps=3, use_faithfulness=True)
    assert faithfulness_service.faithfulness_constraints(datasets, config.alpha_llc).zero_entries
    table = discovery_service.llc_discover(datasets, None, config)
    assert table.method == "llc_f"
    directed = [score for feature, score in table.items() if feature.feature_type == FeatureType.DIRECTED]
    assert directed == [0.0] * 6


def test_degenerate_resample_names_the_resample(two_cycle_scm):
    null, intervened = sampled_datasets(two_cycle_scm, [[], [0]], 100, seed=2)
    samples = np.array(intervened.samples)
    samples[:, 0] = 1.0
    datasets = [null, Dataset(experiment=intervened.experiment, samples=samples)]
    with pytest.raises(DegenerateInputError) as err:
        discovery_service.llc_discover(datasets, None, LlcConfigurationDTO(bootstrap_reps=3))
    assert err.value.resample_index == 0
    assert err.value.response_message.startswith("Resample 0:")
