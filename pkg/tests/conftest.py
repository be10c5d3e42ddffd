import numpy as np
import pytest

from dtos.configurations.llc import LlcConfigurationDTO
from dtos.configurations.scm import ScmSamplerConfigurationDTO
from dtos.configurations.search import SearchConfigurationDTO

from models.graph import DirectedMixedGraph
from models.scm import Dataset, Experiment, LinearScm

from services.scm.model import LinearScmService
from services.scm.sample import ScmSamplerService

from utilities.random import RandomUtility


def make_scm(n, directed=None, confounded=None):
    """``directed`` maps (source, target) to a coefficient, ``confounded`` maps (i, j) to a noise covariance."""
    b = np.zeros((n, n))
    for (source, target), value in (directed or {}).items():
        b[target, source] = value
    sigma_e = np.eye(n)
    for (i, j), value in (confounded or {}).items():
        sigma_e[i, j] = sigma_e[j, i] = value
    return LinearScm(b=b, sigma_e=sigma_e)


def exact_datasets(scm, intervention_sets):
    scm_service = LinearScmService()
    datasets = []
    for intervened in intervention_sets:
        experiment = Experiment.of(scm.n, intervened)
        datasets.append(Dataset(experiment=experiment, exact=scm_service.analytic_covariance(scm, experiment)))
    return datasets


@pytest.fixture
def two_cycle_scm():
    # x1 = 0.5 x0 + e1, x0 = 0.3 x1 + e0
    return make_scm(2, directed={(0, 1): 0.5, (1, 0): 0.3})


@pytest.fixture
def chain_scm():
    return make_scm(3, directed={(0, 1): 0.5, (1, 2): 0.5})


@pytest.fixture
def chain_graph():
    return DirectedMixedGraph.from_edges(3, directed=[(0, 1), (1, 2)])


@pytest.fixture(scope="session")
def random_scms():
    random_utility = RandomUtility(seed=20240601)
    return ScmSamplerService().sample_cohort(
        ScmSamplerConfigurationDTO(),
        [random_utility.scm_generator(scm_id) for scm_id in range(12)]
    )


@pytest.fixture
def exact_llc_config():
    return LlcConfigurationDTO(penalty_lambda=0.0)


@pytest.fixture
def search_config():
    return SearchConfigurationDTO(time_budget_s=600.0)


@pytest.fixture
def build_scm():
    return make_scm


@pytest.fixture
def build_exact_datasets():
    return exact_datasets
