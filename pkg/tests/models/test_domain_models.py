import numpy as np
import pandas as pd
import pytest

from constants.constraint_kind import ConstraintKind
from constants.feature_type import FeatureType

from errors.bad_input_error import BadInputError

from models.constraint import CiConstraint, ConstraintSet
from models.feature import Feature, FeatureScoreTable, all_features, graph_from_labels, truth_labels
from models.graph import DirectedMixedGraph, SeparationQuery, Walk
from models.llc import column_index, column_pair
from models.scm import Dataset, Experiment, LinearScm


def test_bidirected_edges_are_stored_smaller_index_first():
    graph = DirectedMixedGraph.from_edges(3, bidirected=[(2, 0), (0, 2)])
    assert graph.bidirected == frozenset({(0, 2)})
    assert graph.has_bidirected_edge(2, 0)


@pytest.mark.parametrize("directed, bidirected", [
    ([(1, 1)], []),
    ([], [(2, 2)]),
    ([(0, 3)], []),
    ([], [(-1, 0)]),
])
def test_invalid_edges_are_rejected(directed, bidirected):
    with pytest.raises(BadInputError):
        DirectedMixedGraph.from_edges(3, directed=directed, bidirected=bidirected)


def test_graph_masks_rebuild_the_same_graph():
    graph = DirectedMixedGraph.from_edges(4, directed=[(0, 1), (3, 2), (2, 3)], bidirected=[(1, 3)])
    assert DirectedMixedGraph.from_masks(4, graph.directed_mask, graph.bidirected_mask) == graph
    assert DirectedMixedGraph.from_json(graph.to_json()) == graph
    assert graph.parents(3) == [2]
    assert graph.spouses(3) == [1]
    assert graph.edge_count == 4


def test_walk_steps_must_connect():
    with pytest.raises(BadInputError):
        Walk(steps=(Walk.of(0, "->", 1).steps[0], Walk.of(2, "->", 3).steps[0]))
    assert Walk.of(0, "->", 1, "<->", 2).nodes == [0, 1, 2]


def test_separation_query_rejects_degenerate_queries():
    with pytest.raises(BadInputError):
        SeparationQuery(x=1, y=1)
    with pytest.raises(BadInputError):
        SeparationQuery(x=0, y=1, c=frozenset({1}))
    assert SeparationQuery(x=0, y=3, c=frozenset({1, 2})).c_mask == 0b110


def test_scm_rejects_self_loops_and_asymmetric_noise():
    with pytest.raises(BadInputError):
        LinearScm(b=np.eye(2), sigma_e=np.eye(2))
    with pytest.raises(BadInputError):
        LinearScm(b=np.zeros((2, 2)), sigma_e=np.array([[1.0, 0.3], [0.1, 1.0]]))
    with pytest.raises(BadInputError):
        LinearScm(b=np.zeros((2, 2)), sigma_e=np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_scm_arrays_are_read_only():
    scm = LinearScm(b=np.zeros((2, 2)), sigma_e=np.eye(2))
    with pytest.raises(ValueError):
        scm.b[0, 1] = 1.0


def test_experiment_partitions_nodes():
    experiment = Experiment.of(5, [3, 1, 3])
    assert experiment.j == (1, 3)
    assert experiment.u == (0, 2, 4)
    assert np.array_equal(experiment.u_matrix + experiment.j_matrix, np.eye(5))
    with pytest.raises(BadInputError):
        Experiment.of(3, [3])


def test_dataset_holds_exactly_one_representation():
    experiment = Experiment.of(2)
    with pytest.raises(BadInputError):
        Dataset(experiment=experiment)
    with pytest.raises(BadInputError):
        Dataset(experiment=experiment, samples=np.zeros((3, 2)), exact=np.eye(2))
    exact = Dataset(experiment=experiment, exact=np.eye(2))
    assert exact.is_infinite and exact.size is None
    finite = Dataset(experiment=experiment, samples=np.array([[1.0, 2.0], [3.0, 5.0], [0.0, 1.0]]))
    assert finite.size == 3
    assert finite.covariance() == pytest.approx(np.cov(finite.samples, rowvar=False, ddof=1))


def test_single_row_dataset_has_zero_covariance():
    dataset = Dataset(experiment=Experiment.of(3), samples=np.ones((1, 3)))
    assert np.array_equal(dataset.covariance(), np.zeros((3, 3)))


def test_constraint_is_canonicalized():
    constraint = CiConstraint(experiment_index=0, i=3, j=1, s=(4, 2, 2), kind=ConstraintKind.INDEPENDENT, weight=1.0)
    assert (constraint.i, constraint.j, constraint.s) == (1, 3, (2, 4))
    assert CiConstraint.from_json(constraint.to_json()) == constraint


def test_constraint_validation():
    with pytest.raises(BadInputError):
        CiConstraint(experiment_index=0, i=1, j=2, s=(1,), kind=ConstraintKind.DEPENDENT, weight=1.0)
    with pytest.raises(BadInputError):
        CiConstraint(experiment_index=0, i=1, j=2, s=(), kind="maybe", weight=1.0)
    with pytest.raises(BadInputError):
        CiConstraint(experiment_index=0, i=1, j=2, s=(), kind=ConstraintKind.DEPENDENT, weight=-1.0)


def test_constraint_set_rejects_duplicate_keys():
    first = CiConstraint(experiment_index=0, i=0, j=1, s=(), kind=ConstraintKind.INDEPENDENT, weight=1.0)
    second = CiConstraint(experiment_index=0, i=1, j=0, s=(), kind=ConstraintKind.DEPENDENT, weight=2.0)
    with pytest.raises(BadInputError):
        ConstraintSet(constraints=(first, second))


def test_feature_space_order():
    features = all_features(5)
    assert len(features) == 30
    assert features[0] == Feature(FeatureType.DIRECTED, 0, 1)
    assert features[19] == Feature(FeatureType.DIRECTED, 4, 3)
    assert features[20] == Feature(FeatureType.BIDIRECTED, 0, 1)
    assert features[-1] == Feature(FeatureType.BIDIRECTED, 3, 4)


def test_labels_rebuild_the_graph():
    graph = DirectedMixedGraph.from_edges(5, directed=[(0, 1), (1, 0), (4, 2)], bidirected=[(1, 3)])
    labels = truth_labels(graph)
    assert sum(labels) == 4
    assert graph_from_labels(5, labels) == graph


def test_score_table_frame_schema():
    table = FeatureScoreTable(n=3, method="llc_nf", scores=tuple(float(value) for value in range(9)))
    frame = table.to_frame()
    assert list(frame.columns) == ["feature_type", "from", "to", "score", "method"]
    assert len(frame) == 9
    assert list(frame["feature_type"]).count("bidir") == 3
    assert FeatureScoreTable.from_frame(3, frame) == table


def test_score_table_requires_every_feature():
    with pytest.raises(BadInputError):
        FeatureScoreTable(n=3, method="asp_d", scores=(1.0, 2.0))
    mixed = pd.DataFrame({"feature_type": ["dir", "dir"], "from": [0, 1], "to": [1, 0], "score": [1.0, 2.0], "method": ["a", "b"]})
    with pytest.raises(BadInputError):
        FeatureScoreTable.from_frame(2, mixed)


def test_column_layout_skips_the_diagonal():
    n = 5
    columns = [column_index(u, i, n) for u in range(n) for i in range(n) if u != i]
    assert columns == list(range(n * (n - 1)))
    assert all(column_pair(column_index(u, i, n), n) == (u, i) for u in range(n) for i in range(n) if u != i)
