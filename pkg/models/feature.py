from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

import pandas as pd

from constants.feature_type import FeatureType

from errors.bad_input_error import BadInputError

from models.graph import DirectedMixedGraph


@dataclass(frozen=True, order=True)
class Feature:
    """A directed edge ``source -> target`` or a bidirected edge ``{source, target}`` (source < target)."""

    feature_type: str
    source: int
    target: int

    def present_in(self, graph: DirectedMixedGraph) -> bool:
        if self.feature_type == FeatureType.DIRECTED:
            return graph.has_directed_edge(self.source, self.target)
        return graph.has_bidirected_edge(self.source, self.target)

    def __str__(self) -> str:
        arrow = "->" if self.feature_type == FeatureType.DIRECTED else "<->"
        return f"{self.source}{arrow}{self.target}"


@lru_cache(maxsize=None)
def all_features(n: int) -> Tuple[Feature, ...]:
    """Feature space in canonical order: directed pairs lexicographically, then bidirected pairs."""
    directed = [Feature(FeatureType.DIRECTED, source, target) for source in range(n) for target in range(n) if source != target]
    bidirected = [Feature(FeatureType.BIDIRECTED, i, j) for i in range(n) for j in range(i + 1, n)]
    return tuple(directed + bidirected)


def truth_labels(graph: DirectedMixedGraph) -> List[bool]:
    return [feature.present_in(graph) for feature in all_features(graph.n)]


def graph_from_labels(n: int, labels: List[bool]) -> DirectedMixedGraph:
    features = all_features(n)
    return DirectedMixedGraph.from_edges(
        n,
        directed=[(f.source, f.target) for f, present in zip(features, labels) if present and f.feature_type == FeatureType.DIRECTED],
        bidirected=[(f.source, f.target) for f, present in zip(features, labels) if present and f.feature_type == FeatureType.BIDIRECTED]
    )


@dataclass(frozen=True)
class FeatureScoreTable:
    """One confidence score per feature of an ``n``-node graph, tagged with the producing method."""

    n: int
    method: str
    scores: Tuple[float, ...]

    def __post_init__(self) -> None:

        scores = tuple(float(score) for score in self.scores)
        if len(scores) != len(all_features(self.n)):
            raise BadInputError(
                response_message=f"Score table for n={self.n} needs {len(all_features(self.n))} scores, got {len(scores)}.",
                response_key="error_incomplete_score_table"
            )
        object.__setattr__(self, "scores", scores)

    @classmethod
    def from_mapping(cls, n: int, method: str, scores: Dict[Feature, float]) -> "FeatureScoreTable":
        return cls(n=n, method=method, scores=tuple(scores.get(feature, 0.0) for feature in all_features(n)))

    @property
    def features(self) -> Tuple[Feature, ...]:
        return all_features(self.n)

    def score(self, feature: Feature) -> float:
        return self.scores[self.features.index(feature)]

    def items(self) -> Iterator[Tuple[Feature, float]]:
        return zip(self.features, self.scores)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "feature_type": [feature.feature_type for feature in self.features],
                "from": [feature.source for feature in self.features],
                "to": [feature.target for feature in self.features],
                "score": list(self.scores),
                "method": [self.method] * len(self.scores),
            }
        )

    @classmethod
    def from_frame(cls, n: int, frame: pd.DataFrame) -> "FeatureScoreTable":
        methods = frame["method"].unique()
        if len(methods) != 1:
            raise BadInputError(
                response_message="A score table holds the scores of exactly one method.",
                response_key="error_invalid_score_table"
            )
        scores = {
            Feature(str(feature_type), int(source), int(target)): float(score)
            for feature_type, source, target, score in zip(frame["feature_type"], frame["from"], frame["to"], frame["score"])
        }
        return cls.from_mapping(n, str(methods[0]), scores)
