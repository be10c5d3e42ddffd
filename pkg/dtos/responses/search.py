from dataclasses import dataclass, field
from typing import Dict, List

from models.graph import DirectedMixedGraph


@dataclass
class SearchResultDTO:

    loss: float
    graph: DirectedMixedGraph
    certified: bool = True
    expanded: int = 0
    trace: List[Dict[str, float]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "loss": self.loss,
            "graph": self.graph.to_json(),
            "certified": self.certified,
            "expanded": self.expanded,
        }


@dataclass
class FeatureConfidenceDTO:

    score: float
    absent_loss: float
    present_loss: float
    certified_absent: bool = True
    certified_present: bool = True

    @property
    def certified(self) -> bool:
        return self.certified_absent and self.certified_present
