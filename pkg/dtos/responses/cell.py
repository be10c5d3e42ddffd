from dataclasses import dataclass, field
from typing import List, Optional

from dataclasses_json import dataclass_json

from constants.cell_status import CellStatus


@dataclass_json
@dataclass
class CellResultDTO:
    """Outcome of one method on one (SCM, setup, dataset size) cell; ``size`` None is infinite."""

    scm_id: int
    setup_id: int
    size: Optional[int]
    method: str
    scores: List[float] = field(default_factory=list)
    predictions: List[bool] = field(default_factory=list)
    truth: List[bool] = field(default_factory=list)
    accuracy: Optional[float] = None
    runtime_s: float = 0.0
    certified: bool = True
    n_failed_features: int = 0
    n_rows: int = 0
    status: str = CellStatus.OK
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.status == CellStatus.FAILED
