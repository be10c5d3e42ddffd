from dataclasses import dataclass
from typing import Optional


@dataclass
class CITestConfigurationDTO:

    alpha: float = 0.05
    # None scans conditioning sets up to n - 2, i.e. every set
    max_cond: Optional[int] = None
