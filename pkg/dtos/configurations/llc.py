from dataclasses import dataclass

from constants.penalty import Penalty


@dataclass
class LlcConfigurationDTO:

    penalty: str = Penalty.L1
    penalty_lambda: float = 0.05
    alpha_llc: float = 0.05
    use_faithfulness: bool = False
    bootstrap_reps: int = 100
    z_threshold: float = 5.0
    tolerance: float = 1e-8
    max_iter: int = 10000
