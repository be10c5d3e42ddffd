from dataclasses import dataclass


@dataclass
class ScmSamplerConfigurationDTO:

    n_nodes: int = 5
    n_confounders: int = 2
    max_in_degree: int = 2
    coef_low: float = 0.1
    coef_high: float = 1.1
    confounder_low: float = 0.2
    confounder_high: float = 0.8
    require_cycle: bool = True
    max_attempts: int = 10000
