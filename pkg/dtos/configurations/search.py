from dataclasses import dataclass

from constants.separation_mode import SeparationMode


@dataclass
class SearchConfigurationDTO:

    mode: str = SeparationMode.D_SEP
    exact_node_limit: int = 5
    time_budget_s: float = 60.0
    anneal_steps: int = 200000
    anneal_initial_temperature: float = 2.0
    anneal_final_temperature: float = 1e-3
    alpha_asp: float = 0.05
    t_asp: float = 0.0
