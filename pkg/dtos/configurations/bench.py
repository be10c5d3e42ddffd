from dataclasses import dataclass, field
from typing import List, Optional

from constants.method import Method
from constants.setups import EXPERIMENTAL_SETUPS

from dtos.configurations.ci import CITestConfigurationDTO
from dtos.configurations.llc import LlcConfigurationDTO
from dtos.configurations.scm import ScmSamplerConfigurationDTO
from dtos.configurations.search import SearchConfigurationDTO


@dataclass
class BenchConfigurationDTO:

    profile: str = "paper"
    n_scms: int = 150
    # None is the infinite dataset size
    sizes: List[Optional[int]] = field(default_factory=lambda: [1000, 10000, 100000, None])
    setup_ids: List[int] = field(default_factory=lambda: sorted(EXPERIMENTAL_SETUPS))
    methods: List[str] = field(default_factory=lambda: list(Method.ALL))
    seed: int = 0
    jobs: int = 1
    record_runtime: bool = False
    scm: ScmSamplerConfigurationDTO = field(default_factory=ScmSamplerConfigurationDTO)
    ci: CITestConfigurationDTO = field(default_factory=CITestConfigurationDTO)
    llc: LlcConfigurationDTO = field(default_factory=LlcConfigurationDTO)
    search: SearchConfigurationDTO = field(default_factory=SearchConfigurationDTO)
