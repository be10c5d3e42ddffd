from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class ScmSectionDTO(BaseModel):

    model_config = ConfigDict(extra="forbid")

    n_nodes: Optional[int] = Field(default=None, ge=2)
    n_confounders: Optional[int] = Field(default=None, ge=0)
    max_in_degree: Optional[int] = Field(default=None, ge=0)
    coef_low: Optional[float] = Field(default=None, ge=0)
    coef_high: Optional[float] = Field(default=None, ge=0)
    confounder_low: Optional[float] = None
    confounder_high: Optional[float] = None
    require_cycle: Optional[bool] = None
    max_attempts: Optional[int] = Field(default=None, ge=1)


class CISectionDTO(BaseModel):

    model_config = ConfigDict(extra="forbid")

    alpha: Optional[float] = Field(default=None, gt=0, lt=1)
    max_cond: Optional[int] = Field(default=None, ge=0)


class LlcSectionDTO(BaseModel):

    model_config = ConfigDict(extra="forbid")

    penalty: Optional[str] = Field(default=None, pattern="^L[12]$")
    penalty_lambda: Optional[float] = Field(default=None, ge=0)
    alpha_llc: Optional[float] = Field(default=None, gt=0, lt=1)
    use_faithfulness: Optional[bool] = None
    bootstrap_reps: Optional[int] = Field(default=None, ge=2)
    z_threshold: Optional[float] = None
    tolerance: Optional[float] = Field(default=None, gt=0)
    max_iter: Optional[int] = Field(default=None, ge=1)


class SearchSectionDTO(BaseModel):

    model_config = ConfigDict(extra="forbid")

    mode: Optional[str] = Field(default=None, pattern="^(d_sep|sigma_sep)$")
    exact_node_limit: Optional[int] = Field(default=None, ge=0)
    time_budget_s: Optional[float] = Field(default=None, gt=0)
    anneal_steps: Optional[int] = Field(default=None, ge=0)
    anneal_initial_temperature: Optional[float] = Field(default=None, gt=0)
    anneal_final_temperature: Optional[float] = Field(default=None, gt=0)
    alpha_asp: Optional[float] = Field(default=None, gt=0, lt=1)
    t_asp: Optional[float] = None


class BenchSectionDTO(BaseModel):

    model_config = ConfigDict(extra="forbid")

    n_scms: Optional[int] = Field(default=None, ge=1)
    sizes: Optional[List[Union[int, str, None]]] = None
    setup_ids: Optional[List[int]] = None
    methods: Optional[List[str]] = None
    jobs: Optional[int] = Field(default=None, ge=1)
    record_runtime: Optional[bool] = None


class RunConfigRequestDTO(BaseModel):
    """JSON run configuration; every section overrides the bundled defaults, unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    out: Optional[str] = None
    profile: Optional[str] = None
    seed: Optional[int] = Field(default=None, ge=0)
    scm: ScmSectionDTO = Field(default_factory=ScmSectionDTO)
    ci: CISectionDTO = Field(default_factory=CISectionDTO)
    llc: LlcSectionDTO = Field(default_factory=LlcSectionDTO)
    search: SearchSectionDTO = Field(default_factory=SearchSectionDTO)
    bench: BenchSectionDTO = Field(default_factory=BenchSectionDTO)
