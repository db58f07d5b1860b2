import math
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

FAMILIES = ('complete', 'cycle', 'er_critical', 'er_supercritical', 'random_regular')
Family = Literal['complete', 'cycle', 'er_critical', 'er_supercritical', 'random_regular']


class ErParams(BaseModel):
    """
    Erdos-Renyi parameters. Critical regime: p = p0 ln(N) / N with p0 > 1.
    Supercritical regime: fixed p.
    """
    n: int = Field(ge=1)
    regime: Literal['critical', 'supercritical']
    p0: Optional[float] = None
    p: Optional[float] = None

    @model_validator(mode='after')
    def _check_regime(self):
        if self.regime == 'critical':
            if self.p0 is None or self.p0 <= 1.0:
                raise ValueError("critical regime needs p0 > 1")
            if self.n < 2:
                raise ValueError("critical regime needs n >= 2")
            if self.derived_p > 1.0:
                raise ValueError(f"p0 ln(n)/n = {self.derived_p:.4g} exceeds 1")
        else:
            if self.p is None or not (0.0 <= self.p <= 1.0):
                raise ValueError("supercritical regime needs p in [0, 1]")
        return self

    @property
    def derived_p(self) -> float:
        if self.regime == 'critical':
            return self.p0 * math.log(self.n) / self.n
        return float(self.p)

    def with_n(self, n: int) -> "ErParams":
        return ErParams(n=n, regime=self.regime, p0=self.p0, p=self.p)


class WeightModel(BaseModel):
    """Edge-weight distribution; `student_t` is the heavy-tailed model (location + scale * t_df)."""
    kind: Literal['constant', 'gaussian', 'uniform', 'signed_bernoulli', 'student_t']
    c: float = 1.0
    mean: float = 0.0
    sd: float = 1.0
    lo: float = 0.0
    hi: float = 1.0
    p_plus: float = 0.5
    magnitude: float = 1.0
    df: float = 3.0

    @model_validator(mode='after')
    def _check_params(self):
        if self.kind in ('gaussian', 'student_t') and self.sd < 0:
            raise ValueError("sd must be nonnegative")
        if self.kind == 'uniform' and not self.lo <= self.hi:
            raise ValueError("uniform needs lo <= hi")
        if self.kind == 'signed_bernoulli':
            if not 0.0 <= self.p_plus <= 1.0:
                raise ValueError("p_plus must lie in [0, 1]")
            if self.magnitude < 0:
                raise ValueError("magnitude must be nonnegative")
        if self.kind == 'student_t' and self.df <= 0:
            raise ValueError("df must be positive")
        return self

    @classmethod
    def parse(cls, text: str) -> "WeightModel":
        """Parse 'kind' or 'kind:key=value,key=value' (e.g. 'gaussian:mean=1,sd=0.2')."""
        kind, _, rest = text.partition(':')
        params: Dict[str, Any] = {'kind': kind.strip()}
        for item in filter(None, (part.strip() for part in rest.split(','))):
            key, sep, value = item.partition('=')
            if not sep:
                raise ValueError(f"weight model parameter '{item}' is not key=value")
            params[key.strip()] = float(value)
        return cls(**params)

    def descriptor(self) -> Dict[str, Any]:
        keys = {
            'constant': ('c',),
            'gaussian': ('mean', 'sd'),
            'uniform': ('lo', 'hi'),
            'signed_bernoulli': ('p_plus', 'magnitude'),
            'student_t': ('mean', 'sd', 'df'),
        }[self.kind]
        return {'kind': self.kind, **{k: getattr(self, k) for k in keys}}


class AConstant(BaseModel):
    p0: float
    a: float
    residual: float


class DegreeTailParams(BaseModel):
    p0: float
    c: float
    beta: float
    beta_negative: bool
    # approximations printed alongside the derivation, kept for comparison
    stated_main_text: float
    stated_appendix: float

    def k_threshold(self, n: int) -> float:
        return self.c * self.p0 * math.log(n)


class DegreeTailResult(BaseModel):
    n: int
    p0: float
    c: float
    trials: int
    seed: int
    k_threshold: float
    fraction_within: float
    worst_max_degree: int
    union_bound: float
    beta: float


class LadderPoint(BaseModel):
    n: int
    p: float
    median_abs_dev: float
    trials: int
    disconnected: int


class ConcentrationResult(BaseModel):
    regime: str
    target: float
    ladder: List[LadderPoint]

    @property
    def trend(self) -> List[float]:
        return [point.median_abs_dev for point in self.ladder]

    @property
    def strictly_decreasing(self) -> bool:
        t = self.trend
        return all(b < a for a, b in zip(t, t[1:]))


class TightnessResult(BaseModel):
    n: int
    q: float
    p: float
    lower_bound: float
    upper_bound: float
    achieved_min: float
    achieved_max: float
    best_gap_lower: float
    best_gap_upper: float
    best_weights: List[float]
    best_weights_upper: List[float]
    evaluations: int


class TrialRecord(BaseModel):
    trial: int
    seed: int
    graph_stats: Dict[str, Any]
    spectral: Dict[str, Optional[float]]
    certificate: Optional[Dict[str, Any]] = None
    weight_model: Dict[str, Any]
    sandwich_holds: Optional[bool] = None
    note: Optional[str] = None


class EdgeCountCheck(BaseModel):
    trials: int
    expected_edges: float
    mean_edges: float
    max_abs_z: float
    flagged: int
    failed: int


class FriedmanFloorResult(BaseModel):
    d: int
    n: int
    trials: int
    floor: float
    fraction_above_floor: float
    fraction_ratio_above_one: float
    min_improvement_ratio: float


class ExperimentSummary(BaseModel):
    family: str
    params: Dict[str, Any]
    weight_model: Dict[str, Any]
    trials: int
    seed: int
    sandwich_violations: int
    paper_false_positives: int
    naive_false_positives: int
    disconnected: int
    skipped: int
    improvement_ratio_min: Optional[float] = None
    improvement_ratio_max: Optional[float] = None
    improvement_ratio_mean: Optional[float] = None
    improvement_ratio_median: Optional[float] = None
    a_p0: Optional[float] = None
    lambdaN_discrepancy: Optional[bool] = None
    friedman_fraction: Optional[float] = None
