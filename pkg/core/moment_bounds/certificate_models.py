from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

MuMethod = Literal['regular_closed_form', 'projected_rayleigh', 'dmax_upper_bound']


class EdgeMoments(BaseModel):
    q: float
    p: float
    variance: float = Field(ge=0.0)
    edge_count: int = Field(ge=1)


class MuEstimate(BaseModel):
    value: float
    method: MuMethod
    bracket_low: float
    bracket_high: float
    dmax_bound: float
    # regular graphs: projected Rayleigh value computed as a cross-check of the closed form
    cross_check: Optional[float] = None
    abs_order_bracket_low: Optional[float] = None
    abs_order_bracket_high: Optional[float] = None


class Margins(BaseModel):
    paper: float
    naive: float


class BoundsCertificate(BaseModel):
    n: int
    e: int
    lower: float
    upper: float
    lambda2_g: float
    lambdaN_g: float
    mu: MuEstimate
    moments: EdgeMoments
    positivity_paper: bool
    positivity_naive: bool
    margins: Margins
    improvement_ratio: float
    connected: bool
    oracle: Optional[List[float]] = None
    sandwich_holds: Optional[bool] = None

    @property
    def authoritative(self) -> bool:
        return self.connected

    def to_document(self) -> Dict[str, Any]:
        """The fixed-field certificate document."""
        doc: Dict[str, Any] = {
            "n": self.n,
            "e": self.e,
            "q": self.moments.q,
            "p": self.moments.p,
            "variance": self.moments.variance,
            "lambda2_g": self.lambda2_g,
            "lambdaN_g": self.lambdaN_g,
            "mu": self.mu.value,
            "mu_method": self.mu.method,
            "lower": self.lower,
            "upper": self.upper,
            "positivity_paper": self.positivity_paper,
            "positivity_naive": self.positivity_naive,
            "improvement_ratio": self.improvement_ratio,
            "connected": self.connected,
            "margins": {"paper": self.margins.paper, "naive": self.margins.naive},
        }
        if self.oracle is not None:
            doc["oracle_eigenvalues"] = list(self.oracle)
        return doc


class IntervalBounds(BaseModel):
    lower: float
    upper: float

    @property
    def half_width(self) -> float:
        return 0.5 * (self.upper - self.lower)

    def contains(self, other: "IntervalBounds", tol: float = 0.0) -> bool:
        return self.lower <= other.lower + tol and other.upper <= self.upper + tol


class CycleBounds(BaseModel):
    n: int
    lambda2_g: float
    lambdaN_g: float
    stated_lambdaN_g: float = 2.0
    lambdaN_discrepancy: bool
    mu: float
    bounds: IntervalBounds
    improvement_ratio: float


class MaxDegreeBounds(BaseModel):
    max_degree: int
    lambdaN_upper: float
    mu_upper: float
