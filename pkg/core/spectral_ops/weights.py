import numpy as np
from dataclasses import dataclass
from typing import Sequence

from core.error_handler import ValidationError, NumericalError


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Edge weights aligned to a graph's canonical edge order."""
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise NumericalError("Edge weights must be finite", operation="weight_vector",
                                 context={"non_finite": int(np.count_nonzero(~np.isfinite(values)))})
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Sequence[float]) -> "WeightVector":
        return cls(np.asarray(values, dtype=np.float64))

    @classmethod
    def ones(cls, edge_count: int) -> "WeightVector":
        return cls(np.ones(edge_count))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __add__(self, other: "WeightVector") -> "WeightVector":
        if len(other) != len(self):
            raise ValidationError("Weight vectors differ in length", field="weights",
                                  value=(len(self), len(other)))
        return WeightVector(self.values + other.values)

    def check_aligned(self, edge_count: int):
        """Raise unless there is exactly one weight per edge."""
        if len(self) != edge_count:
            raise ValidationError(
                f"Weight vector has {len(self)} entries but the graph has {edge_count} edges",
                field="weights", value=len(self)
            )

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if len(self) else 0.0
