"""The real parameter tuple shared by every evaluator and checker."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

from .errors import DomainError


@dataclass(frozen=True)
class ParamSet:
    """Function parameters (a, b, c, alpha, beta, p).

    ``a`` is optional because the confluent family does not use it.
    Domain predicates live with each function or checker; construction
    only rejects non-finite values.
    """

    b: float
    c: float
    alpha: float = 1.0
    beta: float = 2.0
    p: float = 0.0
    a: float | None = None

    def __post_init__(self):
        for name, v in asdict(self).items():
            if v is None:
                continue
            if not math.isfinite(v):
                raise DomainError(f"ParamSet.{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    def with_(self, **changes) -> "ParamSet":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)
