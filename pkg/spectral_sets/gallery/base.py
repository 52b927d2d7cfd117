"""Base class for explicit examples paired with the claims they witness."""

import logging
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from spectral_sets.matcalc import ScalarRational, encode_complex

logger = logging.getLogger(__name__)


class ClaimOutcome(BaseModel):
    """One checked claim: the measured value against its bound."""

    claim: str
    passed: bool
    value: Optional[float] = None
    bound: Optional[float] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def at_most(cls, claim: str, value: float, bound: float, **details: Any) -> "ClaimOutcome":
        value = float(value)
        return cls(claim=claim, passed=value <= bound, value=value, bound=bound, details=details)

    @classmethod
    def at_least(cls, claim: str, value: float, bound: float, **details: Any) -> "ClaimOutcome":
        value = float(value)
        return cls(claim=claim, passed=value >= bound, value=value, bound=bound, details=details)

    @classmethod
    def holds(cls, claim: str, passed: bool, **details: Any) -> "ClaimOutcome":
        return cls(claim=claim, passed=bool(passed), details=details)


def _encode(value: Any) -> Any:
    if isinstance(value, (complex, np.complexfloating)):
        return encode_complex(complex(value))
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, np.ndarray):
        return _encode(value.tolist())
    return value


class GalleryItem(ABC):
    """An explicit operator construction with a machine-checkable claim."""

    name: ClassVar[str] = ""
    claim: ClassVar[str] = ""

    def __init__(self, **parameters: Any) -> None:
        """Initialize the item.

        Args:
            **parameters: Construction parameters, echoed in reports
        """
        self.parameters = parameters
        logger.debug(f"Initialized {self.__class__.__name__} with {parameters}")

    @property
    @abstractmethod
    def operator(self) -> np.ndarray:
        """The operator of the construction at its parameters."""

    @property
    def functions(self) -> List[ScalarRational]:
        """Functions appearing in the claim."""
        return []

    @abstractmethod
    def check(self) -> List[ClaimOutcome]:
        """Evaluate every claim of the item."""

    def passed(self) -> bool:
        return all(outcome.passed for outcome in self.check())

    def to_dict(self) -> Dict[str, Any]:
        """Report with parameters, operator entries and claim outcomes."""
        outcomes = self.check()
        for outcome in outcomes:
            if not outcome.passed:
                logger.warning(f"{self.name}: claim failed: {outcome.claim} ({outcome.value})")
        return {
            "name": self.name,
            "claim": self.claim,
            "parameters": {k: _encode(v) for k, v in self.parameters.items()},
            "operator": [[encode_complex(complex(x)) for x in row] for row in self.operator],
            "outcomes": [o.model_dump() for o in outcomes],
            "passed": all(o.passed for o in outcomes),
        }
