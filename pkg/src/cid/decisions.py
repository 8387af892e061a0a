"""Decision rules mapping estimates to discrete choices, plus a change indicator."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .regression import Interval


class ElectionDecision(Enum):
    CHALLENGER_WINS = "challenger"
    UNCLEAR = "unclear"
    INCUMBENT_WINS = "incumbent"


class InterventionDecision(Enum):
    INTERVENE = "intervene"
    DONT_INTERVENE = "no-intervene"


@dataclass(frozen=True)
class ThresholdRule:
    """Intervene when the estimated proportion strictly exceeds the threshold."""

    threshold: float = 0.20

    def __post_init__(self):
        if not (0.0 < self.threshold < 1.0):
            raise ValueError(f"threshold must be in (0, 1), got {self.threshold}")


def decide_election(interval: Interval, boundary: float = 50.0) -> ElectionDecision:
    """Three-way call from a vote-share interval.

    Ties at the boundary count as Unclear: an interval touching the boundary
    carries maximal uncertainty about the winner.
    """
    if boundary < interval.lower:
        return ElectionDecision.INCUMBENT_WINS
    if interval.upper < boundary:
        return ElectionDecision.CHALLENGER_WINS
    return ElectionDecision.UNCLEAR


def decide_intervention(theta_hat: float, rule: ThresholdRule) -> InterventionDecision:
    """Two-way call from an estimated proportion; strict > at the threshold."""
    if not (0.0 <= theta_hat <= 1.0):
        raise ValueError(f"theta_hat must be in [0, 1], got {theta_hat}")
    if theta_hat > rule.threshold:
        return InterventionDecision.INTERVENE
    return InterventionDecision.DONT_INTERVENE


def decision_indicator(reference, candidate) -> int:
    """1 if the candidate decision equals the reference, else 0.

    Both decisions must come from the same rule family.
    """
    if type(reference) is not type(candidate):
        raise TypeError(
            f"cannot compare decisions from different rule families: "
            f"{type(reference).__name__} vs {type(candidate).__name__}"
        )
    return 1 if reference == candidate else 0
