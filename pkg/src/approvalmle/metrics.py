"""Accuracy metrics for comparing estimated truth sets against references.

Hamming accuracy scores labels independently, exact-match (0/1) accuracy
scores whole sets, and the overlap-weighted family sits in between: an
instance scores w_c where c is the overlap with the reference set and the
weight vector is nondecreasing with w_0 = 0.  The default weights are the
diminishing harmonic sums w_c = sum_{k=1..c} 1/(m+1-k).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import GroundTruth


@dataclass(frozen=True, eq=False)
class ThieleWeights:
    """Overlap-count weights: length m+1, w[0] = 0, nondecreasing."""

    weights: np.ndarray

    def __post_init__(self):
        arr = np.array(self.weights, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)
        if len(arr) < 1 or arr[0] != 0.0:
            raise ValueError("weights must start at w[0] = 0")
        if np.any(np.diff(arr) < 0):
            raise ValueError("weights must be nondecreasing")

    @classmethod
    def harmonic(cls, m: int) -> "ThieleWeights":
        """Default weights: w_c = 1/m + 1/(m-1) + ... + 1/(m+1-c).

        >>> from approvalmle import ThieleWeights
        >>> float(ThieleWeights.harmonic(5).weights[2])
        0.45
        """
        return cls(np.concatenate([[0.0], np.cumsum(1.0 / np.arange(m, 0, -1))]))


def _check_lengths(estimates: GroundTruth, truths: GroundTruth) -> None:
    if len(estimates) != len(truths):
        raise ValueError(
            f"got {len(estimates)} estimates for {len(truths)} reference sets"
        )
    if not truths:
        raise ValueError("need at least one instance")


def hamming_accuracy(estimates: GroundTruth, truths: GroundTruth, m: int) -> float:
    """Fraction of (instance, alternative) labels on which the sets agree."""
    _check_lengths(estimates, truths)
    agree = sum(
        m - len(frozenset(est) ^ frozenset(truth))
        for est, truth in zip(estimates, truths)
    )
    return agree / (m * len(truths))


def subset_accuracy(estimates: GroundTruth, truths: GroundTruth) -> float:
    """Fraction of instances whose estimate matches the reference exactly."""
    _check_lengths(estimates, truths)
    hits = sum(
        frozenset(est) == frozenset(truth) for est, truth in zip(estimates, truths)
    )
    return hits / len(truths)


def harmonic_accuracy(
    estimates: GroundTruth,
    truths: GroundTruth,
    m: int,
    weights: ThieleWeights | None = None,
    normalized: bool = False,
) -> float:
    """Mean overlap-weighted score, harmonic weights by default.

    Raw mode averages w_{|est ∩ truth|} per instance; its range depends on the
    weights and reference sizes.  Normalized mode divides each instance by its
    self-score w_{|truth|}, giving values in [0, 1] that reach 1 whenever
    every estimate covers its reference set.  An empty reference set has
    self-score 0; by convention it contributes 1 when the estimate is also
    empty and 0 otherwise.
    """
    _check_lengths(estimates, truths)
    if weights is None:
        weights = ThieleWeights.harmonic(m)
    w = weights.weights
    if len(w) != m + 1:
        raise ValueError(f"need m + 1 = {m + 1} weights, got {len(w)}")

    total = 0.0
    for est, truth in zip(estimates, truths):
        est = frozenset(est)
        truth = frozenset(truth)
        score = w[len(est & truth)]
        if normalized:
            self_score = w[len(truth)]
            if self_score == 0.0:
                score = 1.0 if est == truth else 0.0
            else:
                score = score / self_score
        total += score
    return total / len(truths)
