"""Log-likelihood of ballots and truth sets under the noise model.

Each voter approves a truly-winning alternative with probability p_i and a
non-winning one with probability q_i, independently across alternatives,
voters, and instances.  A candidate truth set outside the cardinality bounds
has prior probability zero; that case is represented by the distinguished
``IMPOSSIBLE`` marker rather than -inf so that comparisons stay explicit and
NaNs cannot propagate.
"""

from __future__ import annotations

import itertools
import math

from .model import Ballot, Bounds, GroundTruth, ParamVector, Profile, Instance
from .priors import cardinality_mass

#: Absolute log-space tolerance under which two candidate sets are considered
#: equally likely.  Double-precision accumulation over n*m terms makes exact
#: equality meaningless.
TIE_TOLERANCE = 1e-9


class _ImpossibleType:
    """Singleton marker for candidate sets ruled out by the cardinality prior."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "IMPOSSIBLE"


IMPOSSIBLE = _ImpossibleType()


def _check_rate(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie strictly in (0, 1), got {value}")


def ballot_loglik(ballot: Ballot, truth, p_i: float, q_i: float, m: int) -> float:
    """Log-probability of one ballot given a truth set.

    Counts the four label outcomes and weighs them:
    |A∩S| ln p + |A∩S̄| ln q + |Ā∩S| ln(1-p) + |Ā∩S̄| ln(1-q).
    """
    _check_rate("p_i", p_i)
    _check_rate("q_i", q_i)
    truth = frozenset(truth)
    ballot = frozenset(ballot)
    true_pos = len(ballot & truth)
    false_pos = len(ballot) - true_pos
    false_neg = len(truth) - true_pos
    true_neg = m - true_pos - false_pos - false_neg
    return (
        true_pos * math.log(p_i)
        + false_pos * math.log(q_i)
        + false_neg * math.log(1.0 - p_i)
        + true_neg * math.log(1.0 - q_i)
    )


def prior_logprob(candidate, t, bounds: Bounds):
    """Log prior probability of a candidate truth set, or IMPOSSIBLE.

    Admissible sets get sum_{j in S} ln t_j + sum_{j not in S} ln(1 - t_j)
    minus the log normalizing mass; sets whose size violates the bounds get
    the IMPOSSIBLE marker.
    """
    candidate = frozenset(candidate)
    if not bounds.contains(len(candidate)):
        return IMPOSSIBLE
    total = 0.0
    for j, t_j in enumerate(t):
        if not 0.0 < t_j < 1.0:
            raise ValueError(f"t[{j}] must lie strictly in (0, 1), got {t_j}")
        total += math.log(t_j) if j in candidate else math.log(1.0 - t_j)
    return total - math.log(cardinality_mass(t, bounds))


def instance_loglik(instance: Instance, truth, params: ParamVector, bounds: Bounds):
    """Joint log-likelihood of one instance's ballots and truth set."""
    prior = prior_logprob(truth, params.t, bounds)
    if prior is IMPOSSIBLE:
        return IMPOSSIBLE
    m = params.num_alternatives
    total = prior
    for i, ballot in enumerate(instance.ballots):
        total += ballot_loglik(ballot, truth, params.p[i], params.q[i], m)
    return total


def total_loglik(
    profile: Profile,
    truths: GroundTruth,
    params: ParamVector,
    bounds: Bounds,
) -> float:
    """Total log-likelihood over all instances.

    Instances are independent given the parameters, so the total is the sum
    of per-instance terms, accumulated in instance order for bit-stable
    results.  An inadmissible truth set raises, naming the instance.
    """
    if len(truths) != profile.num_instances:
        raise ValueError(
            f"got {len(truths)} truth sets for {profile.num_instances} instances"
        )
    total = 0.0
    for instance, truth in zip(profile.instances, truths):
        term = instance_loglik(instance, truth, params, bounds)
        if term is IMPOSSIBLE:
            raise ValueError(
                f"truth set of instance {instance.id!r} has size {len(truth)} "
                f"outside bounds [{bounds.lower}, {bounds.upper}]"
            )
        total += term
    return total


def brute_force_truth_mle(
    instance: Instance,
    params: ParamVector,
    bounds: Bounds,
    tie_tolerance: float = TIE_TOLERANCE,
) -> list:
    """All maximum-likelihood truth sets for one instance, by enumeration.

    Enumerates every admissible subset and keeps those whose log-likelihood
    is within ``tie_tolerance`` of the maximum.  Exponential in m; serves as
    the independent oracle for the threshold-based estimator.  Returned sets
    are ordered by (size, sorted members) for determinism.
    """
    m = params.num_alternatives
    if m > 20:
        raise ValueError(f"enumeration over {m} alternatives is not supported (max 20)")
    if not bounds.valid_for(m):
        raise ValueError(f"invalid bounds ({bounds.lower}, {bounds.upper}) for m={m}")

    scored = []
    for k in range(bounds.lower, bounds.upper + 1):
        for combo in itertools.combinations(range(m), k):
            candidate = frozenset(combo)
            value = instance_loglik(instance, candidate, params, bounds)
            scored.append((candidate, value))
    best = max(value for _, value in scored)
    winners = [cand for cand, value in scored if value >= best - tie_tolerance]
    winners.sort(key=lambda s: (len(s), sorted(s)))
    return winners
