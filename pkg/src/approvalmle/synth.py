"""Synthetic data generation from the noise model.

Truth sets are drawn from the cardinality-constrained prior by rejection:
sample independent Bernoulli(t_j) inclusions and retry until the size lands in
[l, u].  The acceptance probability is exactly the admissible mass, which is
large in typical regimes; pathological priors are refused.  Ballots then flip
each (voter, label) coin with probability p_i or q_i.

Seeding scheme: the single configured seed feeds numpy SeedSequences with
spawn keys (0, z) for instance z's truth draw and (1, z) for its ballots, so
truths and ballots come from disjoint deterministic streams and per-instance
draws could be parallelized without changing results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Bounds, GroundTruth, Profile
from .priors import cardinality_mass

#: Refuse rejection sampling when the admissible prior mass is below this.
MIN_ACCEPTANCE = 1e-6


@dataclass(frozen=True, eq=False)
class SynthSpec:
    """Generator configuration: sizes, bounds, prior, voter rates, seed."""

    m: int
    n: int
    num_instances: int
    bounds: Bounds
    t: np.ndarray
    p: np.ndarray
    q: np.ndarray
    seed: int

    def __post_init__(self):
        for name in ("t", "p", "q"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if len(self.t) != self.m:
            raise ValueError(f"t has {len(self.t)} entries for m={self.m}")
        if len(self.p) != self.n or len(self.q) != self.n:
            raise ValueError("p and q must have one entry per voter")
        for name in ("t", "p", "q"):
            arr = getattr(self, name)
            if not np.all((arr > 0.0) & (arr < 1.0)):
                raise ValueError(f"{name} entries must lie strictly in (0, 1)")
        if not self.bounds.valid_for(self.m):
            raise ValueError(
                f"invalid bounds ({self.bounds.lower}, {self.bounds.upper}) "
                f"for m={self.m}"
            )

    @classmethod
    def homogeneous(
        cls,
        m: int,
        n: int,
        num_instances: int,
        bounds: Bounds,
        p: float,
        q: float,
        seed: int,
        t: float = 0.5,
    ) -> "SynthSpec":
        """All voters share (p, q) and all alternatives share prior t."""
        return cls(
            m=m,
            n=n,
            num_instances=num_instances,
            bounds=bounds,
            t=np.full(m, t),
            p=np.full(n, p),
            q=np.full(n, q),
            seed=seed,
        )


def sample_truths(spec: SynthSpec) -> GroundTruth:
    """Draw one truth set per instance from the constrained prior."""
    acceptance = cardinality_mass(spec.t, spec.bounds)
    if acceptance < MIN_ACCEPTANCE:
        raise ValueError(
            f"admissible prior mass {acceptance:.2e} is too small for rejection "
            "sampling; the prior needs direct conditional sampling"
        )
    truths = []
    for z in range(spec.num_instances):
        rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(0, z)))
        while True:
            included = rng.random(spec.m) < spec.t
            size = int(included.sum())
            if spec.bounds.contains(size):
                truths.append(frozenset(np.flatnonzero(included).tolist()))
                break
    return tuple(truths)


def sample_profile(spec: SynthSpec, truths: GroundTruth) -> Profile:
    """Draw approval ballots for every instance given its truth set."""
    if len(truths) != spec.num_instances:
        raise ValueError(
            f"got {len(truths)} truth sets for {spec.num_instances} instances"
        )
    instance_ballots = []
    for z, truth in enumerate(truths):
        rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(1, z)))
        member = np.zeros(spec.m, dtype=bool)
        member[list(truth)] = True
        probs = np.where(member[None, :], spec.p[:, None], spec.q[:, None])
        approved = rng.random((spec.n, spec.m)) < probs
        instance_ballots.append(
            [frozenset(np.flatnonzero(row).tolist()) for row in approved]
        )
    return Profile.build(
        [f"a{j + 1}" for j in range(spec.m)],
        [f"v{i + 1}" for i in range(spec.n)],
        instance_ballots,
    )


def sample_dataset(spec: SynthSpec):
    """Convenience: draw truths and a matching profile in one call."""
    truths = sample_truths(spec)
    return sample_profile(spec, truths), truths
