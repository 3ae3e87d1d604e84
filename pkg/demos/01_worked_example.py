"""Walkthrough: estimating set-valued truths on a tiny annotation profile.

Three voters answer four questions over five alternatives; each question's
true answer set is known to contain one or two alternatives.  This script
walks the full estimation pipeline by hand: score boards, the first truth
pass, reliability and prior updates, and the alternating loop run to its
fixed point under both prior-update rules.
"""

import numpy as np

from approvalmle import (
    AmleConfig,
    Bounds,
    Profile,
    anna_karenina_init,
    estimate_truth,
    run_amle,
    update_reliabilities,
    weighted_scores,
)

profile = Profile.build(
    alternative_ids=["a1", "a2", "a3", "a4", "a5"],
    voter_ids=["ann", "bob", "cam"],
    instance_ballots=[
        [{0, 3}, {1}, {1, 2, 3}],   # question 1
        [{0}, {4}, {1, 2, 4}],      # question 2
        [{2}, {3}, {1, 2}],         # question 3
        [{0}, {0}, {2}],            # question 4
    ],
)
bounds = Bounds(1, 2)

print("=== distance-based initialization ===")
init = anna_karenina_init(profile)
for i, voter in enumerate(profile.voters):
    print(f"  {voter}: p0={init.p[i]:.2f} q0={init.q[i]:.3f}")

# the closest voter (cam, who answers most like the others) starts with the
# largest weight; every voter starts at p = 1/2

print("\n=== score board for question 1 ===")
board = weighted_scores(profile.instances[0], init)
print(f"  voter weights: {np.round(board.voter_weights, 3)}")
print(f"  scores:        {np.round(board.scores, 3)}")
print(f"  threshold:     {board.threshold:.3f}")
estimate = estimate_truth(profile.instances[0], init, bounds)
print(f"  chosen set:    {sorted(profile.alternative_ids[j] for j in estimate.chosen)}")

print("\n=== one manual round: truths, then reliabilities ===")
truths = tuple(
    estimate_truth(inst, init, bounds).chosen for inst in profile.instances
)
for inst, truth in zip(profile.instances, truths):
    print(f"  {inst.id}: {sorted(profile.alternative_ids[j] for j in truth)}")
p_hat, q_hat = update_reliabilities(profile, truths)
for i, voter in enumerate(profile.voters):
    print(f"  {voter}: p={p_hat[i]:.3f} q={q_hat[i]:.3f}")

print("\n=== full alternating loop, exact prior updates (default) ===")
result = run_amle(profile, bounds, init, AmleConfig(max_iterations=1000))
print(f"  converged: {result.converged} after {result.iterations} iterations")
for inst, truth in zip(profile.instances, result.truths):
    print(f"  {inst.id}: {sorted(profile.alternative_ids[j] for j in truth)}")
print(f"  final t: {np.round(result.params.t, 4)}")

print("\n=== same loop with the legacy prior update ===")
legacy = run_amle(profile, bounds, init, AmleConfig(prior_update="legacy"))
print(f"  converged: {legacy.converged} after {legacy.iterations} iterations")
for inst, truth in zip(profile.instances, legacy.truths):
    print(f"  {inst.id}: {sorted(profile.alternative_ids[j] for j in truth)}")
print(f"  final t: {np.round(legacy.params.t, 4)}")

print(
    "\nThe two rules can settle on different fixed points: the exact rule "
    "maximizes the likelihood at every step (its trace never decreases), "
    "while the legacy rule reproduces previously published trajectories."
)
logliks = [step.loglik for step in result.trace[:8]]
print(f"exact-rule log-likelihood trace (first 8): {np.round(logliks, 3)}")
