#pragma once

#include "bsr/sim/schedule.hpp"
#include "bsr/sim/types.hpp"

namespace bsr::sim {

// Samples a fresh layout from the schedule's current stage. Deterministic
// in (task, schedule, seed).
WorldState reset(Task task, const RandomizationSchedule& schedule, uint64_t seed);

// Quasi-static step: clamp -> delay -> actuation noise -> contact-scaled
// ee motion -> grasp/articulation/milestone updates. Returns the successor
// state; the input is untouched.
WorldState step(const WorldState& state, const Action& action);

// 20-slot privileged vector with observation noise (task one-hot and grasp
// flag stay clean). Deterministic in (state, noise_seed).
PrivilegedState privileged_state(const WorldState& state, uint64_t noise_seed);

// Noise-free variant used by oracles and reward shaping.
PrivilegedState privileged_state_clean(const WorldState& state);

struct ScoreResult {
  int score = 0;  // 0..4
  bool success = false;
};

// Graded 0-4 completion for the trajectory that produced `state`.
ScoreResult completion_score(const WorldState& state, Task task);

// true target point of the focus object for the current state
Vec3 object_target(const WorldState& state);

// current door panel direction (unit, xy) at the state's articulation angle
Vec3 door_panel_dir(const WorldState& state);

}  // namespace bsr::sim
