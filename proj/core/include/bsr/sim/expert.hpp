#pragma once

#include "bsr/sim/world.hpp"

namespace bsr::sim {

// Stateless waypoint controller on true state. Phases are derived from the
// state each call, so delays and actuation noise cannot desynchronize it.
Action scripted_expert(const WorldState& state);

struct RolloutResult {
  WorldState final_state;
  int steps = 0;
  ScoreResult score;
};

// Rolls the expert until success or `horizon` steps.
RolloutResult expert_rollout(WorldState state, int horizon = kHorizon);

}  // namespace bsr::sim
