#pragma once

#include <vector>

#include "bsr/sim/types.hpp"

namespace bsr::sim {

// Per-stage randomization widths. Widths must be non-decreasing stage to
// stage; anchor_shift moves the layout sampling box from the task-nominal
// anchor (0) to the full training box center (1).
struct StageRanges {
  float anchor_shift = 0;
  float pos_half = 0;         // object/base xy half-extent (m)
  float yaw_half = 0;         // radians
  float scale_frac_half = 0;  // fractional scale variation
  float ee_off_half = 0;      // initial ee offset half-extent (m)
  float mass_lo = 1, mass_hi = 1;
  float friction_lo = 1, friction_hi = 1;
  int max_delay = 0;
  float obs_noise_std = 0;
  float action_noise_std = 0;
};

struct RandomizationSchedule {
  std::vector<StageRanges> stages;
  int stage = 0;

  const StageRanges& current() const;
  int max_stage() const { return int(stages.size()) - 1; }
  void validate() const;  // throws unless widths are monotone non-decreasing

  // 6-stage curriculum from minor variations to the full training ranges
  static RandomizationSchedule standard();
  // single zero-width stage: canonical layouts, no physics variation
  static RandomizationSchedule zero();
  // demo-collection / evaluation distribution: full-box positions and yaw,
  // nominal scale, full physics ranges
  static RandomizationSchedule collection();
};

// success-gated monotone stage advance
RandomizationSchedule curriculum_advance(float recent_success_rate,
                                         const RandomizationSchedule& schedule,
                                         float gate = 0.8f);

}  // namespace bsr::sim
