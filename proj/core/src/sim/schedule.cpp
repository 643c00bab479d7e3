#include "bsr/sim/schedule.hpp"

namespace bsr::sim {

const StageRanges& RandomizationSchedule::current() const {
  if (stage < 0 || stage >= int(stages.size()))
    throw Error("schedule stage " + std::to_string(stage) + " out of range (have " +
                std::to_string(stages.size()) + " stages)");
  return stages[size_t(stage)];
}

void RandomizationSchedule::validate() const {
  if (stages.empty()) throw Error("schedule has no stages");
  for (size_t i = 1; i < stages.size(); ++i) {
    const auto& a = stages[i - 1];
    const auto& b = stages[i];
    bool ok = b.pos_half >= a.pos_half && b.yaw_half >= a.yaw_half &&
              b.scale_frac_half >= a.scale_frac_half && b.ee_off_half >= a.ee_off_half &&
              (b.mass_hi - b.mass_lo) >= (a.mass_hi - a.mass_lo) &&
              (b.friction_hi - b.friction_lo) >= (a.friction_hi - a.friction_lo) &&
              b.max_delay >= a.max_delay && b.obs_noise_std >= a.obs_noise_std &&
              b.action_noise_std >= a.action_noise_std;
    if (!ok)
      throw Error("schedule ranges must be non-decreasing, violated at stage " +
                  std::to_string(i));
  }
}

namespace {
float lerp(float a, float b, float u) { return a + (b - a) * u; }
}  // namespace

RandomizationSchedule RandomizationSchedule::standard() {
  RandomizationSchedule s;
  const int n = 6;
  for (int i = 0; i < n; ++i) {
    float u = float(i) / float(n - 1);
    StageRanges r;
    r.anchor_shift = u;
    r.pos_half = lerp(0.01f, 0.10f, u);
    r.yaw_half = lerp(0.0872665f, 0.785398f, u);  // 5 deg -> 45 deg
    r.scale_frac_half = lerp(0.05f, 0.25f, u);
    r.ee_off_half = lerp(0.01f, 0.05f, u);
    r.mass_lo = lerp(1.0f, 0.7f, u);
    r.mass_hi = lerp(1.0f, 1.3f, u);
    r.friction_lo = lerp(1.0f, 0.7f, u);
    r.friction_hi = lerp(1.0f, 1.3f, u);
    r.max_delay = int(std::lround(lerp(0.0f, 2.0f, u)));
    r.obs_noise_std = lerp(0.0f, 0.005f, u);
    r.action_noise_std = lerp(0.0f, 0.01f, u);
    s.stages.push_back(r);
  }
  s.validate();
  return s;
}

RandomizationSchedule RandomizationSchedule::zero() {
  RandomizationSchedule s;
  s.stages.push_back(StageRanges{});
  return s;
}

RandomizationSchedule RandomizationSchedule::collection() {
  RandomizationSchedule s;
  StageRanges r = standard().stages.back();
  r.scale_frac_half = 0.0f;  // scale held nominal during collection
  s.stages.push_back(r);
  return s;
}

RandomizationSchedule curriculum_advance(float recent_success_rate,
                                         const RandomizationSchedule& schedule, float gate) {
  RandomizationSchedule out = schedule;
  if (recent_success_rate >= gate && out.stage < out.max_stage()) out.stage += 1;
  return out;
}

}  // namespace bsr::sim
