#include "bsr/sim/expert.hpp"

#include <algorithm>

namespace bsr::sim {

namespace {

float clampf(float v, float lo, float hi) { return std::min(hi, std::max(lo, v)); }

Vec3 clamp_delta(const Vec3& d) {
  return {clampf(d.x, -kDeltaCap, kDeltaCap), clampf(d.y, -kDeltaCap, kDeltaCap),
          clampf(d.z, -kDeltaCap, kDeltaCap)};
}

Vec3 toward(const Vec3& from, const Vec3& to) { return clamp_delta(to - from); }

// Where the ee will be once every queued command has landed.
Vec3 predicted_ee(const WorldState& s) {
  Vec3 pred = s.ee_pos;
  for (int i = 0; i < s.pending_len; ++i) pred = pred + s.pending[i].delta;
  return pred;
}

// Delay-compensated pursuit: aim from the predicted landing position so
// in-flight commands are never double-counted.
Vec3 seek(const WorldState& s, const Vec3& target) {
  return clamp_delta(target - predicted_ee(s));
}

// Close the gripper near the grasp point, with hysteresis keyed off the
// aperture so a started close is not flickered away by one noisy step.
float close_cmd(const WorldState& s, const Vec3& gp) {
  float dp = (gp - predicted_ee(s)).norm();
  bool committing = s.gripper_aperture < 0.9f;
  float trigger = committing ? 0.035f : 0.018f;
  return dp < trigger ? 1.0f : -1.0f;
}

Action stack_expert(const WorldState& s) {
  const Vec3 gp = s.grasp_point();

  if (s.milestone >= 4 && s.grasped_object < 0) return Action{{0, 0, 0}, -1.0f};

  if (s.grasped_object < 0) return Action{seek(s, gp), close_cmd(s, gp)};

  // carrying: steer the cube (ee + grasp offset), not the ee itself
  Vec3 place_ee = s.target - s.grasp_offset;
  Vec3 err = place_ee - s.ee_pos;
  float dxy = Vec3{err.x, err.y, 0}.norm_xy();
  if (dxy < 0.010f && std::fabs(err.z) < 0.03f) return Action{seek(s, place_ee), -1.0f};  // release
  return Action{seek(s, place_ee), 1.0f};
}

Action drawer_expert(const WorldState& s) {
  const Vec3 gp = s.grasp_point();

  if (s.articulation >= kDrawerOpenTarget + 0.01f || (s.milestone >= 4 && s.grasped_object < 0))
    return Action{{0, 0, 0}, -1.0f};

  if (s.grasped_object < 0) return Action{seek(s, gp), close_cmd(s, gp)};

  // pull along the rail, slightly past the success threshold
  Vec3 pull_target = s.artic_base + s.artic_axis * (kDrawerOpenTarget + 0.02f);
  if (s.articulation < kDrawerOpenTarget + 0.015f)
    return Action{seek(s, pull_target - s.grasp_offset), 1.0f};
  return Action{{0, 0, 0}, -1.0f};
}

Action door_expert(const WorldState& s) {
  if (s.articulation <= 0.03f) return Action{{0, 0, 0}, -1.0f};

  const Vec3 pp = s.grasp_point();
  const float r_push = kDoorPushFrac * s.focus().scale;
  const Vec3 pd = door_panel_dir(s);
  const Vec3 tangent{-pd.y, pd.x, 0};  // opening sweep direction

  // contact only closes the door when the ee sits on the open side, so the
  // approach staging point is offset that way
  Vec3 pred = predicted_ee(s);
  Vec3 approach_pt = pp + tangent * 0.012f;
  float side = (pred - pp).dot(tangent);
  if (side < -0.004f || (approach_pt - pred).norm() > 0.022f)
    return Action{seek(s, approach_pt), -1.0f};

  // push: chase a point ahead on the closing arc, biased to the open side;
  // a longer lookahead absorbs control delay
  float lead = 0.012f * (1.0f + 0.6f * float(s.physics.action_delay_steps));
  float ahead = std::min(s.articulation, lead / std::max(r_push, 1e-4f));
  float c = std::cos(s.articulation - ahead), sn = std::sin(s.articulation - ahead);
  Vec3 dir{c * s.artic_axis.x - sn * s.artic_axis.y, sn * s.artic_axis.x + c * s.artic_axis.y,
           0};
  Vec3 next = s.artic_base + dir * r_push + Vec3{-dir.y, dir.x, 0} * 0.010f;
  next.z = pp.z;
  return Action{seek(s, next), -1.0f};
}

}  // namespace

Action scripted_expert(const WorldState& state) {
  switch (state.task) {
    case Task::StackCube: return stack_expert(state);
    case Task::OpenDrawer: return drawer_expert(state);
    case Task::CloseDoor: return door_expert(state);
  }
  throw Error("scripted_expert: invalid task");
}

RolloutResult expert_rollout(WorldState state, int horizon) {
  RolloutResult out;
  for (int t = 0; t < horizon; ++t) {
    state = step(state, scripted_expert(state));
    ++out.steps;
    if (completion_score(state, state.task).success && state.grasped_object < 0) break;
  }
  out.final_state = state;
  out.score = completion_score(state, state.task);
  return out;
}

}  // namespace bsr::sim
