#include "bsr/sim/world.hpp"

#include <algorithm>

namespace bsr::sim {

namespace {

float clampf(float v, float lo, float hi) { return std::min(hi, std::max(lo, v)); }

Vec3 clamp_workspace(Vec3 p) {
  p.x = clampf(p.x, -kWorkspaceHalfXY, kWorkspaceHalfXY);
  p.y = clampf(p.y, -kWorkspaceHalfXY, kWorkspaceHalfXY);
  p.z = clampf(p.z, 0.0f, kWorkspaceZMax);
  return p;
}

Vec3 rot_xy(const Vec3& v, float a) {
  float c = std::cos(a), s = std::sin(a);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

// counterclockwise perpendicular in the xy plane
Vec3 perp_xy(const Vec3& v) { return {-v.y, v.x, 0.0f}; }

void raise_milestone(WorldState& s, int m) {
  if (m > s.milestone) s.milestone = m;
}

void update_milestones(WorldState& s) {
  switch (s.task) {
    case Task::StackCube: {
      float d = (s.grasp_point() - s.ee_pos).norm();
      if (d < kApproachRadius) raise_milestone(s, 1);
      if (s.grasped_object == 0) raise_milestone(s, 2);
      if (s.grasped_object == 0 && (s.focus().pos - s.target).norm() < kTransportRadius)
        raise_milestone(s, 3);
      break;
    }
    case Task::OpenDrawer: {
      float d = (s.grasp_point() - s.ee_pos).norm();
      if (d < kApproachRadius) raise_milestone(s, 1);
      if (s.grasped_object == 0) raise_milestone(s, 2);
      if (s.articulation >= kDrawerPartial) raise_milestone(s, 3);
      if (s.articulation >= kDrawerOpenTarget) raise_milestone(s, 4);
      break;
    }
    case Task::CloseDoor: {
      // quartile progress from fully open (pi/2) to closed
      if (s.articulation <= 0.75f * kDoorAngleMax) raise_milestone(s, 1);
      if (s.articulation <= 0.50f * kDoorAngleMax) raise_milestone(s, 2);
      if (s.articulation <= 0.25f * kDoorAngleMax) raise_milestone(s, 3);
      if (s.articulation <= kDoorCloseTol) raise_milestone(s, 4);
      break;
    }
  }
}

}  // namespace

Vec3 door_panel_dir(const WorldState& s) {
  return rot_xy(s.artic_axis, s.articulation);
}

Vec3 object_target(const WorldState& s) { return s.target; }

WorldState reset(Task task, const RandomizationSchedule& schedule, uint64_t seed) {
  const StageRanges& r = schedule.current();
  Rng rng(derive_seed(seed, 0x7e5e7u, uint64_t(schedule.stage)));

  WorldState s;
  s.task = task;
  s.noise_rng = Rng(derive_seed(seed, 0x90153u));

  // physics draw
  s.physics.mass_scale = rng.uniformf(r.mass_lo, r.mass_hi);
  s.physics.friction = rng.uniformf(r.friction_lo, r.friction_hi);
  s.physics.action_delay_steps = int(rng.uniform_int(0, r.max_delay));
  s.physics.obs_noise_std = r.obs_noise_std;
  s.physics.action_noise_std = r.action_noise_std;

  // initial ee pose
  s.ee_pos = {rng.uniformf(-r.ee_off_half, r.ee_off_half),
              rng.uniformf(-r.ee_off_half, r.ee_off_half),
              kEeStartZ + rng.uniformf(-r.ee_off_half, r.ee_off_half)};
  s.ee_pos = clamp_workspace(s.ee_pos);
  s.gripper_aperture = 1.0f;

  float yaw = rng.uniformf(-r.yaw_half, r.yaw_half);
  float scale_frac = 1.0f + rng.uniformf(-r.scale_frac_half, r.scale_frac_half);

  switch (task) {
    case Task::StackCube: {
      // sampling box drifts from the nominal anchor to the training-box center
      float cx = kCubeNominalX * (1.0f - r.anchor_shift);
      float cube_x = cx + rng.uniformf(-r.pos_half, r.pos_half);
      float cube_y = rng.uniformf(-r.pos_half, r.pos_half);
      float scale = kCubeScaleNominal * scale_frac;
      // object pos doubles as the grasp anchor: table-level point
      ObjectState cube{0, ObjectKind::Cube, {cube_x, cube_y, 0.0f}, yaw, scale};
      ObjectState platform{1, ObjectKind::Platform, {kPlatformX, 0.0f, 0.0f}, 0.0f,
                           kPlatformHalf * 2.0f};
      s.objects = {cube, platform};
      s.target = {kPlatformX, 0.0f, kPlatformHeight};
      break;
    }
    case Task::OpenDrawer: {
      Vec3 base{kDrawerBaseX + rng.uniformf(-r.pos_half, r.pos_half),
                kDrawerBaseY + rng.uniformf(-r.pos_half, r.pos_half), kDrawerHandleZ};
      Vec3 axis = rot_xy({1, 0, 0}, yaw);
      s.artic_base = base;
      s.artic_axis = axis;
      s.articulation = 0.0f;
      ObjectState handle{0, ObjectKind::Handle, base, yaw, 0.012f * scale_frac};
      s.objects = {handle};
      s.target = base + axis * kDrawerOpenTarget;
      break;
    }
    case Task::CloseDoor: {
      Vec3 hinge{kDoorHingeX + rng.uniformf(-r.pos_half, r.pos_half),
                 kDoorHingeY + rng.uniformf(-r.pos_half, r.pos_half), kDoorPushZ};
      Vec3 closed_dir = rot_xy({1, 0, 0}, yaw);
      float len = kDoorLengthNominal * scale_frac;
      s.artic_base = hinge;
      s.artic_axis = closed_dir;
      s.articulation = kDoorAngleMax;
      Vec3 push = hinge + rot_xy(closed_dir, kDoorAngleMax) * (kDoorPushFrac * len);
      ObjectState panel{0, ObjectKind::DoorPanel, push, yaw, len};
      s.objects = {panel};
      s.target = hinge + closed_dir * (kDoorPushFrac * len);
      break;
    }
  }
  return s;
}

WorldState step(const WorldState& state, const Action& action) {
  if (!action.delta.finite() || !std::isfinite(action.gripper_cmd))
    throw NumericError("step: action contains NaN/Inf");

  WorldState s = state;

  // clamp before anything else
  Action cmd;
  cmd.delta = {clampf(action.delta.x, -kDeltaCap, kDeltaCap),
               clampf(action.delta.y, -kDeltaCap, kDeltaCap),
               clampf(action.delta.z, -kDeltaCap, kDeltaCap)};
  cmd.gripper_cmd = clampf(action.gripper_cmd, -1.0f, 1.0f);

  // control delay: execute the action issued delay steps ago
  Action exec = cmd;
  int delay = std::min(s.physics.action_delay_steps, int(s.pending.size()) - 1);
  if (delay > 0) {
    if (s.pending_len < delay) {
      s.pending[s.pending_len++] = cmd;
      exec = Action{};  // nothing queued yet: hold still
    } else {
      exec = s.pending[0];
      for (int i = 1; i < s.pending_len; ++i) s.pending[i - 1] = s.pending[i];
      s.pending[s.pending_len - 1] = cmd;
    }
  }

  // actuation noise
  if (s.physics.action_noise_std > 0) {
    float ns = s.physics.action_noise_std;
    exec.delta.x += s.noise_rng.normalf(0, ns);
    exec.delta.y += s.noise_rng.normalf(0, ns);
    exec.delta.z += s.noise_rng.normalf(0, ns);
    exec.gripper_cmd += s.noise_rng.normalf(0, ns * 10.0f);
  }

  Vec3 ee_before = s.ee_pos;
  float contact_scale = 1.0f / (s.physics.mass_scale * s.physics.friction);

  bool railed = s.task == Task::OpenDrawer && s.grasped_object == 0;
  bool door_contact = false;
  if (s.task == Task::CloseDoor) {
    door_contact = (s.grasp_point() - s.ee_pos).norm() < kDoorContactRadius;
  }

  if (railed) {
    // ee is holding the handle: motion confined to the rail, scaled by the
    // drawer's resistance
    float along = exec.delta.dot(s.artic_axis) * contact_scale;
    float new_ext = clampf(s.articulation + along, 0.0f, kDrawerExtMax);
    Vec3 handle_new = s.artic_base + s.artic_axis * new_ext;
    Vec3 ee_new = handle_new - s.grasp_offset;
    if (ee_new.x >= -kWorkspaceHalfXY && ee_new.x <= kWorkspaceHalfXY &&
        ee_new.y >= -kWorkspaceHalfXY && ee_new.y <= kWorkspaceHalfXY && ee_new.z >= 0 &&
        ee_new.z <= kWorkspaceZMax) {
      s.articulation = new_ext;
      s.focus().pos = handle_new;
      s.ee_pos = ee_new;
    }
  } else if (door_contact) {
    Vec3 scaled = exec.delta * contact_scale;
    float r_push = kDoorPushFrac * s.focus().scale;
    Vec3 tangent = perp_xy(door_panel_dir(s));
    float dangle = scaled.dot(tangent) / r_push;
    // one-sided contact: the panel moves away from the side the ee is on
    float side = (s.ee_pos - s.grasp_point()).dot(tangent);
    dangle = side >= 0 ? std::min(dangle, 0.0f) : std::max(dangle, 0.0f);
    s.articulation = clampf(s.articulation + dangle, 0.0f, kDoorAngleMax);
    s.ee_pos = clamp_workspace(s.ee_pos + scaled);
    Vec3 push = s.artic_base + door_panel_dir(s) * r_push;
    s.focus().pos = push;
    s.focus().yaw = std::atan2(door_panel_dir(s).y, door_panel_dir(s).x);
  } else {
    s.ee_pos = clamp_workspace(s.ee_pos + exec.delta);
  }

  s.ee_vel = s.ee_pos - ee_before;

  // gripper aperture follows the command
  float target_ap = exec.gripper_cmd > 0 ? 0.0f : 1.0f;
  float da = clampf(target_ap - s.gripper_aperture, -kApertureRate, kApertureRate);
  s.gripper_aperture = clampf(s.gripper_aperture + da, 0.0f, 1.0f);

  // grasp handling (cube and drawer handle only)
  bool graspable = s.task == Task::StackCube || s.task == Task::OpenDrawer;
  if (graspable) {
    if (s.grasped_object < 0) {
      if (exec.gripper_cmd > 0.5f && (s.grasp_point() - s.ee_pos).norm() < kGraspRadius) {
        s.grasped_object = 0;
        s.grasp_offset = s.focus().pos - s.ee_pos;
      }
    } else if (exec.gripper_cmd < 0.0f) {
      // release
      s.grasped_object = -1;
      if (s.task == Task::StackCube) {
        ObjectState& cube = s.focus();
        const ObjectState& platform = s.objects.at(1);
        float dxy = (Vec3{cube.pos.x, cube.pos.y, 0} - Vec3{platform.pos.x, platform.pos.y, 0})
                        .norm_xy();
        if (dxy <= kPlaceRadiusXY) {
          cube.pos.z = kPlatformHeight;
          raise_milestone(s, 4);
        } else {
          cube.pos.z = 0.0f;
        }
      }
    }
  }

  // rigid carry
  if (s.grasped_object == 0 && !railed) s.focus().pos = s.ee_pos + s.grasp_offset;

  update_milestones(s);
  s.step_index = state.step_index + 1;
  return s;
}

PrivilegedState privileged_state_clean(const WorldState& s) {
  PrivilegedState v{};
  const Vec3 gp = s.grasp_point();
  const Vec3 rel = s.focus().pos - s.ee_pos;
  const Vec3 to_gp = gp - s.ee_pos;
  float dist = to_gp.norm();

  v[priv::kEePos + 0] = s.ee_pos.x;
  v[priv::kEePos + 1] = s.ee_pos.y;
  v[priv::kEePos + 2] = s.ee_pos.z;
  v[priv::kEeVel + 0] = s.ee_vel.x;
  v[priv::kEeVel + 1] = s.ee_vel.y;
  v[priv::kEeVel + 2] = s.ee_vel.z;
  v[priv::kAperture] = s.gripper_aperture;
  v[priv::kGraspFlag] = s.grasped_object >= 0 ? 1.0f : 0.0f;
  v[priv::kRelEeToObject + 0] = rel.x;
  v[priv::kRelEeToObject + 1] = rel.y;
  v[priv::kRelEeToObject + 2] = rel.z;
  v[priv::kDistToGrasp] = dist;

  float vel_norm = s.ee_vel.norm();
  float align = 0.0f;
  if (vel_norm > 1e-9f && dist > 1e-9f) align = s.ee_vel.dot(to_gp) / (vel_norm * dist);
  v[priv::kApproachAlign] = clampf(align, -1.0f, 1.0f);

  Vec3 rel_t = s.target - s.focus().pos;
  v[priv::kRelObjToTarget + 0] = rel_t.x;
  v[priv::kRelObjToTarget + 1] = rel_t.y;
  v[priv::kRelObjToTarget + 2] = rel_t.z;

  float progress = 0.0f;
  if (s.task == Task::OpenDrawer)
    progress = s.articulation / kDrawerExtMax;
  else if (s.task == Task::CloseDoor)
    progress = 1.0f - s.articulation / kDoorAngleMax;
  v[priv::kArticProgress] = progress;

  v[priv::kTaskOnehot + int(s.task)] = 1.0f;
  return v;
}

PrivilegedState privileged_state(const WorldState& s, uint64_t noise_seed) {
  PrivilegedState v = privileged_state_clean(s);
  float ns = s.physics.obs_noise_std;
  if (ns > 0) {
    Rng rng(derive_seed(noise_seed, 0x0b5u));
    for (int i = 0; i < priv::kTaskOnehot; ++i) {
      if (i == priv::kGraspFlag) continue;
      v[i] += rng.normalf(0, ns);
    }
    v[priv::kDistToGrasp] = std::max(0.0f, v[priv::kDistToGrasp]);
    v[priv::kApproachAlign] = clampf(v[priv::kApproachAlign], -1.0f, 1.0f);
  }
  return v;
}

ScoreResult completion_score(const WorldState& state, Task task) {
  if (task != state.task)
    throw Error(std::string("completion_score: state belongs to task '") +
                task_name(state.task) + "', asked about '" + task_name(task) + "'");
  ScoreResult r;
  r.score = state.milestone;
  r.success = state.milestone == 4;
  return r;
}

}  // namespace bsr::sim
