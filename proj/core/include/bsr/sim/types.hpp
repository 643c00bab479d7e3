#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bsr/util/error.hpp"
#include "bsr/util/rng.hpp"

namespace bsr::sim {

struct Vec3 {
  float x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(float s) const { return {x * s, y * s, z * s}; }
  float dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  float norm() const { return std::sqrt(x * x + y * y + z * z); }
  float norm_xy() const { return std::sqrt(x * x + y * y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

enum class Task { StackCube = 0, OpenDrawer = 1, CloseDoor = 2 };

inline const char* task_name(Task t) {
  switch (t) {
    case Task::StackCube: return "stack_cube";
    case Task::OpenDrawer: return "open_drawer";
    case Task::CloseDoor: return "close_door";
  }
  return "?";
}

inline Task parse_task(const std::string& s) {
  if (s == "stack_cube") return Task::StackCube;
  if (s == "open_drawer") return Task::OpenDrawer;
  if (s == "close_door") return Task::CloseDoor;
  throw Error("unknown task id: '" + s + "' (expected stack_cube|open_drawer|close_door)");
}

enum class ObjectKind { Cube = 0, Platform = 1, Handle = 2, DoorPanel = 3 };

struct ObjectState {
  int id = 0;
  ObjectKind kind = ObjectKind::Cube;
  Vec3 pos;
  float yaw = 0;
  float scale = 0;  // cube edge length / door panel length / marker size
};

struct PhysicsParams {
  float mass_scale = 1.0f;
  float friction = 1.0f;
  int action_delay_steps = 0;  // <= 3
  float obs_noise_std = 0.0f;
  float action_noise_std = 0.0f;
};

// End-effector command. delta is in meters and clamped to +-kDeltaCap per
// step before anything else touches it; gripper_cmd < 0 opens, > 0 closes.
struct Action {
  Vec3 delta;
  float gripper_cmd = 0;
};

// Workspace and task geometry, one source of truth.
inline constexpr float kWorkspaceHalfXY = 0.30f;
inline constexpr float kWorkspaceZMax = 0.30f;
inline constexpr float kDeltaCap = 0.01f;
inline constexpr float kGraspRadius = 0.02f;
inline constexpr float kApproachRadius = 0.03f;
inline constexpr float kTransportRadius = 0.05f;
inline constexpr float kPlaceRadiusXY = 0.02f;
inline constexpr int kHorizon = 200;
inline constexpr float kApertureRate = 0.25f;

inline constexpr float kCubeScaleNominal = 0.04f;
inline constexpr float kCubeNominalX = 0.10f;
inline constexpr float kPlatformX = -0.10f;
inline constexpr float kPlatformHalf = 0.03f;
inline constexpr float kPlatformHeight = 0.01f;
inline constexpr float kEeStartZ = 0.15f;

inline constexpr float kDrawerExtMax = 0.25f;
inline constexpr float kDrawerOpenTarget = 0.15f;
inline constexpr float kDrawerPartial = 0.075f;
inline constexpr float kDrawerBaseX = -0.05f;
inline constexpr float kDrawerBaseY = -0.08f;
inline constexpr float kDrawerHandleZ = 0.06f;

inline constexpr float kDoorAngleMax = 1.5707963267948966f;  // pi/2
inline constexpr float kDoorContactRadius = 0.03f;
inline constexpr float kDoorCloseTol = 0.05f;
inline constexpr float kDoorLengthNominal = 0.12f;
inline constexpr float kDoorPushFrac = 0.75f;
inline constexpr float kDoorHingeX = -0.06f;
inline constexpr float kDoorHingeY = 0.10f;
inline constexpr float kDoorPushZ = 0.08f;

// Fixed 20-slot privileged vector layout.
inline constexpr int kPrivDim = 20;
namespace priv {
inline constexpr int kEePos = 0;          // 3
inline constexpr int kEeVel = 3;          // 3
inline constexpr int kAperture = 6;       // 1
inline constexpr int kGraspFlag = 7;      // 1
inline constexpr int kRelEeToObject = 8;  // 3
inline constexpr int kDistToGrasp = 11;   // 1
inline constexpr int kApproachAlign = 12; // 1
inline constexpr int kRelObjToTarget = 13;// 3
inline constexpr int kArticProgress = 16; // 1
inline constexpr int kTaskOnehot = 17;    // 3
}  // namespace priv

using PrivilegedState = std::array<float, kPrivDim>;

// Quasi-static world snapshot. Plain value; copying it forks the trajectory.
struct WorldState {
  Task task = Task::StackCube;
  Vec3 ee_pos, ee_vel;
  float gripper_aperture = 1.0f;  // 1 fully open, 0 fully closed
  int grasped_object = -1;
  Vec3 grasp_offset;
  std::vector<ObjectState> objects;
  float articulation = 0;  // drawer extension (m) / door angle (rad)
  int step_index = 0;
  PhysicsParams physics;

  // task frame, fixed at reset
  Vec3 target;      // where the focus object should end up
  Vec3 artic_base;  // drawer front anchor / door hinge
  Vec3 artic_axis;  // drawer pull direction / door closed-panel direction (unit, xy)

  // monotone progress flags: highest milestone reached so far (0..4)
  int milestone = 0;

  // noise stream, advanced by step(); part of the value for determinism
  Rng noise_rng{0};

  // pending delayed actions, oldest first
  std::array<Action, 4> pending;
  int pending_len = 0;

  const ObjectState& focus() const { return objects.at(0); }
  ObjectState& focus() { return objects.at(0); }
  Vec3 grasp_point() const { return objects.at(0).pos; }
};

}  // namespace bsr::sim
