#pragma once

#include <array>
#include <vector>

#include "bsr/util/error.hpp"

namespace bsr::render {

// Fixed 64x64 RGB image, planar float32 (c,y,x), values in [0,1].
struct Image {
  static constexpr int kH = 64;
  static constexpr int kW = 64;
  static constexpr int kC = 3;
  std::vector<float> data = std::vector<float>(size_t(kC) * kH * kW, 0.0f);

  float& at(int c, int y, int x) { return data[size_t((c * kH + y) * kW + x)]; }
  float at(int c, int y, int x) const { return data[size_t((c * kH + y) * kW + x)]; }

  float mean() const {
    double s = 0;
    for (float v : data) s += v;
    return float(s / double(data.size()));
  }
};

// Dual-view observation plus 7-slot proprioception
// (ee_pos xyz, ee_vel xyz, gripper aperture).
struct Observation {
  Image view_third;
  Image view_wrist;
  std::array<float, 7> proprio{};
};

}  // namespace bsr::render
