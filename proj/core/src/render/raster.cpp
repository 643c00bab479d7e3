#include "bsr/render/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "bsr/render/texture.hpp"

namespace bsr::render {

namespace {

using sim::ObjectKind;
using sim::Task;
using sim::Vec3;
using sim::WorldState;

struct Element {
  enum Shape { Disc, Rect } shape = Rect;
  float cx = 0, cy = 0;       // view-plane center
  float hx = 0, hy = 0;       // half extents; Disc uses hx as radius
  float ca = 1, sa = 0;       // rotation (view-plane)
  Rgb color{};
  int id = 0;

  bool covers(float px, float py) const {
    float dx = px - cx, dy = py - cy;
    if (shape == Disc) return dx * dx + dy * dy <= hx * hx;
    float lx = ca * dx + sa * dy;
    float ly = -sa * dx + ca * dy;
    return std::fabs(lx) <= hx && std::fabs(ly) <= hy;
  }
};

Rgb scale_rgb(const Rgb& c, float f) { return {c[0] * f, c[1] * f, c[2] * f}; }

// Builds the draw list back-to-front. Mask ids are stable per element kind.
std::vector<Element> build_elements(const WorldState& s, const DomainParams* dom, View view) {
  std::vector<Element> out;
  auto color_of = [&](int slot, float mod) -> Rgb {
    if (!dom) return {0, 0, 0};
    return scale_rgb(dom->palette[size_t(slot)], mod);
  };

  if (view == View::Third) {
    auto put = [&](Element e) { out.push_back(e); };
    if (s.task == Task::StackCube) {
      const auto& platform = s.objects.at(1);
      put({Element::Rect, platform.pos.x, platform.pos.y, sim::kPlatformHalf,
           sim::kPlatformHalf, 1, 0, color_of(kPalPlatform, 1), 2});
      const auto& cube = s.objects.at(0);
      put({Element::Rect, cube.pos.x, cube.pos.y, cube.scale * 0.5f, cube.scale * 0.5f,
           std::cos(cube.yaw), std::sin(cube.yaw), color_of(kPalCube, 1), 1});
    } else if (s.task == Task::OpenDrawer) {
      Vec3 body_c = s.artic_base - s.artic_axis * 0.06f;
      float ang = std::atan2(s.artic_axis.y, s.artic_axis.x);
      put({Element::Rect, body_c.x, body_c.y, 0.06f, 0.05f, std::cos(ang), std::sin(ang),
           color_of(kPalDrawerBody, 1), 3});
      const auto& handle = s.objects.at(0);
      put({Element::Disc, handle.pos.x, handle.pos.y, handle.scale, handle.scale, 1, 0,
           color_of(kPalHandle, 1), 5});
    } else {
      Vec3 pd = sim::door_panel_dir(s);
      float len = s.focus().scale;
      Vec3 mid = s.artic_base + pd * (len * 0.5f);
      float ang = std::atan2(pd.y, pd.x);
      put({Element::Rect, mid.x, mid.y, len * 0.5f, 0.008f, std::cos(ang), std::sin(ang),
           color_of(kPalDoor, 1), 4});
      const Vec3 pp = s.grasp_point();
      put({Element::Disc, pp.x, pp.y, 0.008f, 0.008f, 1, 0, color_of(kPalHandle, 1), 6});
    }
    // ee marker with aperture dot
    put({Element::Disc, s.ee_pos.x, s.ee_pos.y, 0.008f, 0.008f, 1, 0, color_of(kPalEe, 1), 7});
    put({Element::Disc, s.ee_pos.x, s.ee_pos.y, 0.0035f, 0.0035f, 1, 0,
         color_of(kPalEe, 0.25f + 0.6f * s.gripper_aperture), 7});
    return out;
  }

  // wrist view: x = world x - ee x, y = world z - ee z; objects fade with
  // their y-distance from the ee plane
  auto fade = [&](float wy) { return std::exp(-4.0f * std::fabs(wy - s.ee_pos.y)); };
  auto put = [&](Element e) { out.push_back(e); };

  if (s.task == Task::StackCube) {
    const auto& platform = s.objects.at(1);
    put({Element::Rect, platform.pos.x - s.ee_pos.x,
         sim::kPlatformHeight * 0.5f - s.ee_pos.z, sim::kPlatformHalf,
         sim::kPlatformHeight * 0.5f, 1, 0,
         color_of(kPalPlatform, fade(platform.pos.y)), 2});
    const auto& cube = s.objects.at(0);
    put({Element::Rect, cube.pos.x - s.ee_pos.x,
         cube.pos.z + cube.scale * 0.5f - s.ee_pos.z, cube.scale * 0.5f, cube.scale * 0.5f,
         1, 0, color_of(kPalCube, fade(cube.pos.y)), 1});
  } else if (s.task == Task::OpenDrawer) {
    Vec3 body_c = s.artic_base - s.artic_axis * 0.06f;
    float half_x = 0.06f * std::fabs(s.artic_axis.x) + 0.05f * std::fabs(s.artic_axis.y);
    put({Element::Rect, body_c.x - s.ee_pos.x, 0.045f - s.ee_pos.z, half_x + 0.01f, 0.045f,
         1, 0, color_of(kPalDrawerBody, fade(body_c.y)), 3});
    const auto& handle = s.objects.at(0);
    put({Element::Disc, handle.pos.x - s.ee_pos.x, handle.pos.z - s.ee_pos.z, handle.scale,
         handle.scale, 1, 0, color_of(kPalHandle, fade(handle.pos.y)), 5});
  } else {
    Vec3 pd = sim::door_panel_dir(s);
    float len = s.focus().scale;
    Vec3 tip = s.artic_base + pd * len;
    float x0 = std::min(s.artic_base.x, tip.x), x1 = std::max(s.artic_base.x, tip.x);
    put({Element::Rect, (x0 + x1) * 0.5f - s.ee_pos.x, 0.08f - s.ee_pos.z,
         (x1 - x0) * 0.5f + 0.008f, 0.08f, 1, 0,
         color_of(kPalDoor, fade((s.artic_base.y + tip.y) * 0.5f)), 4});
    const Vec3 pp = s.grasp_point();
    put({Element::Disc, pp.x - s.ee_pos.x, pp.z - s.ee_pos.z, 0.008f, 0.008f, 1, 0,
         color_of(kPalHandle, fade(pp.y)), 6});
  }

  // gripper fingers straddle the view center; separation tracks the aperture
  float sep = 0.005f + 0.010f * s.gripper_aperture;
  put({Element::Rect, -sep, 0.0f, 0.0022f, 0.012f, 1, 0, color_of(kPalEe, 1), 7});
  put({Element::Rect, sep, 0.0f, 0.0022f, 0.012f, 1, 0, color_of(kPalEe, 1), 7});
  put({Element::Rect, 0.0f, 0.014f, sep + 0.002f, 0.0025f, 1, 0, color_of(kPalEe, 1), 7});
  return out;
}

}  // namespace

Image render(const WorldState& state, const DomainParams& domain, View view) {
  Image img;
  auto elements = build_elements(state, &domain, view);

  // camera jitter, in world units; one draw per rendered frame
  Rng jrng(derive_seed(domain.texture_seed, 0x1177u + uint64_t(view),
                       uint64_t(state.step_index)));
  float jx = 0, jy = 0;
  if (domain.camera_jitter_px > 0) {
    float jw = domain.camera_jitter_px * kThirdPx;
    jx = jrng.uniformf(-jw, jw);
    jy = jrng.uniformf(-jw, jw);
  }
  Rng nrng(derive_seed(domain.texture_seed, 0x330fu + uint64_t(view),
                       uint64_t(state.step_index)));

  const float half = view == View::Third ? kThirdViewHalf : kWristViewHalf;
  const float px_size = 2 * half / Image::kW;

  for (int row = 0; row < Image::kH; ++row) {
    for (int col = 0; col < Image::kW; ++col) {
      float vx = -half + (float(col) + 0.5f) * px_size + jx;
      float vy = half - (float(row) + 0.5f) * px_size + jy;

      Rgb c;
      if (view == View::Third) {
        c = background_color(domain, vx, vy);
      } else {
        float wx = state.ee_pos.x + vx, wz = state.ee_pos.z + vy;
        c = background_color(domain, wx, wz);
        if (wz < 0) c = scale_rgb(c, 0.45f);  // table edge horizon
      }
      for (const auto& e : elements)
        if (e.covers(vx, vy)) c = e.color;

      float nx = (float(col) - 31.5f) / 31.5f, ny = (float(row) - 31.5f) / 31.5f;
      float vig = 1.0f - domain.vignette_strength * (nx * nx + ny * ny) * 0.5f;
      float gain = domain.lighting_gain * vig;
      for (int ch = 0; ch < 3; ++ch) {
        float v = c[size_t(ch)] * gain;
        if (domain.pixel_noise_std > 0) v += nrng.normalf(0.0f, domain.pixel_noise_std);
        img.at(ch, row, col) = std::min(1.0f, std::max(0.0f, v));
      }
    }
  }
  return img;
}

Image render_mask(const WorldState& state, View view) {
  Image img;
  auto elements = build_elements(state, nullptr, view);
  const float half = view == View::Third ? kThirdViewHalf : kWristViewHalf;
  const float px_size = 2 * half / Image::kW;
  for (int row = 0; row < Image::kH; ++row) {
    for (int col = 0; col < Image::kW; ++col) {
      float vx = -half + (float(col) + 0.5f) * px_size;
      float vy = half - (float(row) + 0.5f) * px_size;
      int id = 0;
      for (const auto& e : elements)
        if (e.covers(vx, vy)) id = e.id;
      float g = float(id) / 8.0f;
      for (int ch = 0; ch < 3; ++ch) img.at(ch, row, col) = g;
    }
  }
  return img;
}

Observation observe(const WorldState& state, const DomainParams& domain,
                    uint64_t noise_seed) {
  Observation obs;
  obs.view_third = render(state, domain, View::Third);
  obs.view_wrist = render(state, domain, View::Wrist);
  obs.proprio = {state.ee_pos.x, state.ee_pos.y, state.ee_pos.z,
                 state.ee_vel.x, state.ee_vel.y, state.ee_vel.z,
                 state.gripper_aperture};
  float ns = state.physics.obs_noise_std;
  if (ns > 0) {
    Rng rng(derive_seed(noise_seed, 0x0b6u));
    for (auto& v : obs.proprio) v += rng.normalf(0, ns);
  }
  return obs;
}

void save_ppm(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open ppm for writing: " + path);
  out << "P6\n" << Image::kW << " " << Image::kH << "\n255\n";
  for (int row = 0; row < Image::kH; ++row)
    for (int col = 0; col < Image::kW; ++col)
      for (int ch = 0; ch < 3; ++ch) {
        float v = img.at(ch, row, col);
        out.put(char(std::lround(std::min(1.0f, std::max(0.0f, v)) * 255.0f)));
      }
}

}  // namespace bsr::render
