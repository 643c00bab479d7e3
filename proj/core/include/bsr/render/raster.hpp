#pragma once

#include <string>

#include "bsr/render/domain.hpp"
#include "bsr/render/image.hpp"
#include "bsr/sim/world.hpp"

namespace bsr::render {

enum class View { Third = 0, Wrist = 1 };

// orthographic windows, meters
inline constexpr float kThirdViewHalf = 0.32f;  // world xy window
inline constexpr float kWristViewHalf = 0.16f;  // window around the ee, xz
inline constexpr float kThirdPx = 2 * kThirdViewHalf / Image::kW;

// Flat-shaded orthographic rasterization of the scene under a visual domain:
// background texture, object billboards, lighting gain, vignette, camera
// jitter and additive pixel noise, clamped to [0,1]. Deterministic in
// (state, domain, view).
Image render(const sim::WorldState& state, const DomainParams& domain, View view);

// Geometry-only silhouette render: object ids as flat gray levels, no
// background, lighting, jitter or noise. Identical for any DomainParams.
Image render_mask(const sim::WorldState& state, View view);

// Dual-view observation; proprio slots carry the same observation-noise
// model as the privileged vector.
Observation observe(const sim::WorldState& state, const DomainParams& domain,
                    uint64_t noise_seed);

// debug dump (binary PPM, 8-bit)
void save_ppm(const Image& img, const std::string& path);

}  // namespace bsr::render
