#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bsr/util/rng.hpp"

namespace bsr::render {

enum class DomainFamily { Sim = 0, Real = 1 };

inline const char* family_name(DomainFamily f) {
  return f == DomainFamily::Sim ? "sim" : "real";
}

// Procedural background families. Sim and real draw from disjoint sets.
enum class TextureFamily { Checker = 0, PerlinLo = 1, PerlinHi = 2, Stripes = 3 };

using Rgb = std::array<float, 3>;

// Flat-shade color slots, one per drawable element.
enum PaletteSlot {
  kPalCube = 0,
  kPalPlatform,
  kPalHandle,
  kPalDoor,
  kPalDrawerBody,
  kPalEe,
  kPalBgA,
  kPalBgB,
  kPaletteSize
};

struct DomainParams {
  DomainFamily family = DomainFamily::Sim;
  TextureFamily background_texture = TextureFamily::Checker;
  uint64_t texture_seed = 0;
  std::array<Rgb, kPaletteSize> palette{};
  float lighting_gain = 1.0f;     // [0.5, 1.5]
  float camera_jitter_px = 0.0f;
  float pixel_noise_std = 0.0f;
  float vignette_strength = 0.0f;
};

// Draws domain parameters for one family. The two families share no support:
// sim uses {checker, perlin-lo} textures with palette set A, zero vignette and
// low pixel noise; real uses {perlin-hi, stripes} with palette set B, nonzero
// vignette and strictly higher pixel noise.
DomainParams sample_domain(DomainFamily family, uint64_t seed);

// configured bounds, exposed for tests
inline constexpr float kSimNoiseLo = 0.002f, kSimNoiseHi = 0.010f;
inline constexpr float kRealNoiseLo = 0.015f, kRealNoiseHi = 0.030f;
inline constexpr float kRealVignetteLo = 0.10f, kRealVignetteHi = 0.30f;

}  // namespace bsr::render
