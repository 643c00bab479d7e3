#include "bsr/render/domain.hpp"

#include <cmath>

namespace bsr::render {

namespace {

Rgb hsv(float h, float s, float v) {
  h = std::fmod(h, 360.0f);
  if (h < 0) h += 360.0f;
  float c = v * s;
  float x = c * (1.0f - std::fabs(std::fmod(h / 60.0f, 2.0f) - 1.0f));
  float m = v - c;
  float r = 0, g = 0, b = 0;
  if (h < 60) { r = c; g = x; }
  else if (h < 120) { r = x; g = c; }
  else if (h < 180) { g = c; b = x; }
  else if (h < 240) { g = x; b = c; }
  else if (h < 300) { r = x; b = c; }
  else { r = c; b = x; }
  return {r + m, g + m, b + m};
}

struct HueBand {
  float lo, hi;        // hue range, degrees
  float s_lo, s_hi;    // saturation range
  float v_lo, v_hi;    // value range
};

Rgb draw_color(const HueBand& band, Rng& rng) {
  return hsv(rng.uniformf(band.lo, band.hi), rng.uniformf(band.s_lo, band.s_hi),
             rng.uniformf(band.v_lo, band.v_hi));
}

// Per-slot hue bands. The two families use different bands for every slot,
// which keeps the appearance gap unambiguous.
const HueBand kSimBands[kPaletteSize] = {
    {0, 25, 0.75f, 0.95f, 0.80f, 0.95f},     // cube: red
    {210, 240, 0.55f, 0.80f, 0.55f, 0.80f},  // platform: blue
    {48, 65, 0.80f, 0.95f, 0.80f, 0.95f},    // handle: yellow
    {285, 315, 0.55f, 0.80f, 0.65f, 0.85f},  // door: violet
    {25, 40, 0.50f, 0.70f, 0.40f, 0.60f},    // drawer body: brown
    {0, 360, 0.00f, 0.06f, 0.92f, 1.00f},    // ee: near-white
    {90, 130, 0.08f, 0.20f, 0.45f, 0.65f},   // background a: dull green-gray
    {90, 130, 0.08f, 0.20f, 0.20f, 0.40f},   // background b
};

const HueBand kRealBands[kPaletteSize] = {
    {165, 195, 0.60f, 0.90f, 0.60f, 0.85f},  // cube: teal
    {15, 45, 0.65f, 0.90f, 0.60f, 0.85f},    // platform: orange
    {330, 355, 0.60f, 0.85f, 0.60f, 0.85f},  // handle: pink
    {95, 130, 0.50f, 0.80f, 0.45f, 0.70f},   // door: green
    {200, 225, 0.25f, 0.45f, 0.25f, 0.45f},  // drawer body: slate
    {0, 360, 0.00f, 0.08f, 0.02f, 0.12f},    // ee: near-black
    {220, 260, 0.15f, 0.30f, 0.50f, 0.70f},  // background a: cool gray-blue
    {20, 50, 0.15f, 0.30f, 0.25f, 0.45f},    // background b: warm gray
};

}  // namespace

DomainParams sample_domain(DomainFamily family, uint64_t seed) {
  Rng rng(derive_seed(seed, 0xd0a1u, uint64_t(family)));
  DomainParams p;
  p.family = family;
  p.texture_seed = rng.next_u64();

  const HueBand* bands = family == DomainFamily::Sim ? kSimBands : kRealBands;
  for (int i = 0; i < kPaletteSize; ++i) p.palette[size_t(i)] = draw_color(bands[i], rng);

  if (family == DomainFamily::Sim) {
    p.background_texture =
        rng.uniform01() < 0.5 ? TextureFamily::Checker : TextureFamily::PerlinLo;
    p.lighting_gain = rng.uniformf(0.9f, 1.1f);
    p.camera_jitter_px = rng.uniformf(0.0f, 0.5f);
    p.pixel_noise_std = rng.uniformf(kSimNoiseLo, kSimNoiseHi);
    p.vignette_strength = 0.0f;
  } else {
    p.background_texture =
        rng.uniform01() < 0.5 ? TextureFamily::PerlinHi : TextureFamily::Stripes;
    p.lighting_gain = rng.uniformf(0.7f, 1.3f);
    p.camera_jitter_px = rng.uniformf(0.5f, 1.5f);
    p.pixel_noise_std = rng.uniformf(kRealNoiseLo, kRealNoiseHi);
    p.vignette_strength = rng.uniformf(kRealVignetteLo, kRealVignetteHi);
  }
  return p;
}

}  // namespace bsr::render
