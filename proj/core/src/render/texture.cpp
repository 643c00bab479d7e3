#include "bsr/render/texture.hpp"

#include <cmath>

namespace bsr::render {

namespace {

// lattice value in [0,1) from integer cell coordinates
float lattice(uint64_t seed, int64_t ix, int64_t iy) {
  uint64_t h = splitmix64(seed ^ splitmix64((uint64_t(ix) * 0x9e3779b97f4a7c15ULL) ^
                                            (uint64_t(iy) + 0x165667b19e3779f9ULL)));
  return float(h >> 40) / float(1 << 24);
}

float smoothstep(float t) { return t * t * (3.0f - 2.0f * t); }

// bilinear-smoothed value noise
float value_noise(uint64_t seed, float u, float v, float cell) {
  float fu = u / cell, fv = v / cell;
  int64_t iu = int64_t(std::floor(fu)), iv = int64_t(std::floor(fv));
  float tu = smoothstep(fu - float(iu)), tv = smoothstep(fv - float(iv));
  float a = lattice(seed, iu, iv), b = lattice(seed, iu + 1, iv);
  float c = lattice(seed, iu, iv + 1), d = lattice(seed, iu + 1, iv + 1);
  return (a * (1 - tu) + b * tu) * (1 - tv) + (c * (1 - tu) + d * tu) * tv;
}

float octaves(uint64_t seed, float u, float v, float base_cell, int n) {
  float sum = 0, amp = 1, norm = 0, cell = base_cell;
  for (int i = 0; i < n; ++i) {
    sum += amp * value_noise(splitmix64(seed + uint64_t(i) * 1315423911ULL), u, v, cell);
    norm += amp;
    amp *= 0.5f;
    cell *= 0.5f;
  }
  return sum / norm;
}

}  // namespace

float texture_value(TextureFamily fam, uint64_t seed, float u, float v) {
  Rng prm(derive_seed(seed, 0x7e27u));
  switch (fam) {
    case TextureFamily::Checker: {
      float period = prm.uniformf(0.04f, 0.08f);
      float pu = prm.uniformf(0.0f, period), pv = prm.uniformf(0.0f, period);
      int64_t cu = int64_t(std::floor((u + pu) / period));
      int64_t cv = int64_t(std::floor((v + pv) / period));
      return ((cu + cv) & 1) ? 1.0f : 0.0f;
    }
    case TextureFamily::PerlinLo:
      return octaves(seed, u, v, 0.10f, 2);
    case TextureFamily::PerlinHi:
      return octaves(seed, u, v, 0.045f, 4);
    case TextureFamily::Stripes: {
      float angle = prm.uniformf(0.0f, 3.14159265f);
      float period = prm.uniformf(0.02f, 0.05f);
      float phase = prm.uniformf(0.0f, period);
      float t = u * std::cos(angle) + v * std::sin(angle) + phase;
      float m = t / period - std::floor(t / period);
      return m < 0.5f ? 0.0f : 1.0f;
    }
  }
  return 0.0f;
}

Rgb background_color(const DomainParams& p, float u, float v) {
  float t = texture_value(p.background_texture, p.texture_seed, u, v);
  const Rgb& a = p.palette[kPalBgA];
  const Rgb& b = p.palette[kPalBgB];
  return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t};
}

}  // namespace bsr::render
