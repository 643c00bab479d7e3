#pragma once

#include "bsr/render/domain.hpp"

namespace bsr::render {

// Scalar procedural texture in [0,1], a pure function of the world-plane
// point (u,v) and (family, seed). The background color is
// lerp(palette BgA, BgB, value).
float texture_value(TextureFamily fam, uint64_t seed, float u, float v);

Rgb background_color(const DomainParams& p, float u, float v);

}  // namespace bsr::render
