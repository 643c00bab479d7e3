#pragma once

#include <cstdint>
#include <vector>

#include "bsr/nn/module.hpp"

namespace bsr::nn {

struct AdamConfig {
  float lr = 1e-3f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float epsilon = 1e-8f;
};

// Standard bias-corrected Adam over one Module. Moments are keyed by
// parameter order; step() throws on a frozen module.
class Adam {
 public:
  Adam(Module& module, AdamConfig cfg = {});

  // applies one update from the populated grads, then zeroes them
  void step();
  int64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  Module& module_;
  AdamConfig cfg_;
  int64_t step_count_ = 0;
  std::vector<std::vector<float>> m_, v_;
};

}  // namespace bsr::nn
