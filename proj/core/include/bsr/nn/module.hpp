#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bsr/nn/tensor.hpp"
#include "bsr/util/rng.hpp"

namespace bsr::nn {

// Named, ordered parameter set. Once frozen, parameters can never be
// updated again (adam_step refuses) and their byte hash stays constant.
class Module {
 public:
  explicit Module(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  bool frozen() const { return frozen_; }

  TensorPtr add_param(const std::string& pname, TensorPtr t);
  TensorPtr param(const std::string& pname) const;
  bool has_param(const std::string& pname) const;
  const std::vector<std::pair<std::string, TensorPtr>>& params() const { return params_; }

  size_t param_count() const;  // total scalar count
  void zero_grads();
  void freeze();  // clears requires_grad on every parameter

  // SHA-256 over the ordered (name, payload) byte stream.
  std::string param_hash() const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, TensorPtr>> params_;
  bool frozen_ = false;
};

// Common initializers.
TensorPtr init_uniform(Shape s, float lo, float hi, Rng& rng);
// He-style fan-in scaling for relu stacks, Xavier-ish for tanh
TensorPtr init_kaiming(Shape s, int64_t fan_in, Rng& rng);
TensorPtr init_xavier(Shape s, int64_t fan_in, int64_t fan_out, Rng& rng);

}  // namespace bsr::nn
