#include "bsr/nn/module.hpp"

#include <cmath>
#include <cstring>

#include "bsr/util/hash.hpp"

namespace bsr::nn {

TensorPtr Module::add_param(const std::string& pname, TensorPtr t) {
  if (frozen_) throw FrozenError("module '" + name_ + "' is frozen, cannot add parameters");
  for (const auto& [n, _] : params_)
    if (n == pname) throw Error("module '" + name_ + "': duplicate parameter name '" + pname + "'");
  t->requires_grad = true;
  t->check_finite("add_param");
  params_.emplace_back(pname, t);
  return t;
}

TensorPtr Module::param(const std::string& pname) const {
  for (const auto& [n, t] : params_)
    if (n == pname) return t;
  throw Error("module '" + name_ + "': no parameter named '" + pname + "'");
}

bool Module::has_param(const std::string& pname) const {
  for (const auto& [n, _] : params_)
    if (n == pname) return true;
  return false;
}

size_t Module::param_count() const {
  size_t n = 0;
  for (const auto& [_, t] : params_) n += t->data.size();
  return n;
}

void Module::zero_grads() {
  for (const auto& [_, t] : params_) t->zero_grad();
}

void Module::freeze() {
  frozen_ = true;
  for (auto& [_, t] : params_) {
    t->requires_grad = false;
    t->grad.clear();
  }
}

std::string Module::param_hash() const {
  Sha256 h;
  for (const auto& [n, t] : params_) {
    h.update(n);
    h.update(t->data.data(), t->data.size() * sizeof(float));
  }
  return h.hex();
}

TensorPtr init_uniform(Shape s, float lo, float hi, Rng& rng) {
  auto t = Tensor::create(std::move(s));
  for (auto& v : t->data) v = rng.uniformf(lo, hi);
  return t;
}

TensorPtr init_kaiming(Shape s, int64_t fan_in, Rng& rng) {
  float bound = std::sqrt(6.0f / float(fan_in));
  return init_uniform(std::move(s), -bound, bound, rng);
}

TensorPtr init_xavier(Shape s, int64_t fan_in, int64_t fan_out, Rng& rng) {
  float bound = std::sqrt(6.0f / float(fan_in + fan_out));
  return init_uniform(std::move(s), -bound, bound, rng);
}

}  // namespace bsr::nn
