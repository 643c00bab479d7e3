#include "bsr/nn/adam.hpp"

#include <cmath>

namespace bsr::nn {

Adam::Adam(Module& module, AdamConfig cfg) : module_(module), cfg_(cfg) {
  m_.resize(module.params().size());
  v_.resize(module.params().size());
  for (size_t i = 0; i < module.params().size(); ++i) {
    size_t n = module.params()[i].second->data.size();
    m_[i].assign(n, 0.0f);
    v_[i].assign(n, 0.0f);
  }
}

void Adam::step() {
  if (module_.frozen())
    throw FrozenError("adam_step: module '" + module_.name() + "' is frozen");
  ++step_count_;
  double bc1 = 1.0 - std::pow(double(cfg_.beta1), double(step_count_));
  double bc2 = 1.0 - std::pow(double(cfg_.beta2), double(step_count_));
  for (size_t i = 0; i < module_.params().size(); ++i) {
    auto& t = module_.params()[i].second;
    if (t->grad.empty()) continue;  // parameter untouched by this graph
    auto& m = m_[i];
    auto& v = v_[i];
    for (size_t j = 0; j < t->data.size(); ++j) {
      float g = t->grad[j];
      if (!std::isfinite(g))
        throw NumericError("adam_step: non-finite gradient in parameter '" +
                           module_.params()[i].first + "'");
      m[j] = cfg_.beta1 * m[j] + (1.0f - cfg_.beta1) * g;
      v[j] = cfg_.beta2 * v[j] + (1.0f - cfg_.beta2) * g * g;
      float mhat = float(m[j] / bc1);
      float vhat = float(v[j] / bc2);
      t->data[j] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.epsilon);
    }
    t->zero_grad();
  }
}

}  // namespace bsr::nn
