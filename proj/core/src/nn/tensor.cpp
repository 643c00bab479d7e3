#include "bsr/nn/tensor.hpp"

#include <cmath>
#include <unordered_set>

namespace bsr::nn {

std::string shape_str(const Shape& s) {
  std::string out = "[";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

int64_t shape_numel(const Shape& s) {
  int64_t n = 1;
  for (int64_t e : s) {
    if (e <= 0) throw ShapeError("tensor extents must be positive, got " + shape_str(s));
    n *= e;
  }
  return n;
}

TensorPtr Tensor::create(Shape s, bool requires_grad) {
  auto t = std::make_shared<Tensor>();
  t->shape = std::move(s);
  t->data.assign(size_t(shape_numel(t->shape)), 0.0f);
  t->requires_grad = requires_grad;
  return t;
}

TensorPtr Tensor::from_data(Shape s, std::vector<float> d, bool requires_grad) {
  int64_t n = shape_numel(s);
  if (n != int64_t(d.size()))
    throw ShapeError("from_data: shape " + shape_str(s) + " wants " + std::to_string(n) +
                     " values, got " + std::to_string(d.size()));
  auto t = std::make_shared<Tensor>();
  t->shape = std::move(s);
  t->data = std::move(d);
  t->requires_grad = requires_grad;
  return t;
}

TensorPtr Tensor::scalar(float v, bool requires_grad) {
  return from_data({1}, {v}, requires_grad);
}

TensorPtr Tensor::zeros(Shape s, bool requires_grad) { return create(std::move(s), requires_grad); }

TensorPtr Tensor::full(Shape s, float v, bool requires_grad) {
  auto t = create(std::move(s), requires_grad);
  std::fill(t->data.begin(), t->data.end(), v);
  return t;
}

void Tensor::ensure_grad() {
  if (grad.size() != data.size()) grad.assign(data.size(), 0.0f);
}

void Tensor::zero_grad() {
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0f);
}

float Tensor::item() const {
  if (data.size() != 1)
    throw ShapeError("item(): tensor is not scalar, shape " + shape_str(shape));
  return data[0];
}

void Tensor::check_finite(const char* who) const {
  for (float v : data) {
    if (!std::isfinite(v))
      throw NumericError(std::string(who) + ": non-finite value in tensor of shape " +
                         shape_str(shape));
  }
}

namespace {
thread_local bool g_grad_enabled = true;
}

bool grad_enabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : prev(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = prev; }

void backward(const TensorPtr& loss) {
  if (!loss) throw Error("backward: null tensor");
  if (loss->numel() != 1)
    throw ShapeError("backward: loss must be scalar, got shape " + shape_str(loss->shape));

  // iterative DFS topological sort over parents
  std::vector<Tensor*> order;
  std::unordered_set<Tensor*> seen;
  std::vector<std::pair<Tensor*, size_t>> stack;
  stack.emplace_back(loss.get(), 0);
  seen.insert(loss.get());
  while (!stack.empty()) {
    auto& [node, idx] = stack.back();
    if (idx < node->parents.size()) {
      Tensor* p = node->parents[idx].get();
      ++idx;
      if (p->backward_fn && !seen.count(p)) {
        seen.insert(p);
        stack.emplace_back(p, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  loss->ensure_grad();
  loss->grad[0] = 1.0f;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Tensor* t = *it;
    if (t->backward_fn && !t->grad.empty()) t->backward_fn(*t);
  }
}

}  // namespace bsr::nn
