#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bsr/util/error.hpp"

namespace bsr::nn {

using Shape = std::vector<int64_t>;

std::string shape_str(const Shape& s);
int64_t shape_numel(const Shape& s);

class Tensor;
using TensorPtr = std::shared_ptr<Tensor>;

// Dense float32 tensor, row-major. Doubles as a node in the define-by-run
// graph: ops fill `parents` and `backward_fn`, backward() walks the graph
// in reverse topological order.
class Tensor : public std::enable_shared_from_this<Tensor> {
 public:
  Shape shape;
  std::vector<float> data;
  std::vector<float> grad;  // allocated lazily; same length as data when present
  bool requires_grad = false;

  std::vector<TensorPtr> parents;
  // Distributes this->grad into the parents' grads.
  std::function<void(Tensor&)> backward_fn;

  static TensorPtr create(Shape s, bool requires_grad = false);
  static TensorPtr from_data(Shape s, std::vector<float> d, bool requires_grad = false);
  static TensorPtr scalar(float v, bool requires_grad = false);
  static TensorPtr zeros(Shape s, bool requires_grad = false);
  static TensorPtr full(Shape s, float v, bool requires_grad = false);

  int64_t numel() const { return int64_t(data.size()); }
  int64_t dim(size_t i) const { return shape.at(i); }
  size_t rank() const { return shape.size(); }

  bool needs_grad() const { return requires_grad || backward_fn != nullptr; }
  void ensure_grad();
  void zero_grad();
  float item() const;

  // Throws NumericError if any entry is non-finite. `who` names the op.
  void check_finite(const char* who) const;
};

// Thread-local autograd switch. Ops record the graph only while enabled.
bool grad_enabled();

struct NoGradGuard {
  NoGradGuard();
  ~NoGradGuard();
  bool prev;
};

// Reverse-mode sweep from a scalar loss. Populates grads on every
// requires_grad leaf reachable from `loss`.
void backward(const TensorPtr& loss);

}  // namespace bsr::nn
