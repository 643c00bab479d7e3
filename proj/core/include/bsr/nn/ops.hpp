#pragma once

#include "bsr/nn/tensor.hpp"

namespace bsr::nn {

// Elementwise / arithmetic
TensorPtr add(const TensorPtr& a, const TensorPtr& b);
TensorPtr sub(const TensorPtr& a, const TensorPtr& b);
TensorPtr mul(const TensorPtr& a, const TensorPtr& b);
TensorPtr add_scalar(const TensorPtr& a, float c);
TensorPtr mul_scalar(const TensorPtr& a, float c);
TensorPtr neg(const TensorPtr& a);
TensorPtr relu(const TensorPtr& a);
TensorPtr tanh_act(const TensorPtr& a);
TensorPtr exp_op(const TensorPtr& a);
TensorPtr square(const TensorPtr& a);
// clamp: gradient passes where lo < x < hi, zero outside
TensorPtr clamp_op(const TensorPtr& a, float lo, float hi);
// elementwise min; gradient follows the selected branch (ties -> a)
TensorPtr minimum(const TensorPtr& a, const TensorPtr& b);

// Dense algebra. x:(B,K), w:(K,N), b:(N)
TensorPtr matmul(const TensorPtr& x, const TensorPtr& w);
TensorPtr add_bias(const TensorPtr& x, const TensorPtr& b);
TensorPtr linear(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b);

// Structure
TensorPtr concat_cols(const std::vector<TensorPtr>& xs);  // (B,Di) -> (B,sum Di)
TensorPtr slice_cols(const TensorPtr& x, int64_t lo, int64_t hi);
TensorPtr reshape(const TensorPtr& x, Shape s);
TensorPtr detach(const TensorPtr& x);

// Reductions
TensorPtr sum_rows(const TensorPtr& x);  // (B,D) -> (B,1)
TensorPtr sum_all(const TensorPtr& x);   // -> (1)
TensorPtr mean_all(const TensorPtr& x);  // -> (1)

// Losses
// mean over all elements of (a-b)^2
TensorPtr mse_loss(const TensorPtr& pred, const TensorPtr& target);
// mean over rows of the per-row squared-error sum: (1/B) Σ_b ‖pred_b - target_b‖²
TensorPtr sq_err_sum_mean(const TensorPtr& pred, const TensorPtr& target);

// Image ops, NCHW. w:(O,C,kh,kw), b:(O)
TensorPtr conv2d(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b,
                 int stride = 1, int pad = 0);
// corner-aligned bilinear interpolation to (hout, wout)
TensorPtr bilinear_resize(const TensorPtr& x, int64_t hout, int64_t wout);
TensorPtr global_avg_pool(const TensorPtr& x);  // (B,C,H,W) -> (B,C)
TensorPtr concat_chan(const std::vector<TensorPtr>& xs);

}  // namespace bsr::nn
