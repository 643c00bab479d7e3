#include "bsr/nn/ops.hpp"

#include <cmath>
#include <cstring>

#include "gemm.hpp"

namespace bsr::nn {

namespace {

TensorPtr make_node(Shape s, std::vector<TensorPtr> parents) {
  auto out = Tensor::create(std::move(s));
  if (grad_enabled()) {
    bool need = false;
    for (const auto& p : parents)
      if (p->needs_grad()) need = true;
    if (need) out->parents = std::move(parents);
  }
  return out;
}

void require_same_shape(const TensorPtr& a, const TensorPtr& b, const char* who) {
  if (a->shape != b->shape)
    throw ShapeError(std::string(who) + ": shape mismatch " + shape_str(a->shape) + " vs " +
                     shape_str(b->shape));
}

void require_rank(const TensorPtr& x, size_t r, const char* who) {
  if (x->rank() != r)
    throw ShapeError(std::string(who) + ": expected rank " + std::to_string(r) +
                     " tensor, got shape " + shape_str(x->shape));
}

}  // namespace

TensorPtr add(const TensorPtr& a, const TensorPtr& b) {
  require_same_shape(a, b, "add");
  auto out = make_node(a->shape, {a, b});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = a->data[i] + b->data[i];
  out->check_finite("add");
  if (!out->parents.empty()) {
    Tensor *pa = a.get(), *pb = b.get();
    out->backward_fn = [pa, pb](Tensor& self) {
      for (Tensor* p : {pa, pb}) {
        if (!p->needs_grad()) continue;
        p->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) p->grad[i] += self.grad[i];
      }
    };
  }
  return out;
}

TensorPtr sub(const TensorPtr& a, const TensorPtr& b) {
  require_same_shape(a, b, "sub");
  auto out = make_node(a->shape, {a, b});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = a->data[i] - b->data[i];
  out->check_finite("sub");
  if (!out->parents.empty()) {
    Tensor *pa = a.get(), *pb = b.get();
    out->backward_fn = [pa, pb](Tensor& self) {
      if (pa->needs_grad()) {
        pa->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) pa->grad[i] += self.grad[i];
      }
      if (pb->needs_grad()) {
        pb->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) pb->grad[i] -= self.grad[i];
      }
    };
  }
  return out;
}

TensorPtr mul(const TensorPtr& a, const TensorPtr& b) {
  require_same_shape(a, b, "mul");
  auto out = make_node(a->shape, {a, b});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = a->data[i] * b->data[i];
  out->check_finite("mul");
  if (!out->parents.empty()) {
    Tensor *pa = a.get(), *pb = b.get();
    out->backward_fn = [pa, pb](Tensor& self) {
      if (pa->needs_grad()) {
        pa->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) pa->grad[i] += self.grad[i] * pb->data[i];
      }
      if (pb->needs_grad()) {
        pb->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) pb->grad[i] += self.grad[i] * pa->data[i];
      }
    };
  }
  return out;
}

TensorPtr add_scalar(const TensorPtr& a, float c) {
  auto out = make_node(a->shape, {a});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = a->data[i] + c;
  out->check_finite("add_scalar");
  if (!out->parents.empty()) {
    Tensor* pa = a.get();
    out->backward_fn = [pa](Tensor& self) {
      pa->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i) pa->grad[i] += self.grad[i];
    };
  }
  return out;
}

TensorPtr mul_scalar(const TensorPtr& a, float c) {
  auto out = make_node(a->shape, {a});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = a->data[i] * c;
  out->check_finite("mul_scalar");
  if (!out->parents.empty()) {
    Tensor* pa = a.get();
    out->backward_fn = [pa, c](Tensor& self) {
      pa->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i) pa->grad[i] += self.grad[i] * c;
    };
  }
  return out;
}

TensorPtr neg(const TensorPtr& a) { return mul_scalar(a, -1.0f); }

TensorPtr relu(const TensorPtr& a) {
  auto out = make_node(a->shape, {a});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = a->data[i] > 0 ? a->data[i] : 0.0f;
  out->check_finite("relu");
  if (!out->parents.empty()) {
    Tensor* pa = a.get();
    out->backward_fn = [pa](Tensor& self) {
      pa->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i)
        if (pa->data[i] > 0) pa->grad[i] += self.grad[i];
    };
  }
  return out;
}

TensorPtr tanh_act(const TensorPtr& a) {
  auto out = make_node(a->shape, {a});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = std::tanh(a->data[i]);
  out->check_finite("tanh");
  if (!out->parents.empty()) {
    Tensor* pa = a.get();
    out->backward_fn = [pa](Tensor& self) {
      pa->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i) {
        float y = self.data[i];
        pa->grad[i] += self.grad[i] * (1.0f - y * y);
      }
    };
  }
  return out;
}

TensorPtr exp_op(const TensorPtr& a) {
  auto out = make_node(a->shape, {a});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = std::exp(a->data[i]);
  out->check_finite("exp");
  if (!out->parents.empty()) {
    Tensor* pa = a.get();
    out->backward_fn = [pa](Tensor& self) {
      pa->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i) pa->grad[i] += self.grad[i] * self.data[i];
    };
  }
  return out;
}

TensorPtr square(const TensorPtr& a) {
  auto out = make_node(a->shape, {a});
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = a->data[i] * a->data[i];
  out->check_finite("square");
  if (!out->parents.empty()) {
    Tensor* pa = a.get();
    out->backward_fn = [pa](Tensor& self) {
      pa->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i)
        pa->grad[i] += self.grad[i] * 2.0f * pa->data[i];
    };
  }
  return out;
}

TensorPtr clamp_op(const TensorPtr& a, float lo, float hi) {
  if (lo > hi) throw Error("clamp: lo > hi");
  auto out = make_node(a->shape, {a});
  for (size_t i = 0; i < out->data.size(); ++i)
    out->data[i] = std::min(hi, std::max(lo, a->data[i]));
  out->check_finite("clamp");
  if (!out->parents.empty()) {
    Tensor* pa = a.get();
    out->backward_fn = [pa, lo, hi](Tensor& self) {
      pa->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i)
        if (pa->data[i] > lo && pa->data[i] < hi) pa->grad[i] += self.grad[i];
    };
  }
  return out;
}

TensorPtr minimum(const TensorPtr& a, const TensorPtr& b) {
  require_same_shape(a, b, "minimum");
  auto out = make_node(a->shape, {a, b});
  for (size_t i = 0; i < out->data.size(); ++i)
    out->data[i] = a->data[i] <= b->data[i] ? a->data[i] : b->data[i];
  out->check_finite("minimum");
  if (!out->parents.empty()) {
    Tensor *pa = a.get(), *pb = b.get();
    out->backward_fn = [pa, pb](Tensor& self) {
      if (pa->needs_grad()) pa->ensure_grad();
      if (pb->needs_grad()) pb->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i) {
        if (pa->data[i] <= pb->data[i]) {
          if (pa->needs_grad()) pa->grad[i] += self.grad[i];
        } else if (pb->needs_grad()) {
          pb->grad[i] += self.grad[i];
        }
      }
    };
  }
  return out;
}

TensorPtr matmul(const TensorPtr& x, const TensorPtr& w) {
  require_rank(x, 2, "matmul");
  require_rank(w, 2, "matmul");
  if (x->dim(1) != w->dim(0))
    throw ShapeError("matmul: inner dimensions disagree, " + shape_str(x->shape) + " x " +
                     shape_str(w->shape));
  int64_t m = x->dim(0), k = x->dim(1), n = w->dim(1);
  auto out = make_node({m, n}, {x, w});
  detail::gemm_rm(x->data.data(), m, k, w->data.data(), n, out->data.data());
  out->check_finite("matmul");
  if (!out->parents.empty()) {
    Tensor *px = x.get(), *pw = w.get();
    out->backward_fn = [px, pw, m, k, n](Tensor& self) {
      if (px->needs_grad()) {
        px->ensure_grad();
        detail::gemm_a_bt(self.grad.data(), m, n, pw->data.data(), k, px->grad.data(), true);
      }
      if (pw->needs_grad()) {
        pw->ensure_grad();
        detail::gemm_at_b(px->data.data(), m, k, self.grad.data(), n, pw->grad.data(), true);
      }
    };
  }
  return out;
}

TensorPtr add_bias(const TensorPtr& x, const TensorPtr& b) {
  require_rank(x, 2, "add_bias");
  require_rank(b, 1, "add_bias");
  if (x->dim(1) != b->dim(0))
    throw ShapeError("add_bias: " + shape_str(x->shape) + " vs bias " + shape_str(b->shape));
  int64_t m = x->dim(0), n = x->dim(1);
  auto out = make_node(x->shape, {x, b});
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) out->data[i * n + j] = x->data[i * n + j] + b->data[j];
  out->check_finite("add_bias");
  if (!out->parents.empty()) {
    Tensor *px = x.get(), *pb = b.get();
    out->backward_fn = [px, pb, m, n](Tensor& self) {
      if (px->needs_grad()) {
        px->ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) px->grad[i] += self.grad[i];
      }
      if (pb->needs_grad()) {
        pb->ensure_grad();
        for (int64_t i = 0; i < m; ++i)
          for (int64_t j = 0; j < n; ++j) pb->grad[j] += self.grad[i * n + j];
      }
    };
  }
  return out;
}

TensorPtr linear(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b) {
  return add_bias(matmul(x, w), b);
}

TensorPtr concat_cols(const std::vector<TensorPtr>& xs) {
  if (xs.empty()) throw Error("concat_cols: empty input list");
  int64_t rows = xs[0]->dim(0), total = 0;
  for (const auto& x : xs) {
    require_rank(x, 2, "concat_cols");
    if (x->dim(0) != rows)
      throw ShapeError("concat_cols: row mismatch " + shape_str(x->shape) + " vs rows " +
                       std::to_string(rows));
    total += x->dim(1);
  }
  std::vector<TensorPtr> parents(xs.begin(), xs.end());
  auto out = make_node({rows, total}, std::move(parents));
  int64_t off = 0;
  for (const auto& x : xs) {
    int64_t d = x->dim(1);
    for (int64_t r = 0; r < rows; ++r)
      std::memcpy(out->data.data() + r * total + off, x->data.data() + r * d,
                  size_t(d) * sizeof(float));
    off += d;
  }
  out->check_finite("concat_cols");
  if (!out->parents.empty()) {
    std::vector<Tensor*> ps;
    std::vector<int64_t> dims;
    for (const auto& x : xs) {
      ps.push_back(x.get());
      dims.push_back(x->dim(1));
    }
    out->backward_fn = [ps, dims, rows, total](Tensor& self) {
      int64_t off2 = 0;
      for (size_t i = 0; i < ps.size(); ++i) {
        int64_t d = dims[i];
        if (ps[i]->needs_grad()) {
          ps[i]->ensure_grad();
          for (int64_t r = 0; r < rows; ++r)
            for (int64_t j = 0; j < d; ++j)
              ps[i]->grad[r * d + j] += self.grad[r * total + off2 + j];
        }
        off2 += d;
      }
    };
  }
  return out;
}

TensorPtr slice_cols(const TensorPtr& x, int64_t lo, int64_t hi) {
  require_rank(x, 2, "slice_cols");
  if (lo < 0 || hi > x->dim(1) || lo >= hi)
    throw ShapeError("slice_cols: range [" + std::to_string(lo) + "," + std::to_string(hi) +
                     ") invalid for shape " + shape_str(x->shape));
  int64_t rows = x->dim(0), d = x->dim(1), w = hi - lo;
  auto out = make_node({rows, w}, {x});
  for (int64_t r = 0; r < rows; ++r)
    std::memcpy(out->data.data() + r * w, x->data.data() + r * d + lo, size_t(w) * sizeof(float));
  if (!out->parents.empty()) {
    Tensor* px = x.get();
    out->backward_fn = [px, rows, d, w, lo](Tensor& self) {
      px->ensure_grad();
      for (int64_t r = 0; r < rows; ++r)
        for (int64_t j = 0; j < w; ++j) px->grad[r * d + lo + j] += self.grad[r * w + j];
    };
  }
  return out;
}

TensorPtr reshape(const TensorPtr& x, Shape s) {
  if (shape_numel(s) != x->numel())
    throw ShapeError("reshape: cannot view " + shape_str(x->shape) + " as " + shape_str(s));
  auto out = make_node(std::move(s), {x});
  out->data = x->data;
  if (!out->parents.empty()) {
    Tensor* px = x.get();
    out->backward_fn = [px](Tensor& self) {
      px->ensure_grad();
      for (size_t i = 0; i < self.grad.size(); ++i) px->grad[i] += self.grad[i];
    };
  }
  return out;
}

TensorPtr detach(const TensorPtr& x) {
  auto out = Tensor::create(x->shape);
  out->data = x->data;
  return out;
}

TensorPtr sum_rows(const TensorPtr& x) {
  require_rank(x, 2, "sum_rows");
  int64_t rows = x->dim(0), d = x->dim(1);
  auto out = make_node({rows, 1}, {x});
  for (int64_t r = 0; r < rows; ++r) {
    float s = 0;
    for (int64_t j = 0; j < d; ++j) s += x->data[r * d + j];
    out->data[r] = s;
  }
  out->check_finite("sum_rows");
  if (!out->parents.empty()) {
    Tensor* px = x.get();
    out->backward_fn = [px, rows, d](Tensor& self) {
      px->ensure_grad();
      for (int64_t r = 0; r < rows; ++r)
        for (int64_t j = 0; j < d; ++j) px->grad[r * d + j] += self.grad[r];
    };
  }
  return out;
}

TensorPtr sum_all(const TensorPtr& x) {
  auto out = make_node({1}, {x});
  double s = 0;
  for (float v : x->data) s += v;
  out->data[0] = float(s);
  out->check_finite("sum_all");
  if (!out->parents.empty()) {
    Tensor* px = x.get();
    out->backward_fn = [px](Tensor& self) {
      px->ensure_grad();
      for (size_t i = 0; i < px->grad.size(); ++i) px->grad[i] += self.grad[0];
    };
  }
  return out;
}

TensorPtr mean_all(const TensorPtr& x) {
  return mul_scalar(sum_all(x), 1.0f / float(x->numel()));
}

TensorPtr mse_loss(const TensorPtr& pred, const TensorPtr& target) {
  require_same_shape(pred, target, "mse_loss");
  return mean_all(square(sub(pred, target)));
}

TensorPtr sq_err_sum_mean(const TensorPtr& pred, const TensorPtr& target) {
  require_same_shape(pred, target, "sq_err_sum_mean");
  require_rank(pred, 2, "sq_err_sum_mean");
  return mul_scalar(sum_all(square(sub(pred, target))), 1.0f / float(pred->dim(0)));
}

// ---------------------------------------------------------------------------
// convolution

namespace {

// col layout: (C*kh*kw, oh*ow) row-major
void im2col(const float* x, int64_t c, int64_t h, int64_t w, int64_t kh, int64_t kw,
            int stride, int pad, int64_t oh, int64_t ow, float* col) {
  for (int64_t ch = 0; ch < c; ++ch) {
    for (int64_t ki = 0; ki < kh; ++ki) {
      for (int64_t kj = 0; kj < kw; ++kj) {
        float* dst = col + ((ch * kh + ki) * kw + kj) * oh * ow;
        for (int64_t oy = 0; oy < oh; ++oy) {
          int64_t iy = oy * stride - pad + ki;
          if (iy < 0 || iy >= h) {
            std::memset(dst + oy * ow, 0, size_t(ow) * sizeof(float));
            continue;
          }
          const float* src = x + (ch * h + iy) * w;
          for (int64_t ox = 0; ox < ow; ++ox) {
            int64_t ix = ox * stride - pad + kj;
            dst[oy * ow + ox] = (ix >= 0 && ix < w) ? src[ix] : 0.0f;
          }
        }
      }
    }
  }
}

void col2im_add(const float* col, int64_t c, int64_t h, int64_t w, int64_t kh, int64_t kw,
                int stride, int pad, int64_t oh, int64_t ow, float* x) {
  for (int64_t ch = 0; ch < c; ++ch) {
    for (int64_t ki = 0; ki < kh; ++ki) {
      for (int64_t kj = 0; kj < kw; ++kj) {
        const float* src = col + ((ch * kh + ki) * kw + kj) * oh * ow;
        for (int64_t oy = 0; oy < oh; ++oy) {
          int64_t iy = oy * stride - pad + ki;
          if (iy < 0 || iy >= h) continue;
          float* dst = x + (ch * h + iy) * w;
          for (int64_t ox = 0; ox < ow; ++ox) {
            int64_t ix = ox * stride - pad + kj;
            if (ix >= 0 && ix < w) dst[ix] += src[oy * ow + ox];
          }
        }
      }
    }
  }
}

}  // namespace

TensorPtr conv2d(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b, int stride,
                 int pad) {
  require_rank(x, 4, "conv2d");
  require_rank(w, 4, "conv2d");
  require_rank(b, 1, "conv2d");
  if (x->dim(1) != w->dim(1))
    throw ShapeError("conv2d: input channels " + std::to_string(x->dim(1)) +
                     " != weight channels " + std::to_string(w->dim(1)) + " (input " +
                     shape_str(x->shape) + ", weight " + shape_str(w->shape) + ")");
  if (w->dim(0) != b->dim(0))
    throw ShapeError("conv2d: bias " + shape_str(b->shape) + " vs weight " + shape_str(w->shape));
  if (stride < 1) throw Error("conv2d: stride must be >= 1");
  int64_t bn = x->dim(0), c = x->dim(1), h = x->dim(2), ww = x->dim(3);
  int64_t o = w->dim(0), kh = w->dim(2), kw = w->dim(3);
  int64_t oh = (h + 2 * pad - kh) / stride + 1;
  int64_t ow = (ww + 2 * pad - kw) / stride + 1;
  if (oh <= 0 || ow <= 0)
    throw ShapeError("conv2d: kernel " + shape_str(w->shape) + " does not fit input " +
                     shape_str(x->shape) + " with stride " + std::to_string(stride) + " pad " +
                     std::to_string(pad));

  auto out = make_node({bn, o, oh, ow}, {x, w, b});
  int64_t ckk = c * kh * kw, hw = oh * ow;
  std::vector<float> col(size_t(ckk * hw));
  for (int64_t n = 0; n < bn; ++n) {
    im2col(x->data.data() + n * c * h * ww, c, h, ww, kh, kw, stride, pad, oh, ow, col.data());
    // (O,CKK) x (CKK,HW) -> (O,HW)
    detail::gemm_rm(w->data.data(), o, ckk, col.data(), hw, out->data.data() + n * o * hw);
    float* dst = out->data.data() + n * o * hw;
    for (int64_t oc = 0; oc < o; ++oc) {
      float bias = b->data[oc];
      for (int64_t i = 0; i < hw; ++i) dst[oc * hw + i] += bias;
    }
  }
  out->check_finite("conv2d");

  if (!out->parents.empty()) {
    Tensor *px = x.get(), *pw = w.get(), *pb = b.get();
    out->backward_fn = [px, pw, pb, bn, c, h, ww, o, kh, kw, stride, pad, oh, ow,
                        ckk, hw](Tensor& self) {
      std::vector<float> col(size_t(ckk * hw));
      std::vector<float> dcol(size_t(ckk * hw));
      if (px->needs_grad()) px->ensure_grad();
      if (pw->needs_grad()) pw->ensure_grad();
      if (pb->needs_grad()) pb->ensure_grad();
      for (int64_t n = 0; n < bn; ++n) {
        const float* dout = self.grad.data() + n * o * hw;
        if (pw->needs_grad() || px->needs_grad())
          im2col(px->data.data() + n * c * h * ww, c, h, ww, kh, kw, stride, pad, oh, ow,
                 col.data());
        if (pw->needs_grad()) {
          // dW (O,CKK) += dOut (O,HW) * col^T (HW,CKK)
          detail::gemm_a_bt(dout, o, hw, col.data(), ckk, pw->grad.data(), true);
        }
        if (pb->needs_grad()) {
          for (int64_t oc = 0; oc < o; ++oc) {
            float s = 0;
            for (int64_t i = 0; i < hw; ++i) s += dout[oc * hw + i];
            pb->grad[oc] += s;
          }
        }
        if (px->needs_grad()) {
          // dcol (CKK,HW) = W^T (CKK,O) * dOut (O,HW)
          detail::gemm_at_b(pw->data.data(), o, ckk, dout, hw, dcol.data(), false);
          col2im_add(dcol.data(), c, h, ww, kh, kw, stride, pad, oh, ow,
                     px->grad.data() + n * c * h * ww);
        }
      }
    };
  }
  return out;
}

TensorPtr bilinear_resize(const TensorPtr& x, int64_t hout, int64_t wout) {
  require_rank(x, 4, "bilinear_resize");
  if (hout < 1 || wout < 1) throw Error("bilinear_resize: output extents must be positive");
  int64_t bn = x->dim(0), c = x->dim(1), h = x->dim(2), w = x->dim(3);
  auto out = make_node({bn, c, hout, wout}, {x});

  // corner-aligned source coordinates
  auto src_of = [](int64_t i, int64_t nin, int64_t nout) -> double {
    if (nout == 1) return 0.0;
    return double(i) * double(nin - 1) / double(nout - 1);
  };

  for (int64_t oy = 0; oy < hout; ++oy) {
    double sy = src_of(oy, h, hout);
    int64_t y0 = int64_t(sy);
    if (y0 > h - 2) y0 = h >= 2 ? h - 2 : 0;
    double fy = sy - double(y0);
    if (h == 1) fy = 0;
    for (int64_t ox = 0; ox < wout; ++ox) {
      double sx = src_of(ox, w, wout);
      int64_t x0 = int64_t(sx);
      if (x0 > w - 2) x0 = w >= 2 ? w - 2 : 0;
      double fx = sx - double(x0);
      if (w == 1) fx = 0;
      int64_t y1 = h >= 2 ? y0 + 1 : y0, x1 = w >= 2 ? x0 + 1 : x0;
      float w00 = float((1 - fy) * (1 - fx)), w01 = float((1 - fy) * fx);
      float w10 = float(fy * (1 - fx)), w11 = float(fy * fx);
      for (int64_t n = 0; n < bn; ++n) {
        for (int64_t ch = 0; ch < c; ++ch) {
          const float* src = x->data.data() + (n * c + ch) * h * w;
          out->data[((n * c + ch) * hout + oy) * wout + ox] =
              w00 * src[y0 * w + x0] + w01 * src[y0 * w + x1] + w10 * src[y1 * w + x0] +
              w11 * src[y1 * w + x1];
        }
      }
    }
  }
  out->check_finite("bilinear_resize");

  if (!out->parents.empty()) {
    Tensor* px = x.get();
    out->backward_fn = [px, bn, c, h, w, hout, wout, src_of](Tensor& self) {
      px->ensure_grad();
      for (int64_t oy = 0; oy < hout; ++oy) {
        double sy = src_of(oy, h, hout);
        int64_t y0 = int64_t(sy);
        if (y0 > h - 2) y0 = h >= 2 ? h - 2 : 0;
        double fy = sy - double(y0);
        if (h == 1) fy = 0;
        for (int64_t ox = 0; ox < wout; ++ox) {
          double sx = src_of(ox, w, wout);
          int64_t x0 = int64_t(sx);
          if (x0 > w - 2) x0 = w >= 2 ? w - 2 : 0;
          double fx = sx - double(x0);
          if (w == 1) fx = 0;
          int64_t y1 = h >= 2 ? y0 + 1 : y0, x1 = w >= 2 ? x0 + 1 : x0;
          float w00 = float((1 - fy) * (1 - fx)), w01 = float((1 - fy) * fx);
          float w10 = float(fy * (1 - fx)), w11 = float(fy * fx);
          for (int64_t n = 0; n < bn; ++n) {
            for (int64_t ch = 0; ch < c; ++ch) {
              float g = self.grad[((n * c + ch) * hout + oy) * wout + ox];
              float* dst = px->grad.data() + (n * c + ch) * h * w;
              dst[y0 * w + x0] += w00 * g;
              dst[y0 * w + x1] += w01 * g;
              dst[y1 * w + x0] += w10 * g;
              dst[y1 * w + x1] += w11 * g;
            }
          }
        }
      }
    };
  }
  return out;
}

TensorPtr global_avg_pool(const TensorPtr& x) {
  require_rank(x, 4, "global_avg_pool");
  int64_t bn = x->dim(0), c = x->dim(1), hw = x->dim(2) * x->dim(3);
  auto out = make_node({bn, c}, {x});
  for (int64_t n = 0; n < bn; ++n)
    for (int64_t ch = 0; ch < c; ++ch) {
      const float* src = x->data.data() + (n * c + ch) * hw;
      float s = 0;
      for (int64_t i = 0; i < hw; ++i) s += src[i];
      out->data[n * c + ch] = s / float(hw);
    }
  out->check_finite("global_avg_pool");
  if (!out->parents.empty()) {
    Tensor* px = x.get();
    out->backward_fn = [px, bn, c, hw](Tensor& self) {
      px->ensure_grad();
      for (int64_t n = 0; n < bn; ++n)
        for (int64_t ch = 0; ch < c; ++ch) {
          float g = self.grad[n * c + ch] / float(hw);
          float* dst = px->grad.data() + (n * c + ch) * hw;
          for (int64_t i = 0; i < hw; ++i) dst[i] += g;
        }
    };
  }
  return out;
}

TensorPtr concat_chan(const std::vector<TensorPtr>& xs) {
  if (xs.empty()) throw Error("concat_chan: empty input list");
  int64_t bn = xs[0]->dim(0), h = xs[0]->dim(2), w = xs[0]->dim(3), ctot = 0;
  for (const auto& x : xs) {
    require_rank(x, 4, "concat_chan");
    if (x->dim(0) != bn || x->dim(2) != h || x->dim(3) != w)
      throw ShapeError("concat_chan: incompatible shapes " + shape_str(xs[0]->shape) + " vs " +
                       shape_str(x->shape));
    ctot += x->dim(1);
  }
  std::vector<TensorPtr> parents(xs.begin(), xs.end());
  auto out = make_node({bn, ctot, h, w}, std::move(parents));
  int64_t hw = h * w, coff = 0;
  for (const auto& x : xs) {
    int64_t c = x->dim(1);
    for (int64_t n = 0; n < bn; ++n)
      std::memcpy(out->data.data() + (n * ctot + coff) * hw, x->data.data() + n * c * hw,
                  size_t(c * hw) * sizeof(float));
    coff += c;
  }
  out->check_finite("concat_chan");
  if (!out->parents.empty()) {
    std::vector<Tensor*> ps;
    std::vector<int64_t> cs;
    for (const auto& x : xs) {
      ps.push_back(x.get());
      cs.push_back(x->dim(1));
    }
    out->backward_fn = [ps, cs, bn, ctot, hw](Tensor& self) {
      int64_t coff2 = 0;
      for (size_t i = 0; i < ps.size(); ++i) {
        int64_t c = cs[i];
        if (ps[i]->needs_grad()) {
          ps[i]->ensure_grad();
          for (int64_t n = 0; n < bn; ++n) {
            const float* src = self.grad.data() + (n * ctot + coff2) * hw;
            float* dst = ps[i]->grad.data() + n * c * hw;
            for (int64_t j = 0; j < c * hw; ++j) dst[j] += src[j];
          }
        }
        coff2 += c;
      }
    };
  }
  return out;
}

}  // namespace bsr::nn
