#pragma once

// Internal row-major SGEMM used by the dense and convolution kernels.
// Work is split into deterministic row chunks, so outputs are identical
// for any worker count.

#include <Eigen/Core>

#include "bsr/util/parallel.hpp"

namespace bsr::nn::detail {

using CMatRM = Eigen::Map<const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using MatRM = Eigen::Map<Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

// C (M,N) = A (M,K) * B (K,N), optionally accumulating into C.
inline void gemm_rm(const float* a, int64_t m, int64_t k, const float* b, int64_t n,
                    float* c, bool accumulate = false) {
  auto run = [&](size_t lo, size_t hi) {
    int64_t rows = int64_t(hi - lo);
    if (rows <= 0) return;
    CMatRM A(a + lo * size_t(k), rows, k);
    CMatRM B(b, k, n);
    MatRM C(c + lo * size_t(n), rows, n);
    if (accumulate)
      C.noalias() += A * B;
    else
      C.noalias() = A * B;
  };
  if (workers() > 1 && m >= 64)
    parallel_chunks(0, size_t(m), run);
  else
    run(0, size_t(m));
}

// C (M,N) = A^T (M,K stored as K,M) * B (K,N)
inline void gemm_at_b(const float* a, int64_t k, int64_t m, const float* b, int64_t n,
                      float* c, bool accumulate = false) {
  CMatRM A(a, k, m);
  CMatRM B(b, k, n);
  MatRM C(c, m, n);
  if (accumulate)
    C.noalias() += A.transpose() * B;
  else
    C.noalias() = A.transpose() * B;
}

// C (M,N) = A (M,K) * B^T (K,N stored as N,K)
inline void gemm_a_bt(const float* a, int64_t m, int64_t k, const float* b, int64_t n,
                      float* c, bool accumulate = false) {
  auto run = [&](size_t lo, size_t hi) {
    int64_t rows = int64_t(hi - lo);
    if (rows <= 0) return;
    CMatRM A(a + lo * size_t(k), rows, k);
    CMatRM B(b, n, k);
    MatRM C(c + lo * size_t(n), rows, n);
    if (accumulate)
      C.noalias() += A * B.transpose();
    else
      C.noalias() = A * B.transpose();
  };
  if (workers() > 1 && m >= 64)
    parallel_chunks(0, size_t(m), run);
  else
    run(0, size_t(m));
}

}  // namespace bsr::nn::detail
