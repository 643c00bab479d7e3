#include "bsr/util/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace bsr {

static std::atomic<int> g_workers{1};

void set_workers(int n) { g_workers.store(n < 1 ? 1 : n); }
int workers() { return g_workers.load(); }

void parallel_chunks(size_t begin, size_t end,
                     const std::function<void(size_t, size_t)>& fn) {
  if (end <= begin) return;
  size_t n = end - begin;
  int w = workers();
  if (w <= 1 || n < 2) {
    fn(begin, end);
    return;
  }
  size_t chunks = std::min<size_t>(size_t(w), n);
  size_t per = (n + chunks - 1) / chunks;
  std::vector<std::thread> ts;
  ts.reserve(chunks);
  for (size_t c = 0; c < chunks; ++c) {
    size_t lo = begin + c * per;
    size_t hi = std::min(end, lo + per);
    if (lo >= hi) break;
    ts.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : ts) t.join();
}

void parallel_for(size_t begin, size_t end, const std::function<void(size_t)>& fn) {
  parallel_chunks(begin, end, [&fn](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) fn(i);
  });
}

}  // namespace bsr
