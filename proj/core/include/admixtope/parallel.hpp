#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace admixtope {

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers.
/// Results come back in index order, so callers see the same output for any
/// thread count as long as fn(i) itself is deterministic.
template <class F>
auto parallel_map(std::size_t count, int threads, F&& fn)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(count);
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Number of fixed blocks used by deterministic reductions.
inline constexpr std::size_t kReductionBlocks = 64;

/// Sums fn(i) over [0, count). The index range is cut into kReductionBlocks
/// contiguous blocks independent of the thread count; each block is summed
/// sequentially and block totals are added in block order, so the result is
/// bit-identical for every thread count.
template <class F>
double deterministic_sum(std::size_t count, int threads, F&& fn) {
  const std::size_t blocks = std::min(count, kReductionBlocks);
  if (blocks == 0) return 0.0;
  auto block_total = [&](std::size_t b) {
    const std::size_t lo = b * count / blocks;
    const std::size_t hi = (b + 1) * count / blocks;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += fn(i);
    return s;
  };
  const auto partial = parallel_map(blocks, threads, block_total);
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace admixtope
