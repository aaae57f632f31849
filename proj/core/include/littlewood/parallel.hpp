#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace littlewood {

/// Worker count: $LITTLEWOOD_THREADS when set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned default_thread_count();

/// Splits [0, total) into contiguous blocks of `block` indices and calls
/// `fn(block_index, begin, end)` for each. The partition is independent of the
/// thread count, so per-block results reduced in block order are reproducible.
template <class Fn>
void for_each_block(std::uint64_t total, std::uint64_t block, Fn&& fn) {
  if (total == 0) return;
  block = std::max<std::uint64_t>(block, 1);
  const std::uint64_t blocks = (total + block - 1) / block;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(default_thread_count(), blocks));
  auto run = [&](std::uint64_t b) {
    const std::uint64_t begin = b * block;
    fn(b, begin, std::min(total, begin + block));
  };
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run(b);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t b = next++; b < blocks; b = next++) run(b);
    });
  }
  for (auto& t : pool) t.join();
}

/// Max-reduction over blocks; `fn(begin, end)` returns the block maximum.
template <class Fn>
double parallel_max(std::uint64_t total, std::uint64_t block, Fn&& fn) {
  const std::uint64_t blocks = (total + std::max<std::uint64_t>(block, 1) - 1) /
                               std::max<std::uint64_t>(block, 1);
  std::vector<double> partial(blocks, 0.0);
  for_each_block(total, block, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    partial[b] = fn(begin, end);
  });
  double best = 0.0;
  for (double v : partial) best = std::max(best, v);
  return best;
}

/// Sum-reduction over blocks, combined in block order.
template <class Fn>
long double parallel_sum(std::uint64_t total, std::uint64_t block, Fn&& fn) {
  const std::uint64_t blocks = (total + std::max<std::uint64_t>(block, 1) - 1) /
                               std::max<std::uint64_t>(block, 1);
  std::vector<long double> partial(blocks, 0.0L);
  for_each_block(total, block, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    partial[b] = fn(begin, end);
  });
  long double sum = 0.0L;
  for (long double v : partial) sum += v;
  return sum;
}

}  // namespace littlewood
