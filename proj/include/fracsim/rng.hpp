#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace fracsim {

// 64-bit finalizer used as the core of the counter generator. Bijective on
// uint64, so distinct (key, counter) pairs never collide.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Counter-based generator: the j-th output of stream s under seed k is a pure
// function of (k, s, j). Ensembles assign one stream per path, which makes
// results independent of thread count and iteration order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0,1); never returns 0 or 1 exactly.
  double next_u01() noexcept;

  // Standard normal via Box-Muller; consumes two uniforms per pair and caches
  // the second variate, so draw parity stays local to this object.
  double next_normal() noexcept;

  std::uint64_t counter() const noexcept { return ctr_; }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
  double cached_normal_;
  bool has_cached_;
};

// Worker cap for data-parallel loops. Honors the ANOMALY_THREADS environment
// variable when set, otherwise uses hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0,n) on up to worker_count() threads with a static
// block partition. Deterministic as long as body(i) writes only to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracsim
