#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "barrierlab/hp/real.hpp"

namespace barrierlab {

// Number of workers used when a caller passes 0.
inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Applies fn to every input in parallel; results keep input order, so the
// output does not depend on the worker count. Each worker inherits the
// caller's default precision. The first exception is rethrown.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& inputs, Fn fn, unsigned workers = 0)
    -> std::vector<decltype(fn(inputs.front()))> {
  using Out = decltype(fn(inputs.front()));
  std::vector<Out> out(inputs.size());
  if (workers == 0) workers = default_workers();
  workers = std::min<unsigned>(workers, static_cast<unsigned>(inputs.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < inputs.size(); ++i) out[i] = fn(inputs[i]);
    return out;
  }
  const int bits = hp::default_precision();
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&]() {
    hp::PrecisionScope scope(bits);
    while (!failed.load()) {
      size_t i = next.fetch_add(1);
      if (i >= inputs.size()) break;
      try {
        out[i] = fn(inputs[i]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace barrierlab
