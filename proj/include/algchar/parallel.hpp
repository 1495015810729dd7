#pragma once

#include <cstddef>

namespace algchar::par {

/// Process-wide switch for the OpenMP kernel paths.  Values are immutable and
/// every kernel writes disjoint output slots, so results are bit-identical
/// with the serial reference paths (asserted in tests).
void set_enabled(bool on);
bool enabled();

/// Threshold: loops shorter than this stay serial even when enabled.
void set_grain(std::size_t n);
std::size_t grain();

int hardware_threads();

namespace detail {
void run_parallel(std::size_t n, void* ctx, void (*body)(void*, std::size_t));
}

/// parallel_for(n, f): f(i) for i in [0, n), OpenMP when enabled.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  if (!enabled() || n < grain()) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  auto thunk = [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); };
  detail::run_parallel(n, &f, thunk);
}

}  // namespace algchar::par
