#include "algchar/parallel.hpp"

#include <atomic>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace algchar::par {

namespace {
std::atomic<bool> g_enabled{
#ifdef _OPENMP
    true
#else
    false
#endif
};
std::atomic<std::size_t> g_grain{4};
}  // namespace

void set_enabled(bool on) {
#ifndef _OPENMP
  on = false;
#endif
  g_enabled.store(on);
}

bool enabled() { return g_enabled.load(); }

void set_grain(std::size_t n) { g_grain.store(n ? n : 1); }
std::size_t grain() { return g_grain.load(); }

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return (int)std::thread::hardware_concurrency();
#endif
}

namespace detail {
void run_parallel(std::size_t n, void* ctx, void (*body)(void*, std::size_t)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < (long long)n; ++i) body(ctx, (std::size_t)i);
#else
  for (std::size_t i = 0; i < n; ++i) body(ctx, i);
#endif
}
}  // namespace detail

}  // namespace algchar::par
