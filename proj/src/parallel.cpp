#include "polycalc/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polycalc::par {

namespace {

int resolve_from_env() {
  const char* env = std::getenv("POLYCALC_THREADS");
  if (env == nullptr) return 1;
  try {
    int n = std::stoi(env);
    return n >= 1 ? n : 1;
  } catch (...) {
    return 1;
  }
}

std::atomic<int>& slot() {
  static std::atomic<int> n{resolve_from_env()};
  return n;
}

}  // namespace

int threads() { return slot().load(std::memory_order_relaxed); }

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 1) omp_set_num_threads(n);
#endif
  slot().store(n >= 1 ? n : 1, std::memory_order_relaxed);
}

}  // namespace polycalc::par
