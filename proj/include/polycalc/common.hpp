#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace polycalc {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance hierarchy used throughout: exact algebraic rearrangements,
/// single-quadrature results, and stacked multi-stage pipelines.
namespace tol {
constexpr double exact = 1e-12;
constexpr double quadrature = 1e-8;
constexpr double stacked = 1e-6;
constexpr double stencil = 1e-4;
}  // namespace tol

/// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid sizes, counts, or argument ranges.
struct parameter_error : error {
  using error::error;
};

/// Negative locations or anything leaving the half-line.
struct support_error : error {
  using error::error;
};

/// Requested operation exceeds the representation class (e.g. atom order).
struct capability_error : error {
  using error::error;
};

/// A boundary term at t = 0 would be silently dropped; refused instead.
struct boundary_error : error {
  using error::error;
};

/// Quadrature or spectral resolution insufficient for the requested input.
struct resolution_error : error {
  using error::error;
};

/// Argument outside the mathematical domain (e.g. Re lambda <= 0).
struct domain_error : error {
  using error::error;
};

/// Bad or inconsistent configuration.
struct config_error : error {
  using error::error;
};

/// Sampling produced a non-finite value.
struct sampling_error : error {
  using error::error;
};

/// Non-fatal diagnostics attached to computed values.
struct Metadata {
  double tail_ratio = 0.0;        // |values.back()| / max|values|
  double truncation_bound = 0.0;  // estimate of mass ignored beyond t_max
  std::vector<std::string> notes;

  void warn(std::string msg) { notes.push_back(std::move(msg)); }
  bool has_warnings() const { return !notes.empty(); }
};

/// FNV-1a over raw bytes; used for content-addressed canonical ordering.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t seed = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace polycalc
