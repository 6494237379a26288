#include "polycalc/testfn.hpp"

#include <algorithm>
#include <cmath>

namespace polycalc {

std::string to_string(DecayTag d) {
  switch (d) {
    case DecayTag::exponential: return "exponential";
    case DecayTag::gaussian: return "gaussian";
    case DecayTag::compact: return "compact";
    default: return "unknown";
  }
}

DecayTag decay_tag_from_string(const std::string& s) {
  if (s == "exponential") return DecayTag::exponential;
  if (s == "gaussian") return DecayTag::gaussian;
  if (s == "compact") return DecayTag::compact;
  if (s == "unknown") return DecayTag::unknown;
  throw parameter_error("unknown decay tag: " + s);
}

std::uint64_t TestFn::content_hash() const {
  return fnv1a(values.data(), values.size() * sizeof(cplx));
}

double TestFn::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void run_decay_check(TestFn& fn) {
  const double mx = fn.max_abs();
  const double tail = std::abs(fn.values.back());
  fn.metadata.tail_ratio = mx > 0.0 ? tail / mx : 0.0;
  if (mx > 0.0 && tail > kDecayTol * mx) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "tail-decay check: |values[last]|/max = %.3e exceeds %.1e",
                  tail / mx, kDecayTol);
    fn.metadata.warn(buf);
  }
}

}  // namespace

TestFn sample(const std::function<cplx(double)>& expr, GridPtr grid,
              DecayTag tag) {
  TestFn fn;
  fn.grid = std::move(grid);
  fn.decay_tag = tag;
  fn.values.resize(fn.grid->size());
  for (std::size_t i = 0; i < fn.grid->size(); ++i) {
    const cplx v = expr(fn.grid->nodes[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw sampling_error("sample: non-finite value at t = " +
                           std::to_string(fn.grid->nodes[i]));
    fn.values[i] = v;
  }
  run_decay_check(fn);
  return fn;
}

cplx value_at(const TestFn& fn, double x) {
  const auto& t = fn.grid->nodes;
  const std::size_t n = t.size();
  if (x > t.back() || x < 0.0) return cplx{0.0, 0.0};
  auto it = std::lower_bound(t.begin(), t.end(), x);
  std::size_t j = static_cast<std::size_t>(it - t.begin());
  if (j < n && t[j] == x) return fn.values[j];  // exact node
  // 4-point window around the bracketing interval
  std::size_t i0 = j >= 2 ? j - 2 : 0;
  i0 = std::min(i0, n - 4);
  cplx r{0.0, 0.0};
  for (std::size_t a = 0; a < 4; ++a) {
    double L = 1.0;
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      L *= (x - t[i0 + b]) / (t[i0 + a] - t[i0 + b]);
    }
    r += L * fn.values[i0 + a];
  }
  return r;
}

TestFn shift_fn(const TestFn& fn, double s) {
  if (s < 0.0)
    throw parameter_error("shift_fn: the shift semigroup is one-sided, s >= 0");
  if (s == 0.0) return fn;
  TestFn out;
  out.grid = fn.grid;
  out.decay_tag = fn.decay_tag;
  out.values.resize(fn.size());
  for (std::size_t i = 0; i < fn.size(); ++i)
    out.values[i] = value_at(fn, fn.grid->nodes[i] + s);
  out.metadata.truncation_bound = std::abs(fn.values.back());
  run_decay_check(out);
  return out;
}

std::vector<double> fornberg_weights(double x0, const std::vector<double>& xs,
                                     int M) {
  const std::size_t n = xs.size();
  std::vector<std::vector<double>> C(n, std::vector<double>(M + 1, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  C[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = static_cast<int>(std::min<std::size_t>(i, M));
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          C[i][k] = c1 * (k * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
        C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        C[j][k] = (c4 * C[j][k] - k * C[j][k - 1]) / c3;
      C[j][0] = c4 * C[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = C[i][M];
  return w;
}

namespace {

/// Pick <= 5 roughly equispaced indices in [lo, hi] including both ends.
std::vector<std::size_t> pick_stencil(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> idx;
  const std::size_t count = hi - lo + 1;
  if (count <= 5) {
    for (std::size_t i = lo; i <= hi; ++i) idx.push_back(i);
    return idx;
  }
  for (int k = 0; k < 5; ++k) {
    const double f = static_cast<double>(k) / 4.0;
    idx.push_back(lo + static_cast<std::size_t>(
                           std::llround(f * static_cast<double>(count - 1))));
  }
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  while (idx.size() < 5 && idx.back() < hi) idx.push_back(idx.back() + 1);
  return idx;
}

}  // namespace

TestFn diff_fn(const TestFn& fn, double min_span) {
  const auto& t = fn.grid->nodes;
  const std::size_t n = t.size();
  if (n < 4) throw parameter_error("diff_fn: need at least 4 grid points");
  TestFn out;
  out.grid = fn.grid;
  out.decay_tag = fn.decay_tag;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i, hi = i;
    while ((hi - lo < 4) || (t[hi] - t[lo]) < min_span) {
      const bool can_lo = lo > 0;
      const bool can_hi = hi + 1 < n;
      if (!can_lo && !can_hi) break;
      if (can_lo && (!can_hi || t[i] - t[lo - 1] <= t[hi + 1] - t[i]))
        --lo;
      else
        ++hi;
    }
    const auto idx = pick_stencil(lo, hi);
    std::vector<double> xs(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) xs[k] = t[idx[k]];
    const auto w = fornberg_weights(t[i], xs, 1);
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < idx.size(); ++k) acc += w[k] * fn.values[idx[k]];
    out.values[i] = acc;
  }
  run_decay_check(out);
  return out;
}

cplx integrate(const TestFn& fn) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < fn.size(); ++i)
    acc += fn.grid->weights[i] * fn.values[i];
  return acc;
}

namespace {

void require_same_grid(const TestFn& a, const TestFn& b) {
  if (a.grid != b.grid && a.grid->nodes != b.grid->nodes)
    throw parameter_error("TestFn operands live on different grids");
}

}  // namespace

TestFn operator+(const TestFn& a, const TestFn& b) {
  require_same_grid(a, b);
  TestFn out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
  return out;
}

TestFn operator-(const TestFn& a, const TestFn& b) {
  require_same_grid(a, b);
  TestFn out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

TestFn operator*(const cplx& c, const TestFn& a) {
  TestFn out = a;
  for (auto& v : out.values) v *= c;
  return out;
}

TestFn pointwise_mul(const TestFn& a, const TestFn& b) {
  require_same_grid(a, b);
  TestFn out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

double sup_distance(const TestFn& a, const TestFn& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

cplx derivative_at(const TestFn& fn, int order, double x) {
  if (order < 0) throw parameter_error("derivative_at: order < 0");
  TestFn cur = fn;
  for (int k = 0; k < order; ++k) cur = diff_fn(cur);
  return value_at(cur, x);
}

double live_spacing(const TestFn& fn, double cutoff) {
  const double mx = fn.max_abs();
  if (mx == 0.0) return 0.0;
  double h = 0.0;
  const auto& t = fn.grid->nodes;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (std::abs(fn.values[i]) >= cutoff * mx ||
        std::abs(fn.values[i + 1]) >= cutoff * mx)
      h = std::max(h, t[i + 1] - t[i]);
  }
  return h;
}

std::vector<cplx> boundary_derivatives(const TestFn& fn, int K) {
  const auto& t = fn.grid->nodes;
  const std::size_t n = t.size();
  std::vector<cplx> out(K + 1);
  for (int k = 0; k <= K; ++k) {
    const double span = 0.08 * (k + 1);
    std::size_t hi = std::min<std::size_t>(4, n - 1);
    while (hi + 1 < n && (t[hi] < span || hi < static_cast<std::size_t>(2 * k + 4)))
      ++hi;
    const std::size_t npts = std::min<std::size_t>(hi + 1, 2 * k + 7);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < npts; ++j) {
      const double f = npts == 1 ? 0.0
                                 : static_cast<double>(j) /
                                       static_cast<double>(npts - 1);
      idx.push_back(static_cast<std::size_t>(
          std::llround(f * static_cast<double>(hi))));
    }
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<double> xs(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) xs[j] = t[idx[j]];
    const auto w = fornberg_weights(0.0, xs, k);
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < idx.size(); ++j) acc += w[j] * fn.values[idx[j]];
    out[k] = acc;
  }
  return out;
}

}  // namespace polycalc
