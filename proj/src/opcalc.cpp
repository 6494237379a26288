#include "polycalc/opcalc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polycalc/fft.hpp"
#include "polycalc/parallel.hpp"

namespace polycalc {

std::pair<long, long> block_indices(long n) {
  if (n < 0) throw parameter_error("block_indices: n >= 0");
  if (n == 0) return {1, 0};  // A_0 is the empty block
  return {n * (n - 1) / 2 + 1, n * (n + 1) / 2};
}

FockState FockState::scalar(cplx y0) {
  FockState y;
  y.y0 = y0;
  y.max_degree = 0;
  return y;
}

FockState FockState::zeros_like(const FockState& y) {
  FockState z = y;
  z.y0 = cplx{0.0, 0.0};
  for (auto& c : z.comps) std::fill(c.begin(), c.end(), cplx{0.0, 0.0});
  return z;
}

std::size_t FockState::component_size(int n) const {
  std::size_t s = 1;
  for (int j = 0; j < n; ++j) s *= grids[n - 1]->nodes;
  return s;
}

double norm(const FockState& y) {
  double acc = std::norm(y.y0);
  for (int n = 1; n <= y.max_degree; ++n) {
    const double cell = std::pow(y.grids[n - 1]->spacing(), n);
    double s = 0.0;
    for (const auto& v : y.comps[n - 1]) s += std::norm(v);
    acc += cell * s;
  }
  return std::sqrt(acc);
}

FockState axpy(const cplx& a, const FockState& x, const FockState& y) {
  if (x.max_degree != y.max_degree)
    throw parameter_error("axpy: state degrees differ");
  FockState out = y;
  out.y0 += a * x.y0;
  for (std::size_t n = 0; n < out.comps.size(); ++n) {
    if (x.comps[n].size() != out.comps[n].size())
      throw parameter_error("axpy: component sizes differ");
    for (std::size_t i = 0; i < out.comps[n].size(); ++i)
      out.comps[n][i] += a * x.comps[n][i];
  }
  return out;
}

FockState scale_state(const cplx& a, const FockState& y) {
  FockState out = y;
  out.y0 *= a;
  for (auto& c : out.comps)
    for (auto& v : c) v *= a;
  return out;
}

double state_distance(const FockState& a, const FockState& b) {
  return norm(axpy(cplx{-1.0, 0.0}, b, a));
}

namespace {

std::size_t pow_sz(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// Visit every 1-D line of an n-dim row-major array along `axis`.
template <typename Fn>
void for_each_line(int n, std::size_t M, int axis, Fn&& fn) {
  const std::size_t stride = pow_sz(M, n - 1 - axis);
  const std::size_t block = stride * M;
  const std::size_t total = pow_sz(M, n);
  for (std::size_t start = 0; start < total; start += block)
    for (std::size_t off = 0; off < stride; ++off) fn(start + off, stride);
}

}  // namespace

double symmetry_defect(const FockState& y) {
  double defect = 0.0;
  for (int n = 2; n <= y.max_degree; ++n) {
    const std::size_t M = y.grids[n - 1]->nodes;
    const auto& c = y.comps[n - 1];
    std::vector<std::size_t> idx(n);
    const std::size_t total = pow_sz(M, n);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (int j = n - 1; j >= 0; --j) {
        idx[j] = rem % M;
        rem /= M;
      }
      std::vector<std::size_t> sorted = idx;
      std::sort(sorted.begin(), sorted.end());
      std::size_t canon = 0;
      for (int j = 0; j < n; ++j) canon = canon * M + sorted[j];
      defect = std::max(defect, std::abs(c[flat] - c[canon]));
    }
  }
  return defect;
}

Generator1D Generator1D::scalar_gen(cplx lambda) {
  Generator1D g;
  g.kind = GenKind::scalar;
  g.lambda = lambda;
  return g;
}

Generator1D Generator1D::second_derivative(long flat_coordinate) {
  if (flat_coordinate < 1)
    throw parameter_error("second_derivative: coordinate index is 1-based");
  Generator1D g;
  g.kind = GenKind::second_derivative;
  g.coordinate = flat_coordinate;
  return g;
}

int Generator1D::block() const {
  const long c = coordinate;
  const long n = static_cast<long>(
      std::llround(std::ceil((-1.0 + std::sqrt(1.0 + 8.0 * c)) / 2.0)));
  const auto [b, e] = block_indices(n);
  if (c < b || c > e) throw parameter_error("block(): bad coordinate");
  return static_cast<int>(n);
}

int Generator1D::local_axis() const {
  const auto [b, e] = block_indices(block());
  (void)e;
  return static_cast<int>(coordinate - b);
}

namespace {

/// Largest occupied wavenumber of component n along `axis` (modes above
/// 1e-10 of the spectral peak).
double occupied_band(const FockState& y, int n, int axis) {
  const auto& g = *y.grids[n - 1];
  const std::size_t M = g.nodes;
  std::vector<cplx> work = y.comps[n - 1];
  std::vector<double> mode_amp(M, 0.0);
  for_each_line(n, M, axis, [&](std::size_t base, std::size_t stride) {
    fft::transform_line(work.data() + base, M, stride, false);
    for (std::size_t m = 0; m < M; ++m)
      mode_amp[m] = std::max(mode_amp[m], std::abs(work[base + m * stride]));
  });
  const double peak = *std::max_element(mode_amp.begin(), mode_amp.end());
  double kocc = 0.0;
  for (std::size_t m = 0; m < M; ++m)
    if (mode_amp[m] > 1e-10 * peak)
      kocc = std::max(kocc, std::abs(g.wavenumber(m)));
  return kocc;
}

double alias_phase_step(const SpatialGrid& g, double kocc, double t) {
  const double dk = kPi / g.L;
  return t * (2.0 * kocc * dk + dk * dk);
}

/// Multiply component n along `axis` by e^{+i t k^2} in Fourier space.
void multiplier_pass(std::vector<cplx>& comp, const SpatialGrid& g, int n,
                     int axis, double t) {
  const std::size_t M = g.nodes;
  std::vector<cplx> phase(M);
  for (std::size_t m = 0; m < M; ++m) {
    const double k = g.wavenumber(m);
    phase[m] = std::exp(cplx{0.0, t * k * k});
  }
  const bool par_lines = par::enabled() && n >= 2;
  const std::size_t stride_axis = pow_sz(M, n - 1 - axis);
  const std::size_t block = stride_axis * M;
  const std::size_t total = pow_sz(M, n);
  std::vector<std::size_t> bases;
  for (std::size_t start = 0; start < total; start += block)
    for (std::size_t off = 0; off < stride_axis; ++off)
      bases.push_back(start + off);
  const long nb = static_cast<long>(bases.size());
#pragma omp parallel for schedule(static) if (par_lines)
  for (long b = 0; b < nb; ++b) {
    cplx* line = comp.data() + bases[b];
    fft::transform_line(line, M, stride_axis, false);
    for (std::size_t m = 0; m < M; ++m) line[m * stride_axis] *= phase[m];
    fft::transform_line(line, M, stride_axis, true);
  }
}

}  // namespace

bool Generator1D::aliased(double t, const FockState& y) const {
  if (kind != GenKind::second_derivative) return false;
  const int n = block();
  if (n > y.max_degree) return false;
  const double kocc = occupied_band(y, n, local_axis());
  return alias_phase_step(*y.grids[n - 1], kocc, t) > kPi;
}

FockState Generator1D::apply_semigroup(double t, const FockState& y,
                                       bool strict_alias) const {
  if (t < 0.0) throw domain_error("apply_semigroup: one-sided, t >= 0");
  if (kind == GenKind::scalar)
    return scale_state(std::exp(cplx{0.0, -t} * lambda), y);
  const int n = block();
  FockState out = y;
  if (n > y.max_degree) return out;  // identity on a truncated component
  if (strict_alias && aliased(t, y))
    throw resolution_error(
        "apply_semigroup: multiplier under-resolved on occupied modes "
        "(phase step > pi at the occupied band)");
  multiplier_pass(out.comps[n - 1], *y.grids[n - 1], n, local_axis(), t);
  return out;
}

GeneratorSystem GeneratorSystem::scalars(const std::vector<cplx>& flat) {
  GeneratorSystem sys;
  std::size_t used = 0;
  for (int n = 1; used < flat.size(); ++n) {
    if (used + static_cast<std::size_t>(n) > flat.size())
      throw parameter_error(
          "GeneratorSystem::scalars: flat list must fill whole blocks "
          "(triangular count)");
    std::vector<Generator1D> blk;
    for (int j = 0; j < n; ++j) blk.push_back(Generator1D::scalar_gen(flat[used++]));
    sys.blocks.push_back(std::move(blk));
  }
  return sys;
}

GeneratorSystem GeneratorSystem::gaussian(int N) {
  GeneratorSystem sys;
  for (int n = 1; n <= N; ++n) {
    const auto [b, e] = block_indices(n);
    std::vector<Generator1D> blk;
    for (long c = b; c <= e; ++c)
      blk.push_back(Generator1D::second_derivative(c));
    sys.blocks.push_back(std::move(blk));
  }
  return sys;
}

double GeneratorSystem::commutation_defect(const FockState& probe,
                                           double t) const {
  double defect = 0.0;
  for (const auto& blk : blocks) {
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = i + 1; j < blk.size(); ++j) {
        const FockState ij =
            blk[i].apply_semigroup(t, blk[j].apply_semigroup(t, probe, false),
                                   false);
        const FockState ji =
            blk[j].apply_semigroup(t, blk[i].apply_semigroup(t, probe, false),
                                   false);
        defect = std::max(defect, state_distance(ij, ji));
      }
  }
  return defect;
}

namespace {

FockState marginal_scalar(const TestFn& phi, const Generator1D& A,
                          const FockState& y) {
  const auto& g = *phi.grid;
  // the e^{-i t lambda} factor must be resolved where phi carries mass
  const double phase_step = std::abs(A.lambda) * live_spacing(phi);
  if (phase_step > kPi)
    throw resolution_error(
        "marginal_apply: time grid under-resolves the scalar semigroup "
        "oscillation (|lambda| h = " +
        std::to_string(phase_step) + " > pi)");
  cplx coef{0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i)
    coef += g.weights[i] * phi.values[i] *
            std::exp(cplx{0.0, -g.nodes[i]} * A.lambda);
  return scale_state(coef, y);
}

FockState marginal_second_derivative(const TestFn& phi, const Generator1D& A,
                                     const FockState& y) {
  const auto& g = *phi.grid;
  const int n = A.block();
  // quadrature of the scalar weight; the semigroup is identity off
  // component n, so every other component just picks up int phi dt.
  cplx coef_all{0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i)
    coef_all += g.weights[i] * phi.values[i];
  FockState out = scale_state(coef_all, y);
  if (n > y.max_degree) return out;

  const auto& sg = *y.grids[n - 1];
  const std::size_t M = sg.nodes;
  const int axis = A.local_axis();

  // Accumulated multiplier per axis mode: sum_i w_i phi_i e^{+i t_i k^2}.
  // This is the weighted orbit sum reassociated mode-by-mode; it is the
  // exact Bochner quadrature of the discrete-model semigroup for every
  // mode, resolved or not. Pointwise continuum fidelity at large t k^2 is
  // the business of gaussian_apply's aliasing gate.
  std::vector<cplx> mult(M);
  const long Ml = static_cast<long>(M);
#pragma omp parallel for schedule(static) if (par::enabled())
  for (long m = 0; m < Ml; ++m) {
    const double k = sg.wavenumber(static_cast<std::size_t>(m));
    const double k2 = k * k;
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i)
      acc += g.weights[i] * phi.values[i] *
             std::exp(cplx{0.0, g.nodes[i] * k2});
    mult[static_cast<std::size_t>(m)] = acc;
  }

  auto& comp = out.comps[n - 1];
  comp = y.comps[n - 1];
  const std::size_t stride_axis = pow_sz(M, n - 1 - axis);
  const std::size_t block = stride_axis * M;
  const std::size_t total = pow_sz(M, n);
  std::vector<std::size_t> bases;
  for (std::size_t start = 0; start < total; start += block)
    for (std::size_t off = 0; off < stride_axis; ++off)
      bases.push_back(start + off);
  const long nb = static_cast<long>(bases.size());
#pragma omp parallel for schedule(static) if (par::enabled() && n >= 2)
  for (long b = 0; b < nb; ++b) {
    cplx* line = comp.data() + bases[b];
    fft::transform_line(line, M, stride_axis, false);
    for (std::size_t m = 0; m < M; ++m) line[m * stride_axis] *= mult[m];
    fft::transform_line(line, M, stride_axis, true);
  }
  return out;
}

}  // namespace

FockState marginal_apply(const TestFn& phi, const Generator1D& A,
                         const FockState& y) {
  if (A.kind == GenKind::scalar) return marginal_scalar(phi, A, y);
  return marginal_second_derivative(phi, A, y);
}

namespace {

std::vector<std::vector<std::size_t>> perms_of(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

bool all_factors_equal(const TestTerm& t) {
  if (t.factors.size() <= 1) return true;
  const auto h0 = t.factors.front().content_hash();
  for (const auto& f : t.factors)
    if (f.content_hash() != h0) return false;
  return true;
}

}  // namespace

FockState OperatorFn::degree_apply(int n, const GeneratorSystem& A,
                                   const FockState& y) const {
  if (n < 0 || n > symbol.max_degree)
    throw parameter_error("degree_apply: degree out of range");
  FockState acc = FockState::zeros_like(y);
  if (n == 0) {
    cplx p0{0.0, 0.0};
    for (const auto& t : symbol.terms[0]) p0 += t.coeff;
    return scale_state(p0, y);
  }
  if (n > A.max_degree())
    throw config_error("degree_apply: symbol degree exceeds generator blocks");
  const auto& blk = A.blocks[n - 1];
  for (const auto& term : symbol.terms[n]) {
    if (all_factors_equal(term)) {
      FockState v = y;
      for (int j = 0; j < n; ++j)
        v = marginal_apply(term.factors[j], blk[j], v);
      acc = axpy(term.coeff, v, acc);
      continue;
    }
    const auto perms = perms_of(term.factors.size());
    const cplx c = term.coeff / static_cast<double>(perms.size());
    for (const auto& sigma : perms) {
      FockState v = y;
      for (int j = 0; j < n; ++j)
        v = marginal_apply(term.factors[sigma[j]], blk[j], v);
      acc = axpy(c, v, acc);
    }
  }
  return acc;
}

FockState OperatorFn::apply(const GeneratorSystem& A, const FockState& y) const {
  FockState acc = FockState::zeros_like(y);
  for (int n = 0; n <= symbol.max_degree; ++n)
    acc = axpy(cplx{1.0, 0.0}, degree_apply(n, A, y), acc);
  return acc;
}

OperatorFn lift(const PolyTest& p) { return OperatorFn{p}; }

FockState calculus_apply(const PolyTest& p, const GeneratorSystem& A,
                         const FockState& y) {
  if (p.max_degree > A.max_degree())
    throw config_error(
        "calculus_apply: symbol degree exceeds the generator system");
  return lift(p).apply(A, y);
}

FockState opshift_apply(const PolyTest& p, double s, const GeneratorSystem& A,
                        const FockState& y) {
  return calculus_apply(poly_shift(p, s), A, y);
}

FockState phi_apply(const PolyDist& F, const PolyTest& p,
                    const GeneratorSystem& A, const FockState& y) {
  return calculus_apply(cross_corr_poly(F, p), A, y);
}

FockState gaussian_apply(const std::vector<double>& t, const FockState& y) {
  const int n = static_cast<int>(t.size());
  if (n < 1) throw parameter_error("gaussian_apply: empty time vector");
  if (n > y.max_degree)
    throw parameter_error("gaussian_apply: component y_n not present");
  for (double tj : t)
    if (tj < 0.0) throw domain_error("gaussian_apply: t >= 0 per coordinate");
  const auto [b, e] = block_indices(n);
  (void)e;
  FockState out = y;
  for (int j = 0; j < n; ++j) {
    const auto gen = Generator1D::second_derivative(b + j);
    if (t[j] == 0.0) continue;
    if (gen.aliased(t[j], out))
      throw resolution_error(
          "gaussian_apply: multiplier under-resolved at the occupied band");
    multiplier_pass(out.comps[n - 1], *y.grids[n - 1], n, j, t[j]);
  }
  return out;
}

ContractionReport contraction_report(const Generator1D& A,
                                     const std::vector<double>& t_samples,
                                     const std::vector<FockState>& probes) {
  ContractionReport rep;
  for (double t : t_samples) {
    for (const auto& v : probes) {
      const double nv = norm(v);
      if (nv == 0.0) continue;
      const FockState w = A.apply_semigroup(t, v, /*strict_alias=*/false);
      const double ratio = norm(w) / nv;
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (ratio > 1.0 + 1e-10) rep.violations.emplace_back(t, ratio);
    }
  }
  return rep;
}

FockState gaussian_state(const std::vector<SpatialGridPtr>& grids, int N,
                         double width) {
  FockState y;
  y.max_degree = N;
  y.y0 = cplx{1.0, 0.0};
  y.grids = grids;
  y.comps.resize(N);
  for (int n = 1; n <= N; ++n) {
    const auto& g = *grids[n - 1];
    const std::size_t M = g.nodes;
    y.comps[n - 1].resize(pow_sz(M, n));
    std::vector<std::size_t> idx(n, 0);
    const std::size_t total = pow_sz(M, n);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      double s2 = 0.0;
      for (int j = n - 1; j >= 0; --j) {
        const double xi = g.axis_node(rem % M);
        s2 += xi * xi;
        rem /= M;
      }
      y.comps[n - 1][flat] = std::exp(-s2 / (2.0 * width * width));
    }
  }
  return y;
}

FockState random_state(const std::vector<SpatialGridPtr>& grids, int N,
                       std::uint64_t seed) {
  FockState y;
  y.max_degree = N;
  y.grids = grids;
  y.comps.resize(N);
  std::uint64_t s = seed * 6364136223846793005ull + 1442695040888963407ull;
  auto next = [&s]() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>((s >> 17) & 0xffffffffull) / 4294967296.0 - 0.5;
  };
  y.y0 = cplx{next(), next()};
  for (int n = 1; n <= N; ++n) {
    const std::size_t M = grids[n - 1]->nodes;
    const std::size_t total = pow_sz(M, n);
    std::vector<cplx> raw(total);
    for (auto& v : raw) v = cplx{next(), next()};
    // symmetrize over coordinate permutations
    auto& comp = y.comps[n - 1];
    comp.assign(total, cplx{0.0, 0.0});
    const auto perms = perms_of(static_cast<std::size_t>(n));
    std::vector<std::size_t> idx(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (int j = n - 1; j >= 0; --j) {
        idx[j] = rem % M;
        rem /= M;
      }
      cplx acc{0.0, 0.0};
      for (const auto& sigma : perms) {
        std::size_t p = 0;
        for (int j = 0; j < n; ++j) p = p * M + idx[sigma[j]];
        acc += raw[p];
      }
      comp[flat] = acc / static_cast<double>(perms.size());
    }
  }
  return y;
}

}  // namespace polycalc
