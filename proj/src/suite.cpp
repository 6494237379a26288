#include "polycalc/suite.hpp"

#include <filesystem>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polycalc/fft.hpp"
#include "polycalc/io.hpp"
#include "polycalc/opcalc.hpp"
#include "polycalc/parallel.hpp"
#include "polycalc/transforms.hpp"

namespace polycalc {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw config_error("unknown config key '" + it.key() + "' in " + where);
  }
}

}  // namespace

SuiteConfig suite_config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  SuiteConfig cfg;
  reject_unknown(j, {"grid", "fock", "spatial", "tolerances", "corpus",
                     "out_dir", "calc"},
                 "top level");
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    reject_unknown(g, {"n_points", "t_max", "rule"}, "grid");
    cfg.n_points = g.value("n_points", cfg.n_points);
    cfg.t_max = g.value("t_max", cfg.t_max);
    if (g.contains("rule"))
      cfg.rule = quad_rule_from_string(g["rule"].get<std::string>());
  }
  if (j.contains("fock")) {
    const auto& f = j["fock"];
    reject_unknown(f, {"max_degree"}, "fock");
    cfg.max_degree = f.value("max_degree", cfg.max_degree);
  }
  if (j.contains("spatial")) {
    const auto& s = j["spatial"];
    reject_unknown(s, {"L", "nodes_per_axis"}, "spatial");
    cfg.L = s.value("L", cfg.L);
    if (s.contains("nodes_per_axis"))
      cfg.nodes_per_axis = s["nodes_per_axis"].get<std::vector<std::size_t>>();
  }
  if (j.contains("tolerances")) {
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
      cfg.tolerance_overrides[it.key()] = it.value().get<double>();
  }
  if (j.contains("corpus")) cfg.corpus = j["corpus"].get<std::string>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("calc")) cfg.calc_json = j["calc"].dump();

  // documented ranges
  if (cfg.n_points < 8 || cfg.n_points > 1000000)
    throw config_error("grid.n_points out of range [8, 1e6]");
  if (!(cfg.t_max > 0.0) || cfg.t_max > 1e4)
    throw config_error("grid.t_max out of range (0, 1e4]");
  if (cfg.max_degree < 2 || cfg.max_degree > 3)
    throw config_error("fock.max_degree out of range [2, 3]");
  if (!(cfg.L > 0.0)) throw config_error("spatial.L must be positive");
  if (cfg.nodes_per_axis.empty() || cfg.nodes_per_axis.size() > 3)
    throw config_error("spatial.nodes_per_axis needs 1..3 entries");
  for (std::size_t m : cfg.nodes_per_axis)
    if (!fft::is_pow2(m) || m < 8)
      throw config_error("spatial.nodes_per_axis entries must be powers of "
                         "two >= 8");
  if (cfg.corpus != "full" && cfg.corpus != "atoms_only")
    throw config_error("corpus must be 'full' or 'atoms_only'");
  return cfg;
}

SuiteConfig suite_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return suite_config_from_json_text(text);
}

std::string config_canonical_text(const SuiteConfig& cfg) {
  json j;
  j["grid"] = {{"n_points", cfg.n_points},
               {"t_max", cfg.t_max},
               {"rule", to_string(cfg.rule)}};
  j["fock"] = {{"max_degree", cfg.max_degree}};
  j["spatial"] = {{"L", cfg.L}, {"nodes_per_axis", cfg.nodes_per_axis}};
  j["corpus"] = cfg.corpus;
  json tols = json::object();
  for (const auto& [k, v] : cfg.tolerance_overrides) tols[k] = v;
  j["tolerances"] = tols;
  return j.dump();
}

std::string config_hash(const SuiteConfig& cfg) {
  const std::string canon = config_canonical_text(cfg);
  const std::uint64_t h = fnv1a(canon.data(), canon.size());
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

bool SuiteReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return false;
  return true;
}

int SuiteReport::count(CheckStatus s) const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status == s) ++n;
  return n;
}

namespace {

const char* status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skipped";
  }
}

}  // namespace

void write_report(const SuiteReport& rep, const std::string& out_dir) {
  fs::create_directories(out_dir);
  // report.csv and summary.json are byte-deterministic for a fixed config;
  // wall times vary run to run and live in timings.csv only.
  std::string csv = "name,law,criterion,max_error,tolerance,status\n";
  for (const auto& c : rep.checks) {
    csv += c.name + ",\"" + c.law + "\"," + std::to_string(c.criterion) + ",";
    csv += io::format_double(c.max_error);
    csv += ',';
    csv += io::format_double(c.tolerance);
    csv += ',';
    csv += status_str(c.status);
    csv += '\n';
  }
  std::ofstream(out_dir + "/report.csv", std::ios::binary) << csv;

  json summary;
  summary["config_hash"] = rep.config_digest;
  summary["passed"] = rep.count(CheckStatus::pass);
  summary["failed"] = rep.count(CheckStatus::fail);
  summary["skipped"] = rep.count(CheckStatus::skipped);
  summary["all_pass"] = rep.all_pass();
  summary["checks"] = json::array();
  for (const auto& c : rep.checks)
    summary["checks"].push_back({{"name", c.name},
                                 {"law", c.law},
                                 {"criterion", c.criterion},
                                 {"max_error", io::format_double(c.max_error)},
                                 {"tolerance", io::format_double(c.tolerance)},
                                 {"status", status_str(c.status)}});
  std::ofstream(out_dir + "/summary.json", std::ios::binary)
      << summary.dump(2) << "\n";

  std::string timings = "name,wall_ms\n";
  for (const auto& c : rep.checks)
    timings += c.name + "," + io::format_double(c.wall_ms) + "\n";
  std::ofstream(out_dir + "/timings.csv", std::ios::binary) << timings;
}

void run_gaussian_demo(const SuiteConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  SpatialGridPtr g1 = std::make_shared<SpatialGrid>(
      SpatialGrid{cfg.L, cfg.nodes_per_axis[0]});
  SpatialGridPtr g2 = std::make_shared<SpatialGrid>(
      SpatialGrid{cfg.L, cfg.nodes_per_axis.size() > 1 ? cfg.nodes_per_axis[1]
                                                       : 64});
  FockState y = gaussian_state({g1, g2}, 2);

  const std::vector<double> slices = {0.0, 0.1, 0.25, 0.5};
  std::string norm_trace = "t,norm_ratio_n1,norm_ratio_n2\n";
  const double n0 = norm(y);
  for (std::size_t k = 0; k < slices.size(); ++k) {
    const double t = slices[k];
    const FockState y1 = t == 0.0 ? y : gaussian_apply({t}, y);
    const FockState y2 = t == 0.0 ? y : gaussian_apply({t, t}, y);
    io::write_fock_state(y1, out_dir + "/slice_n1_t" + std::to_string(k) +
                                 ".json");
    io::write_fock_state(y2, out_dir + "/slice_n2_t" + std::to_string(k) +
                                 ".json");
    norm_trace += io::format_double(t) + "," +
                  io::format_double(norm(y1) / n0) + "," +
                  io::format_double(norm(y2) / n0) + "\n";
  }
  std::ofstream(out_dir + "/norm_trace.csv", std::ios::binary) << norm_trace;

  // the calculus output for p = (1, e^{-t}, e^{-t} (x) e^{-t})
  auto grid = build_grid(cfg.n_points, cfg.t_max, cfg.rule);
  const TestFn phi = sample([](double t) { return std::exp(-t); }, grid,
                            DecayTag::exponential);
  const FockState out =
      calculus_apply(power_test(phi, 2), GeneratorSystem::gaussian(2), y);
  io::write_fock_state(out, out_dir + "/calculus_state.json");
}

void run_calc(const SuiteConfig& cfg, const std::string& out_dir) {
  if (cfg.calc_json.empty())
    throw config_error("calc: config has no 'calc' block");
  const json c = json::parse(cfg.calc_json);
  reject_unknown(c, {"F", "p", "system", "state"}, "calc");

  auto grid = build_grid(cfg.n_points, cfg.t_max, cfg.rule);
  const Corpus corpus = build_corpus(grid, false);
  auto named_phi = [&corpus](const std::string& name) -> const TestFn& {
    for (const auto& [n, phi] : corpus.phis)
      if (n == name) return phi;
    throw config_error("calc: unknown test function '" + name + "'");
  };

  // F
  Distribution f;
  if (c.contains("F")) {
    const auto& jf = c["F"];
    reject_unknown(jf, {"atoms", "density"}, "calc.F");
    if (jf.contains("atoms"))
      for (const auto& a : jf["atoms"])
        f.atoms.push_back(Atom{a.at("a").get<double>(), a.value("m", 0),
                               cplx{a.value("re", 1.0), a.value("im", 0.0)}});
    if (jf.contains("density") && !jf["density"].is_null())
      f.parts.push_back(
          DensityPart{named_phi(jf["density"].get<std::string>()), 0.0});
    canonicalize(f);
  } else {
    f = delta();
  }

  // p
  const auto& jp = c.at("p");
  reject_unknown(jp, {"phi", "degree"}, "calc.p");
  const int N = jp.value("degree", cfg.max_degree);
  if (N < 0 || N > 3) throw config_error("calc.p.degree out of range [0,3]");
  const PolyTest p = power_test(named_phi(jp.at("phi").get<std::string>()), N);

  // system
  GeneratorSystem A;
  const auto& js = c.at("system");
  reject_unknown(js, {"type", "lambdas"}, "calc.system");
  const std::string type = js.at("type").get<std::string>();
  if (type == "gaussian") {
    A = GeneratorSystem::gaussian(N);
  } else if (type == "scalars") {
    std::vector<cplx> flat;
    for (const auto& l : js.at("lambdas"))
      flat.push_back(cplx{l.value("re", 0.0), l.value("im", 0.0)});
    A = GeneratorSystem::scalars(flat);
  } else {
    throw config_error("calc.system.type must be 'gaussian' or 'scalars'");
  }

  // state
  const auto& jy = c.at("state");
  reject_unknown(jy, {"type", "width", "re", "im"}, "calc.state");
  FockState y;
  const std::string stype = jy.at("type").get<std::string>();
  if (stype == "scalar") {
    y = FockState::scalar(cplx{jy.value("re", 1.0), jy.value("im", 0.0)});
  } else if (stype == "gaussian") {
    std::vector<SpatialGridPtr> grids;
    for (int n = 1; n <= N; ++n) {
      const std::size_t m = n - 1 < static_cast<int>(cfg.nodes_per_axis.size())
                                ? cfg.nodes_per_axis[n - 1]
                                : cfg.nodes_per_axis.back();
      grids.push_back(std::make_shared<SpatialGrid>(SpatialGrid{cfg.L, m}));
    }
    y = gaussian_state(grids, N, jy.value("width", 1.0));
  } else {
    throw config_error("calc.state.type must be 'scalar' or 'gaussian'");
  }

  const FockState result = phi_apply(power_dist(f, N), p, A, y);
  fs::create_directories(out_dir);
  io::write_fock_state(result, out_dir + "/calc_state.json");
}

namespace {

int collision_guard(const std::string& out_dir, bool force) {
  if (!force && fs::exists(out_dir) && !fs::is_empty(out_dir)) {
    std::fprintf(stderr,
                 "polycalc: output directory '%s' is not empty "
                 "(use --force to overwrite)\n",
                 out_dir.c_str());
    return 3;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"polycalc: functional calculus on half-line distribution "
               "algebras"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool force = false;

  auto* suite = app.add_subcommand("suite", "run the invariant suite");
  suite->add_option("--config", config_path, "JSON config file");
  suite->add_option("--out", out_dir, "output directory")->required();
  suite->add_flag("--force", force, "overwrite a non-empty output directory");

  auto* demo = app.add_subcommand("demo", "demonstration artifacts");
  auto* demo_g = demo->add_subcommand("gaussian", "Gaussian semigroup demo");
  std::string dg_config, dg_out;
  bool dg_force = false;
  demo_g->add_option("--config", dg_config, "JSON config file");
  demo_g->add_option("--out", dg_out, "output directory")->required();
  demo_g->add_flag("--force", dg_force, "overwrite non-empty output");

  auto* calc = app.add_subcommand("calc", "evaluate a configured quadruple");
  std::string calc_config, calc_out;
  bool calc_force = false;
  calc->add_option("--config", calc_config, "JSON config file")->required();
  calc->add_option("--out", calc_out, "output directory (overrides config)");
  calc->add_flag("--force", calc_force, "overwrite non-empty output");

  std::vector<const char*> argv;
  argv.push_back("polycalc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const char* tenv = std::getenv("POLYCALC_THREADS");
  if (tenv != nullptr) {
    try {
      par::set_threads(std::stoi(tenv));
    } catch (...) {
      std::fprintf(stderr, "polycalc: bad POLYCALC_THREADS value\n");
      return 2;
    }
  }

  try {
    if (suite->parsed()) {
      SuiteConfig cfg =
          config_path.empty() ? SuiteConfig{} : suite_config_from_file(config_path);
      if (int rc = collision_guard(out_dir, force)) return rc;
      const SuiteReport rep = run_suite(cfg);
      write_report(rep, out_dir);
      std::printf("suite: %d passed, %d failed, %d skipped (config %s)\n",
                  rep.count(CheckStatus::pass), rep.count(CheckStatus::fail),
                  rep.count(CheckStatus::skipped), rep.config_digest.c_str());
      return rep.all_pass() ? 0 : 1;
    }
    if (demo_g->parsed()) {
      SuiteConfig cfg =
          dg_config.empty() ? SuiteConfig{} : suite_config_from_file(dg_config);
      if (int rc = collision_guard(dg_out, dg_force)) return rc;
      run_gaussian_demo(cfg, dg_out);
      std::printf("demo gaussian: artifacts written to %s\n", dg_out.c_str());
      return 0;
    }
    if (calc->parsed()) {
      SuiteConfig cfg = suite_config_from_file(calc_config);
      const std::string dir =
          !calc_out.empty() ? calc_out
                            : (!cfg.out_dir.empty() ? cfg.out_dir
                                                    : "polycalc_calc_out");
      if (int rc = collision_guard(dir, calc_force)) return rc;
      run_calc(cfg, dir);
      std::printf("calc: state written to %s\n", dir.c_str());
      return 0;
    }
  } catch (const config_error& e) {
    std::fprintf(stderr, "polycalc: %s\n", e.what());
    return 2;
  } catch (const error& e) {
    std::fprintf(stderr, "polycalc: %s\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace polycalc
