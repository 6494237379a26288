#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "polycalc/io.hpp"
#include "polycalc/suite.hpp"

using namespace polycalc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

/// Small configuration so harness tests stay fast.
SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.n_points = 512;
  cfg.t_max = 40.0;
  cfg.max_degree = 2;
  cfg.nodes_per_axis = {64, 16};
  return cfg;
}

}  // namespace

TEST_CASE("config: defaults, parsing, unknown keys, ranges") {
  const SuiteConfig def;
  CHECK(def.n_points == 1024);
  CHECK(def.t_max == 40.0);
  CHECK(def.max_degree == 3);

  const SuiteConfig cfg = suite_config_from_json_text(
      R"({"grid": {"n_points": 256, "rule": "trapezoid"},
          "fock": {"max_degree": 2}, "corpus": "atoms_only"})");
  CHECK(cfg.n_points == 256);
  CHECK(cfg.rule == QuadRule::trapezoid);
  CHECK(cfg.corpus == "atoms_only");

  CHECK_THROWS_AS(suite_config_from_json_text(R"({"gird": {}})"),
                  config_error);
  CHECK_THROWS_AS(
      suite_config_from_json_text(R"({"grid": {"npoints": 10}})"),
      config_error);
  CHECK_THROWS_AS(
      suite_config_from_json_text(R"({"grid": {"n_points": 4}})"),
      config_error);
  CHECK_THROWS_AS(
      suite_config_from_json_text(R"({"fock": {"max_degree": 7}})"),
      config_error);
  CHECK_THROWS_AS(
      suite_config_from_json_text(R"({"spatial": {"nodes_per_axis": [100]}})"),
      config_error);
  CHECK_THROWS_AS(suite_config_from_json_text(R"({"corpus": "nope"})"),
                  config_error);
  CHECK_THROWS_AS(suite_config_from_json_text("not json"), config_error);
}

TEST_CASE("config hash is stable and sensitive") {
  const SuiteConfig a;
  SuiteConfig b;
  CHECK(config_hash(a) == config_hash(b));
  b.n_points = 512;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("testfn CSV roundtrip") {
  const auto dir = fresh_dir("polycalc_io_test");
  auto g = build_grid(64, 20.0, QuadRule::gauss_laguerre_mapped);
  const TestFn f = sample([](double t) { return cplx{std::exp(-t), 0.1 * t}; },
                          g, DecayTag::exponential);
  const std::string csv = (dir / "fn.csv").string();
  io::write_testfn(f, csv);
  const TestFn back = io::read_testfn(csv);
  CHECK(back.decay_tag == DecayTag::exponential);
  REQUIRE(back.size() == f.size());
  CHECK(sup_distance(back, f) == 0.0);
}

TEST_CASE("distribution JSON roundtrip keeps atoms and offset densities") {
  const auto dir = fresh_dir("polycalc_io_dist");
  auto g = build_grid(64, 20.0, QuadRule::gauss_laguerre_mapped);
  Distribution f = delta_at(0.5, 1);
  f.atoms.push_back(Atom{1.5, 0, cplx{2.0, -1.0}});
  f.parts.push_back(DensityPart{
      sample([](double t) { return std::exp(-t); }, g, DecayTag::exponential),
      0.75});
  canonicalize(f);
  const std::string path = (dir / "dist.json").string();
  io::write_distribution(f, path);
  const Distribution back = io::read_distribution(path);
  CHECK(representation_distance(back, f) == 0.0);
  REQUIRE(back.parts.size() == 1);
  CHECK(back.parts[0].offset == 0.75);
}

TEST_CASE("graded manifests reference shared sub-objects") {
  const auto dir = fresh_dir("polycalc_io_poly");
  auto g = build_grid(64, 20.0, QuadRule::gauss_laguerre_mapped);
  const TestFn phi = sample([](double t) { return std::exp(-t); }, g,
                            DecayTag::exponential);
  io::write_poly_test(power_test(phi, 2), (dir / "p.json").string());
  CHECK(fs::exists(dir / "p.json"));
  CHECK(fs::exists(dir / "p_f0.csv"));  // one shared factor file
  CHECK(!fs::exists(dir / "p_f1.csv"));
  const PolyDist F = power_dist(delta_at(0.5, 1), 2);
  io::write_poly_dist(F, (dir / "F.json").string());
  CHECK(fs::exists(dir / "F.json"));
  CHECK(fs::exists(dir / "F_d0.json"));
}

TEST_CASE("suite: atoms-only skips density checks") {
  SuiteConfig cfg = small_config();
  cfg.corpus = "atoms_only";
  const SuiteReport rep = run_suite(cfg);
  CHECK(rep.count(CheckStatus::skipped) >= 3);
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "transforms/convolution-theorem") {
      found = true;
      CHECK(c.status == CheckStatus::skipped);
    }
  CHECK(found);
}

TEST_CASE("suite: tolerance overrides force flagged failures") {
  SuiteConfig cfg = small_config();
  cfg.corpus = "atoms_only";  // keep it fast
  cfg.tolerance_overrides["dist/star-assoc"] = 1e-15;
  const SuiteReport rep = run_suite(cfg);
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "dist/star-assoc") {
      found = true;
      CHECK(c.status == CheckStatus::fail);
      CHECK(c.tolerance == 1e-15);
    }
  CHECK(found);
  CHECK(!rep.all_pass());
}

TEST_CASE("cli: missing config file exits 2 with no partial outputs") {
  const auto dir = fresh_dir("polycalc_cli_missing");
  const std::string out = (dir / "out").string();
  const int rc = run_cli({"suite", "--config", "/nonexistent/cfg.json",
                          "--out", out});
  CHECK(rc == 2);
  CHECK(!fs::exists(out));
}

TEST_CASE("cli: output collision without --force exits 3") {
  const auto dir = fresh_dir("polycalc_cli_collide");
  const fs::path out = dir / "out";
  fs::create_directories(out);
  std::ofstream(out / "existing.txt") << "x";
  const int rc = run_cli({"demo", "gaussian", "--out", out.string()});
  CHECK(rc == 3);
}

TEST_CASE("cli: calc evaluates a configured quadruple") {
  const auto dir = fresh_dir("polycalc_cli_calc");
  const fs::path cfgp = dir / "cfg.json";
  std::ofstream(cfgp) << R"({
    "grid": {"n_points": 512},
    "fock": {"max_degree": 2},
    "calc": {
      "F": {"atoms": [{"a": 1.0, "m": 0, "re": 1.0, "im": 0.0}]},
      "p": {"phi": "exp", "degree": 2},
      "system": {"type": "scalars",
                 "lambdas": [{"re": 0, "im": -1}, {"re": 0, "im": -1},
                             {"re": 0, "im": -1}]},
      "state": {"type": "scalar", "re": 1.0, "im": 0.0}
    }
  })";
  const fs::path out = dir / "out";
  const int rc = run_cli({"calc", "--config", cfgp.string(), "--out",
                          out.string()});
  CHECK(rc == 0);
  CHECK(fs::exists(out / "calc_state.json"));
}

TEST_CASE("cli: gaussian demo emits slices, norm trace, calculus state") {
  const auto dir = fresh_dir("polycalc_cli_demo");
  const fs::path cfgp = dir / "cfg.json";
  std::ofstream(cfgp) << R"({
    "grid": {"n_points": 512},
    "spatial": {"L": 12.0, "nodes_per_axis": [64, 16]}
  })";
  const fs::path out = dir / "out";
  const int rc = run_cli({"demo", "gaussian", "--config", cfgp.string(),
                          "--out", out.string()});
  CHECK(rc == 0);
  CHECK(fs::exists(out / "norm_trace.csv"));
  CHECK(fs::exists(out / "calculus_state.json"));
  CHECK(fs::exists(out / "slice_n1_t0.json"));
  // norm trace stays at 1 for the raw semigroup slices
  const std::string trace = slurp((out / "norm_trace.csv").string());
  CHECK(trace.find("1,") != std::string::npos);
}

TEST_CASE("serial suite runs are byte-identical") {
  SuiteConfig cfg = small_config();
  cfg.corpus = "atoms_only";  // keep it fast
  const auto d1 = fresh_dir("polycalc_det_1");
  const auto d2 = fresh_dir("polycalc_det_2");
  write_report(run_suite(cfg), d1.string());
  write_report(run_suite(cfg), d2.string());
  CHECK(slurp((d1 / "report.csv").string()) ==
        slurp((d2 / "report.csv").string()));
  CHECK(slurp((d1 / "summary.json").string()) ==
        slurp((d2 / "summary.json").string()));
}
