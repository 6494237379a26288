#include "polycalc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace polycalc::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string stem_of(const std::string& path) {
  fs::path p(path);
  return (p.parent_path() / p.stem()).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open for writing: " + path);
  out << content;
}

}  // namespace

void write_testfn(const TestFn& fn, const std::string& csv_path) {
  std::string csv = "t,re,im\n";
  for (std::size_t i = 0; i < fn.size(); ++i) {
    csv += format_double(fn.grid->nodes[i]);
    csv += ',';
    csv += format_double(fn.values[i].real());
    csv += ',';
    csv += format_double(fn.values[i].imag());
    csv += '\n';
  }
  write_file(csv_path, csv);
  json side;
  side["n_points"] = fn.grid->size();
  side["t_max"] = fn.grid->t_max;
  side["rule"] = to_string(fn.grid->rule);
  side["decay_tag"] = to_string(fn.decay_tag);
  write_file(stem_of(csv_path) + ".json", side.dump(2) + "\n");
}

TestFn read_testfn(const std::string& csv_path) {
  std::ifstream side_in(stem_of(csv_path) + ".json");
  if (!side_in) throw config_error("missing sidecar for " + csv_path);
  json side = json::parse(side_in);
  auto grid = build_grid(side.at("n_points").get<std::size_t>(),
                         side.at("t_max").get<double>(),
                         quad_rule_from_string(side.at("rule").get<std::string>()));
  std::ifstream in(csv_path);
  if (!in) throw config_error("cannot open " + csv_path);
  std::string line;
  std::getline(in, line);  // header
  TestFn fn;
  fn.grid = grid;
  fn.decay_tag = decay_tag_from_string(side.at("decay_tag").get<std::string>());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, re, im;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &t, &re, &im) != 3)
      throw config_error("malformed CSV row in " + csv_path);
    fn.values.emplace_back(re, im);
  }
  if (fn.values.size() != grid->size())
    throw config_error("CSV row count mismatch in " + csv_path);
  return fn;
}

void write_distribution(const Distribution& f, const std::string& json_path) {
  json j;
  j["atoms"] = json::array();
  for (const auto& a : f.atoms)
    j["atoms"].push_back({{"a", a.location},
                          {"m", a.order},
                          {"re", a.weight.real()},
                          {"im", a.weight.imag()}});
  if (f.parts.empty()) {
    j["density"] = nullptr;
  } else if (f.parts.size() == 1) {
    const std::string csv = stem_of(json_path) + "_part0.csv";
    write_testfn(f.parts[0].base, csv);
    j["density"] = fs::path(csv).filename().string();
    j["density_offset"] = f.parts[0].offset;
  } else {
    j["density"] = json::array();
    for (std::size_t k = 0; k < f.parts.size(); ++k) {
      const std::string csv =
          stem_of(json_path) + "_part" + std::to_string(k) + ".csv";
      write_testfn(f.parts[k].base, csv);
      j["density"].push_back({{"csv", fs::path(csv).filename().string()},
                              {"offset", f.parts[k].offset}});
    }
  }
  write_file(json_path, j.dump(2) + "\n");
}

Distribution read_distribution(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw config_error("cannot open " + json_path);
  json j = json::parse(in);
  Distribution f;
  for (const auto& a : j.at("atoms"))
    f.atoms.push_back(Atom{a.at("a").get<double>(), a.at("m").get<int>(),
                           cplx{a.at("re").get<double>(),
                                a.at("im").get<double>()}});
  const fs::path dir = fs::path(json_path).parent_path();
  const auto& dens = j.at("density");
  if (dens.is_null()) {
  } else if (dens.is_string()) {
    DensityPart p;
    p.base = read_testfn((dir / dens.get<std::string>()).string());
    p.offset = j.value("density_offset", 0.0);
    f.parts.push_back(std::move(p));
  } else {
    for (const auto& d : dens) {
      DensityPart p;
      p.base = read_testfn((dir / d.at("csv").get<std::string>()).string());
      p.offset = d.at("offset").get<double>();
      f.parts.push_back(std::move(p));
    }
  }
  canonicalize(f);
  return f;
}

void write_freqfn(const FreqFn& fn, const std::string& csv_path) {
  std::string csv = "xi,re,im\n";
  for (std::size_t k = 0; k < fn.values.size(); ++k) {
    csv += format_double(fn.grid->xi[k]);
    csv += ',';
    csv += format_double(fn.values[k].real());
    csv += ',';
    csv += format_double(fn.values[k].imag());
    csv += '\n';
  }
  write_file(csv_path, csv);
}

void write_poly_test(const PolyTest& p, const std::string& json_path) {
  json j;
  j["max_degree"] = p.max_degree;
  j["degrees"] = json::array();
  std::map<std::uint64_t, std::string> written;
  int file_id = 0;
  for (int n = 0; n <= p.max_degree; ++n) {
    json deg = json::array();
    for (const auto& t : p.terms[n]) {
      json term;
      term["re"] = t.coeff.real();
      term["im"] = t.coeff.imag();
      term["factors"] = json::array();
      for (const auto& f : t.factors) {
        const auto h = f.content_hash();
        auto it = written.find(h);
        if (it == written.end()) {
          const std::string csv =
              stem_of(json_path) + "_f" + std::to_string(file_id++) + ".csv";
          write_testfn(f, csv);
          it = written.emplace(h, fs::path(csv).filename().string()).first;
        }
        term["factors"].push_back(it->second);
      }
      deg.push_back(term);
    }
    j["degrees"].push_back(deg);
  }
  write_file(json_path, j.dump(2) + "\n");
}

void write_poly_dist(const PolyDist& f, const std::string& json_path) {
  json j;
  j["max_degree"] = f.max_degree;
  std::map<std::uint64_t, std::string> written;
  int file_id = 0;
  auto ref_of = [&](const Distribution& d) {
    const auto h = d.content_hash();
    auto it = written.find(h);
    if (it == written.end()) {
      const std::string sub =
          stem_of(json_path) + "_d" + std::to_string(file_id++) + ".json";
      write_distribution(d, sub);
      it = written.emplace(h, fs::path(sub).filename().string()).first;
    }
    return it->second;
  };
  j["diag"] = json::array();
  j["general"] = json::array();
  for (int n = 0; n <= f.max_degree; ++n) {
    json deg = json::array();
    for (const auto& t : f.diag[n])
      deg.push_back({{"re", t.coeff.real()},
                     {"im", t.coeff.imag()},
                     {"base", ref_of(t.base)}});
    j["diag"].push_back(deg);
    json gen = json::array();
    for (const auto& t : f.general[n]) {
      json term = {{"re", t.coeff.real()}, {"im", t.coeff.imag()}};
      term["factors"] = json::array();
      for (const auto& d : t.factors) term["factors"].push_back(ref_of(d));
      gen.push_back(term);
    }
    j["general"].push_back(gen);
  }
  write_file(json_path, j.dump(2) + "\n");
}

void write_fock_state(const FockState& y, const std::string& manifest_path) {
  json j;
  j["N"] = y.max_degree;
  j["y0"] = {{"re", y.y0.real()}, {"im", y.y0.imag()}};
  j["components"] = json::array();
  for (int n = 1; n <= y.max_degree; ++n) {
    const auto& g = *y.grids[n - 1];
    const std::string csv =
        stem_of(manifest_path) + "_y" + std::to_string(n) + ".csv";
    std::string header;
    for (int a = 1; a <= n; ++a) header += "xi" + std::to_string(a) + ",";
    std::string out = header + "re,im\n";
    const std::size_t M = g.nodes;
    const auto& c = y.comps[n - 1];
    std::vector<std::size_t> idx(n);
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
      std::size_t rem = flat;
      for (int a = n - 1; a >= 0; --a) {
        idx[a] = rem % M;
        rem /= M;
      }
      for (int a = 0; a < n; ++a) {
        out += format_double(g.axis_node(idx[a]));
        out += ',';
      }
      out += format_double(c[flat].real());
      out += ',';
      out += format_double(c[flat].imag());
      out += '\n';
    }
    write_file(csv, out);
    j["components"].push_back({{"n", n},
                               {"csv", fs::path(csv).filename().string()},
                               {"L", g.L},
                               {"nodes_per_axis", g.nodes}});
  }
  write_file(manifest_path, j.dump(2) + "\n");
}

}  // namespace polycalc::io
