#include "paraopt/artifact_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "paraopt/golden.hpp"
#include "paraopt/schemes.hpp"

namespace paraopt {

namespace {

nlohmann::json rational_json(const RationalFn& f) {
  return nlohmann::json{{"num", f.num}, {"den", f.den}};
}

RationalFn rational_from(const nlohmann::json& j) {
  return RationalFn(j.at("num").get<std::vector<double>>(),
                    j.at("den").get<std::vector<double>>());
}

}  // namespace

nlohmann::json to_json(const OcpArtifact& art) {
  nlohmann::json j;
  j["fp"] = art.fp;
  j["m"] = art.params.m;
  j["n"] = art.params.n;
  j["q"] = art.params.q;
  j["J0"] = art.J0;
  j["b"] = art.params.b;
  j["a_free"] = art.params.a_free;
  j["R"] = rational_json(art.R);
  j["P"] = nlohmann::json::array();
  for (const auto& p : art.P) j["P"].push_back(rational_json(p));
  j["hyperparams"] = art.hyperparams;
  j["phi_star_at_J0"] = art.phi_star_at_J0;
  j["gate_met"] = art.gate_met;
  return j;
}

OcpArtifact ocp_artifact_from_json(const nlohmann::json& j) {
  OcpArtifact art;
  art.fp = j.at("fp").get<std::string>();
  art.params.m = j.at("m").get<int>();
  art.params.n = j.at("n").get<int>();
  art.params.q = j.at("q").get<int>();
  art.J0 = j.at("J0").get<int>();
  art.params.b = j.at("b").get<std::vector<double>>();
  art.params.a_free = j.at("a_free").get<std::vector<double>>();
  art.R = rational_from(j.at("R"));
  for (const auto& p : j.at("P")) art.P.push_back(rational_from(p));
  if (j.contains("hyperparams")) art.hyperparams = j.at("hyperparams");
  if (j.contains("phi_star_at_J0")) art.phi_star_at_J0 = j.at("phi_star_at_J0").get<double>();
  if (j.contains("gate_met")) art.gate_met = j.at("gate_met").get<bool>();
  art.params.validate();
  return art;
}

void save_ocp_artifact(const std::string& path, const OcpArtifact& art,
                       const std::string& manifest_hash) {
  nlohmann::json j = to_json(art);
  j["manifest_hash"] = manifest_hash;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

OcpArtifact load_ocp_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return ocp_artifact_from_json(j);
}

CoarseChoice resolve_cp(const std::string& cp_spec, const std::string& fp_name) {
  CoarseChoice c;
  if (cp_spec == "be" || cp_spec == "sdirk22") {
    c.label = cp_spec;
    c.R = classical_stability(cp_spec).stability;
    c.P = solve_forcing_weights(c.R, 1, {1.0});
    return c;
  }
  if (cp_spec.rfind("ocp:", 0) == 0) {
    const std::string rest = cp_spec.substr(4);
    if (rest == "bundled" || rest.rfind("bundled-", 0) == 0) {
      std::string name = rest == "bundled" ? fp_name : rest.substr(8);
      if (name.rfind("theta", 0) == 0) name = "theta";
      const GoldenOcp& g = bundled_ocp(name);
      c.label = "ocp:bundled-" + name;
      c.R = g.R;
      c.P = g.P;
      return c;
    }
    OcpArtifact art = load_ocp_artifact(rest);
    c.label = "ocp:" + rest;
    c.R = art.R;
    c.P = art.P;
    return c;
  }
  throw std::invalid_argument("unknown coarse propagator spec: " + cp_spec);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["version"] = version;
  j["config"] = config;
  j["outputs"] = outputs;
  return j;
}

std::string RunManifest::hash() const {
  const std::string s = to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return std::string(buf);
}

CsvWriter::CsvWriter(const std::string& path, const std::string& manifest_hash,
                     const std::vector<std::string>& columns)
    : path_(path) {
  buffer_ = "# manifest=" + manifest_hash + "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    buffer_ += columns[i] + (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i)
    buffer_ += cells[i] + (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::close() {
  if (closed_) return;
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("cannot write " + path_);
  out << buffer_;
  closed_ = true;
}

std::string CsvWriter::num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace paraopt
