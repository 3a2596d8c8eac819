#ifndef PARAOPT_ARTIFACT_IO_HPP
#define PARAOPT_ARTIFACT_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paraopt/rational.hpp"
#include "paraopt/train.hpp"

namespace paraopt {

/// On-disk trained-OCP artifact.
struct OcpArtifact {
  std::string fp;
  int J0 = 16;
  OcpParams params;
  RationalFn R;
  std::vector<RationalFn> P;
  nlohmann::json hyperparams;
  double phi_star_at_J0 = 0.0;
  bool gate_met = true;
};

nlohmann::json to_json(const OcpArtifact& art);
OcpArtifact ocp_artifact_from_json(const nlohmann::json& j);
void save_ocp_artifact(const std::string& path, const OcpArtifact& art,
                       const std::string& manifest_hash);
OcpArtifact load_ocp_artifact(const std::string& path);

/// A coarse-propagator choice resolved from a CLI string: "be", "sdirk22",
/// "ocp:bundled-<fp>", "ocp:bundled" (FP-matched) or "ocp:<artifact path>".
struct CoarseChoice {
  std::string label;
  RationalFn R;
  std::vector<RationalFn> P;  // forcing weights sharing R's denominator
};
CoarseChoice resolve_cp(const std::string& cp_spec, const std::string& fp_name);

/// Resolved CLI invocation; its hash stamps every emitted file.
struct RunManifest {
  std::string subcommand;
  std::string version = "0.1.0";
  nlohmann::json config;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
  std::string hash() const;  // FNV-1a 64-bit, hex
};

/// CSV writer: first line carries the manifest hash as a comment.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& manifest_hash,
            const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void close();

  static std::string num(double v);  // repeatable shortest-roundtrip format

 private:
  std::string path_;
  std::string buffer_;
  bool closed_ = false;
};

}  // namespace paraopt

#endif
