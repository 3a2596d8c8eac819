#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "paraopt/artifact_io.hpp"
#include "paraopt/golden.hpp"
#include "paraopt/svg.hpp"

using namespace paraopt;

TEST_CASE("ocp artifact round trip") {
  const GoldenOcp& g = bundled_ocp("radau3");
  OcpArtifact art;
  art.fp = "radau3";
  art.J0 = 16;
  art.params = g.params;
  art.R = g.R;
  art.P = g.P;
  art.hyperparams = {{"rho0", 1.0}, {"beta", 0.9}};
  art.phi_star_at_J0 = 0.0138;

  const std::string path = "/tmp/paraopt_test_artifact.json";
  save_ocp_artifact(path, art, "deadbeefdeadbeef");
  OcpArtifact back = load_ocp_artifact(path);
  CHECK(back.fp == art.fp);
  CHECK(back.R.num == art.R.num);
  CHECK(back.R.den == art.R.den);
  CHECK(back.P.size() == art.P.size());
  CHECK(back.params.b == art.params.b);
  CHECK(back.phi_star_at_J0 == art.phi_star_at_J0);
  std::remove(path.c_str());
}

TEST_CASE("resolve_cp") {
  auto be = resolve_cp("be", "lobatto3");
  CHECK(be.R.num.size() == 1);
  CHECK(be.P.size() == 1);
  CHECK(be.P[0].num[0] == doctest::Approx(1.0));

  auto bundled = resolve_cp("ocp:bundled", "lobatto4");
  CHECK(bundled.R.num[1] == doctest::Approx(-0.21091));

  auto named = resolve_cp("ocp:bundled-radau3", "lobatto2");
  CHECK(named.R.num[1] == doctest::Approx(-0.21125));

  CHECK_THROWS_AS(resolve_cp("cn", "lobatto2"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_cp("ocp:/nonexistent/file.json", "lobatto2"), std::runtime_error);
}

TEST_CASE("manifest hash is stable and sensitive") {
  RunManifest m;
  m.subcommand = "analyze";
  m.config = {{"fp", "lobatto2"}, {"j", 16}};
  const std::string h1 = m.hash();
  CHECK(h1.size() == 16);
  CHECK(m.hash() == h1);  // repeatable
  m.config["j"] = 17;
  CHECK(m.hash() != h1);
}

TEST_CASE("csv writer carries the manifest stamp") {
  const std::string path = "/tmp/paraopt_test.csv";
  CsvWriter csv(path, "0123456789abcdef", {"a", "b"});
  csv.row({"1", CsvWriter::num(0.5)});
  csv.close();
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# manifest=0123456789abcdef");
  std::getline(in, line);
  CHECK(line == "a,b");
  std::getline(in, line);
  CHECK(line == "1,0.5");
  std::remove(path.c_str());
}

TEST_CASE("svg emitter writes a well-formed plot") {
  const std::string path = "/tmp/paraopt_test.svg";
  SvgSeries s1{"one", {1.0, 10.0, 100.0}, {0.1, 0.01, 0.001}};
  write_svg_plot(path, "title", "s", "|kappa|", {s1}, true, true);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("polyline") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("bundled artifacts pass the feasibility invariants") {
  for (const auto& name : bundled_ocp_names()) {
    const GoldenOcp& g = bundled_ocp(name);
    CHECK(std::abs(eval_at_infinity(g.R)) < 1.0);
    for (double s : critical_points(g.R)) CHECK(std::abs(eval(g.R, s)) < 1.0);
    for (int i = 0; i <= 100; ++i) {
      const double lam = std::pow(10.0, -4.0 + 8.0 * i / 100.0);
      CHECK(std::abs(eval(g.R, lam)) < 1.0);
    }
  }
}
