#include "paraopt/golden.hpp"

#include <map>
#include <stdexcept>

namespace paraopt {

namespace {

GoldenOcp make(const std::string& fp, std::vector<double> rnum, std::vector<double> rden,
               std::vector<double> pnum, std::vector<double> pden) {
  GoldenOcp g;
  g.fp = fp;
  g.R = RationalFn(std::move(rnum), std::move(rden));
  g.P = {RationalFn(std::move(pnum), std::move(pden))};
  g.params = params_from_rational(g.R, /*q=*/1);
  return g;
}

const std::map<std::string, GoldenOcp>& table() {
  static const std::map<std::string, GoldenOcp> t = [] {
    std::map<std::string, GoldenOcp> m;
    m["lobatto2"] = make("lobatto2",
                         {1.0, -0.20967, 0.00484}, {1.0, 0.79033, 0.37931},
                         {1.0, 0.37447}, {1.0, 0.79033, 0.37931});
    m["lobatto3"] = make("lobatto3",
                         {1.0, -0.21014, 0.00486}, {1.0, 0.78986, 0.38283},
                         {1.0, 0.37797}, {1.0, 0.78986, 0.38283});
    m["lobatto4"] = make("lobatto4",
                         {1.0, -0.21091, 0.00476}, {1.0, 0.78909, 0.37898},
                         {1.0, 0.37422}, {1.0, 0.78909, 0.37898});
    m["radau3"] = make("radau3",
                       {1.0, -0.21125, 0.00479}, {1.0, 0.78875, 0.37922},
                       {1.0, 0.37443}, {1.0, 0.78875, 0.37922});
    m["theta"] = make("theta",
                      {1.0, 84.79323, -15.89302, 0.13247},
                      {1.0, 85.79323, 83.00272, 0.66421},
                      {1.0, 42.18022, 0.20341},
                      {1.0, 36.15808, 35.70839, 0.25501});
    return m;
  }();
  return t;
}

}  // namespace

const GoldenOcp& bundled_ocp(const std::string& fp_name) {
  auto it = table().find(fp_name);
  if (it == table().end())
    throw std::invalid_argument("bundled_ocp: no bundled artifact for " + fp_name);
  return it->second;
}

std::vector<std::string> bundled_ocp_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : table()) names.push_back(k);
  return names;
}

}  // namespace paraopt
