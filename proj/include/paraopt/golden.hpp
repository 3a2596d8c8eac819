#ifndef PARAOPT_GOLDEN_HPP
#define PARAOPT_GOLDEN_HPP

#include <string>
#include <vector>

#include "paraopt/rational.hpp"
#include "paraopt/train.hpp"

namespace paraopt {

/// A bundled optimized coarse propagator (trained at J0 = 16, q = 1, C_1 = 1).
struct GoldenOcp {
  std::string fp;       // fine propagator the CP was optimized for
  OcpParams params;
  RationalFn R;
  std::vector<RationalFn> P;
};

/// Names: lobatto2, lobatto3, lobatto4, radau3, theta. Throws for others.
const GoldenOcp& bundled_ocp(const std::string& fp_name);

std::vector<std::string> bundled_ocp_names();

}  // namespace paraopt

#endif
