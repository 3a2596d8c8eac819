#ifndef PARAOPT_REPRODUCE_HPP
#define PARAOPT_REPRODUCE_HPP

#include <string>
#include <vector>

namespace paraopt {

/// One reproduction check: a published target value vs the computed one.
struct CellCheck {
  std::string label;
  double expected = 0.0;
  double got = 0.0;
  bool pass = false;
  std::string note;
};

struct Table1Target {
  const char* cp;
  const char* fp;
  int J;
  double phi_star;
  double s_star;
};

/// The 60 published (CP, FP, J) convergence-factor cells.
const std::vector<Table1Target>& table1_targets();

/// phi* within +-0.002 and s* within +-2% (+-0.1 absolute below 2).
std::vector<CellCheck> check_table1(int grid_points = 4096);

/// Sensitivity and J-robustness bounds: 112 sup|h| for lobatto2 (+-10%),
/// lobatto4 and radau3 (order of magnitude), sup_J k(J) for all four (+-5%).
std::vector<CellCheck> check_fig1();

/// Iteration counts to eta = 1e-7 on the long-horizon diffusion problem,
/// J = 100; counts match +-1 and the optimized CP needs strictly fewer
/// iterations than backward Euler in every column.
std::vector<CellCheck> check_table2(int threads = 0);

/// Iteration counts to eta = 1e-6 on the Allen-Cahn problem, T = 10, J = 20.
std::vector<CellCheck> check_table3(int threads = 0);

}  // namespace paraopt

#endif
