#ifndef PARAOPT_TABLEAU_HPP
#define PARAOPT_TABLEAU_HPP

#include <string>

#include <Eigen/Dense>

#include "paraopt/rational.hpp"

namespace paraopt {

/// Butcher tableau (A, b, c) of an implicit RK scheme.
struct ButcherTableau {
  std::string name;
  int order = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  int stages() const { return static_cast<int>(b.size()); }
};

ButcherTableau tableau_backward_euler();
ButcherTableau tableau_sdirk22();
ButcherTableau tableau_lobatto_iiic(int stages);  // 2, 3 or 4
ButcherTableau tableau_radau_iia3();

/// Stability function in the exp(-lambda) convention:
/// r(lambda) = det(I + lambda (A - 1 b^T)) / det(I + lambda A),
/// expanded to exact polynomial coefficients via principal minors and trimmed.
RationalFn stability_from_tableau(const ButcherTableau& tab);

}  // namespace paraopt

#endif
