#include "paraopt/tableau.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace paraopt {

ButcherTableau tableau_backward_euler() {
  ButcherTableau t;
  t.name = "be";
  t.order = 1;
  t.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
  t.b = Eigen::VectorXd::Constant(1, 1.0);
  t.c = Eigen::VectorXd::Constant(1, 1.0);
  return t;
}

ButcherTableau tableau_sdirk22() {
  const double g = (2.0 - std::sqrt(2.0)) / 2.0;
  ButcherTableau t;
  t.name = "sdirk22";
  t.order = 2;
  t.A.resize(2, 2);
  t.A << g, 0.0,
         1.0 - g, g;
  t.b.resize(2);
  t.b << 1.0 - g, g;
  t.c.resize(2);
  t.c << g, 1.0;
  return t;
}

ButcherTableau tableau_lobatto_iiic(int stages) {
  ButcherTableau t;
  t.order = 2 * stages - 2;
  switch (stages) {
    case 2: {
      t.name = "lobatto2";
      t.A.resize(2, 2);
      t.A << 0.5, -0.5,
             0.5, 0.5;
      t.b.resize(2);
      t.b << 0.5, 0.5;
      t.c.resize(2);
      t.c << 0.0, 1.0;
      return t;
    }
    case 3: {
      t.name = "lobatto3";
      t.A.resize(3, 3);
      t.A << 1.0 / 6, -1.0 / 3, 1.0 / 6,
             1.0 / 6, 5.0 / 12, -1.0 / 12,
             1.0 / 6, 2.0 / 3, 1.0 / 6;
      t.b.resize(3);
      t.b << 1.0 / 6, 2.0 / 3, 1.0 / 6;
      t.c.resize(3);
      t.c << 0.0, 0.5, 1.0;
      return t;
    }
    case 4: {
      t.name = "lobatto4";
      const double s5 = std::sqrt(5.0);
      t.A.resize(4, 4);
      t.A << 1.0 / 12, -s5 / 12, s5 / 12, -1.0 / 12,
             1.0 / 12, 0.25, (10.0 - 7.0 * s5) / 60, s5 / 60,
             1.0 / 12, (10.0 + 7.0 * s5) / 60, 0.25, -s5 / 60,
             1.0 / 12, 5.0 / 12, 5.0 / 12, 1.0 / 12;
      t.b.resize(4);
      t.b << 1.0 / 12, 5.0 / 12, 5.0 / 12, 1.0 / 12;
      t.c.resize(4);
      t.c << 0.0, (5.0 - s5) / 10, (5.0 + s5) / 10, 1.0;
      return t;
    }
    default:
      throw std::invalid_argument("Lobatto IIIC tableau: stages must be 2, 3 or 4");
  }
}

ButcherTableau tableau_radau_iia3() {
  ButcherTableau t;
  t.name = "radau3";
  t.order = 5;
  const double s6 = std::sqrt(6.0);
  t.A.resize(3, 3);
  t.A << (88.0 - 7.0 * s6) / 360, (296.0 - 169.0 * s6) / 1800, (-2.0 + 3.0 * s6) / 225,
         (296.0 + 169.0 * s6) / 1800, (88.0 + 7.0 * s6) / 360, (-2.0 - 3.0 * s6) / 225,
         (16.0 - s6) / 36, (16.0 + s6) / 36, 1.0 / 9;
  t.b.resize(3);
  t.b << (16.0 - s6) / 36, (16.0 + s6) / 36, 1.0 / 9;
  t.c.resize(3);
  t.c << (4.0 - s6) / 10, (4.0 + s6) / 10, 1.0;
  return t;
}

namespace {

// det(I + x B) = sum_k e_k(B) x^k with e_k the sum of k-by-k principal minors.
std::vector<double> det_i_plus_xb(const Eigen::MatrixXd& B) {
  const int m = static_cast<int>(B.rows());
  std::vector<double> coeff(m + 1, 0.0);
  coeff[0] = 1.0;
  // enumerate index subsets of {0..m-1} (m <= 4 in practice)
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    Eigen::MatrixXd sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int cc = 0; cc < k; ++cc) sub(r, cc) = B(idx[r], idx[cc]);
    coeff[k] += sub.determinant();
  }
  return coeff;
}

}  // namespace

RationalFn stability_from_tableau(const ButcherTableau& tab) {
  const Eigen::MatrixXd ones_bt =
      Eigen::VectorXd::Ones(tab.stages()) * tab.b.transpose();
  auto num = poly::trim(det_i_plus_xb(tab.A - ones_bt));
  auto den = det_i_plus_xb(tab.A);
  RationalFn r;
  r.num = std::move(num);
  r.den = std::move(den);
  return r;
}

}  // namespace paraopt
