#include "paraopt/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

namespace paraopt {

namespace poly {

double eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

std::vector<double> deriv(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> out(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) out[k - 1] = static_cast<double>(k) * c[k];
  return out;
}

std::vector<double> trim(std::vector<double> c, double tol) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= tol * scale) c.pop_back();
  return c;
}

std::vector<double> real_roots(const std::vector<double>& c_in) {
  std::vector<double> c = trim(c_in);
  int deg = static_cast<int>(c.size()) - 1;
  std::vector<double> roots;
  if (deg <= 0) return roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  if (deg == 2) {
    double a = c[2], b = c[1], c0 = c[0];
    double disc = b * b - 4.0 * a * c0;
    if (disc < 0.0) return roots;
    double sq = std::sqrt(disc);
    // numerically stable quadratic formula
    double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    roots.push_back(q / a);
    if (q != 0.0) roots.push_back(c0 / q);
    else roots.push_back(0.0);
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  // companion matrix of the monic polynomial
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  for (int i = 0; i < deg; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) < 1e-10 * (1.0 + std::abs(z.real()))) roots.push_back(z.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace poly

RationalFn::RationalFn(std::vector<double> n, std::vector<double> d)
    : num(std::move(n)), den(std::move(d)) {
  if (den.empty() || den[0] != 1.0)
    throw std::invalid_argument("RationalFn: denominator must be normalized with q_0 = 1");
  if (num.empty()) num = {0.0};
  if (num.size() > den.size())
    throw std::invalid_argument("RationalFn: deg(num) must not exceed deg(den)");
}

double eval(const RationalFn& f, double lambda) {
  if (std::isinf(lambda)) return eval_at_infinity(f);
  double q = poly::eval(f.den, lambda);
  if (q == 0.0) throw std::domain_error("RationalFn eval: denominator vanishes");
  return poly::eval(f.num, lambda) / q;
}

double eval_at_infinity(const RationalFn& f) {
  if (f.num.size() < f.den.size()) return 0.0;
  return f.num.back() / f.den.back();
}

double eval_stable(const RationalFn& f, double lambda) {
  if (f.deg_den() != 2)
    throw std::invalid_argument("eval_stable requires a quadratic denominator");
  if (f.den[2] == 0.0) return eval(f, lambda);  // degenerate quadratic
  double a0 = f.num.size() > 0 ? f.num[0] : 0.0;
  double a1 = f.num.size() > 1 ? f.num[1] : 0.0;
  double a2 = f.num.size() > 2 ? f.num[2] : 0.0;
  double eb1 = f.den[1], eb2 = f.den[2];
  double q = poly::eval(f.den, lambda);
  if (q == 0.0) throw std::domain_error("RationalFn eval_stable: denominator vanishes");
  return a2 / eb2 + ((a0 * eb2 - a2) + (a1 * eb2 - a2 * eb1) * lambda) / (q * eb2);
}

RationalFn derivative(const RationalFn& f) {
  auto n = poly::sub(poly::mul(poly::deriv(f.num), f.den),
                     poly::mul(f.num, poly::deriv(f.den)));
  auto d = poly::mul(f.den, f.den);
  RationalFn g;
  g.num = poly::trim(std::move(n));
  g.den = std::move(d);
  return g;  // bypass the ctor: deg(num) <= deg(den) holds by construction
}

std::vector<double> critical_points(const RationalFn& f) {
  RationalFn df = derivative(f);
  std::vector<double> out;
  for (double r : poly::real_roots(df.num))
    if (r > 0.0) out.push_back(r);
  return out;
}

std::string to_json_string(const RationalFn& f) {
  nlohmann::json j;
  j["num"] = f.num;
  j["den"] = f.den;
  return j.dump();
}

RationalFn rational_from_json_string(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return RationalFn(j.at("num").get<std::vector<double>>(),
                    j.at("den").get<std::vector<double>>());
}

}  // namespace paraopt
