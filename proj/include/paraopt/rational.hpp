#ifndef PARAOPT_RATIONAL_HPP
#define PARAOPT_RATIONAL_HPP

#include <string>
#include <vector>

namespace paraopt {

// Polynomial helpers on ascending-power coefficient vectors.
namespace poly {
double eval(const std::vector<double>& c, double x);
std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> deriv(const std::vector<double>& c);
// Drop trailing coefficients with |c_k| <= tol * max|c|.
std::vector<double> trim(std::vector<double> c, double tol = 1e-12);
// All real roots; closed form for degree <= 2, companion-matrix eigenvalues above.
// Roots with |imag| < 1e-10*(1+|real|) count as real.
std::vector<double> real_roots(const std::vector<double>& c);
}  // namespace poly

/// Real rational function p(lambda)/q(lambda), ascending-power coefficients,
/// normalized so den[0] == 1. Stability functions use the convention
/// r(lambda) ~ exp(-lambda).
struct RationalFn {
  std::vector<double> num;
  std::vector<double> den;

  RationalFn() = default;
  RationalFn(std::vector<double> n, std::vector<double> d);

  int deg_num() const { return static_cast<int>(num.size()) - 1; }
  int deg_den() const { return static_cast<int>(den.size()) - 1; }
};

/// p(lambda)/q(lambda); accepts lambda = +infinity (degree-based limit).
/// Throws std::domain_error when the denominator vanishes.
double eval(const RationalFn& f, double lambda);

/// Limit value as lambda -> infinity: 0 if deg num < deg den, else ratio of
/// leading coefficients.
double eval_at_infinity(const RationalFn& f);

/// Round-off-safe evaluation for quadratic denominators: splits off the
/// lambda->infinity constant so the remaining numerator is linear.
double eval_stable(const RationalFn& f, double lambda);

/// Exact quotient-rule derivative with denominator q(lambda)^2.
RationalFn derivative(const RationalFn& f);

/// Strictly positive real roots of the derivative numerator (the set
/// Lambda_R). May be empty.
std::vector<double> critical_points(const RationalFn& f);

std::string to_json_string(const RationalFn& f);
RationalFn rational_from_json_string(const std::string& text);

}  // namespace paraopt

#endif
