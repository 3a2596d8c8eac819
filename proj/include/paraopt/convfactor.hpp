#ifndef PARAOPT_CONVFACTOR_HPP
#define PARAOPT_CONVFACTOR_HPP

#include <functional>
#include <vector>

#include "paraopt/rational.hpp"

namespace paraopt {

/// Scaled spectrum sample set Lambda_h = {dT * lambda}, lambda spanning
/// [lambda_min, lambda_max] with n_samples points (log-spaced by default).
struct SpectrumSpec {
  double lambda_min = 1e-3;
  double lambda_max = 1e4;
  int n_samples = 2048;
  double dT = 1.0;
  bool log_spacing = true;

  std::vector<double> samples() const;
};

/// Componentwise convergence factor (r(s/J)^J - R(s)) / (1 - |R(s)|), signed.
/// Throws std::domain_error when |R(s)| >= 1.
double kappa(const RationalFn& r, const RationalFn& R, int J, double s);

/// Limit of kappa as s -> infinity.
double kappa_at_infinity(const RationalFn& r, const RationalFn& R, int J);

/// max over the sample set of |kappa|.
double kappa_c(const RationalFn& r, const RationalFn& R, int J, const SpectrumSpec& spec);

struct AnalysisResult {
  double phi_star = 0.0;
  double s_star = 0.0;
  int J = 0;
};

/// Global maximum of |kappa(r,R,J,.)| over [s_lo, s_hi] plus the s->infinity
/// limit. Dense log-grid scan, then golden-section refinement of every local
/// maximum within 1e-3 of the best grid value; ties resolve to smaller s
/// (s_star = infinity reported when the limit value wins).
AnalysisResult phi_star(const RationalFn& r, const RationalFn& R, int J,
                        double s_lo = 1e-6, double s_hi = 1e8, int grid_points = 4096);

/// Sensitivity kernel h(s) = r(s)^15 / (1 - |R(16s)|) * (r(s) ln r(s) - r'(s) s).
/// Throws std::domain_error when r(s) <= 0 (assumption violated) or |R(16s)| >= 1.
double h_function(const RationalFn& r, const RationalFn& R, double s);

/// max over integer J in [J_lo, J_hi] of phi_star(...).phi_star.
double j_robustness(const RationalFn& r, const RationalFn& R, int J_lo = 16, int J_hi = 128);

namespace detail {
/// Deterministic grid max: returns index of the best (value, then smaller
/// index) entry of f over idx in [0, n). The OpenMP path chunks the range and
/// merges per-chunk winners in fixed order, so the result does not depend on
/// the thread count. serial_scan_max is the reference used by tests.
long scan_max(long n, const std::function<double(long)>& f, std::vector<double>* values = nullptr);
long serial_scan_max(long n, const std::function<double(long)>& f, std::vector<double>* values = nullptr);
}  // namespace detail

}  // namespace paraopt

#endif
