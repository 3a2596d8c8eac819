#ifndef PARAOPT_STEPPERS_HPP
#define PARAOPT_STEPPERS_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "paraopt/rational.hpp"
#include "paraopt/tableau.hpp"

namespace paraopt {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

/// u'(t) = -A u + f(t)
struct LinearEvolution {
  SpMat A;
  std::function<Vec(double)> forcing;  // may be null for f == 0
  Vec u0;
};

/// u'(t) = -A u + f(u)
struct SemilinearEvolution {
  SpMat A;
  std::function<Vec(const Vec&)> f;
  std::function<SpMat(const Vec&)> jac_f;
  Vec u0;
};

struct StepFailure : std::runtime_error {
  double residual;
  explicit StepFailure(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

/// One linear implicit-RK step: solves (I + dt A_rk (x) A_h) k = rhs for the
/// stage slopes, then u' = u + dt sum b_i k_i. The stage factorization is
/// computed once per (evolution, tableau, dt).
class LinearIrkStepper {
 public:
  LinearIrkStepper(const LinearEvolution& prob, const ButcherTableau& tab, double dt);
  Vec step(double t, const Vec& u) const;
  double dt() const { return dt_; }

 private:
  const LinearEvolution& prob_;
  ButcherTableau tab_;
  double dt_;
  Eigen::SparseLU<SpMat> lu_;
};

/// One nonlinear implicit-RK step via Newton on the stacked stage values with
/// the exact block Jacobian I + dt A_rk (x) A_h - dt (A_rk (x) I) jac_f.
class NonlinearIrkStepper {
 public:
  NonlinearIrkStepper(const SemilinearEvolution& prob, const ButcherTableau& tab, double dt,
                      double newton_tol = 1e-12, int max_newton = 25);
  Vec step(const Vec& u) const;
  const std::vector<double>& last_residuals() const { return residuals_; }

 private:
  const SemilinearEvolution& prob_;
  ButcherTableau tab_;
  double dt_, tol_;
  int max_newton_;
  SpMat base_;  // I + dt A_rk (x) A_h
  mutable Eigen::SparseLU<SpMat> lu_;
  mutable bool analyzed_ = false;
  mutable std::vector<double> residuals_;
};

/// Applies R(dT A) v through one sparse solve against the shared denominator,
/// splitting off the lambda->infinity constant first so the effective
/// numerator has strictly lower degree (round-off-safe form).
class RationalApplicator {
 public:
  RationalApplicator(const RationalFn& R, const SpMat& A, double dT);
  Vec apply(const Vec& v) const;
  /// Q(dT A)^{-1} p(dT A) v for an extra strictly-proper numerator p sharing
  /// the same denominator (used for forcing weights).
  Vec apply_proper(const std::vector<double>& num, const Vec& v) const;
  /// w_inf v + Q^{-1}[rem(dT A) v + extra]; one solve for a combined update.
  Vec apply_with(const Vec& v, const Vec& extra) const;

 private:
  const SpMat& A_;
  double dT_, w_inf_;
  std::vector<double> rem_;  // num - w_inf * den, degree <= deg(den) - 1
  Eigen::SparseLU<SpMat> lu_;
  Vec horner(const std::vector<double>& coeff, const Vec& v) const;
};

/// Semi-implicit coarse step u' = R(dT A) u + dT P1(dT A) f(u); R and P1 must
/// share the denominator so the update costs a single sparse solve.
class SemiImplicitCoarseStepper {
 public:
  SemiImplicitCoarseStepper(const SemilinearEvolution& prob, const RationalFn& R,
                            const RationalFn& P1, double dT);
  Vec step(const Vec& u) const;

 private:
  const SemilinearEvolution& prob_;
  double dT_;
  RationalApplicator rat_;
  std::vector<double> p1_num_;
};

Vec linear_irk_step(const LinearEvolution& prob, const ButcherTableau& tab, double t,
                    double dt, const Vec& u);
Vec nonlinear_irk_step(const SemilinearEvolution& prob, const ButcherTableau& tab, double dt,
                       const Vec& u, double tol = 1e-12, int max_newton = 25);
Vec semi_implicit_coarse_step(const SemilinearEvolution& prob, const RationalFn& R,
                              const RationalFn& P1, double dT, const Vec& u);

}  // namespace paraopt

#endif
