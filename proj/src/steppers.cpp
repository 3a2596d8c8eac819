#include "paraopt/steppers.hpp"

#include <cmath>

namespace paraopt {

namespace {

// Stage unknowns interleaved space-major: index(r, i) = r*m + i keeps the
// stage system banded (width ~2m) so sparse LU stays O(N).
SpMat stage_system(const Eigen::MatrixXd& Ark, const SpMat& Ah, double dt) {
  const int m = static_cast<int>(Ark.rows());
  const int N = static_cast<int>(Ah.rows());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(m * m * Ah.nonZeros() + m * N);
  for (int k = 0; k < Ah.outerSize(); ++k)
    for (SpMat::InnerIterator it(Ah, k); it; ++it)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          const double w = dt * Ark(i, j) * it.value();
          if (w != 0.0)
            trip.emplace_back(static_cast<int>(it.row()) * m + i,
                              static_cast<int>(it.col()) * m + j, w);
        }
  for (int i = 0; i < m * N; ++i) trip.emplace_back(i, i, 1.0);
  SpMat out(m * N, m * N);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

LinearIrkStepper::LinearIrkStepper(const LinearEvolution& prob, const ButcherTableau& tab,
                                   double dt)
    : prob_(prob), tab_(tab), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("LinearIrkStepper: dt must be positive");
  SpMat sys = stage_system(tab_.A, prob_.A, dt_);
  lu_.compute(sys);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("LinearIrkStepper: singular stage system");
}

Vec LinearIrkStepper::step(double t, const Vec& u) const {
  const int m = tab_.stages();
  const int N = static_cast<int>(u.size());
  Vec rhs(m * N);
  const Vec Au = prob_.A * u;
  for (int i = 0; i < m; ++i) {
    if (prob_.forcing) {
      const Vec f = prob_.forcing(t + tab_.c(i) * dt_);
      for (int r = 0; r < N; ++r) rhs(r * m + i) = -Au(r) + f(r);
    } else {
      for (int r = 0; r < N; ++r) rhs(r * m + i) = -Au(r);
    }
  }
  const Vec k = lu_.solve(rhs);
  Vec out = u;
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < N; ++r) out(r) += dt_ * tab_.b(i) * k(r * m + i);
  return out;
}

NonlinearIrkStepper::NonlinearIrkStepper(const SemilinearEvolution& prob,
                                         const ButcherTableau& tab, double dt,
                                         double newton_tol, int max_newton)
    : prob_(prob), tab_(tab), dt_(dt), tol_(newton_tol), max_newton_(max_newton) {
  if (!(dt > 0.0)) throw std::invalid_argument("NonlinearIrkStepper: dt must be positive");
  base_ = stage_system(tab_.A, prob_.A, dt_);
}

Vec NonlinearIrkStepper::step(const Vec& u) const {
  const int m = tab_.stages();
  const int N = static_cast<int>(u.size());
  Vec U(m * N);
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < N; ++r) U(r * m + i) = u(r);

  residuals_.clear();
  std::vector<Vec> stage(m, Vec(N)), FU(m, Vec(N));
  auto unpack = [&](const Vec& stacked) {
    for (int i = 0; i < m; ++i)
      for (int r = 0; r < N; ++r) stage[i](r) = stacked(r * m + i);
  };
  auto eval_F = [&]() {
    for (int i = 0; i < m; ++i) FU[i] = -(prob_.A * stage[i]) + prob_.f(stage[i]);
  };

  Vec G(m * N);
  double res = 0.0;
  for (int it = 0; it <= max_newton_; ++it) {
    unpack(U);
    eval_F();
    for (int i = 0; i < m; ++i) {
      Vec acc = stage[i] - u;
      for (int j = 0; j < m; ++j) acc -= dt_ * tab_.A(i, j) * FU[j];
      for (int r = 0; r < N; ++r) G(r * m + i) = acc(r);
    }
    res = G.lpNorm<Eigen::Infinity>();
    residuals_.push_back(res);
    if (res <= tol_) {
      Vec out = u;
      for (int i = 0; i < m; ++i) out += dt_ * tab_.b(i) * FU[i];
      return out;
    }
    if (it == max_newton_) break;

    // J = base - dt (A_rk (x) I) blockdiag(jac_f(stage_j)), same interleaving
    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < m; ++j) {
      const SpMat Jf = prob_.jac_f(stage[j]);
      for (int k = 0; k < Jf.outerSize(); ++k)
        for (SpMat::InnerIterator itr(Jf, k); itr; ++itr)
          for (int i = 0; i < m; ++i) {
            const double w = -dt_ * tab_.A(i, j) * itr.value();
            if (w != 0.0)
              trip.emplace_back(static_cast<int>(itr.row()) * m + i,
                                static_cast<int>(itr.col()) * m + j, w);
          }
    }
    SpMat corr(m * N, m * N);
    corr.setFromTriplets(trip.begin(), trip.end());
    SpMat J = base_ + corr;
    if (!analyzed_) {
      lu_.analyzePattern(J);
      analyzed_ = true;
    }
    lu_.factorize(J);
    if (lu_.info() != Eigen::Success)
      throw StepFailure("nonlinear_irk_step: singular Newton system", res);
    U -= lu_.solve(G);
  }
  throw StepFailure("nonlinear_irk_step: Newton failed to reach tolerance " +
                        std::to_string(tol_) + " (residual " + std::to_string(res) + ")",
                    res);
}

RationalApplicator::RationalApplicator(const RationalFn& R, const SpMat& A, double dT)
    : A_(A), dT_(dT) {
  w_inf_ = (R.num.size() == R.den.size()) ? R.num.back() / R.den.back() : 0.0;
  rem_.assign(R.den.size() - 1, 0.0);
  for (size_t k = 0; k + 1 < R.den.size(); ++k) {
    double v = -w_inf_ * R.den[k];
    if (k < R.num.size()) v += R.num[k];
    rem_[k] = v;
  }
  // Q(dT A) = sum den_k (dT A)^k
  const int N = static_cast<int>(A.rows());
  SpMat Q(N, N), pw(N, N);
  Q.setIdentity();
  pw.setIdentity();
  for (size_t k = 1; k < R.den.size(); ++k) {
    pw = (pw * A).eval();
    pw *= dT;
    Q += R.den[k] * pw;
  }
  lu_.compute(Q);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("RationalApplicator: denominator operator is singular");
}

Vec RationalApplicator::horner(const std::vector<double>& coeff, const Vec& v) const {
  Vec acc = coeff.back() * v;
  for (int k = static_cast<int>(coeff.size()) - 2; k >= 0; --k)
    acc = dT_ * (A_ * acc) + coeff[k] * v;
  return acc;
}

Vec RationalApplicator::apply(const Vec& v) const {
  return w_inf_ * v + lu_.solve(horner(rem_, v));
}

Vec RationalApplicator::apply_proper(const std::vector<double>& num, const Vec& v) const {
  return lu_.solve(horner(num, v));
}

Vec RationalApplicator::apply_with(const Vec& v, const Vec& extra) const {
  return w_inf_ * v + lu_.solve(horner(rem_, v) + extra);
}

SemiImplicitCoarseStepper::SemiImplicitCoarseStepper(const SemilinearEvolution& prob,
                                                     const RationalFn& R, const RationalFn& P1,
                                                     double dT)
    : prob_(prob), dT_(dT), rat_(R, prob.A, dT), p1_num_(P1.num) {
  if (P1.den != R.den)
    throw std::invalid_argument("SemiImplicitCoarseStepper: R and P1 must share a denominator");
  if (P1.num.size() >= P1.den.size())
    throw std::invalid_argument("SemiImplicitCoarseStepper: P1 must be strictly proper");
}

Vec SemiImplicitCoarseStepper::step(const Vec& u) const {
  const Vec g = prob_.f(u);
  Vec extra = p1_num_.back() * g;
  for (int k = static_cast<int>(p1_num_.size()) - 2; k >= 0; --k)
    extra = dT_ * (prob_.A * extra) + p1_num_[k] * g;
  return rat_.apply_with(u, dT_ * extra);
}

Vec linear_irk_step(const LinearEvolution& prob, const ButcherTableau& tab, double t,
                    double dt, const Vec& u) {
  return LinearIrkStepper(prob, tab, dt).step(t, u);
}

Vec nonlinear_irk_step(const SemilinearEvolution& prob, const ButcherTableau& tab, double dt,
                       const Vec& u, double tol, int max_newton) {
  return NonlinearIrkStepper(prob, tab, dt, tol, max_newton).step(u);
}

Vec semi_implicit_coarse_step(const SemilinearEvolution& prob, const RationalFn& R,
                              const RationalFn& P1, double dT, const Vec& u) {
  return SemiImplicitCoarseStepper(prob, R, P1, dT).step(u);
}

}  // namespace paraopt
