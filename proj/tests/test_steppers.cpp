#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "paraopt/golden.hpp"
#include "paraopt/schemes.hpp"
#include "paraopt/spatial.hpp"
#include "paraopt/steppers.hpp"

using namespace paraopt;

namespace {

SpMat scalar_op(double v) {
  SpMat A(1, 1);
  A.insert(0, 0) = v;
  return A;
}

LinearEvolution scalar_problem(double lambda) {
  LinearEvolution p;
  p.A = scalar_op(lambda);
  p.forcing = nullptr;
  p.u0 = Vec::Constant(1, 1.0);
  return p;
}

}  // namespace

TEST_CASE("linear step: scalar BE") {
  auto prob = scalar_problem(1.0);
  Vec u = Vec::Constant(1, 1.0);
  Vec out = linear_irk_step(prob, tableau_backward_euler(), 0.0, 1.0, u);
  CHECK(out(0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("linear step equals scalar stability evaluation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const char* name : {"be", "sdirk22", "lobatto2", "lobatto3", "lobatto4", "radau3"}) {
    const auto spec = classical_stability(name);
    for (int t = 0; t < 10; ++t) {
      const double lam = std::exp(6.0 * U(rng) - 3.0);
      const double dt = std::exp(2.0 * U(rng) - 1.0);
      auto prob = scalar_problem(lam);
      Vec out = linear_irk_step(prob, *spec.tableau, 0.0, dt, prob.u0);
      CHECK(out(0) == doctest::Approx(eval(spec.stability, dt * lam)).epsilon(1e-12));
    }
  }
}

TEST_CASE("linear step on a diagonal operator = componentwise scalar map") {
  const int n = 8;
  SpMat A(n, n);
  for (int i = 0; i < n; ++i) A.insert(i, i) = std::pow(10.0, -2.0 + i * 0.7);
  LinearEvolution prob{A, nullptr, Vec::Ones(n)};
  const auto spec = classical_stability("radau3");
  const double dt = 0.37;
  Vec out = linear_irk_step(prob, *spec.tableau, 0.0, dt, prob.u0);
  for (int i = 0; i < n; ++i)
    CHECK(out(i) == doctest::Approx(eval(spec.stability, dt * A.coeff(i, i))).epsilon(1e-12));
}

TEST_CASE("one fine diffusion step vs dense matrix exponential on the dominant mode") {
  // 32-point grid; high modes sit outside the asymptotic regime, so the
  // order-(q+1) one-step decay is checked on the ground mode projection
  auto prob = make_problem("diffusion-a", 32);
  const Eigen::MatrixXd Ad = Eigen::MatrixXd(prob.lin.A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad);
  const double dt = 1.0 / 64;
  const Vec mode0 = es.eigenvectors().col(0);
  const double lam0 = es.eigenvalues()(0);
  const double coef = mode0.dot(prob.lin.u0);
  for (const char* name : {"lobatto2", "lobatto3", "radau3"}) {
    const auto spec = classical_stability(name);
    Vec out = linear_irk_step(prob.lin, *spec.tableau, 0.0, dt, prob.lin.u0);
    const double got = mode0.dot(out);
    const double exact = std::exp(-dt * lam0) * coef;
    CHECK_MESSAGE(std::abs(got - exact) <
                      2.0 * std::abs(coef) * std::pow(dt * lam0, spec.order + 1) + 1e-12,
                  name, " dominant-mode err=", std::abs(got - exact));
  }
}

TEST_CASE("nonlinear step: f == 0 reduces to the linear step") {
  auto lin = make_problem("diffusion-a", 64);
  SemilinearEvolution semi;
  semi.A = lin.lin.A;
  semi.u0 = lin.lin.u0;
  semi.f = [](const Vec& u) { return Vec(Vec::Zero(u.size())); };
  semi.jac_f = [](const Vec& u) {
    return SpMat(static_cast<int>(u.size()), static_cast<int>(u.size()));
  };
  const auto tab = *classical_stability("radau3").tableau;
  const double dt = 1e-2;
  Vec a = linear_irk_step(lin.lin, tab, 0.0, dt, lin.lin.u0);
  Vec b = nonlinear_irk_step(semi, tab, dt, semi.u0, 1e-12);
  CHECK((a - b).lpNorm<Eigen::Infinity>() < 1e-11);
}

TEST_CASE("nonlinear step: constant Allen-Cahn state is a fixed point") {
  auto prob = make_problem("allen-cahn:eps2=1", 128);
  Vec u = Vec::Ones(prob.grid.unknowns());  // u - u^3 = 0, Neumann kills A u
  Vec out = nonlinear_irk_step(prob.semi, *classical_stability("radau3").tableau, 0.01, u);
  CHECK((out - u).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("nonlinear step vs Picard fixed-point oracle") {
  auto prob = make_problem("allen-cahn:eps2=1", 200);
  const auto tab = *classical_stability("radau3").tableau;
  const double dt = 1.0 / 100;
  const Vec u = prob.semi.u0;
  Vec newton = nonlinear_irk_step(prob.semi, tab, dt, u, 1e-13);

  // fixed-point iteration with the stiff linear part solved exactly each
  // sweep (dense LU; contraction factor ~ dt sup|f'|), independent of the
  // Newton path
  const int m = tab.stages();
  const int N = static_cast<int>(u.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(m * N, m * N);
  const Eigen::MatrixXd Ad = Eigen::MatrixXd(prob.semi.A);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) K.block(i * N, j * N, N, N) += dt * tab.A(i, j) * Ad;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);

  Vec S(m * N);
  for (int i = 0; i < m; ++i) S.segment(i * N, N) = u;
  for (int it = 0; it < 500; ++it) {
    Vec rhs(m * N);
    for (int i = 0; i < m; ++i) {
      Vec acc = u;
      for (int j = 0; j < m; ++j) acc += dt * tab.A(i, j) * prob.semi.f(S.segment(j * N, N));
      rhs.segment(i * N, N) = acc;
    }
    Vec next = lu.solve(rhs);
    const double delta = (next - S).lpNorm<Eigen::Infinity>();
    S = next;
    if (delta < 1e-15) break;
  }
  Vec picard = u;
  for (int i = 0; i < m; ++i) {
    const Vec si = S.segment(i * N, N);
    picard += dt * tab.b(i) * (-(Ad * si) + prob.semi.f(si));
  }
  CHECK((newton - picard).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("newton failure carries the residual") {
  auto prob = make_problem("allen-cahn:eps2=0.0001", 64);
  bool threw = false;
  try {
    // huge step far outside the contraction regime, tiny iteration budget
    nonlinear_irk_step(prob.semi, *classical_stability("radau3").tableau, 50.0, prob.semi.u0,
                       1e-13, 2);
  } catch (const StepFailure& e) {
    threw = true;
    CHECK(e.residual > 0.0);
  }
  CHECK(threw);
}

TEST_CASE("newton converges quadratically near the solution") {
  auto prob = make_problem("allen-cahn:eps2=1", 100);
  NonlinearIrkStepper stepper(prob.semi, *classical_stability("radau3").tableau, 0.02, 1e-13);
  (void)stepper.step(prob.semi.u0);
  const auto& res = stepper.last_residuals();
  REQUIRE(res.size() >= 3);
  // last two reductions at least quadratic-ish
  const size_t k = res.size() - 1;
  if (res[k] > 0.0 && res[k - 1] < 1e-3)
    CHECK(res[k] < 10.0 * res[k - 1] * res[k - 1] / (res[k - 2] > 0 ? 1.0 : 1.0));
}

TEST_CASE("rational application: stable split vs dense eigendecomposition") {
  auto prob = make_problem("diffusion-a", 64);
  const RationalFn& R = bundled_ocp("lobatto3").R;
  const double dT = 0.2;
  RationalApplicator app(R, prob.lin.A, dT);
  Vec v = prob.lin.u0;
  Vec got = app.apply(v);

  const Eigen::MatrixXd Ad = Eigen::MatrixXd(prob.lin.A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad);
  Eigen::VectorXd rd(es.eigenvalues().size());
  for (int i = 0; i < rd.size(); ++i) rd(i) = eval(R, dT * es.eigenvalues()(i));
  const Vec expect = es.eigenvectors() * rd.asDiagonal() * es.eigenvectors().transpose() * v;
  CHECK((got - expect).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("semi-implicit coarse step") {
  // BE rational pair reproduces the classic IMEX-BE update
  auto prob = make_problem("allen-cahn:eps2=1", 64);
  RationalFn Rbe({1.0}, {1.0, 1.0});
  RationalFn Pbe({1.0}, {1.0, 1.0});
  const double dT = 0.05;
  Vec got = semi_implicit_coarse_step(prob.semi, Rbe, Pbe, dT, prob.semi.u0);

  const int n = prob.grid.unknowns();
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) + dT * Eigen::MatrixXd(prob.semi.A);
  Vec expect = M.lu().solve((prob.semi.u0 + dT * prob.semi.f(prob.semi.u0)).eval());
  CHECK((got - expect).lpNorm<Eigen::Infinity>() < 1e-11);

  // f == 0 gives the pure rational application
  SemilinearEvolution nz = prob.semi;
  nz.f = [](const Vec& u) { return Vec(Vec::Zero(u.size())); };
  const RationalFn& R2 = bundled_ocp("lobatto2").R;
  const RationalFn& P2 = bundled_ocp("lobatto2").P[0];
  Vec a = semi_implicit_coarse_step(nz, R2, P2, dT, prob.semi.u0);
  RationalApplicator app(R2, prob.semi.A, dT);
  CHECK((a - app.apply(prob.semi.u0)).lpNorm<Eigen::Infinity>() < 1e-12);

  // scalar closed form: R_2(1) + P_1(1) * 0.5 at A = 1, dT = 1
  SemilinearEvolution sc;
  sc.A = scalar_op(1.0);
  sc.u0 = Vec::Constant(1, 1.0);
  sc.f = [](const Vec& u) { return Vec(Vec::Constant(u.size(), 0.5)); };
  sc.jac_f = [](const Vec& u) { return SpMat(1, 1); };
  Vec s = semi_implicit_coarse_step(sc, R2, P2, 1.0, sc.u0);
  CHECK(s(0) == doctest::Approx(eval(R2, 1.0) + eval(P2, 1.0) * 0.5).epsilon(1e-13));
}
