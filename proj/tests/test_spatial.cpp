#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "paraopt/spatial.hpp"

using namespace paraopt;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("dirichlet diffusion operator") {
  Grid1D g{kPi, 2, BoundaryCondition::Dirichlet0};
  SpMat A = assemble_diffusion(g);
  REQUIRE(A.rows() == 1);
  CHECK(A.coeff(0, 0) == doctest::Approx(2.0 / (g.h() * g.h())));

  // eigenvalues (4/h^2) sin^2(j h / 2) against a dense solver at M = 32
  Grid1D g32{kPi, 32, BoundaryCondition::Dirichlet0};
  SpMat A32 = assemble_diffusion(g32);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(A32)};
  const double h = g32.h();
  for (int j = 1; j < 32; ++j) {
    const double expect = 4.0 / (h * h) * std::pow(std::sin(j * h / 2.0), 2);
    CHECK(es.eigenvalues()(j - 1) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("eigen_bounds") {
  Grid1D g{kPi, 32, BoundaryCondition::Dirichlet0};
  SpMat A = assemble_diffusion(g);
  auto [lmin, lmax] = eigen_bounds(A);
  const double h = g.h();
  const double l1 = 4.0 / (h * h) * std::pow(std::sin(h / 2.0), 2);
  CHECK(lmin == doctest::Approx(l1).epsilon(0.01));
  CHECK(lmax == doctest::Approx(4.0 / (h * h)).epsilon(1e-12));  // Gershgorin row sum

  // Neumann operator annihilates constants -> lambda_min = 0
  Grid1D gn{kPi, 64, BoundaryCondition::Neumann0};
  SpMat An = assemble_neumann_laplacian(gn);
  auto [ln, lxn] = eigen_bounds(An);
  CHECK(ln == 0.0);
  CHECK(lxn > 0.0);
  CHECK((An * Vec::Ones(64)).lpNorm<Eigen::Infinity>() < 1e-10);

  SpMat bad(2, 2);
  bad.insert(0, 1) = 1.0;
  CHECK_THROWS_AS(eigen_bounds(bad), std::invalid_argument);
}

TEST_CASE("dirichlet lambda_min approaches 1 at M = 1000") {
  auto p = make_problem("diffusion-a", 1000);
  CHECK(p.lambda_min == doctest::Approx(1.0).epsilon(0.005));
  CHECK(p.lambda_max == doctest::Approx(4.0 / (p.grid.h() * p.grid.h())).epsilon(1e-10));
}

TEST_CASE("problem data") {
  auto pa = make_problem("diffusion-a", 1000);
  const Vec xa = pa.grid.nodes();
  const int imid = 499;  // x = 500 h = pi/2
  CHECK(xa(imid) == doctest::Approx(kPi / 2));
  CHECK(pa.lin.u0(imid) == doctest::Approx(std::pow(kPi / 2, 10)).epsilon(1e-12));
  CHECK(!pa.lin.forcing);

  auto pb = make_problem("diffusion-b", 1000);
  CHECK(pb.lin.u0(imid) == doctest::Approx(0.5));  // jump node convention
  CHECK(pb.lin.u0(0) == doctest::Approx(1.0));
  CHECK(pb.lin.u0(998) == doctest::Approx(0.0));
  CHECK(pb.lin.u0.lpNorm<Eigen::Infinity>() <= 1.0);
  Vec f0 = pb.lin.forcing(0.0);
  CHECK(f0(imid) == doctest::Approx(std::sin(xa(imid))));

  auto pc = make_problem("diffusion-c", 1000);
  CHECK(pc.T == doctest::Approx(100.0));
  CHECK(pc.lin.u0(0) == doctest::Approx(1.0));
  CHECK(pc.lin.u0(998) == doctest::Approx(-1.0));
  CHECK(pc.lin.u0(imid) == doctest::Approx(0.0));

  auto ac = make_problem("allen-cahn:eps2=1", 1000);
  CHECK(ac.grid.bc == BoundaryCondition::Neumann0);
  CHECK(ac.semi.u0(0) == doctest::Approx(1.0));
  CHECK(ac.semi.u0(999) == doctest::Approx(-1.0));
  CHECK(ac.semi.u0.lpNorm<Eigen::Infinity>() <= 1.0);
  CHECK(ac.lambda_min == doctest::Approx(1e-8));  // clamped constant mode

  auto bu = make_problem("burgers:nu=0.02", 1000);
  CHECK(bu.grid.length == doctest::Approx(1.0));
  CHECK(bu.semi.u0(499) == doctest::Approx(0.5));  // x = 0.5 jump node
  CHECK_THROWS_AS(make_problem("waves"), std::invalid_argument);
}

TEST_CASE("semilinear jacobians match finite differences") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N01;
  for (const char* tag : {"allen-cahn:eps2=0.5", "burgers:nu=0.02"}) {
    auto p = make_problem(tag, 48);
    const int n = p.grid.unknowns();
    Vec u(n);
    for (int i = 0; i < n; ++i) u(i) = 0.5 * N01(rng);
    const SpMat J = p.semi.jac_f(u);
    const double h = 1e-6;
    for (int probe = 0; probe < 8; ++probe) {
      Vec d(n);
      for (int i = 0; i < n; ++i) d(i) = N01(rng);
      d.normalize();
      const Vec fd = (p.semi.f(u + h * d) - p.semi.f(u - h * d)) / (2.0 * h);
      const Vec jd = J * d;
      CHECK((fd - jd).lpNorm<Eigen::Infinity>() < 1e-6 * (1.0 + jd.lpNorm<Eigen::Infinity>()));
    }
  }
}
