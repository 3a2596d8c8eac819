#include "paraopt/spatial.hpp"

#include <cmath>
#include <stdexcept>

namespace paraopt {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec Grid1D::nodes() const {
  const double hh = h();
  if (bc == BoundaryCondition::Dirichlet0) {
    Vec x(M - 1);
    for (int i = 1; i < M; ++i) x(i - 1) = i * hh;
    return x;
  }
  Vec x(M);
  for (int i = 0; i < M; ++i) x(i) = (i + 0.5) * hh;
  return x;
}

SpMat assemble_diffusion(const Grid1D& grid) {
  if (grid.bc != BoundaryCondition::Dirichlet0)
    throw std::invalid_argument("assemble_diffusion expects a Dirichlet grid");
  const int n = grid.M - 1;
  const double w = 1.0 / (grid.h() * grid.h());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * n);
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, 2.0 * w);
    if (i > 0) trip.emplace_back(i, i - 1, -w);
    if (i + 1 < n) trip.emplace_back(i, i + 1, -w);
  }
  SpMat A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

SpMat assemble_neumann_laplacian(const Grid1D& grid) {
  const int n = grid.M;
  const double w = 1.0 / (grid.h() * grid.h());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * n);
  for (int i = 0; i < n; ++i) {
    const double diag = (i == 0 || i == n - 1) ? 1.0 : 2.0;
    trip.emplace_back(i, i, diag * w);
    if (i > 0) trip.emplace_back(i, i - 1, -w);
    if (i + 1 < n) trip.emplace_back(i, i + 1, -w);
  }
  SpMat A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

SpMat assemble_centered_gradient(const Grid1D& grid) {
  const int n = grid.unknowns();
  const double w = 1.0 / (2.0 * grid.h());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    if (i > 0) trip.emplace_back(i, i - 1, -w);
    if (i + 1 < n) trip.emplace_back(i, i + 1, w);
  }
  SpMat D(n, n);
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

std::pair<double, double> eigen_bounds(const SpMat& A) {
  const int n = static_cast<int>(A.rows());
  // symmetry check
  SpMat AT = SpMat(A.transpose());
  double asym = 0.0, scale = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it) {
      asym = std::max(asym, std::abs(it.value() - AT.coeff(it.row(), it.col())));
      scale = std::max(scale, std::abs(it.value()));
    }
  if (asym > 1e-12 * scale) throw std::invalid_argument("eigen_bounds: operator not symmetric");

  double lmax = 0.0;
  for (int k = 0; k < A.outerSize(); ++k) {
    // Gershgorin: center + radius per row
    std::vector<double> rowsum(1, 0.0);
    (void)rowsum;
  }
  {
    std::vector<double> diag(n, 0.0), rad(n, 0.0);
    for (int k = 0; k < A.outerSize(); ++k)
      for (SpMat::InnerIterator it(A, k); it; ++it) {
        if (it.row() == it.col()) diag[it.row()] = it.value();
        else rad[it.row()] += std::abs(it.value());
      }
    for (int i = 0; i < n; ++i) lmax = std::max(lmax, diag[i] + rad[i]);
  }

  // constant mode annihilated => lambda_min = 0 (Neumann case)
  const Vec ones = Vec::Ones(n);
  if ((A * ones).lpNorm<Eigen::Infinity>() <= 1e-10 * scale) return {0.0, lmax};

  Eigen::SparseLU<SpMat> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("eigen_bounds: inverse iteration factorization failed");
  Vec v = Vec::Ones(n).normalized();
  double mu = 0.0;
  for (int it = 0; it < 20; ++it) {
    Vec w = lu.solve(v);
    const double nw = w.norm();
    w /= nw;
    const double mu_new = w.dot(A * w);
    if (it > 0 && std::abs(mu_new - mu) <= 1e-6 * mu_new) {
      mu = mu_new;
      break;
    }
    mu = mu_new;
    v = w;
  }
  return {mu, lmax};
}

namespace {

ProblemInstance make_problem_default_horizon(const std::string& tag, int M) {
  ProblemInstance p;
  p.tag = tag;
  if (tag == "diffusion-a" || tag == "diffusion-b" || tag == "diffusion-c") {
    p.grid = {kPi, M, BoundaryCondition::Dirichlet0};
    p.linear = true;
    p.lin.A = assemble_diffusion(p.grid);
    const Vec x = p.grid.nodes();
    const int n = p.grid.unknowns();
    if (tag == "diffusion-a") {
      p.T = 1.0;
      Vec u0(n);
      for (int i = 0; i < n; ++i)
        u0(i) = std::pow(x(i), 10) * std::pow(x(i) - kPi, 10) / std::pow(kPi / 2, 10);
      p.lin.u0 = u0;
      p.lin.forcing = nullptr;
    } else if (tag == "diffusion-b") {
      p.T = 1.0;
      Vec u0(n);
      for (int i = 0; i < n; ++i)
        u0(i) = x(i) < kPi / 2 ? 1.0 : (x(i) > kPi / 2 ? 0.0 : 0.5);
      p.lin.u0 = u0;
      Vec sx(n);
      for (int i = 0; i < n; ++i) sx(i) = std::sin(x(i));
      p.lin.forcing = [sx](double t) { return Vec(std::cos(t) * sx); };
    } else {
      p.T = 100.0;
      Vec u0(n);
      for (int i = 0; i < n; ++i)
        u0(i) = x(i) < kPi / 2 ? 1.0 : (x(i) > kPi / 2 ? -1.0 : 0.0);
      p.lin.u0 = u0;
      Vec xc = x;
      p.lin.forcing = [xc](double t) {
        Vec f(xc.size());
        for (int i = 0; i < xc.size(); ++i) f(i) = 50.0 * std::sin(2.0 * kPi * (xc(i) + t));
        return f;
      };
    }
    auto [lmin, lmax] = eigen_bounds(p.lin.A);
    p.lambda_min = lmin;
    p.lambda_max = lmax;
    return p;
  }
  if (tag.rfind("allen-cahn:eps2=", 0) == 0) {
    const double eps2 = std::stod(tag.substr(16));
    if (!(eps2 > 0.0)) throw std::invalid_argument("allen-cahn: eps2 must be positive");
    p.grid = {kPi, M, BoundaryCondition::Neumann0};
    p.T = 1.0;
    p.linear = false;
    p.semi.A = assemble_neumann_laplacian(p.grid);
    const Vec x = p.grid.nodes();
    Vec u0(M);
    for (int i = 0; i < M; ++i) u0(i) = x(i) < kPi / 2 ? 1.0 : -1.0;
    p.semi.u0 = u0;
    p.semi.f = [eps2](const Vec& u) { return Vec((u.array() - u.array().cube()) / eps2); };
    p.semi.jac_f = [eps2](const Vec& u) {
      const int n = static_cast<int>(u.size());
      SpMat J(n, n);
      std::vector<Eigen::Triplet<double>> trip;
      trip.reserve(n);
      for (int i = 0; i < n; ++i)
        trip.emplace_back(i, i, (1.0 - 3.0 * u(i) * u(i)) / eps2);
      J.setFromTriplets(trip.begin(), trip.end());
      return J;
    };
    auto [lmin, lmax] = eigen_bounds(p.semi.A);
    p.lambda_min = std::max(lmin, 1e-8);  // clamp the constant mode
    p.lambda_max = lmax;
    return p;
  }
  if (tag.rfind("burgers:nu=", 0) == 0) {
    const double nu = std::stod(tag.substr(11));
    if (!(nu > 0.0)) throw std::invalid_argument("burgers: nu must be positive");
    p.grid = {1.0, M, BoundaryCondition::Dirichlet0};
    p.T = 1.0;
    p.linear = false;
    p.semi.A = SpMat(nu * assemble_diffusion(p.grid));
    const Vec x = p.grid.nodes();
    const int n = p.grid.unknowns();
    Vec u0(n);
    for (int i = 0; i < n; ++i) u0(i) = x(i) < 0.5 ? 1.0 : (x(i) > 0.5 ? 0.0 : 0.5);
    p.semi.u0 = u0;
    auto D0 = std::make_shared<SpMat>(assemble_centered_gradient(p.grid));
    p.semi.f = [D0](const Vec& u) { return Vec(-(*D0 * Vec(0.5 * u.array().square().matrix()))); };
    p.semi.jac_f = [D0](const Vec& u) {
      SpMat J = *D0;
      // -(D0 diag(u)): scale column j by -u(j)
      for (int k = 0; k < J.outerSize(); ++k)
        for (SpMat::InnerIterator it(J, k); it; ++it)
          it.valueRef() *= -u(it.col());
      return J;
    };
    auto [lmin, lmax] = eigen_bounds(p.semi.A);
    p.lambda_min = lmin;
    p.lambda_max = lmax;
    return p;
  }
  throw std::invalid_argument("make_problem: unknown tag " + tag);
}

}  // namespace

ProblemInstance make_problem(const std::string& tag, int M, double T_override) {
  ProblemInstance p = make_problem_default_horizon(tag, M);
  if (T_override > 0.0) p.T = T_override;
  return p;
}

}  // namespace paraopt
