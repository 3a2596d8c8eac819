#ifndef PARAOPT_SPATIAL_HPP
#define PARAOPT_SPATIAL_HPP

#include <string>
#include <utility>

#include "paraopt/steppers.hpp"

namespace paraopt {

enum class BoundaryCondition { Dirichlet0, Neumann0 };

struct Grid1D {
  double length = 0.0;
  int M = 0;  // subinterval count
  BoundaryCondition bc = BoundaryCondition::Dirichlet0;

  double h() const { return length / M; }
  /// Unknown coordinates: interior nodes i*h (Dirichlet) or cell centers
  /// (i+1/2)*h (Neumann).
  Vec nodes() const;
  int unknowns() const { return bc == BoundaryCondition::Dirichlet0 ? M - 1 : M; }
};

/// Lumped-mass piecewise-linear FEM Laplacian on the Dirichlet grid:
/// A_h = tridiag(-1, 2, -1) / h^2, symmetric positive definite.
SpMat assemble_diffusion(const Grid1D& grid);

/// Cell-centered finite-difference Laplacian with homogeneous Neumann ends;
/// symmetric, annihilates constants.
SpMat assemble_neumann_laplacian(const Grid1D& grid);

/// Centered first-difference operator (for the conservative Burgers flux).
SpMat assemble_centered_gradient(const Grid1D& grid);

/// (lambda_min, lambda_max): Gershgorin upper bound and inverse power
/// iteration (20 iterations, tolerance 1e-6); returns lambda_min = 0 for
/// operators annihilating constants.
std::pair<double, double> eigen_bounds(const SpMat& A);

struct ProblemInstance {
  std::string tag;
  Grid1D grid;
  double T = 1.0;
  bool linear = true;
  LinearEvolution lin;
  SemilinearEvolution semi;
  double lambda_min = 0.0, lambda_max = 0.0;

  const SpMat& op() const { return linear ? lin.A : semi.A; }
  const Vec& u0() const { return linear ? lin.u0 : semi.u0; }
  double l2_norm(const Vec& v) const { return std::sqrt(grid.h() * v.squaredNorm()); }
};

/// Tags: diffusion-a | diffusion-b | diffusion-c | allen-cahn:eps2=<v> |
/// burgers:nu=<v>. M defaults to 1000 mesh subintervals.
ProblemInstance make_problem(const std::string& tag, int M = 1000, double T_override = 0.0);

}  // namespace paraopt

#endif
