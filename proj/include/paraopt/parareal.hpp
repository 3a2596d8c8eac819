#ifndef PARAOPT_PARAREAL_HPP
#define PARAOPT_PARAREAL_HPP

#include <memory>
#include <string>
#include <vector>

#include "paraopt/rational.hpp"
#include "paraopt/spatial.hpp"
#include "paraopt/steppers.hpp"
#include "paraopt/tableau.hpp"

namespace paraopt {

/// Advances a state over one coarse interval [t0, t0 + DT]. Implementations
/// must be safe to call concurrently after clone() (one clone per thread).
class Propagator {
 public:
  virtual ~Propagator() = default;
  virtual Vec advance(double t0, const Vec& u) const = 0;
  virtual std::unique_ptr<Propagator> clone() const = 0;
};

/// Fine propagator: J implicit-RK steps of size dt.
std::unique_ptr<Propagator> make_fine_propagator(const ProblemInstance& prob,
                                                 const ButcherTableau& tab, int J, double dt,
                                                 double newton_tol = 1e-12);

/// Coarse propagator: rational single-step scheme R, P_i (shared denominator)
/// applied `substeps` times per coarse interval with step DT/substeps.
std::unique_ptr<Propagator> make_coarse_propagator(const ProblemInstance& prob,
                                                   const RationalFn& R,
                                                   const std::vector<RationalFn>& P,
                                                   const std::vector<double>& C, double DT,
                                                   int substeps = 1);

struct PararealConfig {
  int J = 20;
  double dt = 1e-3;
  int k_max = 25;
  double eta = 0.0;        // 0: run to k_max
  int coarse_substeps = 1;
  int threads = 0;         // 0: OpenMP default, 1: serial sweep
  bool reference_free = false;  // stop on successive-iterate difference instead
  double coarse_dT() const { return J * dt; }
};

struct CostLedger {
  std::vector<double> coarse_seconds;     // per iteration (k = 0 is the init sweep)
  std::vector<double> max_fine_seconds;   // per correction iteration
  double sequential_fine_seconds = 0.0;   // one full sequential fine solve

  double total_with_coarse() const;
  double total_without_coarse() const;
};

struct PararealRun {
  std::vector<double> error_history;      // e_k = max_n ||U_k^n - u^{nJ}||_L2
  std::vector<double> exactness_defect;   // max_{1<=n<=k} ||U_k^n - u^{nJ}||_L2
  CostLedger ledger;
  int iterations_to_eta = -1;
  int n_coarse = 0;
  std::vector<Vec> state;       // U at the final iteration, size n_coarse + 1
  std::vector<Vec> reference;   // fine solution at coarse nodes
};

PararealRun run_parareal(const ProblemInstance& prob, const Propagator& coarse,
                         const Propagator& fine, const PararealConfig& cfg);

/// Geometric mean of successive error ratios over the clean decay window:
/// pairs with both errors in [1e-12, 1e-1], restricted to the longest
/// consecutive run of ratios within a factor 1.5 of their median (drops the
/// initial transient and the finite-termination tail).
double observed_rate(const PararealRun& run);

struct SpeedupReport {
  double speedup = 0.0;
  double efficiency = 0.0;
};

/// speedup = cost_seq / cost_para with the ledger accounting; efficiency =
/// speedup / N_c. Throws when the run did not reach the target accuracy.
SpeedupReport speedup_and_efficiency(const PararealRun& run, bool include_coarse_cost);

}  // namespace paraopt

#endif
