#ifndef PARAOPT_TRAIN_HPP
#define PARAOPT_TRAIN_HPP

#include <cstdint>
#include <vector>

#include "paraopt/convfactor.hpp"
#include "paraopt/rational.hpp"

namespace paraopt {

/// Trainable coarse-propagator parameters: log-parametrized denominator
/// coefficients b_1..b_m and free numerator coefficients a_{q+1}..a_n;
/// a_0..a_q follow from the consistency constraint.
struct OcpParams {
  int m = 2, n = 2, q = 1;
  std::vector<double> b;       // length m
  std::vector<double> a_free;  // length n - q

  void validate() const;  // q < n <= m, sizes match
};

/// a_k = sum_{j=0}^{k} c_j e^{b_{k-j}} for k = 0..q, with e^{b_0} := 1 and
/// c_j = (-1)^j / j!.
std::vector<double> consistency_fill(const std::vector<double>& b, int q);

/// R(lambda, theta) with num = consistency_fill(b,q) ++ a_free and
/// den = (1, e^{b_1}, ..., e^{b_m}).
RationalFn build_R(const OcpParams& p);

/// Inverse of build_R for artifacts whose denominator came from exp(b):
/// b_i = ln(den[i]), a_free from the numerator tail.
OcpParams params_from_rational(const RationalFn& R, int q);

struct TrainConfig {
  int J0 = 16;
  SpectrumSpec spectrum{1e-3, 1e4, 2048, 1.0, true};
  double rho0 = 1.0;
  double beta = 0.9;
  int inner_iters = 200;
  int outer_iters = 60;
  double alpha0 = 0.0;    // 0 => auto: 0.1 for m <= 2, 0.3 otherwise
  double grad_tol = 1e-6;
  std::uint64_t seed = 0;
  int restarts = 0;       // 0 => auto: 8 for m <= 2, 24 otherwise
  double gate = 0.0;      // 0 => auto: 0.05 for m <= 2, 0.12 otherwise
};

/// Barrier term: mean over Lambda_h (finite samples) and Lambda_R of
/// log(1 - R^2) plus log(1 - (a_n/e^{b_m})^2). Throws std::domain_error at
/// infeasible points (any log argument <= 0).
double barrier_loss(const OcpParams& p, const std::vector<double>& samples);

struct SupLoss {
  double value = 0.0;
  double arg_s = 0.0;      // argmax sample (smallest s on ties)
  bool at_infinity = false;
};

/// sup over the samples (plus the s->infinity point) of
/// |r(s/J0)^J0 - R(s)| / (1 - |R(s)|). Throws on infeasible points.
SupLoss sup_loss(const OcpParams& p, const RationalFn& r, int J0,
                 const std::vector<double>& samples);

struct TrainResult {
  OcpParams params;
  RationalFn R;
  double sup_loss_value = 0.0;
  bool gate_met = false;
  int restarts_used = 0;
};

/// Path-following log-barrier subgradient training of R(.,theta) against the
/// fine stability function r. Deterministic given cfg.seed.
TrainResult train(const RationalFn& r, int m, int n, int q, const TrainConfig& cfg);

/// Forcing-weight functions P_1..P_q sharing R's denominator, from the
/// strict-accuracy conditions with abscissae C (C[0] must be 1, values
/// distinct). For q = 1 this reduces to P_1 = (1 - R)/lambda.
std::vector<RationalFn> solve_forcing_weights(const RationalFn& R, int q,
                                              const std::vector<double>& C);

/// Equispaced abscissae on [0,1] descending from 1: 1, 1-1/q, ...
std::vector<double> default_abscissae(int q);

}  // namespace paraopt

#endif
