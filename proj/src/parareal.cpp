#include "paraopt/parareal.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace paraopt {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

class FinePropagator : public Propagator {
 public:
  FinePropagator(const ProblemInstance& prob, const ButcherTableau& tab, int J, double dt,
                 double newton_tol)
      : prob_(prob), tab_(tab), J_(J), dt_(dt), tol_(newton_tol) {
    if (prob_.linear) lin_ = std::make_unique<LinearIrkStepper>(prob_.lin, tab_, dt_);
    else nl_ = std::make_unique<NonlinearIrkStepper>(prob_.semi, tab_, dt_, tol_);
  }

  Vec advance(double t0, const Vec& u) const override {
    Vec v = u;
    for (int j = 0; j < J_; ++j)
      v = prob_.linear ? lin_->step(t0 + j * dt_, v) : nl_->step(v);
    return v;
  }

  std::unique_ptr<Propagator> clone() const override {
    return std::make_unique<FinePropagator>(prob_, tab_, J_, dt_, tol_);
  }

 private:
  const ProblemInstance& prob_;
  ButcherTableau tab_;
  int J_;
  double dt_, tol_;
  std::unique_ptr<LinearIrkStepper> lin_;
  std::unique_ptr<NonlinearIrkStepper> nl_;
};

class CoarsePropagator : public Propagator {
 public:
  CoarsePropagator(const ProblemInstance& prob, const RationalFn& R,
                   const std::vector<RationalFn>& P, const std::vector<double>& C, double DT,
                   int substeps)
      : prob_(prob), R_(R), P_(P), C_(C), DT_(DT), substeps_(substeps) {
    if (substeps_ < 1) throw std::invalid_argument("coarse propagator: substeps >= 1");
    const double dTc = DT_ / substeps_;
    if (prob_.linear) {
      rat_ = std::make_unique<RationalApplicator>(R_, prob_.lin.A, dTc);
      for (const auto& p : P_) {
        if (p.den != R_.den)
          throw std::invalid_argument("coarse propagator: P_i must share R's denominator");
        if (p.num.size() >= p.den.size())
          throw std::invalid_argument("coarse propagator: P_i must be strictly proper");
      }
    } else {
      if (P_.empty()) throw std::invalid_argument("coarse propagator: P_1 required");
      semi_ = std::make_unique<SemiImplicitCoarseStepper>(prob_.semi, R_, P_[0], dTc);
    }
  }

  Vec advance(double t0, const Vec& u) const override {
    const double dTc = DT_ / substeps_;
    Vec v = u;
    for (int l = 0; l < substeps_; ++l) {
      if (prob_.linear) {
        const double tl = t0 + l * dTc;
        if (prob_.lin.forcing) {
          Vec extra = Vec::Zero(v.size());
          for (size_t i = 0; i < P_.size(); ++i) {
            const Vec g = prob_.lin.forcing(tl + C_[i] * dTc);
            Vec acc = P_[i].num.back() * g;
            for (int k = static_cast<int>(P_[i].num.size()) - 2; k >= 0; --k)
              acc = dTc * (prob_.lin.A * acc) + P_[i].num[k] * g;
            extra += acc;
          }
          v = rat_->apply_with(v, dTc * extra);
        } else {
          v = rat_->apply(v);
        }
      } else {
        v = semi_->step(v);
      }
    }
    return v;
  }

  std::unique_ptr<Propagator> clone() const override {
    return std::make_unique<CoarsePropagator>(prob_, R_, P_, C_, DT_, substeps_);
  }

 private:
  const ProblemInstance& prob_;
  RationalFn R_;
  std::vector<RationalFn> P_;
  std::vector<double> C_;
  double DT_;
  int substeps_;
  std::unique_ptr<RationalApplicator> rat_;
  std::unique_ptr<SemiImplicitCoarseStepper> semi_;
};

}  // namespace

std::unique_ptr<Propagator> make_fine_propagator(const ProblemInstance& prob,
                                                 const ButcherTableau& tab, int J, double dt,
                                                 double newton_tol) {
  return std::make_unique<FinePropagator>(prob, tab, J, dt, newton_tol);
}

std::unique_ptr<Propagator> make_coarse_propagator(const ProblemInstance& prob,
                                                   const RationalFn& R,
                                                   const std::vector<RationalFn>& P,
                                                   const std::vector<double>& C, double DT,
                                                   int substeps) {
  return std::make_unique<CoarsePropagator>(prob, R, P, C, DT, substeps);
}

double CostLedger::total_with_coarse() const {
  double s = 0.0;
  for (double v : coarse_seconds) s += v;
  for (double v : max_fine_seconds) s += v;
  return s;
}

double CostLedger::total_without_coarse() const {
  double s = 0.0;
  for (double v : max_fine_seconds) s += v;
  return s;
}

PararealRun run_parareal(const ProblemInstance& prob, const Propagator& coarse,
                         const Propagator& fine, const PararealConfig& cfg) {
  const double DT = cfg.coarse_dT();
  const double nc_real = prob.T / DT;
  const int Nc = static_cast<int>(std::llround(nc_real));
  if (std::abs(Nc * DT - prob.T) > 1e-10 * prob.T || Nc < 1)
    throw std::invalid_argument("run_parareal: T must be an integer multiple of J*dt");

  PararealRun run;
  run.n_coarse = Nc;
  const Vec u0 = prob.u0();

  // sequential fine reference at the coarse nodes (also the cost baseline)
  run.reference.resize(Nc + 1);
  run.reference[0] = u0;
  {
    const double t0 = now_seconds();
    for (int n = 0; n < Nc; ++n)
      run.reference[n + 1] = fine.advance(n * DT, run.reference[n]);
    run.ledger.sequential_fine_seconds = now_seconds() - t0;
  }

  std::vector<Vec> U(Nc + 1), G_old(Nc), F(Nc);
  U[0] = u0;
  {
    const double t0 = now_seconds();
    for (int n = 0; n < Nc; ++n) {
      G_old[n] = coarse.advance(n * DT, U[n]);
      U[n + 1] = G_old[n];
    }
    run.ledger.coarse_seconds.push_back(now_seconds() - t0);
  }

  auto record_errors = [&](int k) {
    double emax = 0.0, edef = 0.0;
    for (int n = 1; n <= Nc; ++n) {
      const double e = prob.l2_norm(U[n] - run.reference[n]);
      emax = std::max(emax, e);
      if (n <= k) edef = std::max(edef, e);
    }
    run.error_history.push_back(emax);
    run.exactness_defect.push_back(edef);
    return emax;
  };
  double err = record_errors(0);
  if (cfg.eta > 0.0 && err <= cfg.eta && !cfg.reference_free) run.iterations_to_eta = 0;

  const int nthreads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
  std::vector<std::unique_ptr<Propagator>> fine_clones;
  if (nthreads > 1) {
    fine_clones.resize(nthreads);
    for (int t = 0; t < nthreads; ++t) fine_clones[t] = fine.clone();
  }

  for (int k = 1; k <= cfg.k_max && run.iterations_to_eta < 0; ++k) {
    // concurrent fine sweeps over all intervals (clone per thread)
    std::vector<double> fine_sec(Nc, 0.0);
    if (nthreads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
      for (int n = 0; n < Nc; ++n) {
        const double t0 = now_seconds();
        F[n] = fine_clones[omp_get_thread_num()]->advance(n * DT, U[n]);
        fine_sec[n] = now_seconds() - t0;
      }
    } else {
      for (int n = 0; n < Nc; ++n) {
        const double t0 = now_seconds();
        F[n] = fine.advance(n * DT, U[n]);
        fine_sec[n] = now_seconds() - t0;
      }
    }
    run.ledger.max_fine_seconds.push_back(*std::max_element(fine_sec.begin(), fine_sec.end()));

    // sequential correction sweep
    std::vector<Vec> U_new(Nc + 1);
    U_new[0] = u0;
    const double t0 = now_seconds();
    double delta = 0.0;
    for (int n = 0; n < Nc; ++n) {
      Vec g = coarse.advance(n * DT, U_new[n]);
      U_new[n + 1] = g + F[n] - G_old[n];
      G_old[n] = std::move(g);
      delta = std::max(delta, prob.l2_norm(U_new[n + 1] - U[n + 1]));
    }
    run.ledger.coarse_seconds.push_back(now_seconds() - t0);
    U = std::move(U_new);

    err = record_errors(k);
    const double stop_val = cfg.reference_free ? delta : err;
    if (cfg.eta > 0.0 && stop_val <= cfg.eta) run.iterations_to_eta = k;
  }

  run.state = std::move(U);
  return run;
}

double observed_rate(const PararealRun& run) {
  const auto& e = run.error_history;
  int above = 0;
  for (double v : e)
    if (v >= 100.0 * std::numeric_limits<double>::epsilon()) ++above;
  if (above < 3) throw std::runtime_error("observed_rate: too few recorded iterations");

  auto collect = [&](double lo) {
    std::vector<double> r;
    for (size_t k = 0; k + 1 < e.size(); ++k)
      if (e[k] >= lo && e[k] <= 1e-1 && e[k + 1] >= lo && e[k + 1] <= 1e-1)
        r.push_back(e[k + 1] / e[k]);
    return r;
  };

  // a round-off floor shows up as stagnating ratios; exclude errors within a
  // decade of the history minimum in that case so only clean decay remains
  double guard = 1e-12;
  {
    const auto probe = collect(1e-12);
    bool stagnated = false;
    for (double r : probe)
      if (r >= 0.8) stagnated = true;
    if (stagnated) {
      double emin = std::numeric_limits<double>::infinity();
      for (double v : e) emin = std::min(emin, v);
      guard = std::max(10.0 * emin, 1e-12);
    }
  }
  const std::vector<double> ratios = collect(guard);
  if (ratios.empty()) throw std::runtime_error("observed_rate: no ratios inside the decay window");

  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double med = sorted[sorted.size() / 2];
  // longest consecutive run within x1.5 of the median drops the leading
  // transient and any remaining termination tail
  size_t best_lo = 0, best_len = 0, lo = 0;
  for (size_t i = 0; i <= ratios.size(); ++i) {
    const bool ok = i < ratios.size() && ratios[i] <= 1.5 * med && ratios[i] >= med / 1.5;
    if (!ok) {
      if (i - lo > best_len) {
        best_len = i - lo;
        best_lo = lo;
      }
      lo = i + 1;
    }
  }
  if (best_len == 0) throw std::runtime_error("observed_rate: no clean decay window");
  double acc = 0.0;
  for (size_t i = best_lo; i < best_lo + best_len; ++i) acc += std::log(ratios[i]);
  return std::exp(acc / best_len);
}

SpeedupReport speedup_and_efficiency(const PararealRun& run, bool include_coarse_cost) {
  if (run.iterations_to_eta < 0)
    throw std::runtime_error("speedup_and_efficiency: run did not reach the target accuracy");
  if (run.ledger.max_fine_seconds.empty())
    throw std::runtime_error("speedup_and_efficiency: degenerate zero-iteration run");
  const double cost =
      include_coarse_cost ? run.ledger.total_with_coarse() : run.ledger.total_without_coarse();
  SpeedupReport rep;
  rep.speedup = run.ledger.sequential_fine_seconds / cost;
  rep.efficiency = rep.speedup / run.n_coarse;
  return rep;
}

}  // namespace paraopt
