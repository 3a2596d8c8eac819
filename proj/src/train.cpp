#include "paraopt/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace paraopt {

namespace {

double taylor_c(int j) {  // coefficients of exp(-lambda)
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return (j % 2 == 0 ? 1.0 : -1.0) / f;
}

double pow_j_signed(double rx, int J) {
  if (rx > 0.0) return std::exp(J * std::log(rx));
  if (rx == 0.0) return 0.0;
  double base = rx, acc = 1.0;
  int e = J;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace

void OcpParams::validate() const {
  if (!(q >= 0 && q < n && n <= m)) throw std::invalid_argument("OcpParams: need q < n <= m");
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("OcpParams: b size != m");
  if (static_cast<int>(a_free.size()) != n - q)
    throw std::invalid_argument("OcpParams: a_free size != n - q");
}

std::vector<double> consistency_fill(const std::vector<double>& b, int q) {
  if (static_cast<int>(b.size()) < q) throw std::invalid_argument("consistency_fill: need length(b) >= q");
  std::vector<double> eb(q + 1);
  eb[0] = 1.0;
  for (int i = 1; i <= q; ++i) eb[i] = std::exp(b[i - 1]);
  std::vector<double> a(q + 1, 0.0);
  for (int k = 0; k <= q; ++k)
    for (int j = 0; j <= k; ++j) a[k] += taylor_c(j) * eb[k - j];
  return a;
}

RationalFn build_R(const OcpParams& p) {
  p.validate();
  std::vector<double> num = consistency_fill(p.b, p.q);
  num.insert(num.end(), p.a_free.begin(), p.a_free.end());
  std::vector<double> den(p.m + 1);
  den[0] = 1.0;
  for (int i = 1; i <= p.m; ++i) den[i] = std::exp(p.b[i - 1]);
  return RationalFn(std::move(num), std::move(den));
}

OcpParams params_from_rational(const RationalFn& R, int q) {
  OcpParams p;
  p.m = R.deg_den();
  p.n = R.deg_num();
  p.q = q;
  if (!(q >= 0 && q < p.n && p.n <= p.m))
    throw std::invalid_argument("params_from_rational: degrees violate q < n <= m");
  p.b.resize(p.m);
  for (int i = 1; i <= p.m; ++i) {
    if (!(R.den[i] > 0.0))
      throw std::invalid_argument("params_from_rational: denominator coefficients must be positive");
    p.b[i - 1] = std::log(R.den[i]);
  }
  // printed a_1 is the ground truth for b_1 when q >= 1 (a_1 = e^{b_1} - 1)
  if (q >= 1 && R.num.size() > 1) p.b[0] = std::log1p(R.num[1]);
  p.a_free.assign(R.num.begin() + q + 1, R.num.end());
  p.validate();
  return p;
}

double barrier_loss(const OcpParams& p, const std::vector<double>& samples) {
  const RationalFn R = build_R(p);
  const auto lam_r = critical_points(R);
  const double n_total = static_cast<double>(samples.size() + lam_r.size());
  double acc = 0.0;
  auto term = [&](double s) {
    const double v = eval(R, s);
    const double arg = 1.0 - v * v;
    if (arg <= 0.0) throw std::domain_error("barrier_loss: infeasible point, |R(s)| >= 1");
    return std::log(arg);
  };
  for (double s : samples) acc += term(s);
  for (double s : lam_r) acc += term(s);
  const double w = eval_at_infinity(R);
  const double arg_inf = 1.0 - w * w;
  if (arg_inf <= 0.0) throw std::domain_error("barrier_loss: infeasible point, |R(inf)| >= 1");
  return acc / n_total + std::log(arg_inf);
}

SupLoss sup_loss(const OcpParams& p, const RationalFn& r, int J0,
                 const std::vector<double>& samples) {
  const RationalFn R = build_R(p);
  SupLoss out;
  out.value = -1.0;
  for (double s : samples) {
    const double Rs = eval(R, s);
    if (std::abs(Rs) >= 1.0) throw std::domain_error("sup_loss: infeasible point, |R(s)| >= 1");
    const double v = std::abs(pow_j_signed(eval(r, s / J0), J0) - Rs) / (1.0 - std::abs(Rs));
    if (v > out.value) {
      out.value = v;
      out.arg_s = s;
      out.at_infinity = false;
    }
  }
  const double w = eval_at_infinity(R);
  if (std::abs(w) >= 1.0) throw std::domain_error("sup_loss: infeasible point, |R(inf)| >= 1");
  const double vinf =
      std::abs(pow_j_signed(eval_at_infinity(r), J0) - w) / (1.0 - std::abs(w));
  if (vinf > out.value) {
    out.value = vinf;
    out.arg_s = std::numeric_limits<double>::infinity();
    out.at_infinity = true;
  }
  return out;
}

namespace {

// Training state in (b, u) coordinates, a_k = u_k * e^{b_k} for k = q+1..n.
// The rescaling keeps descent well conditioned when optimal coefficients span
// orders of magnitude (theta-scheme OCPs), and R(inf) = u_n when n = m.
struct UState {
  int m, n, q, nf;
  std::vector<double> b, u;

  OcpParams params() const {
    OcpParams p;
    p.m = m;
    p.n = n;
    p.q = q;
    p.b = b;
    p.a_free.resize(nf);
    for (int j = 0; j < nf; ++j) p.a_free[j] = u[j] * std::exp(b[q + j]);
    return p;
  }
};

struct LossPack {
  RationalFn R;
  std::vector<double> crit;
  double sup = 0.0;
  long arg = -1;  // -1 => infinity sample
  bool feasible = false;
};

class Trainer {
 public:
  Trainer(const RationalFn& r, int m, int n, int q, const TrainConfig& cfg)
      : r_(r), m_(m), n_(n), q_(q), nf_(n - q), cfg_(cfg) {
    samples_ = cfg.spectrum.samples();
    rj_.resize(samples_.size());
    for (size_t i = 0; i < samples_.size(); ++i)
      rj_[i] = pow_j_signed(eval(r_, samples_[i] / cfg_.J0), cfg_.J0);
    rj_inf_ = pow_j_signed(eval_at_infinity(r_), cfg_.J0);
  }

  LossPack evaluate(const UState& st) const {
    LossPack pk;
    OcpParams p = st.params();
    pk.R = build_R(p);
    const double w = eval_at_infinity(pk.R);
    if (std::abs(w) >= 1.0) return pk;
    pk.crit = critical_points(pk.R);
    for (double s : pk.crit)
      if (std::abs(eval(pk.R, s)) >= 1.0) return pk;
    double best = -1.0;
    long arg = -1;
    for (size_t i = 0; i < samples_.size(); ++i) {
      const double Rs = eval(pk.R, samples_[i]);
      if (std::abs(Rs) >= 1.0) return pk;
      const double v = std::abs(rj_[i] - Rs) / (1.0 - std::abs(Rs));
      if (v > best) {
        best = v;
        arg = static_cast<long>(i);
      }
    }
    const double vinf = std::abs(rj_inf_ - w) / (1.0 - std::abs(w));
    if (vinf > best) {
      best = vinf;
      arg = -1;
    }
    pk.sup = best;
    pk.arg = arg;
    pk.feasible = true;
    return pk;
  }

  // dR/d(b,u) at finite s
  std::vector<double> dR(const UState& st, const RationalFn& R, double s) const {
    const double P = poly::eval(R.num, s);
    const double Q = poly::eval(R.den, s);
    std::vector<double> g(m_ + nf_, 0.0);
    for (int i = 1; i <= m_; ++i) {
      const double ebi = R.den[i];
      const double dQ = ebi * std::pow(s, i);
      double dP = 0.0;
      for (int k = i; k <= q_; ++k) dP += taylor_c(k - i) * ebi * std::pow(s, k);
      if (i >= q_ + 1 && i <= n_) dP += st.u[i - q_ - 1] * ebi * std::pow(s, i);
      g[i - 1] = (dP * Q - P * dQ) / (Q * Q);
    }
    for (int j = 0; j < nf_; ++j) {
      const int k = q_ + 1 + j;
      g[m_ + j] = R.den[k] * std::pow(s, k) / Q;  // e^{b_k} s^k / Q
    }
    return g;
  }

  // dR(inf)/d(b,u): R(inf) = u_n when n = m, else 0
  std::vector<double> dR_inf() const {
    std::vector<double> g(m_ + nf_, 0.0);
    if (n_ == m_ && nf_ > 0) g[m_ + nf_ - 1] = 1.0;
    return g;
  }

  std::vector<double> gradient(const UState& st, const LossPack& pk, double rho) const {
    const int dim = m_ + nf_;
    // subgradient of the sup term at the active sample
    double Rv, rterm;
    std::vector<double> dRv;
    if (pk.arg < 0) {
      Rv = eval_at_infinity(pk.R);
      rterm = rj_inf_;
      dRv = dR_inf();
    } else {
      Rv = eval(pk.R, samples_[pk.arg]);
      rterm = rj_[pk.arg];
      dRv = dR(st, pk.R, samples_[pk.arg]);
    }
    const double N = rterm - Rv;
    const double sN = N > 0 ? 1.0 : (N < 0 ? -1.0 : 0.0);
    const double sR = Rv > 0 ? 1.0 : (Rv < 0 ? -1.0 : 0.0);
    const double om = 1.0 - std::abs(Rv);
    const double fac = (-sN * om + std::abs(N) * sR) / (om * om);
    std::vector<double> g(dim);
    for (int i = 0; i < dim; ++i) g[i] = fac * dRv[i];

    // barrier gradient
    std::vector<double> gb(dim, 0.0);
    const double n_total = static_cast<double>(samples_.size() + pk.crit.size());
    auto add_point = [&](double s) {
      const double v = eval(pk.R, s);
      const double wgt = -2.0 * v / (1.0 - v * v);
      const auto d = dR(st, pk.R, s);
      for (int i = 0; i < dim; ++i) gb[i] += wgt * d[i] / n_total;
    };
    for (double s : samples_) add_point(s);
    for (double s : pk.crit) add_point(s);
    const double w = eval_at_infinity(pk.R);
    const auto di = dR_inf();
    const double wgt_inf = -2.0 * w / (1.0 - w * w);
    for (int i = 0; i < dim; ++i) gb[i] += wgt_inf * di[i];

    for (int i = 0; i < dim; ++i) g[i] -= rho * gb[i];
    return g;
  }

  const std::vector<double>& samples() const { return samples_; }
  double rj_inf() const { return rj_inf_; }

 private:
  const RationalFn& r_;
  int m_, n_, q_, nf_;
  TrainConfig cfg_;
  std::vector<double> samples_;
  std::vector<double> rj_;
  double rj_inf_ = 0.0;
};

}  // namespace

TrainResult train(const RationalFn& r, int m, int n, int q, const TrainConfig& cfg_in) {
  if (!(q >= 1 && q < n && n <= m)) throw std::invalid_argument("train: need 1 <= q < n <= m");
  TrainConfig cfg = cfg_in;
  if (cfg.alpha0 <= 0.0) cfg.alpha0 = m <= 2 ? 0.1 : 0.3;
  if (cfg.restarts <= 0) cfg.restarts = m <= 2 ? 8 : 24;
  if (cfg.gate <= 0.0) cfg.gate = m <= 2 ? 0.05 : 0.12;

  Trainer tr(r, m, n, q, cfg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto U = [&](double lo, double hi) { return lo + (hi - lo) * unif(rng); };

  const int nf = n - q;
  const double warm_un = tr.rj_inf();

  UState best_state;
  double best_sup = std::numeric_limits<double>::infinity();
  bool any_feasible = false;

  for (int t = 0; t < cfg.restarts; ++t) {
    // initialization families: plain, strong-stability warm start, wide,
    // and (for m >= 3) a large-coefficient family matching the warm limit
    UState st;
    st.m = m;
    st.n = n;
    st.q = q;
    st.nf = nf;
    bool feasible = false;
    for (int attempt = 0; attempt < 500 && !feasible; ++attempt) {
      st.b.assign(m, 0.0);
      st.u.assign(nf, 0.0);
      const int fam = t % 4;
      if (fam == 1) {
        for (auto& v : st.b) v = U(1.0, 5.0);
        for (auto& v : st.u) v = U(-0.3, 0.3);
        if (nf > 0) st.u[nf - 1] = warm_un * U(0.7, 1.1);
      } else if (fam == 2) {
        for (auto& v : st.b) v = U(-2.0, 5.0);
        for (auto& v : st.u) v = U(-0.3, 0.3);
      } else if (fam == 3 && m >= 3) {
        const double bc = U(2.5, 4.5);
        for (int i = 0; i < m - 1; ++i) st.b[i] = bc + U(-0.2, 0.2);
        st.b[m - 1] = U(-2.0, 0.2);
        for (int j = 0; j + 1 < nf; ++j) st.u[j] = U(-0.25, -0.05);
        if (nf > 0) st.u[nf - 1] = warm_un * U(0.7, 1.1);
      } else {
        for (auto& v : st.b) v = U(-1.0, 1.0);
        for (auto& v : st.u) v = U(-0.3, 0.3);
      }
      feasible = tr.evaluate(st).feasible;
    }
    if (!feasible) continue;
    any_feasible = true;

    double rho = cfg.rho0;
    long step_idx = 0;
    for (int outer = 0; outer < cfg.outer_iters; ++outer) {
      rho *= cfg.beta;
      bool converged = false;
      for (int k = 0; k < cfg.inner_iters; ++k) {
        LossPack pk = tr.evaluate(st);
        if (!pk.feasible)
          throw std::logic_error("train: accepted iterate became infeasible");
        if (pk.sup < best_sup) {
          best_sup = pk.sup;
          best_state = st;
        }
        auto g = tr.gradient(st, pk, rho);
        double gn = 0.0;
        for (double v : g) gn += v * v;
        gn = std::sqrt(gn);
        if (gn < cfg.grad_tol) {
          converged = true;
          break;
        }
        double alpha = cfg.alpha0 / (1.0 + static_cast<double>(step_idx) / 50.0);
        ++step_idx;
        // normalized step with feasibility backtracking (halve up to 40 times)
        UState cand = st;
        bool accepted = false;
        for (int h = 0; h <= 40; ++h) {
          for (int i = 0; i < m; ++i) cand.b[i] = st.b[i] - alpha * g[i] / gn;
          for (int j = 0; j < nf; ++j) cand.u[j] = st.u[j] - alpha * g[m + j] / gn;
          if (tr.evaluate(cand).feasible) {
            st = cand;
            accepted = true;
            break;
          }
          alpha *= 0.5;
        }
        if (!accepted) break;  // stalled at this rho
      }
      if (converged) break;
    }
  }

  if (!any_feasible) throw std::runtime_error("train: no feasible initialization found");

  TrainResult res;
  res.params = best_state.params();
  res.R = build_R(res.params);
  res.sup_loss_value = best_sup;
  res.gate_met = best_sup <= cfg.gate;
  res.restarts_used = cfg.restarts;
  return res;
}

std::vector<double> default_abscissae(int q) {
  std::vector<double> C(q);
  for (int i = 0; i < q; ++i) C[i] = 1.0 - static_cast<double>(i) / q;
  return C;
}

std::vector<RationalFn> solve_forcing_weights(const RationalFn& R, int q,
                                              const std::vector<double>& C) {
  if (static_cast<int>(C.size()) != q)
    throw std::invalid_argument("solve_forcing_weights: need exactly q abscissae");
  if (C[0] != 1.0) throw std::invalid_argument("solve_forcing_weights: C_1 must be 1");
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (C[i] == C[j])
        throw std::invalid_argument("solve_forcing_weights: duplicate abscissae (singular system)");

  const int mdeg = R.deg_den();
  // right-hand-side numerators: j! / (-lambda)^{j+1} * (P - T_j(-lambda) Q)
  std::vector<std::vector<double>> rhs(q);
  for (int j = 0; j < q; ++j) {
    std::vector<double> taylor(j + 1);
    for (int l = 0; l <= j; ++l) taylor[l] = taylor_c(l);
    auto S = poly::sub(R.num, poly::mul(taylor, R.den));
    double scale = 0.0;
    for (double v : S) scale = std::max(scale, std::abs(v));
    for (int l = 0; l <= j; ++l)
      if (std::abs(S[l]) > 1e-9 * scale)
        throw std::domain_error(
            "solve_forcing_weights: R is not consistent to the requested order");
    std::vector<double> shifted(S.begin() + j + 1, S.end());
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    const double sgn = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^{j+1}
    for (auto& v : shifted) v *= fact * sgn;
    shifted.resize(mdeg, 0.0);  // degree <= m-1
    rhs[j] = std::move(shifted);
  }

  Eigen::MatrixXd V(q, q);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < q; ++i) V(j, i) = std::pow(C[i], j);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
  if (!lu.isInvertible())
    throw std::invalid_argument("solve_forcing_weights: singular Vandermonde system");

  std::vector<std::vector<double>> Ni(q, std::vector<double>(mdeg, 0.0));
  for (int t = 0; t < mdeg; ++t) {
    Eigen::VectorXd rv(q);
    for (int j = 0; j < q; ++j) rv(j) = rhs[j][t];
    Eigen::VectorXd x = lu.solve(rv);
    for (int i = 0; i < q; ++i) Ni[i][t] = x(i);
  }

  std::vector<RationalFn> out;
  out.reserve(q);
  for (int i = 0; i < q; ++i) out.emplace_back(poly::trim(Ni[i]), R.den);
  return out;
}

}  // namespace paraopt
