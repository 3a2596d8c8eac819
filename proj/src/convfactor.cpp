#include "paraopt/convfactor.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace paraopt {

std::vector<double> SpectrumSpec::samples() const {
  if (!(lambda_min > 0.0) || lambda_min > lambda_max)
    throw std::invalid_argument("SpectrumSpec: need 0 < lambda_min <= lambda_max");
  if (n_samples < 2) throw std::invalid_argument("SpectrumSpec: n_samples >= 2");
  std::vector<double> s(n_samples);
  if (log_spacing) {
    double l0 = std::log(dT * lambda_min), l1 = std::log(dT * lambda_max);
    for (int i = 0; i < n_samples; ++i)
      s[i] = std::exp(l0 + (l1 - l0) * i / (n_samples - 1));
  } else {
    double a = dT * lambda_min, b = dT * lambda_max;
    for (int i = 0; i < n_samples; ++i)
      s[i] = a + (b - a) * i / (n_samples - 1);
  }
  return s;
}

namespace {

// r(x)^J without overflow: exp(J ln r) when r > 0, repeated squaring on the
// signed value otherwise.
double pow_j(double rx, int J) {
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

double kappa(const RationalFn& r, const RationalFn& R, int J, double s) {
  const double Rs = eval(R, s);
  if (std::abs(Rs) >= 1.0)
    throw std::domain_error("kappa: coarse propagator unstable, |R(s)| >= 1 at s = " +
                            std::to_string(s));
  const double rj = pow_j(eval(r, s / J), J);
  return (rj - Rs) / (1.0 - std::abs(Rs));
}

double kappa_at_infinity(const RationalFn& r, const RationalFn& R, int J) {
  const double Ri = eval_at_infinity(R);
  if (std::abs(Ri) >= 1.0)
    throw std::domain_error("kappa: coarse propagator unstable at s = infinity");
  const double ri = pow_j(eval_at_infinity(r), J);
  return (ri - Ri) / (1.0 - std::abs(Ri));
}

namespace detail {

long serial_scan_max(long n, const std::function<double(long)>& f, std::vector<double>* values) {
  long best = 0;
  double bv = -std::numeric_limits<double>::infinity();
  if (values) values->resize(n);
  for (long i = 0; i < n; ++i) {
    double v = f(i);
    if (values) (*values)[i] = v;
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  return best;
}

long scan_max(long n, const std::function<double(long)>& f, std::vector<double>* values) {
  const int nt = omp_get_max_threads();
  if (nt <= 1 || n < 256) return serial_scan_max(n, f, values);
  const long chunk = (n + nt - 1) / nt;
  std::vector<long> arg(nt, -1);
  std::vector<double> val(nt, -std::numeric_limits<double>::infinity());
  if (values) values->resize(n);
#pragma omp parallel num_threads(nt)
  {
    const int t = omp_get_thread_num();
    const long lo = t * chunk, hi = std::min(n, lo + chunk);
    long besti = -1;
    double bestv = -std::numeric_limits<double>::infinity();
    for (long i = lo; i < hi; ++i) {
      double v = f(i);
      if (values) (*values)[i] = v;
      if (v > bestv) {
        bestv = v;
        besti = i;
      }
    }
    arg[t] = besti;
    val[t] = bestv;
  }
  long best = -1;
  double bv = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < nt; ++t)
    if (arg[t] >= 0 && val[t] > bv) {
      bv = val[t];
      best = arg[t];
    }
  return best;
}

}  // namespace detail

double kappa_c(const RationalFn& r, const RationalFn& R, int J, const SpectrumSpec& spec) {
  const auto s = spec.samples();
  std::vector<double> vals;
  long best = detail::scan_max(
      static_cast<long>(s.size()),
      [&](long i) { return std::abs(kappa(r, R, J, s[i])); }, &vals);
  return vals[best];
}

namespace {

struct GoldenResult {
  double x, v;
};

GoldenResult golden_max(const std::function<double(double)>& f, double a, double b) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace

AnalysisResult phi_star(const RationalFn& r, const RationalFn& R, int J,
                        double s_lo, double s_hi, int grid_points) {
  if (!(s_lo > 0.0)) throw std::invalid_argument("phi_star: s_lo must be positive");
  const double l0 = std::log(s_lo), l1 = std::log(s_hi);
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i)
    grid[i] = std::exp(l0 + (l1 - l0) * i / (grid_points - 1));

  std::vector<double> vals;
  long besti = detail::scan_max(
      grid_points, [&](long i) { return std::abs(kappa(r, R, J, grid[i])); }, &vals);
  const double grid_best = vals[besti];

  auto f = [&](double s) { return std::abs(kappa(r, R, J, s)); };

  // refine every near-best local maximum; competing lobes can differ by less
  // than the grid resolution error
  double best_v = -1.0, best_s = grid[0];
  for (int i = 0; i < grid_points; ++i) {
    const double l = i > 0 ? vals[i - 1] : -1.0;
    const double rr = i + 1 < grid_points ? vals[i + 1] : -1.0;
    if (vals[i] >= l && vals[i] >= rr && vals[i] > grid_best - 1e-3) {
      const double a = grid[std::max(0, i - 1)];
      const double b = grid[std::min(grid_points - 1, i + 1)];
      auto g = golden_max(f, a, b);
      if (g.v > best_v + 1e-15 || (std::abs(g.v - best_v) <= 1e-15 && g.x < best_s)) {
        best_v = g.v;
        best_s = g.x;
      }
    }
  }
  const double vinf = std::abs(kappa_at_infinity(r, R, J));
  if (vinf > best_v) {
    best_v = vinf;
    best_s = std::numeric_limits<double>::infinity();
  }
  return {best_v, best_s, J};
}

double h_function(const RationalFn& r, const RationalFn& R, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("h_function: s must be positive");
  const double rs = eval(r, s);
  if (rs <= 0.0)
    throw std::domain_error("h_function: r(s) <= 0 violates assumption (iii) at s = " +
                            std::to_string(s));
  const double R16 = eval(R, 16.0 * s);
  if (std::abs(R16) >= 1.0) throw std::domain_error("h_function: |R(16s)| >= 1");
  const RationalFn dr = derivative(r);
  const double rp = eval(dr, s);
  return std::pow(rs, 15) / (1.0 - std::abs(R16)) * (rs * std::log(rs) - rp * s);
}

double j_robustness(const RationalFn& r, const RationalFn& R, int J_lo, int J_hi) {
  if (J_lo < 1 || J_hi < J_lo) throw std::invalid_argument("j_robustness: bad J range");
  double best = 0.0;
  for (int J = J_lo; J <= J_hi; ++J)
    best = std::max(best, phi_star(r, R, J, 1e-6, 1e8, 2048).phi_star);
  return best;
}

}  // namespace paraopt
