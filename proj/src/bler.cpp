#include "gfra/bler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <vector>

#include "gfra/special_functions.hpp"

namespace gfra {

namespace {

double gamma_log_pdf(double x, double shape, double scale) {
  return (shape - 1.0) * std::log(x) - x / scale - std::lgamma(shape) -
         shape * std::log(scale);
}

// Quantile of Gamma(shape, scale) by bisection on the regularized CDF.
double gamma_quantile(double p, double shape, double scale) {
  double lo = 0.0;
  double hi = scale * (shape + 20.0 * std::sqrt(shape) + 20.0);
  while (reg_lower_gamma(shape, hi / scale) < p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (reg_lower_gamma(shape, mid / scale) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * hi) break;
  }
  return 0.5 * (lo + hi);
}

struct SimpsonState {
  double worst_err = 0.0;
  long evals = 0;
};

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double tol,
                        int depth, SimpsonState* st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  st->evals += 2;
  const double h = b - a;
  const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::fabs(err) <= tol) {
    if (depth <= 0) st->worst_err = std::max(st->worst_err, std::fabs(err));
    return left + right + err;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1, st) +
         adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1, st);
}

double integrate(const std::function<double(double)>& f,
                 const std::vector<double>& knots, double tol) {
  SimpsonState st;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    if (!(b > a)) continue;
    const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    st.evals += 3;
    total += adaptive_simpson(f, a, b, fa, fm, fb,
                              tol / static_cast<double>(knots.size() - 1), 48,
                              &st);
  }
  if (st.worst_err > tol)
    throw QuadratureError("conditional_bler_numerical: adaptive quadrature "
                          "stalled",
                          st.worst_err);
  return total;
}

}  // namespace

CodeParams code_params(const SystemConfig& config) {
  CodeParams code;
  code.blocklength = config.data_len();
  code.rate = config.code_rate();
  return code;
}

SnrLaw conditional_snr_law(int e, int f, const SystemConfig& config,
                           double tau_inf_sq, int shape_offset) {
  const int k = config.active_count;
  if (e < 0 || e > k || f < 0 || f > config.n_users - k)
    throw std::domain_error("conditional_snr_law: (e, f) out of range");
  SnrLaw law;
  law.miss_count = e;
  law.false_count = f;
  law.feasible = config.n_antennas >= k - e + f;
  law.shape = config.n_antennas - k + e - f + 1 + shape_offset;
  const double beta = config.rx_power;
  const double est_var = beta * beta / (beta + tau_inf_sq);
  const double interference =
      (k - e) * beta * tau_inf_sq / (beta + tau_inf_sq) + e * beta +
      config.noise_var;
  law.scale = est_var / interference;
  return law;
}

double conditional_bler_numerical(const SnrLaw& law, const CodeParams& code) {
  if (!law.feasible) return 1.0;
  const LinearizedBler lin = linearize_bler(code);

  // Cover all but 1e-12 of the Gamma mass plus the whole Q transition.
  const double q_hi = gamma_quantile(1.0 - 1e-13, law.shape, law.scale);
  const double hi =
      std::max(q_hi, lin.mu_high + 4.0 * (lin.mu_high - lin.v_low));

  std::vector<double> knots{0.0};
  for (double k : {std::max(lin.v_low, 0.0), lin.r_thresh, lin.mu_high,
                   gamma_quantile(0.05, law.shape, law.scale),
                   law.mean(), q_hi})
    if (k > 0.0 && k < hi) knots.push_back(k);
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());

  const double shape = law.shape, scale = law.scale;
  auto integrand = [&](double g) {
    if (g <= 0.0) return 0.0;
    const double pdf = std::exp(gamma_log_pdf(g, shape, scale));
    if (pdf == 0.0) return 0.0;
    return bler_normal_approx(g, code) * pdf;
  };
  return std::min(1.0, std::max(0.0, integrate(integrand, knots, 1e-10)));
}

double conditional_bler_closed_form(const SnrLaw& law,
                                    const CodeParams& code) {
  if (!law.feasible) return 1.0;
  const double r = code.snr_threshold();
  if (r <= 0.0) return 0.0;
  return reg_lower_gamma(law.shape, r / law.scale);
}

BlerReport mixture_bler(const SystemConfig& config, const DetectionStats& stats,
                        const CodeParams& code, double trunc_tol,
                        ConditionalPath path) {
  if (!(trunc_tol > 0.0 && trunc_tol <= 1e-6))
    throw std::domain_error("mixture_bler: trunc_tol must be in (0, 1e-6]");
  const int k = config.active_count;
  const int n_inactive = config.n_users - k;

  auto term_weight = [&](int e, int f) {
    return std::exp(log_binomial_pmf(k, e, stats.p_miss) +
                    log_binomial_pmf(n_inactive, f, stats.p_false));
  };
  auto conditional = [&](int e, int f) {
    const SnrLaw law = conditional_snr_law(e, f, config, stats.tau_inf_sq);
    return path == ConditionalPath::kNumerical
               ? conditional_bler_numerical(law, code)
               : conditional_bler_closed_form(law, code);
  };

  // Weight-ordered enumeration from the joint binomial mode outward.
  const int mode_e = std::min(
      k, static_cast<int>(std::floor((k + 1) * stats.p_miss)));
  const int mode_f = std::min(
      n_inactive,
      static_cast<int>(std::floor((n_inactive + 1) * stats.p_false)));

  using Entry = std::pair<double, std::pair<int, int>>;
  std::priority_queue<Entry> heap;
  std::set<std::pair<int, int>> seen;
  auto push = [&](int e, int f) {
    if (e < 0 || e > k || f < 0 || f > n_inactive) return;
    if (!seen.insert({e, f}).second) return;
    heap.push({term_weight(e, f), {e, f}});
  };
  push(mode_e, mode_f);

  BlerReport report;
  report.p_miss = stats.p_miss;
  report.p_false = stats.p_false;
  report.tau_inf_sq = stats.tau_inf_sq;

  double weight_sum = 0.0;
  double value = 0.0;
  constexpr long kMaxTerms = 4000000;
  while (!heap.empty() && 1.0 - weight_sum >= trunc_tol &&
         report.terms_used < kMaxTerms) {
    const auto [w, ef] = heap.top();
    heap.pop();
    const auto [e, f] = ef;
    weight_sum += w;
    value += w * conditional(e, f);
    ++report.terms_used;
    push(e + 1, f);
    push(e - 1, f);
    push(e, f + 1);
    push(e, f - 1);
  }
  const double neglected = std::max(0.0, 1.0 - weight_sum);
  report.bler_mixture_lo = std::min(1.0, value);
  report.bler_mixture_hi = std::min(1.0, value + neglected);
  report.bler_dominant = dominant_term_bler(config, stats, code);
  report.p_overall_lo = overall_bler(stats.p_miss, report.bler_mixture_lo);
  report.p_overall_hi = overall_bler(stats.p_miss, report.bler_mixture_hi);
  return report;
}

double dominant_term_bler(const SystemConfig& config,
                          const DetectionStats& stats,
                          const CodeParams& code) {
  const int k = config.active_count;
  const int n_inactive = config.n_users - k;
  const double log_w = k * std::log1p(-stats.p_miss) +
                       n_inactive * std::log1p(-stats.p_false);
  const SnrLaw law = conditional_snr_law(0, 0, config, stats.tau_inf_sq);
  return std::exp(log_w) * conditional_bler_closed_form(law, code);
}

double overall_bler(double p_miss, double bler_detected) {
  if (!(p_miss >= 0.0 && p_miss <= 1.0) ||
      !(bler_detected >= 0.0 && bler_detected <= 1.0))
    throw std::domain_error("overall_bler: arguments must be in [0,1]");
  return p_miss + (1.0 - p_miss) * bler_detected;
}

}  // namespace gfra
