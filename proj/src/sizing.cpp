#include "gpsizing/sizing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>

#include "gpsizing/combinatorics.hpp"
#include "gpsizing/errors.hpp"

namespace gpsizing {
namespace {

constexpr double kBracketLow = 1e-12;
constexpr double kBracketHigh = 2000.0;

template <typename F>
double solve_decreasing(F f, double target) {
  auto g = [&](double c) { return f(c) - target; };
  if (g(kBracketLow) < 0.0 || g(kBracketHigh) > 0.0) {
    throw std::domain_error("no root for c in [1e-12, 2000]");
  }
  std::uintmax_t iterations = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      g, kBracketLow, kBracketHigh, boost::math::tools::eps_tolerance<double>(50),
      iterations);
  return 0.5 * (lo + hi);
}

void check_signal(double d) {
  if (d == 0.0) throw std::domain_error("signal d must be non-zero");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}

}  // namespace

std::string_view to_string(CMethod method) {
  switch (method) {
    case CMethod::kExact: return "exact";
    case CMethod::kTail: return "tail";
    case CMethod::kTableFit: return "table-fit";
  }
  return "?";
}

CMethod parse_c_method(std::string_view text) {
  for (CMethod m : {CMethod::kExact, CMethod::kTail, CMethod::kTableFit}) {
    if (text == to_string(m)) return m;
  }
  throw ConfigError("unknown c method '" + std::string(text) + "'");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double c_from_alpha(double alpha, CMethod method) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::domain_error("alpha must lie in (0, 0.5)");
  switch (method) {
    case CMethod::kExact: {
      const double z = std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * alpha);
      return z * z;
    }
    case CMethod::kTail:
      return solve_decreasing(
          [](double c) { return std::exp(-c / 2.0) / std::sqrt(2.0 * c); }, alpha);
    case CMethod::kTableFit:
      return solve_decreasing(
          [](double c) {
            return std::exp(-c / 2.0) / std::sqrt(2.0 * std::numbers::pi * c);
          },
          2.0 * alpha);
  }
  throw std::logic_error("unhandled c method");
}

double decision_probability(double d, double var1, double var2) {
  if (var1 < 0.0 || var2 < 0.0) throw std::domain_error("variances must be >= 0");
  const double total = var1 + var2;
  if (total == 0.0) return d > 0.0 ? 1.0 : (d == 0.0 ? 0.5 : 0.0);
  return normal_cdf(d / std::sqrt(total));
}

double ga_popsize(double c, double chi, int k, double m, double sigma2_bb, double d) {
  check_signal(d);
  if (m < 2.0) throw std::domain_error("GA sizing needs m >= 2");
  return 2.0 * c * std::pow(chi, k) * (m - 1.0) * sigma2_bb / (d * d);
}

double supply_popsize(double lambda, int k, double kappa, double epsilon) {
  check_positive(lambda, "lambda");
  check_positive(epsilon, "epsilon");
  if (epsilon > kappa) throw std::domain_error("supply error must not exceed kappa");
  return std::ldexp(1.0, k) * kappa * (std::log(kappa) - std::log(epsilon)) / lambda;
}

double gp_popsize_general(const SizingInputs& in) {
  check_signal(in.d);
  check_positive(in.p_expr, "p_expr");
  check_positive(in.phi, "phi");
  if (!(in.q_bar > 1.0)) {
    throw std::domain_error("q_bar must exceed 1 (no collateral noise otherwise)");
  }
  return 2.0 * in.c * (in.sigma2_bb / (in.d * in.d)) * in.kappa * (in.q_bar - 1.0) /
         (in.p_expr * in.phi);
}

double gp_popsize_kolmogorov(const SizingInputs& in) {
  check_signal(in.d);
  check_positive(in.p_expr, "p_expr");
  check_positive(in.lambda, "lambda");
  return in.c * (in.sigma2_bb / (in.d * in.d)) * in.kappa * (in.c_k * in.m - 1.0) *
         std::ldexp(1.0, in.k + 1) / (in.p_expr * in.lambda);
}

double trials_per_bb(const SizingInputs& in, double n) {
  if (n < 0.0) throw std::domain_error("population size must be >= 0");
  check_positive(in.kappa, "kappa");
  return in.p_expr * in.phi * n / in.kappa;
}

double order_p_expr(int k, double lambda, double m) {
  check_positive(lambda, "lambda");
  if (m < 1.0) throw std::domain_error("m must be >= 1");
  return std::exp(-k * std::exp(-lambda / (2.0 * m)));
}

double order_popsize(int k, double c, double sigma2_bb, double d, int m, double n_l,
                     double lambda) {
  return order_popsize_qbar(k, c, sigma2_bb, d, m, q_bar_order(m, n_l), lambda);
}

double order_popsize_qbar(int k, double c, double sigma2_bb, double d, double m,
                          double q_bar, double lambda) {
  check_signal(d);
  return std::ldexp(1.0, k - 1) * c * (sigma2_bb / (d * d)) * (q_bar - 1.0) /
         order_p_expr(k, lambda, m);
}

double loud_popsize(int k, double c, double sigma2_bb, double d, double lambda) {
  check_signal(d);
  if (!(lambda > 3.0)) throw std::domain_error("LOUD sizing needs lambda > 3");
  return 2.0 * std::pow(3.0, k) * c * (sigma2_bb / (d * d)) * (lambda / 3.0 - 1.0) *
         (2.0 / lambda);
}

double onoff_popsize(int k, double c, double sigma2_bb, double d, double lambda,
                     double p_exp, int h) {
  check_signal(d);
  check_positive(lambda, "lambda");
  const double expressed = std::pow(p_exp, h);
  if (!(lambda / 2.0 * expressed > 1.0)) {
    throw std::domain_error("ON-OFF sizing needs (lambda/2) p_exp^h > 1; got " +
                            std::to_string(lambda / 2.0 * expressed) +
                            " (expression too rare for the model)");
  }
  return std::ldexp(1.0, k + 1) * c * (sigma2_bb / (d * d)) *
         (lambda / 2.0 * expressed - 1.0) * (2.0 / (lambda * expressed));
}

std::uint64_t round_up_even(double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw std::domain_error("population size must be finite and >= 0");
  auto v = static_cast<std::uint64_t>(std::ceil(n - 1e-9));
  if (v % 2 != 0) ++v;
  return v < 2 ? 2 : v;
}

}  // namespace gpsizing
