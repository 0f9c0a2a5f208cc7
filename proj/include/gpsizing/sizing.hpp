#pragma once

#include <cstdint>
#include <string_view>

namespace gpsizing {

/// How the confidence coefficient c = z^2(alpha) is obtained.
enum class CMethod {
  /// c = z^2 with z the exact one-sided standard normal deviate.
  kExact,
  /// Root of exp(-c/2) / sqrt(2c) = alpha, the usual tail approximation.
  kTail,
  /// Root of exp(-c/2) / sqrt(2 pi c) = 2 alpha. Reproduces the published
  /// c values 0.97, 1.76, 2.71, 3.77, 4.89 at alpha = 1/m, m = 8..128.
  kTableFit,
};

std::string_view to_string(CMethod method);
CMethod parse_c_method(std::string_view text);  // "exact", "tail", "table-fit"

/// Requires 0 < alpha < 0.5.
double c_from_alpha(double alpha, CMethod method);

double normal_cdf(double x);
/// P(Z > z) for a standard normal Z.
double normal_upper_tail(double z);

/// Phi(d / sqrt(var1 + var2)). With both variances zero the decision is
/// certain for d > 0, a coin flip at d = 0, and wrong for d < 0.
double decision_probability(double d, double var1, double var2);

/// Symbols shared by the sizing relations.
struct SizingInputs {
  int k = 1;                 // BB defining length
  double kappa = 2.0;        // competition size
  double sigma2_bb = 0.25;   // per-BB fitness variance
  double d = 1.0;            // signal
  double lambda = 1.0;       // average tree size
  double lambda_k = 1.0;     // most compact solution size
  double c_k = 1.0;          // lambda = c_k * lambda_k multiplier
  double m = 2.0;            // number of BBs (m_k)
  double p_expr = 1.0;       // probability a present BB is expressed
  double q_bar = 2.0;        // mean expressed BBs per tree
  double phi = 1.0;          // fragment instances per tree
  double c = 1.0;            // confidence coefficient
};

/// 2 c chi^k (m - 1) sigma2_bb / d^2.
double ga_popsize(double c, double chi, int k, double m, double sigma2_bb, double d);

/// (1/lambda) 2^k kappa (ln kappa - ln epsilon), natural logarithm.
double supply_popsize(double lambda, int k, double kappa, double epsilon);

/// 2 c (sigma2_bb / d^2) kappa (q_bar - 1) / (p_expr phi).
double gp_popsize_general(const SizingInputs& in);

/// c (sigma2_bb / d^2) kappa (c_k m - 1) 2^(k+1) / (p_expr lambda); the
/// general relation with q_bar = c_k m and phi = 2^-k lambda.
double gp_popsize_kolmogorov(const SizingInputs& in);

/// (1/kappa) p_expr phi n: expected trials of one BB in a random population.
double trials_per_bb(const SizingInputs& in, double n);

/// exp(-k exp(-lambda / 2m)).
double order_p_expr(int k, double lambda, double m);

/// 2^(k-1) c (sigma2_bb/d^2) (q_bar - 1) exp(k exp(-lambda/2m)), with q_bar
/// from q_bar_order(m, n_l).
double order_popsize(int k, double c, double sigma2_bb, double d, int m, double n_l,
                     double lambda);
/// Same relation with q_bar supplied directly.
double order_popsize_qbar(int k, double c, double sigma2_bb, double d, double m,
                          double q_bar, double lambda);

/// 2 3^k c (sigma2_bb/d^2) (lambda/3 - 1) (2/lambda). Requires lambda > 3.
double loud_popsize(int k, double c, double sigma2_bb, double d, double lambda);

/// 2^(k+1) c (sigma2_bb/d^2) ((lambda/2) p^h - 1) (2 / (lambda p^h)), p = p_exp.
/// Requires (lambda/2) p^h > 1.
double onoff_popsize(int k, double c, double sigma2_bb, double d, double lambda,
                     double p_exp, int h);

/// Smallest even integer >= n (and >= 2).
std::uint64_t round_up_even(double n);

}  // namespace gpsizing
