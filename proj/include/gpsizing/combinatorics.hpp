#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gpsizing {

using BigInt = boost::multiprecision::cpp_int;

// Expression counts for ORDER. One index (say X1 / ~X1) is taken as already
// expressed; the remaining n_l - 1 leaves are filled from all 2m terminals
// and i counts the other indices that occur at least once.

/// Distribution of i = 0..m-1 for one (m, n_l).
struct ExpressionDistribution {
  int m = 0;
  double n_l = 0.0;
  /// Exact counts N(i); empty when only the floating path was used.
  std::vector<BigInt> counts;
  std::vector<double> probabilities;
  double mean = 0.0;
  double variance = 0.0;
};

BigInt binomial(int n, int k);

/// (2m)^(n_l - 1). Throws std::domain_error for m < 1 or n_l < 1.
BigInt n_total(int m, int n_l);

/// C(m-1, i) * sum_j C(i, j) (-1)^j [2(i - j + 1)]^(n_l - 1).
/// Throws std::out_of_range unless 0 <= i <= m-1.
BigInt ways_expressed(int i, int m, int n_l);

/// N(i) / N_tot. Uses the exact ratio when the counts stay below
/// kExactBitLimit bits, otherwise prob_expressed_floating.
double prob_expressed(int i, int m, int n_l);

/// C(m-1, i) * sum_j C(i, j) (-1)^j ((i - j + 1) / m)^(n_l - 1) in floating
/// point. Valid for non-integer n_l; loses accuracy to cancellation as m grows.
double prob_expressed_floating(int i, int m, double n_l);

inline constexpr int kExactBitLimit = 4096;

/// Probabilities, mean and variance of the number of other expressed BBs.
/// Integer n_l within the exact limit goes through exact rational sums;
/// otherwise probabilities come from the floating form and mean/variance
/// from the alternating sums collapsed to their surviving terms:
///   mean  = (m-1) [1 - ((m-1)/m)^L]
///   E[i^2] = (m-1)^2 - (m-1)(2m-3) ((m-1)/m)^L + (m-1)(m-2) ((m-2)/m)^L
/// with L = n_l - 1.
ExpressionDistribution mean_var_expressed(int m, double n_l);

/// Expected expressed BBs per tree, 1 + mean_var_expressed(m, n_l).mean.
double q_bar_order(int m, double n_l);

inline constexpr std::uint64_t kOracleLimit = 10'000'000;

/// Brute force over every length n_l - 1 sequence of the 2m terminals.
/// Throws std::length_error when (2m)^(n_l-1) exceeds kOracleLimit.
ExpressionDistribution oracle_enumerate(int m, int n_l);

/// Left and right sides of the binomial summation identities used by the
/// closed forms, evaluated exactly for `which` in 1..5:
///   1: sum C(n,j)            = 2^n
///   2: sum C(n,j) a^(n-j)    = (a+1)^n
///   3: sum C(n,j) j          = n 2^(n-1)
///   4: sum C(n,j) j^2        = n (n+1) 2^(n-2)
///   5: sum C(n,j) j a^(n-j)  = n (a+1)^(n-1)
struct IdentitySides {
  BigInt lhs;
  BigInt rhs;
};
IdentitySides binomial_identity(int which, int n, int a = 2);

}  // namespace gpsizing
