#include "gpsizing/combinatorics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gpsizing {
namespace {

void check_m_nl(int m, double n_l) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  if (!(n_l >= 1.0)) throw std::domain_error("n_l must be >= 1");
}

BigInt power(int base, int exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

// num / den rounded to double without overflowing the intermediate values.
double ratio(const BigInt& num, const BigInt& den) {
  if (num == 0) return 0.0;
  const bool negative = (num < 0) != (den < 0);
  const BigInt a = abs(num);
  const BigInt b = abs(den);
  const long shift = static_cast<long>(msb(b)) - static_cast<long>(msb(a)) + 64;
  BigInt q = shift >= 0 ? BigInt(a << shift) / b : a / BigInt(b << -shift);
  const double value = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
  return negative ? -value : value;
}

bool exact_path(int m, double n_l) {
  if (n_l != std::floor(n_l)) return false;
  return (n_l - 1.0) * std::log2(2.0 * m) <= kExactBitLimit;
}

double binomial_double(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

void finish_moments(ExpressionDistribution& dist, const BigInt& total) {
  BigInt first = 0;
  BigInt second = 0;
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    const BigInt w = dist.counts[i] * static_cast<unsigned>(i);
    first += w;
    second += w * static_cast<unsigned>(i);
    dist.probabilities.push_back(ratio(dist.counts[i], total));
  }
  dist.mean = ratio(first, total);
  dist.variance = ratio(total * second - first * first, total * total);
}

void oracle_walk(int remaining, int symbols, std::uint64_t mask,
                 std::vector<std::uint64_t>& tally) {
  if (remaining == 0) {
    ++tally[static_cast<std::size_t>(std::popcount(mask & ~std::uint64_t{1}))];
    return;
  }
  for (int s = 0; s < symbols; ++s) {
    oracle_walk(remaining - 1, symbols, mask | (std::uint64_t{1} << (s / 2)), tally);
  }
}

}  // namespace

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (int j = 1; j <= k; ++j) {
    out *= n - k + j;
    out /= j;
  }
  return out;
}

BigInt n_total(int m, int n_l) {
  check_m_nl(m, n_l);
  return power(2 * m, n_l - 1);
}

BigInt ways_expressed(int i, int m, int n_l) {
  check_m_nl(m, n_l);
  if (i < 0 || i > m - 1) {
    throw std::out_of_range("expressed count " + std::to_string(i) +
                            " outside [0, m-1]");
  }
  BigInt sum = 0;
  for (int j = 0; j <= i; ++j) {
    const BigInt term = binomial(i, j) * power(2 * (i - j + 1), n_l - 1);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return binomial(m - 1, i) * sum;
}

double prob_expressed_floating(int i, int m, double n_l) {
  check_m_nl(m, n_l);
  if (i < 0 || i > m - 1) throw std::out_of_range("expressed count outside [0, m-1]");
  long double sum = 0.0L;
  for (int j = 0; j <= i; ++j) {
    const long double term =
        static_cast<long double>(binomial_double(i, j)) *
        std::pow(static_cast<long double>(i - j + 1) / m, static_cast<long double>(n_l - 1.0));
    sum += (j % 2 == 0) ? term : -term;
  }
  return static_cast<double>(static_cast<long double>(binomial_double(m - 1, i)) * sum);
}

double prob_expressed(int i, int m, int n_l) {
  if (exact_path(m, n_l)) return ratio(ways_expressed(i, m, n_l), n_total(m, n_l));
  return prob_expressed_floating(i, m, n_l);
}

ExpressionDistribution mean_var_expressed(int m, double n_l) {
  check_m_nl(m, n_l);
  ExpressionDistribution dist;
  dist.m = m;
  dist.n_l = n_l;
  if (exact_path(m, n_l)) {
    const int leaves = static_cast<int>(n_l);
    for (int i = 0; i < m; ++i) dist.counts.push_back(ways_expressed(i, m, leaves));
    finish_moments(dist, n_total(m, leaves));
    return dist;
  }
  for (int i = 0; i < m; ++i) {
    dist.probabilities.push_back(std::max(0.0, prob_expressed_floating(i, m, n_l)));
  }
  const double others = m - 1.0;
  const double len = n_l - 1.0;
  const double r1 = std::pow(others / m, len);
  const double r2 = m >= 2 ? std::pow((m - 2.0) / m, len) : 0.0;
  dist.mean = others * (1.0 - r1);
  const double second = others * others - others * (2.0 * m - 3.0) * r1 +
                        others * (m - 2.0) * r2;
  dist.variance = std::max(0.0, second - dist.mean * dist.mean);
  return dist;
}

double q_bar_order(int m, double n_l) { return 1.0 + mean_var_expressed(m, n_l).mean; }

ExpressionDistribution oracle_enumerate(int m, int n_l) {
  check_m_nl(m, n_l);
  if (m > 64) throw std::length_error("oracle supports m <= 64");
  const double estimate = std::pow(2.0 * m, n_l - 1.0);
  if (estimate > static_cast<double>(kOracleLimit)) {
    throw std::length_error("oracle would enumerate about " + std::to_string(estimate) +
                            " sequences (limit " + std::to_string(kOracleLimit) + ")");
  }
  std::vector<std::uint64_t> tally(static_cast<std::size_t>(m), 0);
  oracle_walk(n_l - 1, 2 * m, std::uint64_t{1}, tally);

  ExpressionDistribution dist;
  dist.m = m;
  dist.n_l = n_l;
  BigInt total = 0;
  for (std::uint64_t c : tally) {
    dist.counts.emplace_back(c);
    total += c;
  }
  finish_moments(dist, total);
  return dist;
}

IdentitySides binomial_identity(int which, int n, int a) {
  if (n < 0) throw std::domain_error("n must be >= 0");
  IdentitySides out;
  for (int j = 0; j <= n; ++j) {
    const BigInt c = binomial(n, j);
    switch (which) {
      case 1: out.lhs += c; break;
      case 2: out.lhs += c * power(a, n - j); break;
      case 3: out.lhs += c * j; break;
      case 4: out.lhs += c * j * j; break;
      case 5: out.lhs += c * j * power(a, n - j); break;
      default: throw std::out_of_range("identity index must be 1..5");
    }
  }
  switch (which) {
    case 1: out.rhs = power(2, n); break;
    case 2: out.rhs = power(a + 1, n); break;
    case 3: out.rhs = n == 0 ? BigInt(0) : BigInt(n) * power(2, n - 1); break;
    // n (n+1) 2^(n-2), kept integral for n < 2.
    case 4: out.rhs = BigInt(n) * (n + 1) * power(2, n) / 4; break;
    case 5: out.rhs = n == 0 ? BigInt(0) : BigInt(n) * power(a + 1, n - 1); break;
  }
  return out;
}

}  // namespace gpsizing
