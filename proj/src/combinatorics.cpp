#include "egue/combinatorics.hpp"

#include "egue/errors.hpp"

#include <string>

namespace egue {

ExactInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    return 0;
  }
  if (k > n - k) {
    k = n - k;
  }
  ExactInt result = 1;
  // Each partial product result * (n - k + i) / i is itself a binomial, so
  // the division is exact at every step.
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

ExactInt lambda_coeff(const LambdaArgs& a) {
  return binomial(a.mp - a.mu, a.r) * binomial(a.Np - a.mp + a.r - a.mu, a.r);
}

ExactInt d_nu(long N, long nu) {
  if (nu < 0 || nu > N) {
    throw DomainError("d_nu: need 0 <= nu <= N, got N=" + std::to_string(N) +
                      " nu=" + std::to_string(nu));
  }
  const ExactInt a = binomial(N, nu);
  const ExactInt b = binomial(N, nu - 1);
  return a * a - b * b;
}

ExactRatio u_coeff_sq(long N, long m, long p, long nu) {
  if (p < 0 || p > m || m > N || nu < 0) {
    throw DomainError("u_coeff_sq: need 0 <= p <= m <= N and nu >= 0");
  }
  const ExactInt c = binomial(N + 1, nu);
  const ExactInt num = c * c * binomial(m - nu, p - nu) *
                       binomial(N - nu - p, m - p) * ExactInt(N - 2 * nu + 1);
  const ExactInt h = binomial(N - m + p, p);
  const ExactInt den = h * h * binomial(N, m - p) * ExactInt(N + 1);
  if (den == 0) {
    throw DomainError("u_coeff_sq: vanishing denominator");
  }
  // Nonvanishing binomials force nu <= min(p, N - m) <= N/2, so the
  // (N - 2nu + 1) factor never turns the value negative.
  return ExactRatio(num, den);
}

ExactRatio ratio(const ExactInt& num, const ExactInt& den) {
  if (den == 0) {
    throw DomainError("ratio: zero denominator");
  }
  if (den < 0) {
    return ExactRatio(-num, -den);
  }
  return ExactRatio(num, den);
}

double to_double(const ExactRatio& value) {
  return static_cast<double>(to_wide(value));
}

double to_double(const ExactInt& value) { return value.convert_to<double>(); }

WideFloat to_wide(const ExactRatio& value) {
  return WideFloat(boost::multiprecision::numerator(value)) /
         WideFloat(boost::multiprecision::denominator(value));
}

WideFloat sqrt_wide(const ExactRatio& value) {
  if (value < 0) {
    throw DomainError("sqrt_wide: negative radicand");
  }
  return boost::multiprecision::sqrt(to_wide(value));
}

} // namespace egue
