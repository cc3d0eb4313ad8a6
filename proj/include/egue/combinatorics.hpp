#pragma once

// Exact integer/rational building blocks shared by every closed-form moment.
//
// All binomials follow the zero convention: C(n,k) = 0 whenever k < 0, k > n
// or n < 0. Several formulas (d(N:0), Lambda with a large irrep label) rely on
// it silently, so these functions are total.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace egue {

using ExactInt = boost::multiprecision::cpp_int;
using ExactRatio = boost::multiprecision::cpp_rational;
/// Working precision for quantities that leave the rationals (square roots).
using WideFloat = boost::multiprecision::cpp_bin_float_50;

ExactInt binomial(long n, long k);

/// Arguments of Lambda^mu(N', m', r).
struct LambdaArgs {
  long Np = 0; ///< number of single-particle states N'
  long mp = 0; ///< particle number m'
  long r = 0;
  long mu = 0; ///< irrep label
};

/// Lambda^mu(N', m', r) = C(m' - mu, r) * C(N' - m' + r - mu, r).
ExactInt lambda_coeff(const LambdaArgs& args);
inline ExactInt lambda_coeff(long Np, long mp, long r, long mu) {
  return lambda_coeff(LambdaArgs{Np, mp, r, mu});
}

/// d(N:nu) = C(N,nu)^2 - C(N,nu-1)^2. Requires 0 <= nu <= N.
ExactInt d_nu(long N, long nu);

/// Square of the U(N) U-coefficient U(f_m, fbar_p, f_m, f_p; f_{m-p}, nu).
/// Requires 0 <= p <= m <= N and nu >= 0.
ExactRatio u_coeff_sq(long N, long m, long p, long nu);

ExactRatio ratio(const ExactInt& num, const ExactInt& den);

double to_double(const ExactRatio& value);
double to_double(const ExactInt& value);
WideFloat to_wide(const ExactRatio& value);
/// Positive square root of a nonnegative rational, in wide precision.
WideFloat sqrt_wide(const ExactRatio& value);

} // namespace egue
