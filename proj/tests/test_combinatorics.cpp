#include "egue/combinatorics.hpp"
#include "egue/errors.hpp"

#include <doctest.h>

#include <vector>

using namespace egue;

namespace {

// Independent oracle: Pascal triangle built by repeated addition.
std::vector<std::vector<ExactInt>> pascal(int rows) {
  std::vector<std::vector<ExactInt>> t(static_cast<std::size_t>(rows) + 1);
  for (int n = 0; n <= rows; ++n) {
    t[n].assign(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k) {
      t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
  }
  return t;
}

} // namespace

TEST_CASE("binomial examples and zero convention") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(20, -1) == 0);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(0, 0) == 1);
}

TEST_CASE("binomial agrees with the Pascal triangle up to n = 200") {
  const auto t = pascal(200);
  for (int n = 0; n <= 200; n += 7) {
    for (int k = 0; k <= n; ++k) {
      REQUIRE(binomial(n, k) == t[n][k]);
    }
  }
  CHECK(binomial(200, 100) == t[200][100]);
}

TEST_CASE("binomial symmetry and Pascal recurrence") {
  for (long n = 1; n <= 90; ++n) {
    for (long k = -2; k <= n + 2; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
      if (k >= 0 && k <= n) {
        CHECK(binomial(n, k) == binomial(n, n - k));
      }
    }
  }
}

TEST_CASE("lambda coefficient") {
  CHECK(lambda_coeff(20, 10, 2, 0) == 2970);
  CHECK(lambda_coeff(LambdaArgs{20, 10, 8, 2}) == 12870);
  // mu > m' - r kills the first binomial.
  CHECK(lambda_coeff(20, 10, 8, 3) == 0);
  CHECK(lambda_coeff(20, 10, 0, 0) == 1);
}

TEST_CASE("d(N:nu)") {
  for (long N = 0; N <= 30; ++N) {
    CHECK(d_nu(N, 0) == 1);
  }
  CHECK(d_nu(20, 1) == 399);
  CHECK(d_nu(6, 2) == 189);
  CHECK_THROWS_AS(d_nu(5, -1), DomainError);
  CHECK_THROWS_AS(d_nu(5, 6), DomainError);
}

TEST_CASE("d(N:nu) telescopes and is positive below N/2") {
  for (long N = 1; N <= 40; ++N) {
    ExactInt running = 0;
    for (long t = 0; t <= N / 2; ++t) {
      running += d_nu(N, t);
      CHECK(d_nu(N, t) > 0);
      CHECK(running == binomial(N, t) * binomial(N, t));
    }
  }
}

TEST_CASE("u_coeff_sq") {
  CHECK(u_coeff_sq(6, 3, 1, 0) == ExactRatio(1, 8));
  // nu above p forces C(m - nu, p - nu) = 0.
  CHECK(u_coeff_sq(6, 3, 1, 2) == 0);
  CHECK_THROWS_AS(u_coeff_sq(6, 3, 4, 0), DomainError);
  CHECK_THROWS_AS(u_coeff_sq(6, 7, 1, 0), DomainError);

  for (long N = 1; N <= 24; ++N) {
    for (long m = 0; m <= N; ++m) {
      for (long p = 0; p <= m; ++p) {
        for (long nu = 0; nu <= N + 2; ++nu) {
          REQUIRE(u_coeff_sq(N, m, p, nu) >= 0);
        }
      }
    }
  }
}

TEST_CASE("rational conversions") {
  CHECK(to_double(ExactRatio(1, 8)) == 0.125);
  CHECK(static_cast<double>(sqrt_wide(ExactRatio(9, 4))) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(sqrt_wide(ExactRatio(-1, 4)), DomainError);
  CHECK_THROWS_AS(ratio(1, 0), DomainError);
  const ExactRatio r = ratio(6, -4);
  CHECK(boost::multiprecision::numerator(r) == -3);
  CHECK(boost::multiprecision::denominator(r) == 2);
}
