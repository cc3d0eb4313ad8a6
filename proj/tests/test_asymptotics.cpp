#include "egue/asymptotics.hpp"
#include "egue/errors.hpp"
#include "egue/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace egue;

TEST_CASE("worked values at m = 10, k = 2, k0 = 1") {
  CHECK(xi_asymp(10, 2, 1) == doctest::Approx(8.0 * std::sqrt(45.0) / (10.0 * 6.0)));
  CHECK(xi_asymp(10, 2, 1) == doctest::Approx(0.8944).epsilon(1e-4));
  const FourthOrderPair pure = k40_k04_asymp(10, 2, 1);
  CHECK(pure.first == doctest::Approx(28.0 / 45.0 - 1.0).epsilon(1e-15));
  CHECK(pure.second == doctest::Approx(21.0 / 36.0 - 1.0).epsilon(1e-15));
  CHECK(k31_k13_asymp(10, 2, 1).first == doctest::Approx(-0.3379).epsilon(1e-3));
  CHECK(k22_asymp(10, 2, 1) == doctest::Approx(-0.8 + 168.0 / 360.0).epsilon(1e-14));
  CHECK(k22_asymp(10, 2, 1, K22Form::approximate) ==
        doctest::Approx(-1.6 + 6.0 * 73.0 / 360.0).epsilon(1e-14));
}

TEST_CASE("k40 does not depend on k0") {
  for (long k0 = 0; k0 <= 5; ++k0) {
    CHECK(k40_k04_asymp(12, 2, k0).first == k40_k04_asymp(12, 2, 0).first);
  }
}

TEST_CASE("dilute expansion") {
  const DiluteTerms d = dilute_expansion(100, 2, 1);
  CHECK(d.xi == doctest::Approx(0.99));
  CHECK(d.krs == doctest::Approx(-0.04));
  const DiluteTerms t = dilute_expansion(7, 0, 0);
  CHECK(t.xi == 1.0);
  CHECK(t.krs == 0.0);
  CHECK_THROWS_AS(dilute_expansion(2, 2, 1), DomainError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(xi_asymp(2, 2, 1), DomainError);
  CHECK_THROWS_AS(k40_k04_asymp(4, 3, 2), DomainError);
  CHECK_THROWS_AS(k22_asymp(3, 2, 2), DomainError);
}

TEST_CASE("mixed cumulants are xi times the pure ones") {
  CounterStream s(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const long k = 1 + static_cast<long>(s.uniform() * 5);
    const long k0 = 1 + static_cast<long>(s.uniform() * 5);
    const long m = k + k0 + static_cast<long>(s.uniform() * (61 - k - k0));
    const double xi = xi_asymp(m, k, k0);
    const FourthOrderPair pure = k40_k04_asymp(m, k, k0);
    const FourthOrderPair mixed = k31_k13_asymp(m, k, k0);
    INFO("m=" << m << " k=" << k << " k0=" << k0);
    CHECK(mixed.first == doctest::Approx(xi * pure.first).epsilon(1e-14));
    CHECK(mixed.second == doctest::Approx(xi * pure.second).epsilon(1e-14));
    CHECK(xi > 0.0);
    CHECK(xi <= 1.0);
  }
  CHECK(k31_k13_asymp(15, 2, 0).first == doctest::Approx(k40_k04_asymp(15, 2, 0).first));
}

TEST_CASE("dilute scaling with m") {
  double prev_gap = 1e9, prev_err = 0.0;
  for (const long m : {20L, 40L, 80L, 160L}) {
    const AsymptoticCumulants a = asymptotic_cumulants(m, 2, 1);
    const double gap = std::abs(m * a.k40 + 4.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
    CHECK(m * a.k22 == doctest::Approx(-4.0).epsilon(0.2));
    const double err = std::abs(a.xi - a.dilute.xi);
    if (prev_err > 0.0) {
      const double r = prev_err / err;
      CHECK(r >= 1.6);
      CHECK(r <= 10.0);
    }
    prev_err = err;
  }
}

TEST_CASE("exact cumulants converge to the asymptotic ones as N grows") {
  for (const ModelParams base : {ModelParams{0, 10, 2, 1}, ModelParams{0, 8, 2, 2}}) {
    const AsymptoticCumulants a = asymptotic_cumulants(base.m, base.k, base.k0);
    double prev[6] = {1e9, 1e9, 1e9, 1e9, 1e9, 1e9};
    for (const long f : {3L, 6L, 12L, 24L}) {
      ModelParams p = base;
      p.N = f * base.m;
      const CumulantSet c = exact_cumulants(p, Mode::removal);
      const double err[6] = {std::abs(c.xi - a.xi),   std::abs(c.k40 - a.k40),
                             std::abs(c.k04 - a.k04), std::abs(c.k31 - a.k31),
                             std::abs(c.k13 - a.k13), std::abs(c.k22 - a.k22)};
      for (int i = 0; i < 6; ++i) {
        INFO("N=" << p.N << " column " << i);
        CHECK(err[i] < prev[i]);
        prev[i] = err[i];
      }
    }
    for (int i = 0; i < 6; ++i) {
      CHECK(prev[i] < 0.02);
    }
  }
}

TEST_CASE("addition frame swaps the initial and final roles") {
  const ModelParams p{40, 8, 2, 1};
  const AsymptoticCumulants add = asymptotic_cumulants(p, Mode::addition);
  const AsymptoticCumulants rem = asymptotic_cumulants(9, 2, 1);
  CHECK(add.xi == rem.xi);
  CHECK(add.k40 == rem.k04);
  CHECK(add.k04 == rem.k40);
  CHECK(add.k31 == rem.k13);
  CHECK(add.k22 == rem.k22);
  const CumulantSet exact = exact_cumulants({4000, 8, 2, 1}, Mode::addition);
  CHECK(exact.k40 == doctest::Approx(add.k40).epsilon(0.02));
  CHECK(exact.k04 == doctest::Approx(add.k04).epsilon(0.02));
}
