#include "egue/asymptotics.hpp"

#include "egue/combinatorics.hpp"
#include "egue/errors.hpp"

#include <string>
#include <utility>

namespace egue {

namespace {

void require(bool ok, const char* what, long m, long k, long k0) {
  if (!ok) {
    throw DomainError(std::string(what) + ": invalid (m=" + std::to_string(m) +
                      ", k=" + std::to_string(k) + ", k0=" + std::to_string(k0) +
                      ")");
  }
}

ExactRatio xi_squared(long m, long k, long k0) {
  const ExactInt a = binomial(m - k, k0);
  const ExactInt b = binomial(m, k0);
  return ratio(a * a * binomial(m, k), b * b * binomial(m - k0, k));
}

} // namespace

double xi_asymp(long m, long k, long k0) {
  require(k >= 0 && k0 >= 0 && m >= k + k0, "xi_asymp", m, k, k0);
  return static_cast<double>(sqrt_wide(xi_squared(m, k, k0)));
}

FourthOrderPair k40_k04_asymp(long m, long k, long k0) {
  require(k >= 0 && k0 >= 0 && m >= k + k0, "k40_k04_asymp", m, k, k0);
  const ExactRatio k40 = ratio(binomial(m - k, k), binomial(m, k)) - 1;
  const ExactRatio k04 = ratio(binomial(m - k0 - k, k), binomial(m - k0, k)) - 1;
  return {to_double(k40), to_double(k04)};
}

FourthOrderPair k31_k13_asymp(long m, long k, long k0) {
  require(k >= 0 && k0 >= 0 && m >= k + k0, "k31_k13_asymp", m, k, k0);
  const WideFloat xi = sqrt_wide(xi_squared(m, k, k0));
  const WideFloat ck = to_wide(ExactRatio(binomial(m, k)));
  const WideFloat cfk = to_wide(ExactRatio(binomial(m - k0, k)));
  const WideFloat lead = to_wide(ratio(binomial(m - k, k0), binomial(m, k0)));
  const WideFloat k31 =
      lead * to_wide(ExactRatio(binomial(m - k, k))) / sqrt(ck * cfk) - xi;
  const WideFloat k13 = lead * to_wide(ExactRatio(binomial(m - k0 - k, k))) *
                            sqrt(ck) / (cfk * sqrt(cfk)) -
                        xi;
  return {static_cast<double>(k31), static_cast<double>(k13)};
}

double k22_asymp(long m, long k, long k0, K22Form form) {
  require(k >= 0 && k0 >= 0 && m >= k + k0, "k22_asymp", m, k, k0);
  const ExactRatio xi2 = xi_squared(m, k, k0);
  const ExactInt base = binomial(m, k0) * binomial(m - k0, k);
  if (form == K22Form::approximate) {
    const ExactRatio merged =
        ratio(binomial(m - 2 * k, k0) * (binomial(m, k) + binomial(m - k, k)),
              base);
    return to_double(-2 * xi2 + merged);
  }
  const ExactInt c = binomial(m, k0);
  const ExactRatio second =
      ratio(binomial(m, k) * binomial(m - k, k0) * binomial(m - k, k0),
            binomial(m - k0, k) * c * c);
  const ExactRatio third =
      ratio(binomial(m - 2 * k, k0) * binomial(m - k, k), base);
  return to_double(-2 * xi2 + second + third);
}

DiluteTerms dilute_expansion(long m, long k, long k0) {
  require(m > 0 && k >= 0 && k0 >= 0 && m > k * k0, "dilute_expansion", m, k,
          k0);
  const double md = static_cast<double>(m);
  return {1.0 - static_cast<double>(k * k0) / (2.0 * md),
          -static_cast<double>(k * k) / md};
}

AsymptoticCumulants asymptotic_cumulants(long m, long k, long k0, K22Form form) {
  AsymptoticCumulants out;
  out.xi = xi_asymp(m, k, k0);
  const FourthOrderPair pure = k40_k04_asymp(m, k, k0);
  out.k40 = pure.first;
  out.k04 = pure.second;
  const FourthOrderPair mixed = k31_k13_asymp(m, k, k0);
  out.k31 = mixed.first;
  out.k13 = mixed.second;
  out.k22 = k22_asymp(m, k, k0, form);
  if (m > k * k0) {
    out.dilute = dilute_expansion(m, k, k0);
  }
  return out;
}

AsymptoticCumulants asymptotic_cumulants(const ModelParams& p, Mode mode,
                                         K22Form form) {
  if (mode == Mode::removal) {
    return asymptotic_cumulants(p.m, p.k, p.k0, form);
  }
  AsymptoticCumulants out = asymptotic_cumulants(p.m + p.k0, p.k, p.k0, form);
  std::swap(out.k40, out.k04);
  std::swap(out.k31, out.k13);
  return out;
}

} // namespace egue
