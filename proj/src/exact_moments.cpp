#include "egue/exact_moments.hpp"

#include "egue/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace egue {

std::string_view to_string(Mode mode) {
  return mode == Mode::removal ? "removal" : "addition";
}

Mode parse_mode(std::string_view text) {
  if (text == "removal") {
    return Mode::removal;
  }
  if (text == "addition") {
    return Mode::addition;
  }
  throw DomainError("unknown mode '" + std::string(text) +
                    "' (expected removal or addition)");
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
  case Provenance::exact:
    return "exact";
  case Provenance::exact_hybrid:
    return "exact-hybrid";
  case Provenance::asymptotic:
    return "asymptotic";
  case Provenance::wick:
    return "wick";
  case Provenance::mc:
    return "mc";
  }
  return "unknown";
}

long final_particles(const ModelParams& p, Mode mode) {
  return mode == Mode::removal ? p.m - p.k0 : p.m + p.k0;
}

namespace {

std::string describe(const ModelParams& p, Mode mode) {
  return "(N=" + std::to_string(p.N) + ", m=" + std::to_string(p.m) +
         ", k=" + std::to_string(p.k) + ", k0=" + std::to_string(p.k0) +
         ", " + std::string(to_string(mode)) + ")";
}

void check_domain(const ModelParams& p, Mode mode, long min_rank) {
  const long mf = final_particles(p, mode);
  const bool ok = p.N >= 1 && p.k >= min_rank && p.k <= p.m && p.m <= p.N &&
                  p.k0 >= min_rank && p.k0 <= (mode == Mode::removal ? p.m : p.N) &&
                  mf >= 0 && mf <= p.N;
  if (!ok) {
    throw DomainError("invalid model parameters " + describe(p, mode));
  }
  if (!(p.vh2 > 0.0) || !(p.vo2 > 0.0) || !std::isfinite(p.vh2) ||
      !std::isfinite(p.vo2)) {
    throw DomainError("variance scales must be positive and finite " +
                      describe(p, mode));
  }
}

} // namespace

void validate(const ModelParams& p, Mode mode) { check_domain(p, mode, 1); }

void validate_formula_domain(const ModelParams& p, Mode mode) {
  check_domain(p, mode, 0);
}

double MomentValues::at(int P, int Q) const {
  if (P < 0 || Q < 0 || P + Q > 4) {
    throw DomainError("moment order out of range");
  }
  if ((P + Q) % 2 != 0) {
    return 0.0;
  }
  switch (P * 10 + Q) {
  case 0:
    return m00;
  case 20:
    return m20;
  case 2:
    return m02;
  case 40:
    return m40;
  case 4:
    return m04;
  case 11:
    return m11;
  case 31:
    return m31;
  case 13:
    return m13;
  case 22:
    return m22;
  default:
    return 0.0;
  }
}

double BivariateMoments::physical(int P, int Q) const {
  return at(P, Q) * vo2 * std::pow(vh2, 0.5 * (P + Q));
}

ExactRatio h2_moment(long N, long m, long k) {
  if (k < 0 || k > m || m > N) {
    throw DomainError("h2_moment: need 0 <= k <= m <= N");
  }
  return ExactRatio(lambda_coeff(N, m, k, 0));
}

ExactRatio h4_moment(long N, long m, long k) {
  if (k < 0 || k > m || m > N) {
    throw DomainError("h4_moment: need 0 <= k <= m <= N");
  }
  const ExactRatio h2 = h2_moment(N, m, k);
  ExactInt sum = 0;
  for (long nu = 0; nu <= std::min(k, m - k); ++nu) {
    sum += lambda_coeff(N, m, k, nu) * lambda_coeff(N, m, m - k, nu) * d_nu(N, nu);
  }
  return 2 * h2 * h2 + ratio(sum, binomial(N, m));
}

WideFloat z11_wide(long N, long m, long k0, long k, long nu) {
  if (k0 < 0 || k0 > m || m > N || k < 0 || nu < 0 || nu > k) {
    throw DomainError("z11: need 0 <= k0 <= m <= N and 0 <= nu <= k");
  }
  const ExactInt radicand = binomial(N, k0) * d_nu(N, nu) *
                            lambda_coeff(N, m, m - k, nu) *
                            lambda_coeff(N, m - k0, m - k0 - k, nu);
  if (radicand == 0) {
    return WideFloat(0);
  }
  const ExactRatio u2 = u_coeff_sq(N, m, m - k0, nu);
  return sqrt_wide(ExactRatio(radicand) * u2);
}

double z11(long N, long m, long k0, long k, long nu) {
  return static_cast<double>(z11_wide(N, m, k0, k, nu));
}

namespace {

struct WideMoments {
  WideFloat m00, m20, m02, m40, m04, m11, m31, m13, m22;
};

// All moments for the removal orientation m -> m - k0 at unit variances.
WideMoments removal_moments(long N, long m, long k, long k0,
                            const Z11Provider& z11_of) {
  const long mf = m - k0;
  const ExactRatio h2i = h2_moment(N, m, k);
  const ExactRatio h4i = h4_moment(N, m, k);
  // H of rank k annihilates every state with fewer than k particles.
  const ExactRatio h2f = mf >= k ? h2_moment(N, mf, k) : ExactRatio(0);
  const ExactRatio h4f = mf >= k ? h4_moment(N, mf, k) : ExactRatio(0);
  const ExactRatio m00 = ExactRatio(binomial(m, k0));
  const ExactRatio pre = ratio(binomial(N - k0, mf), binomial(N, m));

  std::vector<WideFloat> z(static_cast<std::size_t>(k) + 1);
  WideFloat z_sum = 0;
  for (long nu = 0; nu <= k; ++nu) {
    z[nu] = z11_of(N, m, k0, k, nu);
    z_sum += z[nu];
  }

  WideFloat m31_tail = 0;
  for (long nu = 0; nu <= std::min(k, m - k); ++nu) {
    m31_tail += to_wide(ExactRatio(lambda_coeff(N, m, k, nu))) * z[nu];
  }
  WideFloat m13_tail = 0;
  for (long nu = 0; nu <= std::min(k, mf - k); ++nu) {
    m13_tail += to_wide(ExactRatio(lambda_coeff(N, mf, k, nu))) * z[nu];
  }

  const WideFloat pre_w = to_wide(pre);
  WideMoments out;
  out.m00 = to_wide(m00);
  out.m20 = to_wide(m00 * h2i);
  out.m02 = to_wide(m00 * h2f);
  out.m40 = to_wide(m00 * h4i);
  out.m04 = to_wide(m00 * h4f);
  out.m11 = pre_w * z_sum;
  out.m31 = to_wide(2 * h2i) * out.m11 + pre_w * m31_tail;
  out.m13 = to_wide(2 * h2f) * out.m11 + pre_w * m13_tail;

  const ExactRatio factorized = m00 * h2i * h2f;
  // The factorized product is zero whenever the t3 denominator is.
  const ExactInt t3_den = binomial(m, k0) * binomial(mf, k);
  const ExactRatio t3 =
      t3_den == 0 ? ExactRatio(0)
                  : ratio(binomial(m - 2 * k, k0) * binomial(m - k, k), t3_den);
  out.m22 = to_wide(factorized) +
            pre_w / to_wide(ExactRatio(binomial(N, k0))) * z_sum * z_sum +
            to_wide(t3 * factorized);
  return out;
}

// Addition at m is removal at m + k0 read backwards: the trace identity
// tr_m(A H_{m+k0}^Q A+ H_m^P) = tr_{m+k0}(A+ H_m^P A H_{m+k0}^Q) maps
// M^add_PQ(m) to C(N,m+k0)/C(N,m) * M^rem_QP(m+k0).
WideMoments moments_in_mode(const ModelParams& p, Mode mode,
                            const Z11Provider& z11_of) {
  validate_formula_domain(p, mode);
  if (mode == Mode::removal) {
    return removal_moments(p.N, p.m, p.k, p.k0, z11_of);
  }
  const long mp = p.m + p.k0;
  const WideMoments r = removal_moments(p.N, mp, p.k, p.k0, z11_of);
  const WideFloat s = to_wide(ratio(binomial(p.N, mp), binomial(p.N, p.m)));
  WideMoments out;
  out.m00 = s * r.m00;
  out.m20 = s * r.m02;
  out.m02 = s * r.m20;
  out.m40 = s * r.m04;
  out.m04 = s * r.m40;
  out.m11 = s * r.m11;
  out.m31 = s * r.m13;
  out.m13 = s * r.m31;
  out.m22 = s * r.m22;
  return out;
}

const Z11Provider& default_z11() {
  static const Z11Provider provider = [](long N, long m, long k0, long k,
                                         long nu) {
    return z11_wide(N, m, k0, k, nu);
  };
  return provider;
}

double d(const WideFloat& x) { return static_cast<double>(x); }

} // namespace

double m00(const ModelParams& p, Mode mode) {
  validate_formula_domain(p, mode);
  const long free = mode == Mode::removal ? p.m : p.N - p.m;
  return to_double(binomial(free, p.k0));
}

MarginalMoments marginal_moments(const ModelParams& p, Mode mode) {
  const WideMoments w = moments_in_mode(p, mode, default_z11());
  return {d(w.m20), d(w.m02), d(w.m40), d(w.m04)};
}

double m11(const ModelParams& p, Mode mode) {
  return d(moments_in_mode(p, mode, default_z11()).m11);
}

double m31(const ModelParams& p, Mode mode) {
  return d(moments_in_mode(p, mode, default_z11()).m31);
}

double m13(const ModelParams& p, Mode mode) {
  return d(moments_in_mode(p, mode, default_z11()).m13);
}

ExactRatio hybrid_third_term(const ModelParams& p, Mode mode) {
  validate_formula_domain(p, mode);
  const long m = mode == Mode::removal ? p.m : p.m + p.k0;
  const long k = p.k;
  const long k0 = p.k0;
  const ExactInt den = binomial(m, k0) * binomial(m - k0, k);
  if (den == 0) {
    throw DomainError("hybrid_third_term: H vanishes on the final space");
  }
  return ratio(binomial(m - 2 * k, k0) * binomial(m - k, k), den);
}

double m22_hybrid(const ModelParams& p, Mode mode) {
  return d(moments_in_mode(p, mode, default_z11()).m22);
}

BivariateMoments exact_moments(const ModelParams& p, Mode mode) {
  return exact_moments(p, mode, default_z11());
}

BivariateMoments exact_moments(const ModelParams& p, Mode mode,
                               const Z11Provider& z11_provider) {
  const WideMoments w = moments_in_mode(p, mode, z11_provider);
  BivariateMoments out;
  out.m00 = d(w.m00);
  out.m20 = d(w.m20);
  out.m02 = d(w.m02);
  out.m40 = d(w.m40);
  out.m04 = d(w.m04);
  out.m11 = d(w.m11);
  out.m31 = d(w.m31);
  out.m13 = d(w.m13);
  out.m22 = d(w.m22);
  out.mode = mode;
  out.provenance = Provenance::exact_hybrid;
  out.vh2 = p.vh2;
  out.vo2 = p.vo2;
  return out;
}

BivariateMoments addition_variants(const ModelParams& p) {
  return exact_moments(p, Mode::addition);
}

CumulantSet cumulants(const MomentValues& mv) {
  if (!(mv.m00 > 0.0) || !(mv.m20 > 0.0) || !(mv.m02 > 0.0)) {
    throw DomainError("cumulants: M00, M20 and M02 must be positive");
  }
  const double t20 = mv.m20 / mv.m00;
  const double t02 = mv.m02 / mv.m00;
  const double s20 = std::sqrt(t20);
  const double s02 = std::sqrt(t02);
  CumulantSet c;
  c.xi = mv.m11 / mv.m00 / (s20 * s02);
  c.k40 = mv.m40 / mv.m00 / (t20 * t20) - 3.0;
  c.k04 = mv.m04 / mv.m00 / (t02 * t02) - 3.0;
  c.k31 = mv.m31 / mv.m00 / (t20 * s20 * s02) - 3.0 * c.xi;
  c.k13 = mv.m13 / mv.m00 / (s20 * t02 * s02) - 3.0 * c.xi;
  c.k22 = mv.m22 / mv.m00 / (t20 * t02) - 2.0 * c.xi * c.xi - 1.0;
  return c;
}

CumulantSet exact_cumulants(const ModelParams& p, Mode mode) {
  return cumulants(exact_moments(p, mode));
}

} // namespace egue
