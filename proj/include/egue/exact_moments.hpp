#pragma once

// Closed-form ensemble averages of the bivariate transition strength density
// for an EGUE(k) Hamiltonian and a k0-particle removal (or addition) operator
// whose defining-space coefficients form an independent Gaussian ensemble.
//
// Moments are reported in units of vo2 * vh2^((P+Q)/2); `physical()` restores
// the dimensionful value. Everything is evaluated in exact rationals (or in
// 50-digit floats once a square root appears) and rounded to double last.

#include "egue/combinatorics.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace egue {

enum class Mode { removal, addition };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct ModelParams {
  long N = 0;  ///< single-particle states
  long m = 0;  ///< fermions in the initial space
  long k = 0;  ///< body rank of H
  long k0 = 0; ///< particles removed (or added) by the transition operator
  double vh2 = 1.0;
  double vo2 = 1.0;

  bool operator==(const ModelParams&) const = default;
};

/// Particle number of the final space: m - k0 (removal) or m + k0 (addition).
long final_particles(const ModelParams& params, Mode mode);

/// Strict model domain: 0 < k <= m <= N, 0 < k0 <= m, final space within
/// [0, N], positive variance scales.
void validate(const ModelParams& params, Mode mode);

/// Formula domain: like `validate` but admits the degenerate limits k = 0
/// (scalar H) and k0 = 0 (identity transition operator).
void validate_formula_domain(const ModelParams& params, Mode mode);

enum class Provenance { exact, exact_hybrid, asymptotic, wick, mc };

std::string_view to_string(Provenance provenance);

struct MomentValues {
  double m00 = 0, m20 = 0, m02 = 0, m40 = 0, m04 = 0;
  double m11 = 0, m31 = 0, m13 = 0, m22 = 0;

  /// Entry M_PQ for P+Q in {0,2,4}; odd orders return 0.
  double at(int P, int Q) const;
};

struct BivariateMoments : MomentValues {
  Mode mode = Mode::removal;
  Provenance provenance = Provenance::exact;
  double vh2 = 1.0;
  double vo2 = 1.0;
  /// One standard error per entry for Monte Carlo estimates.
  std::optional<MomentValues> std_errors;

  double physical(int P, int Q) const;
};

struct CumulantSet {
  double xi = 0;
  double k40 = 0, k04 = 0, k31 = 0, k13 = 0, k22 = 0;
};

/// <H^2>^m in units of vh2: Lambda^0(N, m, k).
ExactRatio h2_moment(long N, long m, long k);
/// <H^4>^m in units of vh2^2.
ExactRatio h4_moment(long N, long m, long k);

/// Z11(N, m, k0, k, nu) for the removal orientation m -> m - k0, with the
/// U-coefficient phase taken positive.
WideFloat z11_wide(long N, long m, long k0, long k, long nu);
double z11(long N, long m, long k0, long k, long nu);

using Z11Provider =
    std::function<WideFloat(long N, long m, long k0, long k, long nu)>;

double m00(const ModelParams& params, Mode mode);

struct MarginalMoments {
  double m20 = 0, m02 = 0, m40 = 0, m04 = 0;
};
MarginalMoments marginal_moments(const ModelParams& params, Mode mode);

double m11(const ModelParams& params, Mode mode);
double m31(const ModelParams& params, Mode mode);
double m13(const ModelParams& params, Mode mode);

/// Normalized third term of M22 taken from its large-N form:
/// C(m-2k,k0) C(m-k,k) / (C(m,k0) C(m-k0,k)), evaluated in the removal frame.
ExactRatio hybrid_third_term(const ModelParams& params, Mode mode);

/// M22 with its first two terms exact and the third from `hybrid_third_term`.
double m22_hybrid(const ModelParams& params, Mode mode);

/// Every closed-form moment at once; provenance is `exact_hybrid` because
/// M22 carries the large-N third term.
BivariateMoments exact_moments(const ModelParams& params, Mode mode);
/// Same with a substitute Z11 (used to check that verification catches a
/// corrupted kernel).
BivariateMoments exact_moments(const ModelParams& params, Mode mode,
                               const Z11Provider& z11_provider);

/// Addition-operator moments, O+ = sum_a V_a A+_a(k0).
BivariateMoments addition_variants(const ModelParams& params);

/// Reduced cumulants. Throws DomainError when a second moment vanishes.
CumulantSet cumulants(const MomentValues& moments);

CumulantSet exact_cumulants(const ModelParams& params, Mode mode);

} // namespace egue
