#pragma once

// Large-N limits (N -> infinity at fixed m, k, k0) of the correlation
// coefficient and fourth-order cumulants, plus the dilute-limit expansion.

#include "egue/exact_moments.hpp"

namespace egue {

struct DiluteTerms {
  double xi = 1.0;  ///< 1 - k k0 / (2m)
  double krs = 0.0; ///< -k^2 / m, common to all four cumulants
};

struct AsymptoticCumulants {
  double xi = 0;
  double k40 = 0, k04 = 0, k31 = 0, k13 = 0, k22 = 0;
  DiluteTerms dilute;
};

/// xi -> C(m-k,k0) sqrt(C(m,k)) / (C(m,k0) sqrt(C(m-k0,k))). Needs m >= k + k0.
double xi_asymp(long m, long k, long k0);

struct FourthOrderPair {
  double first = 0;
  double second = 0;
};

/// {k40, k04}.
FourthOrderPair k40_k04_asymp(long m, long k, long k0);

/// {k31, k13}, evaluated from their explicit binomial forms. They coincide
/// with xi*k40 and xi*k04.
FourthOrderPair k31_k13_asymp(long m, long k, long k0);

enum class K22Form {
  direct,     ///< -2 xi^2 + (xi^2 ratio) + C(m-2k,k0)C(m-k,k)/(C(m,k0)C(m-k0,k))
  approximate ///< the merged form with C(m,k) + C(m-k,k) in one bracket
};

double k22_asymp(long m, long k, long k0, K22Form form = K22Form::direct);

/// Leading 1/m terms. Needs m > k * k0 (and m > 0).
DiluteTerms dilute_expansion(long m, long k, long k0);

AsymptoticCumulants asymptotic_cumulants(long m, long k, long k0,
                                         K22Form form = K22Form::direct);

/// Mode-aware variant. Addition at m is evaluated as removal at m + k0 with
/// the initial/final roles exchanged (k40 <-> k04, k31 <-> k13). N is unused.
AsymptoticCumulants asymptotic_cumulants(const ModelParams& params, Mode mode,
                                         K22Form form = K22Form::direct);

} // namespace egue
