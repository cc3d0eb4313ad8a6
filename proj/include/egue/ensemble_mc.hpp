#pragma once

// Two independent checks on the closed forms:
//  * Monte Carlo over explicit Fock-space embeddings of sampled EGUE(k)
//    Hamiltonians and transition operators;
//  * an exact Wick (Isserlis) contraction of the ensemble average, carried out
//    directly on occupation-number states without any U(N) recoupling.

#include "egue/exact_moments.hpp"
#include "egue/fock_space.hpp"
#include "egue/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace egue {

struct EnsembleConfig {
  ModelParams params;
  long n_samples = 2000;
  std::uint64_t seed = 0;
  Mode mode = Mode::removal;
  /// Largest initial-space dimension C(N, m) accepted.
  long dimension_cap = 5000;
  /// Optional relabelling of single-particle modes applied to the embedding.
  std::vector<int> sp_permutation;
  /// Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  int workers = 0;
};

void validate(const EnsembleConfig& config);

/// GUE draw with E[V_ab V_cd] = variance * delta_ad delta_bc.
ComplexMatrix sample_gue(int dim, double variance, CounterStream& stream);

/// Independent circular complex Gaussians with E[|V_a|^2] = variance.
ComplexVector sample_coefficients(int dim, double variance, CounterStream& stream);

/// One ensemble member embedded in the initial and final spaces.
struct EnsembleRealization {
  ComplexMatrix v_hamiltonian; ///< defining-space V(k)
  ComplexVector v_operator;    ///< defining-space V_alpha
  ManyBodyOperator h_initial;
  ManyBodyOperator h_final;
  ManyBodyOperator transition;
};

/// Prepared bases for one configuration; building realizations is then cheap.
class EnsembleGeometry {
public:
  explicit EnsembleGeometry(const EnsembleConfig& config);

  EnsembleRealization realize(long sample_index) const;

  const EnsembleConfig& config() const { return config_; }
  const FockBasis& initial() const { return initial_; }
  const FockBasis& final_space() const { return final_; }

private:
  EnsembleConfig config_;
  FockBasis h_defining_;
  FockBasis o_defining_;
  FockBasis initial_;
  FockBasis final_;
  std::vector<std::size_t> h_relabel_; ///< defining index -> relabelled index
  std::vector<std::size_t> o_relabel_;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// All M_PQ with P + Q <= 4 (odd orders included), in units of
/// vo2 * vh2^((P+Q)/2).
struct McMomentEstimates {
  std::array<std::array<Estimate, 5>, 5> by_order{}; ///< [P][Q], P+Q <= 4
  long n_samples = 0;
  int batches = 0;

  const Estimate& at(int P, int Q) const;
  BivariateMoments as_moments(const EnsembleConfig& config) const;
};

/// Per-sample normalized traces tr(O+ H_f^Q O H_i^P) / C(N,m), [P][Q].
using SampleTraces = std::array<std::array<double, 5>, 5>;

SampleTraces sample_traces(const EnsembleRealization& r, const ModelParams& params);

McMomentEstimates mc_moments(const EnsembleConfig& config);

/// Mean and batch-means standard error over per-sample values, with
/// deterministic pairwise summation.
Estimate batch_mean_estimate(const std::vector<double>& values, int batches);

/// Exact ensemble-averaged M_PQ by Wick contraction, in units of
/// vo2 * vh2^((P+Q)/2). Cost guard: C(N,m), C(N,k) and the final-space
/// dimension must each be at most `cap`.
double wick_oracle(const ModelParams& params, Mode mode, int P, int Q,
                   long cap = 70);

/// All even-order moments (M22 in full) from the Wick oracle.
BivariateMoments wick_moments(const ModelParams& params, Mode mode, long cap = 70);

struct StrengthHistogram {
  int bins = 0;
  double range = 4.0; ///< each axis spans [-range, range] in standardized units
  double sigma_initial = 0.0;
  double sigma_final = 0.0;
  /// Summed strengths |<E_f|O|E_i>|^2, row-major [initial bin][final bin].
  std::vector<double> weights;
  double overflow_weight = 0.0;
  double total_strength = 0.0; ///< sum over samples of tr(O+ O)
  long n_samples = 0;
  /// Bivariate moments from the eigen-expansion (unbinned).
  McMomentEstimates moments;
  double xi = 0.0;
  double xi_std_error = 0.0;
  double xi_reference = 0.0;
  /// Expected weight per bin for a bivariate Gaussian with xi_reference
  /// carrying the same total strength.
  std::vector<double> reference;

  double bin_center(int b) const;
  double weight(int initial_bin, int final_bin) const;
};

StrengthHistogram strength_histogram(const EnsembleConfig& config, int bins,
                                     double range = 4.0);

} // namespace egue
