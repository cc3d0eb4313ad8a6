#include "egue/ensemble_mc.hpp"

#include "egue/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace egue {

void validate(const EnsembleConfig& c) {
  validate(c.params, c.mode);
  if (c.params.N > kMaxModes) {
    throw DomainError("ensemble: N must not exceed 63");
  }
  if (c.n_samples < 2) {
    throw DomainError("ensemble: need at least 2 samples");
  }
  const double dim_i = to_double(binomial(c.params.N, c.params.m));
  const double dim_f = to_double(binomial(c.params.N, final_particles(c.params, c.mode)));
  if (dim_i > static_cast<double>(c.dimension_cap) ||
      dim_f > static_cast<double>(c.dimension_cap)) {
    throw CostGuardError("ensemble: space dimension exceeds cap of " +
                         std::to_string(c.dimension_cap));
  }
  if (!c.sp_permutation.empty()) {
    std::vector<int> sorted = c.sp_permutation;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(static_cast<std::size_t>(c.params.N));
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) {
      throw DomainError("ensemble: sp_permutation must permute 0..N-1");
    }
  }
}

ComplexMatrix sample_gue(int dim, double variance, CounterStream& stream) {
  if (dim < 1) {
    throw DomainError("sample_gue: dim must be positive");
  }
  const double diag_sd = std::sqrt(variance);
  const double part_sd = std::sqrt(0.5 * variance);
  ComplexMatrix V(dim, dim);
  for (int a = 0; a < dim; ++a) {
    V(a, a) = Complex(diag_sd * stream.normal(), 0.0);
    for (int b = a + 1; b < dim; ++b) {
      const double re = part_sd * stream.normal();
      const double im = part_sd * stream.normal();
      V(a, b) = Complex(re, im);
      V(b, a) = Complex(re, -im);
    }
  }
  return V;
}

ComplexVector sample_coefficients(int dim, double variance, CounterStream& stream) {
  const double part_sd = std::sqrt(0.5 * variance);
  ComplexVector v(dim);
  for (int a = 0; a < dim; ++a) {
    const double re = part_sd * stream.normal();
    const double im = part_sd * stream.normal();
    v(a) = Complex(re, im);
  }
  return v;
}

namespace {

std::vector<std::size_t> relabel_indices(const FockBasis& defining,
                                         const std::vector<int>& perm) {
  std::vector<std::size_t> out(defining.size());
  for (std::size_t i = 0; i < defining.size(); ++i) {
    out[i] = perm.empty() ? i : *defining.index_of(permute_mask(defining[i], perm));
  }
  return out;
}

int as_int(long v) { return static_cast<int>(v); }

} // namespace

EnsembleGeometry::EnsembleGeometry(const EnsembleConfig& config)
    : config_((validate(config), config)),
      h_defining_(as_int(config.params.N), as_int(config.params.k)),
      o_defining_(as_int(config.params.N), as_int(config.params.k0)),
      initial_(as_int(config.params.N), as_int(config.params.m)),
      final_(as_int(config.params.N), as_int(final_particles(config.params, config.mode))) {
  h_relabel_ = relabel_indices(h_defining_, config.sp_permutation);
  o_relabel_ = relabel_indices(o_defining_, config.sp_permutation);
}

EnsembleRealization EnsembleGeometry::realize(long sample_index) const {
  CounterStream stream(config_.seed, static_cast<std::uint64_t>(sample_index));
  const int dh = static_cast<int>(h_defining_.size());
  const int dop = static_cast<int>(o_defining_.size());
  EnsembleRealization r{sample_gue(dh, config_.params.vh2, stream),
                        sample_coefficients(dop, config_.params.vo2, stream),
                        {initial_, initial_, {}},
                        {final_, final_, {}},
                        {final_, initial_, {}}};
  ComplexMatrix v_phys(dh, dh);
  for (int i = 0; i < dh; ++i) {
    for (int j = 0; j < dh; ++j) {
      v_phys(static_cast<Eigen::Index>(h_relabel_[static_cast<std::size_t>(i)]),
             static_cast<Eigen::Index>(h_relabel_[static_cast<std::size_t>(j)])) =
          r.v_hamiltonian(i, j);
    }
  }
  ComplexVector o_phys(dop);
  for (int a = 0; a < dop; ++a) {
    o_phys(static_cast<Eigen::Index>(o_relabel_[static_cast<std::size_t>(a)])) =
        r.v_operator(a);
  }
  r.h_initial = build_hamiltonian(v_phys, h_defining_, initial_);
  r.h_final = build_hamiltonian(v_phys, h_defining_, final_);
  r.transition = build_transition(o_phys, o_defining_, initial_, final_);
  return r;
}

const Estimate& McMomentEstimates::at(int P, int Q) const {
  if (P < 0 || Q < 0 || P + Q > 4) {
    throw DomainError("moment order out of range");
  }
  return by_order[static_cast<std::size_t>(P)][static_cast<std::size_t>(Q)];
}

BivariateMoments McMomentEstimates::as_moments(const EnsembleConfig& config) const {
  BivariateMoments out;
  MomentValues se;
  auto fill = [&](double& value, double& error, int P, int Q) {
    value = at(P, Q).mean;
    error = at(P, Q).std_error;
  };
  fill(out.m00, se.m00, 0, 0);
  fill(out.m20, se.m20, 2, 0);
  fill(out.m02, se.m02, 0, 2);
  fill(out.m40, se.m40, 4, 0);
  fill(out.m04, se.m04, 0, 4);
  fill(out.m11, se.m11, 1, 1);
  fill(out.m31, se.m31, 3, 1);
  fill(out.m13, se.m13, 1, 3);
  fill(out.m22, se.m22, 2, 2);
  out.std_errors = se;
  out.mode = config.mode;
  out.provenance = Provenance::mc;
  out.vh2 = config.params.vh2;
  out.vo2 = config.params.vo2;
  return out;
}

SampleTraces sample_traces(const EnsembleRealization& r, const ModelParams& params) {
  const ComplexMatrix& Hi = r.h_initial.entries;
  const ComplexMatrix& Hf = r.h_final.entries;
  const ComplexMatrix& O = r.transition.entries;
  const double dim = static_cast<double>(Hi.rows());

  std::array<ComplexMatrix, 5> hi_pow;
  hi_pow[0] = ComplexMatrix::Identity(Hi.rows(), Hi.cols());
  for (std::size_t p = 1; p < 5; ++p) {
    hi_pow[p] = hi_pow[p - 1] * Hi;
  }
  SampleTraces out{};
  ComplexMatrix left = O.adjoint(); // O+ H_f^q
  for (std::size_t q = 0; q < 5; ++q) {
    if (q > 0) {
      left = left * Hf;
    }
    const ComplexMatrix sandwich = left * O;
    for (std::size_t p = 0; p + q < 5; ++p) {
      // tr(sandwich * H_i^p), real by cyclicity and Hermiticity.
      const double tr = (sandwich.transpose().cwiseProduct(hi_pow[p])).sum().real();
      const double units =
          params.vo2 * std::pow(params.vh2, 0.5 * static_cast<double>(p + q));
      out[p][q] = tr / dim / units;
    }
  }
  return out;
}

Estimate batch_mean_estimate(const std::vector<double>& values, int batches) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw DomainError("batch_mean_estimate: need at least 2 values");
  }
  const std::size_t B = std::clamp<std::size_t>(static_cast<std::size_t>(batches), 2, n);
  Estimate e;
  e.mean = detail::pairwise_sum(values.data(), n) / static_cast<double>(n);
  std::vector<double> means(B);
  for (std::size_t b = 0; b < B; ++b) {
    const std::size_t lo = b * n / B;
    const std::size_t hi = (b + 1) * n / B;
    means[b] = detail::pairwise_sum(values.data() + lo, hi - lo) / static_cast<double>(hi - lo);
  }
  const double centre = detail::pairwise_sum(means.data(), B) / static_cast<double>(B);
  std::vector<double> sq(B);
  for (std::size_t b = 0; b < B; ++b) {
    sq[b] = (means[b] - centre) * (means[b] - centre);
  }
  e.std_error = std::sqrt(detail::pairwise_sum(sq.data(), B) /
                          (static_cast<double>(B) * static_cast<double>(B - 1)));
  return e;
}

McMomentEstimates mc_moments(const EnsembleConfig& config) {
  const EnsembleGeometry geometry(config);
  std::vector<SampleTraces> per_sample(static_cast<std::size_t>(config.n_samples));
  detail::parallel_for(config.n_samples, config.workers, [&](long i) {
    per_sample[static_cast<std::size_t>(i)] =
        sample_traces(geometry.realize(i), config.params);
  });

  McMomentEstimates out;
  out.n_samples = config.n_samples;
  out.batches = static_cast<int>(std::min<long>(20, config.n_samples));
  std::vector<double> column(per_sample.size());
  for (std::size_t P = 0; P < 5; ++P) {
    for (std::size_t Q = 0; P + Q < 5; ++Q) {
      for (std::size_t i = 0; i < per_sample.size(); ++i) {
        column[i] = per_sample[i][P][Q];
      }
      out.by_order[P][Q] = batch_mean_estimate(column, out.batches);
    }
  }
  return out;
}

} // namespace egue
