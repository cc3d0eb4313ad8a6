#include "egue/ensemble_mc.hpp"

#include "egue/errors.hpp"
#include "parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace egue {

double StrengthHistogram::bin_center(int b) const {
  const double width = 2.0 * range / bins;
  return -range + (b + 0.5) * width;
}

double StrengthHistogram::weight(int initial_bin, int final_bin) const {
  return weights[static_cast<std::size_t>(initial_bin * bins + final_bin)];
}

namespace {

struct SampleHistogram {
  SampleTraces moments{};
  std::vector<double> weights;
  double overflow = 0.0;
  double total = 0.0;
};

int bin_of(double x, double range, int bins) {
  if (!(x >= -range) || !(x < range)) {
    return -1;
  }
  const int b = static_cast<int>((x + range) / (2.0 * range) * bins);
  return std::min(b, bins - 1);
}

double bivariate_normal(double x, double y, double rho) {
  const double one_minus = 1.0 - rho * rho;
  return std::exp(-(x * x - 2.0 * rho * x * y + y * y) / (2.0 * one_minus)) /
         (2.0 * std::numbers::pi * std::sqrt(one_minus));
}

// xi from raw (P,Q) means over a set of samples.
double correlation(double m00, double m20, double m02, double m11) {
  return m11 / m00 / std::sqrt((m20 / m00) * (m02 / m00));
}

} // namespace

StrengthHistogram strength_histogram(const EnsembleConfig& config, int bins,
                                     double range) {
  if (bins < 1 || !(range > 0.0)) {
    throw DomainError("strength_histogram: need bins >= 1 and range > 0");
  }
  const EnsembleGeometry geometry(config);
  const ModelParams& p = config.params;
  const long mf = final_particles(p, config.mode);

  StrengthHistogram out;
  out.bins = bins;
  out.range = range;
  out.n_samples = config.n_samples;
  out.sigma_initial = std::sqrt(to_double(h2_moment(p.N, p.m, p.k)) * p.vh2);
  out.sigma_final = std::sqrt(to_double(h2_moment(p.N, mf, p.k)) * p.vh2);
  if (!(out.sigma_final > 0.0)) {
    throw DomainError("strength_histogram: H vanishes on the final space");
  }
  out.weights.assign(static_cast<std::size_t>(bins * bins), 0.0);

  const auto sample = [&](long index) {
    const EnsembleRealization r = geometry.realize(index);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> initial(r.h_initial.entries);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> final_eig(r.h_final.entries);
    if (initial.info() != Eigen::Success || final_eig.info() != Eigen::Success) {
      throw std::runtime_error("strength_histogram: eigensolver failed on sample " +
                               std::to_string(index));
    }
    const ComplexMatrix amplitudes =
        final_eig.eigenvectors().adjoint() * r.transition.entries * initial.eigenvectors();
    const Eigen::VectorXd& ei = initial.eigenvalues();
    const Eigen::VectorXd& ef = final_eig.eigenvalues();
    const double dim = static_cast<double>(ei.size());

    SampleHistogram h;
    h.weights.assign(static_cast<std::size_t>(bins * bins), 0.0);
    for (Eigen::Index i = 0; i < ei.size(); ++i) {
      const int bi = bin_of(ei(i) / out.sigma_initial, range, bins);
      for (Eigen::Index f = 0; f < ef.size(); ++f) {
        const double s = std::norm(amplitudes(f, i));
        h.total += s;
        const int bf = bin_of(ef(f) / out.sigma_final, range, bins);
        if (bi < 0 || bf < 0) {
          h.overflow += s;
        } else {
          h.weights[static_cast<std::size_t>(bi * bins + bf)] += s;
        }
        double pi = 1.0;
        for (std::size_t P = 0; P < 5; ++P) {
          double pf = 1.0;
          for (std::size_t Q = 0; P + Q < 5; ++Q) {
            h.moments[P][Q] += s * pi * pf;
            pf *= ef(f);
          }
          pi *= ei(i);
        }
      }
    }
    for (std::size_t P = 0; P < 5; ++P) {
      for (std::size_t Q = 0; P + Q < 5; ++Q) {
        h.moments[P][Q] /= dim * p.vo2 * std::pow(p.vh2, 0.5 * static_cast<double>(P + Q));
      }
    }
    return h;
  };

  // Fixed-size chunks are evaluated in parallel and folded in index order.
  constexpr long kChunk = 64;
  std::vector<SampleTraces> traces(static_cast<std::size_t>(config.n_samples));
  std::vector<double> totals(static_cast<std::size_t>(config.n_samples));
  for (long begin = 0; begin < config.n_samples; begin += kChunk) {
    const long count = std::min(kChunk, config.n_samples - begin);
    std::vector<SampleHistogram> chunk(static_cast<std::size_t>(count));
    detail::parallel_for(count, config.workers, [&](long j) {
      chunk[static_cast<std::size_t>(j)] = sample(begin + j);
    });
    for (long j = 0; j < count; ++j) {
      const SampleHistogram& h = chunk[static_cast<std::size_t>(j)];
      for (std::size_t b = 0; b < out.weights.size(); ++b) {
        out.weights[b] += h.weights[b];
      }
      out.overflow_weight += h.overflow;
      traces[static_cast<std::size_t>(begin + j)] = h.moments;
      totals[static_cast<std::size_t>(begin + j)] = h.total;
    }
  }
  out.total_strength = detail::pairwise_sum(totals.data(), totals.size());

  out.moments.n_samples = config.n_samples;
  out.moments.batches = static_cast<int>(std::min<long>(20, config.n_samples));
  std::vector<double> column(traces.size());
  for (std::size_t P = 0; P < 5; ++P) {
    for (std::size_t Q = 0; P + Q < 5; ++Q) {
      for (std::size_t i = 0; i < traces.size(); ++i) {
        column[i] = traces[i][P][Q];
      }
      out.moments.by_order[P][Q] = batch_mean_estimate(column, out.moments.batches);
    }
  }
  const auto mean = [&](int P, int Q) { return out.moments.at(P, Q).mean; };
  out.xi = correlation(mean(0, 0), mean(2, 0), mean(0, 2), mean(1, 1));

  // Delete-one-batch jackknife for the ratio estimator.
  const std::size_t n = traces.size();
  const std::size_t B = static_cast<std::size_t>(out.moments.batches);
  std::array<double, 4> full{};
  const std::array<std::pair<std::size_t, std::size_t>, 4> orders{
      {{0, 0}, {2, 0}, {0, 2}, {1, 1}}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t o = 0; o < 4; ++o) {
      full[o] += traces[i][orders[o].first][orders[o].second];
    }
  }
  std::vector<double> leave_out(B);
  for (std::size_t b = 0; b < B; ++b) {
    const std::size_t lo = b * n / B;
    const std::size_t hi = (b + 1) * n / B;
    std::array<double, 4> part = full;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t o = 0; o < 4; ++o) {
        part[o] -= traces[i][orders[o].first][orders[o].second];
      }
    }
    leave_out[b] = correlation(part[0], part[1], part[2], part[3]);
  }
  double jk_mean = 0.0;
  for (const double v : leave_out) {
    jk_mean += v / static_cast<double>(B);
  }
  double jk_var = 0.0;
  for (const double v : leave_out) {
    jk_var += (v - jk_mean) * (v - jk_mean);
  }
  out.xi_std_error = std::sqrt(jk_var * static_cast<double>(B - 1) / static_cast<double>(B));

  out.xi_reference = exact_cumulants(p, config.mode).xi;
  const double area = (2.0 * range / bins) * (2.0 * range / bins);
  out.reference.assign(out.weights.size(), 0.0);
  for (int bi = 0; bi < bins; ++bi) {
    for (int bf = 0; bf < bins; ++bf) {
      out.reference[static_cast<std::size_t>(bi * bins + bf)] =
          out.total_strength * area *
          bivariate_normal(out.bin_center(bi), out.bin_center(bf), out.xi_reference);
    }
  }
  return out;
}

} // namespace egue
